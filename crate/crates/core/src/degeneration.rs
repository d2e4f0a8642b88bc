//! Degeneration witnesses, their verification through limits at `t = 0`,
//! obstruction certificates, the identity checks behind the two
//! non-degeneration lemmas, and seeded witness search.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Mutex;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algprops;
use crate::catalogue::{self, AlgebraId, CatalogueError};
use crate::fields::{Fe, Field, FieldError};
use crate::polyring::{self, PolyError};
use crate::ring::Ring;
use crate::structspace::{Matrix3, StructError, StructureVector, TripleIndex};

mod lemmas;
mod search;

pub use lemmas::{verify_lemma_identities, IdentityCheck, LemmaInput, LemmaReport, Mutation};
pub use search::{search_witness, ExecutionMode, Found, SearchConfig, SearchOutcome};

type Sv = StructureVector<Fe>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegenError {
    #[error("coefficient {0} of the curve image has a pole at t = 0")]
    PoleAtZero(String),
    #[error("limit {limit} does not match {expected}")]
    LimitMismatch { limit: String, expected: String },
    #[error("curve determinant is identically zero")]
    SingularCurve,
    #[error("curve entries must live in a rational function field in t, got {0}")]
    NotACurve(String),
    #[error("no known witness for {0} -> {1}")]
    NoKnownWitness(String, String),
    #[error("{0} is not a table id")]
    NotCanonical(String),
    #[error("field of characteristic {found} used for the {expected} case")]
    CharMismatch { expected: CharClass, found: u64 },
    #[error("lemma identities failed: {0}")]
    LemmaGate(String),
    #[error("pair {0} -> {1} is neither witnessed nor obstructed")]
    Uncovered(String, String),
    #[error("malformed witness file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Catalogue(#[from] CatalogueError),
    #[error(transparent)]
    Struct(#[from] StructError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The two cases the classification splits into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CharClass {
    NotTwo,
    Two,
}

impl CharClass {
    pub fn of(characteristic: u64) -> CharClass {
        if characteristic == 2 {
            CharClass::Two
        } else {
            CharClass::NotTwo
        }
    }

    pub fn of_field(f: &Field) -> CharClass {
        CharClass::of(f.characteristic())
    }

    /// Rationals for the odd case, GF(2) otherwise.
    pub fn base_field(self) -> Field {
        match self {
            CharClass::NotTwo => Field::rationals(),
            CharClass::Two => Field::prime(2).unwrap(),
        }
    }

    /// 0 or 2, as written on the command line and in witness files.
    pub fn code(self) -> u64 {
        match self {
            CharClass::NotTwo => 0,
            CharClass::Two => 2,
        }
    }
}

impl fmt::Display for CharClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CharClass::NotTwo => "char != 2",
            CharClass::Two => "char 2",
        })
    }
}

/// A matrix `g(t)` with entries in `F(t)` and nonzero determinant.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    base: Field,
    matrix: Matrix3<Fe>,
}

pub const CURVE_VAR: &str = "t";

impl Curve {
    pub fn new(matrix: Matrix3<Fe>) -> Result<Curve, DegenError> {
        let ft = matrix.get(0, 0).field().clone();
        if ft.function_variable() != Some(CURVE_VAR) {
            return Err(DegenError::NotACurve(ft.to_string()));
        }
        if matrix.det().is_zero() {
            return Err(DegenError::SingularCurve);
        }
        Ok(Curve {
            base: ft.base().unwrap().clone(),
            matrix,
        })
    }

    pub fn parse<S: AsRef<str>>(base: &Field, rows: &[Vec<S>]) -> Result<Curve, DegenError> {
        let ft = Field::rational_functions(base, CURVE_VAR)?;
        Curve::new(Matrix3::parse_rows(&ft, rows)?)
    }

    pub fn identity(base: &Field) -> Curve {
        Curve::parse(
            base,
            &[
                vec!["1", "0", "0"],
                vec!["0", "1", "0"],
                vec!["0", "0", "1"],
            ],
        )
        .unwrap()
    }

    pub fn scaling(base: &Field) -> Curve {
        Curve::parse(
            base,
            &[
                vec!["t", "0", "0"],
                vec!["0", "t", "0"],
                vec!["0", "0", "t"],
            ],
        )
        .unwrap()
    }

    /// A constant matrix over `base`, read as a curve.
    pub fn constant(m: &Matrix3<Fe>) -> Result<Curve, DegenError> {
        Curve::parse(m.get(0, 0).field(), &m.to_strings())
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn function_field(&self) -> &Field {
        self.matrix.get(0, 0).field()
    }

    pub fn matrix(&self) -> &Matrix3<Fe> {
        &self.matrix
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.matrix.to_strings()
    }

    /// Re-read the same entries over another base field.
    pub fn coerce(&self, base: &Field) -> Result<Curve, DegenError> {
        if *base == self.base {
            return Ok(self.clone());
        }
        Curve::parse(base, &self.to_strings())
    }

    /// `self(t) · other(t)`.
    pub fn then(&self, other: &Curve) -> Result<Curve, DegenError> {
        let other = other.coerce(&self.base)?;
        Curve::new(self.matrix.mul(&other.matrix))
    }

    /// Precompose with a constant change of basis: `m · self(t)`.
    pub fn after(&self, m: &Matrix3<Fe>) -> Result<Curve, DegenError> {
        Curve::constant(&m.coerce(&self.base)?)?.then(self)
    }
}

impl fmt::Display for Curve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// `lim_{t→0} λ·g(t)`, coefficient by coefficient.
pub fn limit(lam: &Sv, curve: &Curve) -> Result<Sv, DegenError> {
    let curve = curve.coerce(lam.field())?;
    let ft = curve.function_field();
    let image = lam.coerce(ft)?.act(curve.matrix())?;
    let base = lam.field();
    let mut out = StructureVector::zero(&base.zero());
    for (t, c) in image.support() {
        let v = polyring::limit_at_zero(c).map_err(|e| match e {
            PolyError::PoleAtZero => DegenError::PoleAtZero(format!("{}{}{}", t.i(), t.j(), t.k())),
            other => other.into(),
        })?;
        out.set(t, v);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub limit: Sv,
    pub exact: bool,
    pub identified: Option<AlgebraId>,
}

/// Checks that the limit of `λ·g(t)` is `target`: exactly, or (with
/// `up_to_iso`) after identification and canonicalization of both sides.
pub fn verify_witness(
    lam: &Sv,
    curve: &Curve,
    target: &AlgebraId,
    up_to_iso: bool,
) -> Result<VerifyReport, DegenError> {
    let f = lam.field();
    let mu0 = limit(lam, curve)?;
    let expected = catalogue::structure_of(target, f)?;
    if mu0 == expected {
        return Ok(VerifyReport {
            limit: mu0,
            exact: true,
            identified: None,
        });
    }
    let mismatch = |mu0: &Sv| DegenError::LimitMismatch {
        limit: mu0.to_string(),
        expected: expected.to_string(),
    };
    if !up_to_iso {
        return Err(mismatch(&mu0));
    }
    let got = catalogue::identify(&mu0).map_err(|_| mismatch(&mu0))?;
    let want = catalogue::canonicalize(target, f)?.id;
    if got != want {
        return Err(mismatch(&mu0));
    }
    Ok(VerifyReport {
        limit: mu0,
        exact: false,
        identified: Some(got),
    })
}

fn rows(base: &Field, r: [[&str; 3]; 3]) -> Curve {
    let v: Vec<Vec<&str>> = r.iter().map(|x| x.to_vec()).collect();
    Curve::parse(base, &v).expect("built-in curve")
}

/// `e1' = e3, e2' = e2, e3' = e1`; over char 2 it takes c5 to `231+321+332`.
pub fn swap13(base: &Field) -> Matrix3<Fe> {
    Matrix3::from_ints(base, [[0, 0, 1], [0, 1, 0], [1, 0, 0]])
}

/// `e2'' = e2 + e3`; over char 2 it takes c3 to `231+321+331`.
pub fn c3_to_mu(base: &Field) -> Matrix3<Fe> {
    Matrix3::from_ints(base, [[1, 0, 0], [0, 1, 0], [0, 1, 1]])
}

/// c5 → c3 when char ≠ 2; limit `123+213`.
pub fn c5_to_c3_odd(base: &Field) -> Curve {
    rows(base, [["t", "0", "0"], ["t", "1", "0"], ["0", "0", "t"]])
}

/// Char-2 curve acting on `231+321+332`; limit `231+321+331`.
pub fn c5_to_c3_even(base: &Field) -> Curve {
    rows(base, [["t^2", "t", "0"], ["0", "t", "0"], ["0", "0", "t"]])
}

/// Char-2 curve acting on `231+321+331`; limit `231+321`.
pub fn c3_to_l1_even(base: &Field) -> Curve {
    rows(base, [["t", "0", "0"], ["0", "1", "0"], ["0", "0", "t"]])
}

/// A curve taking `a3(2) = 221+2·321+331` to `231−321`.
pub fn a3_two_to_l1(base: &Field) -> Curve {
    rows(base, [["t", "0", "0"], ["0", "-1", "t"], ["0", "1", "0"]])
}

fn quarter(f: &Field) -> Fe {
    f.from_ratio(1, 4).expect("char != 2")
}

/// Whether `id` is `a((4·1)⁻¹)` in odd characteristic.
pub fn is_quarter(id: &AlgebraId) -> bool {
    match id {
        AlgebraId::Adelta(d) => d.field().characteristic() != 2 && *d == quarter(d.field()),
        _ => false,
    }
}

fn param_field(ids: &[&AlgebraId], class: CharClass) -> Result<Field, DegenError> {
    let f = ids
        .iter()
        .find_map(|id| id.parameter().map(|p| p.field().clone()))
        .unwrap_or_else(|| class.base_field());
    if CharClass::of_field(&f) != class {
        return Err(DegenError::CharMismatch {
            expected: class,
            found: f.characteristic(),
        });
    }
    Ok(f)
}

fn check_canonical(id: &AlgebraId) -> Result<(), DegenError> {
    if id.is_table1() {
        Ok(())
    } else {
        Err(DegenError::NotCanonical(id.to_string()))
    }
}

/// A single-parameter curve for each certified arrow and for each composite
/// of arrows, over the prime field (or rationals) of the characteristic.
pub fn known_witness(src: &AlgebraId, dst: &AlgebraId, class: CharClass) -> Option<Curve> {
    use AlgebraId::*;
    let b = class.base_field();
    let two = class == CharClass::Two;
    if src == dst {
        return Some(Curve::identity(&b));
    }
    let c = match (src, dst) {
        (_, A0) => Curve::scaling(&b),
        (C5, C3) if !two => c5_to_c3_odd(&b),
        (C5, C3) => c5_to_c3_even(&b).after(&swap13(&b)).ok()?,
        (C5, C1) => rows(&b, [["0", "0", "t"], ["t^2", "0", "0"], ["0", "1", "0"]]),
        (C5, L1) if two => rows(&b, [["0", "0", "t"], ["0", "1", "0"], ["t", "0", "0"]]),
        (C3, C1) => rows(&b, [["1", "0", "0"], ["0", "t", "0"], ["0", "0", "1"]]),
        (C3, L1) if two => c3_to_l1_even(&b).after(&c3_to_mu(&b)).ok()?,
        (Adelta(_), C1) => rows(&b, [["1", "0", "0"], ["0", "0", "1"], ["0", "t", "0"]]),
        (Adelta(_), L1) if is_quarter(src) => {
            let g2 = catalogue::g_kappa(&b.from_int(2));
            a3_two_to_l1(&b).after(&g2).ok()?
        }
        _ => return None,
    };
    Some(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObstructionTag {
    NilpotencyClass,
    Commutativity,
    MStarStarClosure,
    #[serde(rename = "lemma-3.1")]
    Lemma31,
    #[serde(rename = "lemma-3.2")]
    Lemma32,
    TransitivityDerived,
}

impl ObstructionTag {
    pub fn name(self) -> &'static str {
        match self {
            ObstructionTag::NilpotencyClass => "nilpotency-class",
            ObstructionTag::Commutativity => "commutativity",
            ObstructionTag::MStarStarClosure => "m-star-star-closure",
            ObstructionTag::Lemma31 => "lemma-3.1",
            ObstructionTag::Lemma32 => "lemma-3.2",
            ObstructionTag::TransitivityDerived => "transitivity-derived",
        }
    }

    /// Tags that rest on the lemma identities rather than on recomputed invariants.
    pub fn needs_lemma_gate(self) -> bool {
        matches!(
            self,
            ObstructionTag::Lemma31 | ObstructionTag::Lemma32 | ObstructionTag::TransitivityDerived
        )
    }
}

impl fmt::Display for ObstructionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub tag: ObstructionTag,
    pub detail: String,
}

impl Obstruction {
    /// Recompute the invariant behind a machine-checkable tag.
    pub fn recheck(&self, src: &AlgebraId, dst: &AlgebraId, field: &Field) -> bool {
        check_obstruction_in(src, dst, field).is_some_and(|o| o.tag == self.tag)
    }
}

fn h_class_of(id: &AlgebraId) -> String {
    match id {
        AlgebraId::C3 => "h(1)".into(),
        AlgebraId::L1 => "h(-1)".into(),
        AlgebraId::Adelta(d) if d.is_zero() => "h(0)".into(),
        AlgebraId::Adelta(d) => format!("h(b) with ({d})b^2+(1-2*({d}))b+({d})=0"),
        other => other.to_string(),
    }
}

/// The strongest certificate that `src ↛ dst`, if any applies.
pub fn check_obstruction(
    src: &AlgebraId,
    dst: &AlgebraId,
    class: CharClass,
) -> Option<Obstruction> {
    let f = param_field(&[src, dst], class).ok()?;
    check_obstruction_in(src, dst, &f)
}

/// [`check_obstruction`] with invariants recomputed over `f`.
pub fn check_obstruction_in(src: &AlgebraId, dst: &AlgebraId, f: &Field) -> Option<Obstruction> {
    use AlgebraId::*;
    if !src.is_table1() || !dst.is_table1() {
        return None;
    }
    let class = CharClass::of_field(f);
    let (src, dst) = (&src.coerce(f).ok()?, &dst.coerce(f).ok()?);
    let f = f.clone();
    let ls = catalogue::structure_of(src, &f).ok()?;
    let ld = catalogue::structure_of(dst, &f).ok()?;
    if ls == ld {
        return None;
    }
    let (cs, cd) = (
        algprops::nilpotency_class(&ls).ok()?,
        algprops::nilpotency_class(&ld).ok()?,
    );
    if cd > cs {
        return Some(Obstruction {
            tag: ObstructionTag::NilpotencyClass,
            detail: format!("class {cs} cannot rise to {cd}"),
        });
    }
    if algprops::is_commutative(&ls) && !algprops::is_commutative(&ld) {
        return Some(Obstruction {
            tag: ObstructionTag::Commutativity,
            detail: format!("{src} is commutative and {dst} is not"),
        });
    }
    if algprops::in_m_star_star(&ls) && !algprops::in_m_star_star(&ld) {
        return Some(Obstruction {
            tag: ObstructionTag::MStarStarClosure,
            detail: format!("{src} lies in M** and {dst} does not"),
        });
    }
    if matches!(src, C1 | L1) && !matches!(dst, A0) {
        let (a, b) = (
            algprops::annihilator_dim(&ls),
            algprops::annihilator_dim(&ld),
        );
        return Some(Obstruction {
            tag: ObstructionTag::MStarStarClosure,
            detail: format!(
                "closure of O({src}) is O({src}) plus zero; annihilator dim {a} -> {b}"
            ),
        });
    }
    let (Adelta(_), target) = (src, dst) else {
        return None;
    };
    let q_src = is_quarter(src);
    let translated = format!(
        "{src} ~ {}, {dst} ~ {}",
        h_class_of(src),
        h_class_of(target)
    );
    match class {
        CharClass::NotTwo if q_src => Some(Obstruction {
            tag: ObstructionTag::Lemma32,
            detail: format!(
                "{src} ~ rho and {dst} ~ {}, parameter != -1",
                h_class_of(target)
            ),
        }),
        CharClass::NotTwo if is_quarter(target) => Some(Obstruction {
            tag: ObstructionTag::TransitivityDerived,
            detail: format!("{dst} -> l1 while {src} does not reach l1"),
        }),
        CharClass::NotTwo => Some(Obstruction {
            tag: ObstructionTag::Lemma31,
            detail: translated,
        }),
        CharClass::Two if matches!(target, C3) => Some(Obstruction {
            tag: ObstructionTag::TransitivityDerived,
            detail: format!("c3 -> l1 while {src} does not reach l1"),
        }),
        CharClass::Two => Some(Obstruction {
            tag: ObstructionTag::Lemma31,
            detail: translated,
        }),
    }
}

static LEMMA_GATE: Mutex<BTreeSet<CharClass>> = Mutex::new(BTreeSet::new());

pub(crate) fn mark_gate(class: CharClass) {
    LEMMA_GATE.lock().unwrap().insert(class);
}

pub fn lemma_gate_passed(class: CharClass) -> bool {
    LEMMA_GATE.lock().unwrap().contains(&class)
}

/// Runs the identity suite once per process and characteristic case.
pub fn ensure_lemma_gate(class: CharClass) -> Result<(), DegenError> {
    if lemma_gate_passed(class) {
        return Ok(());
    }
    let report = verify_lemma_identities(&class.base_field(), None);
    if report.all_passed() {
        Ok(())
    } else {
        Err(DegenError::LemmaGate(report.failures().join("; ")))
    }
}

#[derive(Debug, Clone)]
pub enum Evidence {
    Witness {
        curve: Curve,
        limit: Sv,
        /// Verified `limit · iso = structure_of(dst)`, over `iso_field`, when
        /// the limit is not already the table vector.
        iso: Option<(Matrix3<Fe>, Field)>,
        /// Arrows this composite is built from.
        chain: Vec<AlgebraId>,
    },
    Obstructed(Obstruction),
}

#[derive(Debug, Clone)]
pub struct DegenerationFact {
    pub src: AlgebraId,
    pub dst: AlgebraId,
    pub field: Field,
    pub class: CharClass,
    pub evidence: Evidence,
}

impl DegenerationFact {
    pub fn holds(&self) -> bool {
        matches!(self.evidence, Evidence::Witness { .. })
    }

    pub fn curve(&self) -> Option<&Curve> {
        match &self.evidence {
            Evidence::Witness { curve, .. } => Some(curve),
            Evidence::Obstructed(_) => None,
        }
    }

    pub fn obstruction(&self) -> Option<&Obstruction> {
        match &self.evidence {
            Evidence::Obstructed(o) => Some(o),
            Evidence::Witness { .. } => None,
        }
    }

    /// Re-run the verification behind this fact.
    pub fn reverify(&self) -> Result<(), DegenError> {
        match &self.evidence {
            Evidence::Witness { curve, .. } => {
                let lam = catalogue::structure_of(&self.src, &self.field)?;
                verify_witness(&lam, curve, &self.dst, true).map(|_| ())
            }
            Evidence::Obstructed(o) => {
                if o.tag.needs_lemma_gate() {
                    ensure_lemma_gate(self.class)?;
                }
                if o.recheck(&self.src, &self.dst, &self.field) {
                    Ok(())
                } else {
                    Err(DegenError::Uncovered(
                        self.src.to_string(),
                        self.dst.to_string(),
                    ))
                }
            }
        }
    }
}

/// An isomorphism from `mu` onto its table vector, adjoining a square root
/// if the normal form needs one.
pub fn post_limit_iso(mu: &Sv) -> Result<(AlgebraId, Matrix3<Fe>, Field), DegenError> {
    match catalogue::identify_with_witness(mu) {
        Ok((id, g)) => Ok((id, g, mu.field().clone())),
        Err(CatalogueError::NeedsFieldExtension(_)) => {
            let (id, g, f) = catalogue::identify_with_witness_extending(mu)?;
            Ok((id, g, f))
        }
        Err(e) => Err(e.into()),
    }
}

/// Longest path of witnessed arrows from `src` to `dst` through table ids.
fn generating_chain(src: &AlgebraId, dst: &AlgebraId, class: CharClass) -> Vec<AlgebraId> {
    use AlgebraId::*;
    let mut nodes = vec![src.clone(), C5, C3, L1, C1, A0, dst.clone()];
    nodes.dedup();
    let arrow = |a: &AlgebraId, b: &AlgebraId| a != b && known_witness(a, b, class).is_some();
    // nodes form a DAG under witnessed arrows; memoised longest path
    fn longest(
        at: &AlgebraId,
        dst: &AlgebraId,
        nodes: &[AlgebraId],
        arrow: &dyn Fn(&AlgebraId, &AlgebraId) -> bool,
        depth: usize,
    ) -> Option<Vec<AlgebraId>> {
        if at == dst {
            return Some(vec![at.clone()]);
        }
        if depth > nodes.len() {
            return None;
        }
        nodes
            .iter()
            .filter(|n| arrow(at, n))
            .filter_map(|n| longest(n, dst, nodes, arrow, depth + 1))
            .max_by_key(Vec::len)
            .map(|mut p| {
                p.insert(0, at.clone());
                p
            })
    }
    longest(src, dst, &nodes, &arrow, 0).unwrap_or_else(|| vec![src.clone(), dst.clone()])
}

/// The full answer for a pair of table ids in one characteristic case.
pub fn degenerates(
    src: &AlgebraId,
    dst: &AlgebraId,
    class: CharClass,
) -> Result<DegenerationFact, DegenError> {
    let f = param_field(&[src, dst], class)?;
    degenerates_in(src, dst, &f)
}

/// [`degenerates`] with every check carried out over `f`.
pub fn degenerates_in(
    src: &AlgebraId,
    dst: &AlgebraId,
    f: &Field,
) -> Result<DegenerationFact, DegenError> {
    check_canonical(src)?;
    check_canonical(dst)?;
    let class = CharClass::of_field(f);
    let src = src.coerce(f)?;
    let dst = dst.coerce(f)?;
    let lam = catalogue::structure_of(&src, f)?;
    let fact = |evidence| DegenerationFact {
        src: src.clone(),
        dst: dst.clone(),
        field: f.clone(),
        class,
        evidence,
    };
    if let Some(curve) = known_witness(&src, &dst, class) {
        let report = verify_witness(&lam, &curve, &dst, true)?;
        let iso = if report.exact {
            None
        } else {
            let (_, g, field) = post_limit_iso(&report.limit)?;
            Some((g, field))
        };
        let chain = generating_chain(&src, &dst, class);
        return Ok(fact(Evidence::Witness {
            curve,
            limit: report.limit,
            iso,
            chain,
        }));
    }
    if let Some(o) = check_obstruction_in(&src, &dst, f) {
        if o.tag.needs_lemma_gate() {
            ensure_lemma_gate(class)?;
        }
        return Ok(fact(Evidence::Obstructed(o)));
    }
    Err(DegenError::Uncovered(src.to_string(), dst.to_string()))
}

// ---- witness files ------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub src: String,
    pub dst: String,
    #[serde(rename = "char")]
    pub characteristic: u64,
    pub matrix: Vec<Vec<String>>,
}

impl WitnessFile {
    pub fn parse(text: &str) -> Result<WitnessFile, DegenError> {
        let w: WitnessFile =
            serde_json::from_str(text).map_err(|e| DegenError::Malformed(e.to_string()))?;
        if w.matrix.len() != 3 || w.matrix.iter().any(|r| r.len() != 3) {
            return Err(DegenError::Malformed("matrix must be 3x3".into()));
        }
        Ok(w)
    }

    /// Rationals for `char: 0`, the prime field otherwise.
    pub fn field(&self) -> Result<Field, DegenError> {
        Ok(Field::prime_field(self.characteristic)?)
    }

    pub fn resolve(&self) -> Result<(AlgebraId, AlgebraId, Curve), DegenError> {
        let f = self.field()?;
        let src = AlgebraId::parse(&self.src, &f)?;
        let dst = AlgebraId::parse(&self.dst, &f)?;
        let curve = Curve::parse(&f, &self.matrix)?;
        Ok((src, dst, curve))
    }

    pub fn from_curve(
        src: &AlgebraId,
        dst: &AlgebraId,
        characteristic: u64,
        curve: &Curve,
    ) -> WitnessFile {
        WitnessFile {
            src: src.to_string(),
            dst: dst.to_string(),
            characteristic,
            matrix: curve.to_strings(),
        }
    }
}

pub(crate) fn triple_name(t: TripleIndex) -> String {
    format!("{}{}{}", t.i(), t.j(), t.k())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::rationals()
    }

    fn sv(f: &Field, s: &str) -> Sv {
        StructureVector::parse(f, s).unwrap()
    }

    #[test]
    fn odd_curve_gives_expected_image_and_limit() {
        let f = q();
        let lam = catalogue::structure_of(&AlgebraId::C5, &f).unwrap();
        let c = c5_to_c3_odd(&f);
        let r = verify_witness(&lam, &c, &AlgebraId::C3, true).unwrap();
        assert_eq!(r.limit, sv(&f, "123+213"));
        assert_eq!(r.identified, Some(AlgebraId::C3));
        assert!(verify_witness(&lam, &c, &AlgebraId::C3, false).is_err());
    }

    #[test]
    fn even_curves() {
        let f = Field::prime(2).unwrap();
        let r = verify_witness(
            &sv(&f, "231+321+332"),
            &c5_to_c3_even(&f),
            &AlgebraId::C3,
            true,
        )
        .unwrap();
        assert_eq!(r.limit, sv(&f, "231+321+331"));
        let r = verify_witness(
            &sv(&f, "231+321+331"),
            &c3_to_l1_even(&f),
            &AlgebraId::L1,
            false,
        )
        .unwrap();
        assert!(r.exact);
    }

    #[test]
    fn scaling_goes_to_zero_and_poles_are_reported() {
        let f = q();
        let lam = sv(&f, "221+231+3*331");
        assert!(
            verify_witness(&lam, &Curve::scaling(&f), &AlgebraId::A0, false)
                .unwrap()
                .exact
        );
        let inv = Curve::parse(
            &f,
            &[
                vec!["t", "0", "0"],
                vec!["0", "1", "0"],
                vec!["0", "0", "1"],
            ],
        )
        .unwrap();
        assert!(matches!(limit(&lam, &inv), Err(DegenError::PoleAtZero(_))));
    }

    #[test]
    fn every_known_witness_verifies() {
        use AlgebraId::*;
        for class in [CharClass::NotTwo, CharClass::Two] {
            let f = class.base_field();
            let mut ids = vec![A0, C1, L1, C3, C5, Adelta(f.zero()), Adelta(f.one())];
            if class == CharClass::NotTwo {
                ids.push(Adelta(quarter(&f)));
            }
            for s in &ids {
                for d in &ids {
                    if let Some(c) = known_witness(s, d, class) {
                        let lam = catalogue::structure_of(s, &f).unwrap();
                        verify_witness(&lam, &c, d, true)
                            .unwrap_or_else(|e| panic!("{s}->{d} {class}: {e}"));
                    }
                }
            }
        }
    }

    #[test]
    fn obstruction_examples() {
        let f = q();
        let d = AlgebraId::Adelta(f.from_int(3));
        let o = |a: &AlgebraId, b: &AlgebraId, c| check_obstruction(a, b, c).map(|o| o.tag);
        assert_eq!(
            o(&d, &AlgebraId::C5, CharClass::NotTwo),
            Some(ObstructionTag::NilpotencyClass)
        );
        assert_eq!(
            o(&AlgebraId::C3, &AlgebraId::L1, CharClass::NotTwo),
            Some(ObstructionTag::Commutativity)
        );
        assert_eq!(
            o(&d, &AlgebraId::Adelta(f.from_int(5)), CharClass::NotTwo),
            Some(ObstructionTag::Lemma31)
        );
        assert_eq!(
            o(&AlgebraId::Adelta(quarter(&f)), &d, CharClass::NotTwo),
            Some(ObstructionTag::Lemma32)
        );
        assert_eq!(
            o(&AlgebraId::L1, &AlgebraId::C1, CharClass::NotTwo),
            Some(ObstructionTag::MStarStarClosure)
        );
        let f2 = Field::prime(2).unwrap();
        assert_eq!(
            o(&AlgebraId::Adelta(f2.one()), &AlgebraId::C3, CharClass::Two),
            Some(ObstructionTag::TransitivityDerived)
        );
        assert_eq!(o(&AlgebraId::C3, &AlgebraId::L1, CharClass::Two), None);
    }

    #[test]
    fn transitive_fact_reports_its_chain() {
        let fact = degenerates(&AlgebraId::C5, &AlgebraId::C1, CharClass::NotTwo).unwrap();
        match &fact.evidence {
            Evidence::Witness { chain, .. } => {
                assert_eq!(chain, &vec![AlgebraId::C5, AlgebraId::C3, AlgebraId::C1,]);
            }
            other => panic!("{other:?}"),
        }
        fact.reverify().unwrap();
    }

    #[test]
    fn witness_file_round_trip() {
        let text = r#"{"src":"c5","dst":"c3","char":0,"matrix":[["t","0","0"],["t","1","0"],["0","0","t"]]}"#;
        let w = WitnessFile::parse(text).unwrap();
        let (s, d, c) = w.resolve().unwrap();
        assert_eq!(WitnessFile::from_curve(&s, &d, 0, &c), w);
        assert!(WitnessFile::parse(r#"{"src":"c5"}"#).is_err());
    }
}
