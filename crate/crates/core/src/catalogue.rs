//! The classification table of 3-dimensional nilpotent associative algebras,
//! the auxiliary families used to compare its members, explicit
//! isomorphisms between them, and identification of arbitrary structure
//! vectors.

use std::fmt;

use thiserror::Error;

use crate::algprops;
use crate::fields::{self, Fe, Field, FieldError};
use crate::ring::Ring;
use crate::structspace::{Matrix3, StructError, StructureVector};

type Sv = StructureVector<Fe>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogueError {
    #[error("parameter {0} does not live in {1}")]
    ParamMismatch(String, String),
    #[error("a root of {0} is needed; extend the field first")]
    NeedsFieldExtension(String),
    #[error("no catalogued isomorphism from {0} to {1}")]
    PairNotCatalogued(String, String),
    #[error("input is not a nilpotent associative algebra")]
    NotNilpotentAssociative,
    #[error("cannot parse algebra id {0:?}")]
    BadId(String),
    #[error("witness failed to verify: {0}")]
    WitnessFailed(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Struct(#[from] StructError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum AlgebraId {
    A0,
    C1,
    C3,
    Adelta(Fe),
    L1,
    C5,
    Chat3,
    A2,
    A3kappa(Fe),
    Hbeta(Fe),
    Rho,
}

impl AlgebraId {
    pub const TABLE1_NAMES: [&'static str; 6] = ["a0", "c1", "c3", "a(δ)", "l1", "c5"];

    pub fn is_table1(&self) -> bool {
        matches!(
            self,
            AlgebraId::A0
                | AlgebraId::C1
                | AlgebraId::C3
                | AlgebraId::Adelta(_)
                | AlgebraId::L1
                | AlgebraId::C5
        )
    }

    pub fn parameter(&self) -> Option<&Fe> {
        match self {
            AlgebraId::Adelta(x) | AlgebraId::A3kappa(x) | AlgebraId::Hbeta(x) => Some(x),
            _ => None,
        }
    }

    /// Move the parameter into `field`.
    pub fn coerce(&self, field: &Field) -> Result<AlgebraId, CatalogueError> {
        let c = |x: &Fe| {
            field
                .coerce(x)
                .map_err(|_| CatalogueError::ParamMismatch(x.to_string(), field.to_string()))
        };
        Ok(match self {
            AlgebraId::Adelta(x) => AlgebraId::Adelta(c(x)?),
            AlgebraId::A3kappa(x) => AlgebraId::A3kappa(c(x)?),
            AlgebraId::Hbeta(x) => AlgebraId::Hbeta(c(x)?),
            other => other.clone(),
        })
    }

    /// `a0|c1|c3|l1|c5|a(COEFF)|h(COEFF)|a3(COEFF)|rho|chat3|a2`.
    pub fn parse(src: &str, field: &Field) -> Result<AlgebraId, CatalogueError> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || CatalogueError::BadId(src.to_string());
        let simple = match s.as_str() {
            "a0" => Some(AlgebraId::A0),
            "c1" => Some(AlgebraId::C1),
            "c3" => Some(AlgebraId::C3),
            "l1" => Some(AlgebraId::L1),
            "c5" => Some(AlgebraId::C5),
            "chat3" => Some(AlgebraId::Chat3),
            "a2" => Some(AlgebraId::A2),
            "rho" => Some(AlgebraId::Rho),
            _ => None,
        };
        if let Some(id) = simple {
            return Ok(id);
        }
        let open = s.find('(').ok_or_else(bad)?;
        if !s.ends_with(')') {
            return Err(bad());
        }
        let arg = field.parse(&s[open + 1..s.len() - 1])?;
        match &s[..open] {
            "a" => Ok(AlgebraId::Adelta(arg)),
            "h" => Ok(AlgebraId::Hbeta(arg)),
            "a3" => Ok(AlgebraId::A3kappa(arg)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraId::A0 => f.write_str("a0"),
            AlgebraId::C1 => f.write_str("c1"),
            AlgebraId::C3 => f.write_str("c3"),
            AlgebraId::Adelta(d) => write!(f, "a({d})"),
            AlgebraId::L1 => f.write_str("l1"),
            AlgebraId::C5 => f.write_str("c5"),
            AlgebraId::Chat3 => f.write_str("chat3"),
            AlgebraId::A2 => f.write_str("a2"),
            AlgebraId::A3kappa(k) => write!(f, "a3({k})"),
            AlgebraId::Hbeta(b) => write!(f, "h({b})"),
            AlgebraId::Rho => f.write_str("rho"),
        }
    }
}

/// The representatives of the classification table over `field`.
pub fn table1(field: &Field, delta: &Fe) -> Vec<AlgebraId> {
    vec![
        AlgebraId::A0,
        AlgebraId::C1,
        AlgebraId::C3,
        AlgebraId::Adelta(field.coerce(delta).expect("delta in field")),
        AlgebraId::L1,
        AlgebraId::C5,
    ]
}

pub fn structure_of(id: &AlgebraId, field: &Field) -> Result<Sv, CatalogueError> {
    let id = id.coerce(field)?;
    let b = |i, j, k| StructureVector::basis_vector(&field.zero(), i, j, k).unwrap();
    Ok(match &id {
        AlgebraId::A0 => StructureVector::zero(&field.zero()),
        AlgebraId::C1 => b(3, 3, 1),
        AlgebraId::C3 => b(2, 2, 1).add(&b(3, 3, 1)),
        AlgebraId::Adelta(d) => b(2, 2, 1).add(&b(2, 3, 1)).add(&b(3, 3, 1).scale(d)),
        AlgebraId::L1 => b(2, 3, 1).sub(&b(3, 2, 1)),
        AlgebraId::C5 => b(1, 1, 2).add(&b(1, 2, 3)).add(&b(2, 1, 3)),
        AlgebraId::Chat3 => b(2, 3, 1).add(&b(3, 2, 1)),
        AlgebraId::A2 => b(2, 3, 1),
        AlgebraId::A3kappa(k) => b(2, 2, 1).add(&b(3, 2, 1).scale(k)).add(&b(3, 3, 1)),
        AlgebraId::Hbeta(beta) => b(2, 3, 1).add(&b(3, 2, 1).scale(beta)),
        AlgebraId::Rho => b(2, 2, 1)
            .add(&b(3, 2, 1).scale(&field.from_int(2)))
            .add(&b(3, 3, 1)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CharConstraint {
    Any,
    Not2,
    Only2,
}

/// A change of basis taking one catalogue vector to another. Only
/// [`IsoWitness::new`] builds these, and it checks the claim.
#[derive(Debug, Clone)]
pub struct IsoWitness {
    src: AlgebraId,
    dst: AlgebraId,
    matrix: Matrix3<Fe>,
    constraint: CharConstraint,
    label: &'static str,
}

impl IsoWitness {
    pub fn new(
        src: AlgebraId,
        dst: AlgebraId,
        matrix: Matrix3<Fe>,
        constraint: CharConstraint,
        label: &'static str,
    ) -> Result<IsoWitness, CatalogueError> {
        let field = matrix.get(0, 0).field().clone();
        let lhs = structure_of(&src, &field)?.act(&matrix)?;
        let rhs = structure_of(&dst, &field)?;
        if lhs != rhs {
            return Err(CatalogueError::WitnessFailed(format!(
                "{src} * {matrix} = {lhs}, expected {rhs}"
            )));
        }
        Ok(IsoWitness {
            src,
            dst,
            matrix,
            constraint,
            label,
        })
    }

    pub fn src(&self) -> &AlgebraId {
        &self.src
    }

    pub fn dst(&self) -> &AlgebraId {
        &self.dst
    }

    pub fn matrix(&self) -> &Matrix3<Fe> {
        &self.matrix
    }

    pub fn constraint(&self) -> CharConstraint {
        self.constraint
    }

    pub fn label(&self) -> &'static str {
        self.label
    }

    pub fn coerce(&self, field: &Field) -> Result<IsoWitness, CatalogueError> {
        Ok(IsoWitness {
            src: self.src.coerce(field)?,
            dst: self.dst.coerce(field)?,
            matrix: self.matrix.coerce(field)?,
            constraint: self.constraint,
            label: self.label,
        })
    }

    pub fn inverse(&self) -> Result<IsoWitness, CatalogueError> {
        IsoWitness::new(
            self.dst.clone(),
            self.src.clone(),
            self.matrix.inverse()?,
            self.constraint,
            self.label,
        )
    }
}

/// Product of a witness chain, so that `src * chain_matrix = dst`.
pub fn chain_matrix(chain: &[IsoWitness], field: &Field) -> Matrix3<Fe> {
    chain
        .iter()
        .fold(Matrix3::identity(&field.one()), |acc, w| {
            acc.mul(w.matrix())
        })
}

/// `e1' = βe1, e2' = e3, e3' = e2`.
pub fn lemma_h_inverse_matrix(beta: &Fe) -> Matrix3<Fe> {
    let f = beta.field();
    let (o, z) = (f.one(), f.zero());
    Matrix3::new([
        [beta.clone(), z.clone(), z.clone()],
        [z.clone(), z.clone(), o.clone()],
        [z.clone(), o, z],
    ])
}

/// `g_κ`: `e1' = e1, e2' = κe3, e3' = e2`.
pub fn g_kappa(kappa: &Fe) -> Matrix3<Fe> {
    let f = kappa.field();
    let (o, z) = (f.one(), f.zero());
    Matrix3::new([
        [o.clone(), z.clone(), z.clone()],
        [z.clone(), z.clone(), o],
        [z.clone(), kappa.clone(), z],
    ])
}

/// `g_α = [[α−α⁻¹, 0, 0], [0, α, 1], [0, 1, α]]`.
pub fn g_alpha(alpha: &Fe) -> Result<Matrix3<Fe>, CatalogueError> {
    let f = alpha.field();
    let (o, z) = (f.one(), f.zero());
    let ai = alpha.checked_inv()?;
    Ok(Matrix3::new([
        [alpha.sub(&ai), z.clone(), z.clone()],
        [z.clone(), alpha.clone(), o.clone()],
        [z, o, alpha.clone()],
    ]))
}

/// `e1' = 2e1, e2' = e2 − ωe3, e3' = e2 + ωe3` with `ω² = −1`.
pub fn c3_to_chat3_matrix(omega: &Fe) -> Matrix3<Fe> {
    let f = omega.field();
    let (o, z) = (f.one(), f.zero());
    Matrix3::new([
        [f.from_int(2), z.clone(), z.clone()],
        [z.clone(), o.clone(), o],
        [z.clone(), omega.neg(), omega.clone()],
    ])
}

/// `e2' = e2 + e3`.
pub fn a2_to_a0delta_matrix(f: &Field) -> Matrix3<Fe> {
    Matrix3::from_ints(f, [[1, 0, 0], [0, 1, 0], [0, 1, 1]])
}

fn check_char(
    constraint: CharConstraint,
    field: &Field,
    src: &AlgebraId,
    dst: &AlgebraId,
) -> Result<(), CatalogueError> {
    let c2 = field.characteristic() == 2;
    let ok = match constraint {
        CharConstraint::Any => true,
        CharConstraint::Not2 => !c2,
        CharConstraint::Only2 => c2,
    };
    if ok {
        Ok(())
    } else {
        Err(CatalogueError::PairNotCatalogued(
            src.to_string(),
            dst.to_string(),
        ))
    }
}

/// The roots of `x² + κx + 1`; needed for `g_α`.
fn alpha_roots(kappa: &Fe) -> Result<Vec<Fe>, CatalogueError> {
    let f = kappa.field();
    Ok(fields::quadratic_roots(&f.one(), kappa, &f.one())?)
}

/// The catalogued isomorphism from `src` to `dst`, if the pair is one of the
/// explicit ones. Roots that the field lacks are reported, never invented.
pub fn iso_witness(
    src: &AlgebraId,
    dst: &AlgebraId,
    field: &Field,
) -> Result<IsoWitness, CatalogueError> {
    use AlgebraId::*;
    let src = src.coerce(field)?;
    let dst = dst.coerce(field)?;
    let not_catalogued = || CatalogueError::PairNotCatalogued(src.to_string(), dst.to_string());
    let one = field.one();
    let id = Matrix3::identity(&one);
    if structure_of(&src, field)? == structure_of(&dst, field)? {
        return IsoWitness::new(src, dst, id, CharConstraint::Any, "equal vectors");
    }
    match (&src, &dst) {
        (Hbeta(b), Hbeta(b2)) if b.mul(b2).is_one() => IsoWitness::new(
            src.clone(),
            dst.clone(),
            lemma_h_inverse_matrix(b),
            CharConstraint::Any,
            "h(β) ≃ h(1/β)",
        ),
        (Adelta(d), A3kappa(k)) | (A3kappa(k), Adelta(d))
            if !d.is_zero() && k.mul(k).mul(d).is_one() =>
        {
            let w = IsoWitness::new(
                Adelta(d.clone()),
                A3kappa(k.clone()),
                g_kappa(k),
                CharConstraint::Any,
                "g_κ",
            )?;
            if matches!(src, Adelta(_)) {
                Ok(w)
            } else {
                w.inverse()
            }
        }
        (A3kappa(k), Hbeta(b)) | (Hbeta(b), A3kappa(k)) => {
            let excluded = k.is_zero() || *k == field.from_int(2) || *k == field.from_int(-2);
            if excluded {
                return Err(not_catalogued());
            }
            let roots = alpha_roots(k)?;
            if roots.is_empty() {
                return Err(CatalogueError::NeedsFieldExtension(format!("x^2+({k})x+1")));
            }
            let alpha = roots
                .iter()
                .find(|a| a.mul(a).neg() == *b)
                .ok_or_else(not_catalogued)?;
            let w = IsoWitness::new(
                A3kappa(k.clone()),
                Hbeta(b.clone()),
                g_alpha(alpha)?,
                CharConstraint::Any,
                "g_α",
            )?;
            if matches!(src, A3kappa(_)) {
                Ok(w)
            } else {
                w.inverse()
            }
        }
        (C3, Chat3) | (Chat3, C3) => {
            check_char(CharConstraint::Not2, field, &src, &dst)?;
            let omega = fields::sqrt(&field.from_int(-1))?
                .ok_or_else(|| CatalogueError::NeedsFieldExtension("x^2+1".into()))?;
            let w = IsoWitness::new(
                C3,
                Chat3,
                c3_to_chat3_matrix(&omega),
                CharConstraint::Not2,
                "c3 ≃ ĉ3",
            )?;
            if src == C3 {
                Ok(w)
            } else {
                w.inverse()
            }
        }
        (A2, Adelta(d)) | (Adelta(d), A2) if d.is_zero() => {
            let w = IsoWitness::new(
                A2,
                Adelta(d.clone()),
                a2_to_a0delta_matrix(field),
                CharConstraint::Any,
                "a2 ≃ a(0)",
            )?;
            if src == A2 {
                Ok(w)
            } else {
                w.inverse()
            }
        }
        (A3kappa(k), A3kappa(k2)) if *k2 == k.neg() => {
            let g = Matrix3::from_ints(field, [[1, 0, 0], [0, -1, 0], [0, 0, 1]]);
            IsoWitness::new(
                src.clone(),
                dst.clone(),
                g,
                CharConstraint::Any,
                "a3(κ) ≃ a3(−κ)",
            )
        }
        _ => Err(not_catalogued()),
    }
}

/// A table representative together with the verified chain leading to it.
#[derive(Debug, Clone)]
pub struct Canonical {
    /// Parameter expressed in the input field.
    pub id: AlgebraId,
    /// Field in which the chain lives (the input field, or an extension of it
    /// when a square root had to be adjoined).
    pub field: Field,
    pub chain: Vec<IsoWitness>,
}

fn fresh_name(field: &Field) -> String {
    let used = field.tower_names();
    ["r", "s", "u"]
        .iter()
        .map(|s| s.to_string())
        .chain((1..).map(|i| format!("r{i}")))
        .find(|n| !used.contains(n))
        .unwrap()
}

/// A square root of `x`, adjoining one when the field has none.
fn sqrt_or_extend(x: &Fe) -> Result<(Fe, Field), CatalogueError> {
    if let Some(r) = fields::sqrt(x)? {
        return Ok((r, x.field().clone()));
    }
    let f = x.field();
    let (ext, _) = fields::extend_with_root(f, &[x.neg(), f.zero(), f.one()], &fresh_name(f))?;
    Ok((ext.generator().unwrap(), ext))
}

/// Reduce a catalogue id to its table representative, composing the
/// explicit isomorphisms; never searches.
pub fn canonicalize(id: &AlgebraId, field: &Field) -> Result<Canonical, CatalogueError> {
    use AlgebraId::*;
    let id = id.coerce(field)?;
    let char2 = field.characteristic() == 2;
    let done = |id: AlgebraId, f: &Field, chain: Vec<IsoWitness>| Canonical {
        id,
        field: f.clone(),
        chain,
    };
    if id.is_table1() {
        return Ok(done(id, field, Vec::new()));
    }
    let step = |a: &AlgebraId, b: &AlgebraId, f: &Field| iso_witness(a, b, f);
    match &id {
        Chat3 if char2 => Ok(done(L1, field, vec![step(&Chat3, &L1, field)?])),
        Chat3 => {
            let (f, _) = ensure_root_of_minus_one(field)?;
            let w = step(&Chat3, &C3, &f)?;
            Ok(done(C3, &f, vec![w]))
        }
        A2 => {
            let d0 = Adelta(field.zero());
            Ok(done(d0.clone(), field, vec![step(&A2, &d0, field)?]))
        }
        Rho => {
            let k = A3kappa(field.from_int(2));
            prepend(step(&Rho, &k, field)?, canonicalize(&k, field)?)
        }
        A3kappa(k) if k.is_zero() => Ok(done(C3, field, vec![step(&id, &C3, field)?])),
        A3kappa(k) => {
            let delta = k.mul(k).checked_inv()?;
            let d = Adelta(delta);
            Ok(done(d.clone(), field, vec![step(&id, &d, field)?]))
        }
        Hbeta(b) => {
            let one = field.one();
            if *b == one {
                return prepend(step(&id, &Chat3, field)?, canonicalize(&Chat3, field)?);
            }
            if *b == one.neg() {
                return Ok(done(L1, field, vec![step(&id, &L1, field)?]));
            }
            if b.is_zero() {
                return prepend(step(&id, &A2, field)?, canonicalize(&A2, field)?);
            }
            // β = −α², κ = −(α + 1/α), δ = 1/κ² = −β/(1−β)²
            let (alpha, ext) = sqrt_or_extend(&b.neg())?;
            let kappa = alpha.add(&alpha.checked_inv()?).neg();
            let beta_ext = ext.coerce(b)?;
            let to_a3 = step(&Hbeta(beta_ext.clone()), &A3kappa(kappa.clone()), &ext)?;
            let delta_ext = kappa.mul(&kappa).checked_inv()?;
            let to_a = step(&A3kappa(kappa), &Adelta(delta_ext.clone()), &ext)?;
            let delta = b.neg().checked_div(&one.sub(b).mul(&one.sub(b)))?;
            debug_assert_eq!(ext.coerce(&delta)?, delta_ext);
            Ok(done(Adelta(delta), &ext, vec![to_a3, to_a]))
        }
        _ => unreachable!("table ids return early"),
    }
}

fn prepend(first: IsoWitness, mut rest: Canonical) -> Result<Canonical, CatalogueError> {
    rest.chain.insert(0, first.coerce(&rest.field)?);
    Ok(rest)
}

fn ensure_root_of_minus_one(field: &Field) -> Result<(Field, Fe), CatalogueError> {
    let (r, f) = sqrt_or_extend(&field.from_int(-1))?;
    Ok((f, r))
}

/// `β = β′` or `ββ′ = 1`.
pub fn same_r_class(beta: &Fe, beta2: &Fe) -> bool {
    beta == beta2 || beta.mul(beta2).is_one()
}

// ---- identification ---------------------------------------------------------

fn unit(f: &Field, i: usize) -> [Fe; 3] {
    std::array::from_fn(|k| if k == i { f.one() } else { f.zero() })
}

fn lin(a: &Fe, u: &[Fe; 3], b: &Fe, v: &[Fe; 3]) -> [Fe; 3] {
    std::array::from_fn(|i| a.mul(&u[i]).add(&b.mul(&v[i])))
}

fn independent(vs: &[&[Fe; 3]]) -> bool {
    let rows: Vec<Vec<Fe>> = vs.iter().map(|v| v.to_vec()).collect();
    crate::linalg::rank(&rows) == vs.len()
}

/// Data of a class-2 algebra: a spanning vector `z` of the square, a
/// complement `w1, w2`, and the form `M` with `w_p w_q = M_pq z`.
struct Pairing {
    z: [Fe; 3],
    w: [[Fe; 3]; 2],
    m: [[Fe; 2]; 2],
}

fn pairing(lam: &Sv) -> Result<Pairing, CatalogueError> {
    let f = lam.field();
    let z = (0..9)
        .map(|n| lam.product(&unit(f, n / 3), &unit(f, n % 3)))
        .find(|v| v.iter().any(|x| !x.is_zero()))
        .ok_or(CatalogueError::NotNilpotentAssociative)?;
    let pivot = z.iter().position(|x| !x.is_zero()).unwrap();
    let mut w = Vec::new();
    for i in 0..3 {
        let e = unit(f, i);
        let mut cand: Vec<&[Fe; 3]> = vec![&z];
        cand.extend(w.iter());
        cand.push(&e);
        if independent(&cand) {
            w.push(e);
        }
        if w.len() == 2 {
            break;
        }
    }
    let w: [[Fe; 3]; 2] = [w[0].clone(), w[1].clone()];
    let coeff = |v: [Fe; 3]| -> Result<Fe, CatalogueError> {
        let c = v[pivot].checked_div(&z[pivot])?;
        if (0..3).any(|i| v[i] != c.mul(&z[i])) {
            return Err(CatalogueError::NotNilpotentAssociative);
        }
        Ok(c)
    };
    let mut mm: [[Fe; 2]; 2] = std::array::from_fn(|_| std::array::from_fn(|_| f.zero()));
    for p in 0..2 {
        for q in 0..2 {
            mm[p][q] = coeff(lam.product(&w[p], &w[q]))?;
        }
    }
    Ok(Pairing { z, w, m: mm })
}

fn check_input(lam: &Sv) -> Result<usize, CatalogueError> {
    if !algprops::is_associative(lam) {
        return Err(CatalogueError::NotNilpotentAssociative);
    }
    algprops::nilpotency_class(lam).map_err(|_| CatalogueError::NotNilpotentAssociative)
}

/// The table id of a nilpotent associative structure vector, decided by
/// invariants alone (no square roots needed). For `a(δ)` the parameter is
/// `det M / (M12 − M21)²`, which is invariant under change of basis.
pub fn identify(lam: &Sv) -> Result<AlgebraId, CatalogueError> {
    let class = check_input(lam)?;
    let f = lam.field();
    match class {
        0 => return Ok(AlgebraId::A0),
        3 => return Ok(AlgebraId::C5),
        2 => {}
        _ => return Err(CatalogueError::NotNilpotentAssociative),
    }
    if algprops::annihilator_dim(lam) == 2 {
        return Ok(AlgebraId::C1);
    }
    let p = pairing(lam)?;
    let mm = &p.m;
    let a = mm[0][1].sub(&mm[1][0]);
    let det = mm[0][0].mul(&mm[1][1]).sub(&mm[0][1].mul(&mm[1][0]));
    if f.characteristic() == 2 {
        if a.is_zero() {
            let alternating = mm[0][0].is_zero() && mm[1][1].is_zero();
            return Ok(if alternating {
                AlgebraId::L1
            } else {
                AlgebraId::C3
            });
        }
    } else {
        let sym_zero =
            mm[0][0].is_zero() && mm[1][1].is_zero() && mm[0][1].add(&mm[1][0]).is_zero();
        if sym_zero {
            return Ok(AlgebraId::L1);
        }
        if a.is_zero() {
            return Ok(AlgebraId::C3);
        }
    }
    Ok(AlgebraId::Adelta(det.checked_div(&a.mul(&a))?))
}

fn columns(v: [&[Fe; 3]; 3]) -> Matrix3<Fe> {
    Matrix3::from_fn(|r, c| v[c][r].clone())
}

fn small_vectors(f: &Field) -> Vec<[Fe; 3]> {
    let coeffs: Vec<Fe> = match f.elements() {
        Some(all) if all.len() <= 16 => all,
        _ => (-2..=2).map(|n| f.from_int(n)).collect(),
    };
    let mut out = Vec::new();
    for a in &coeffs {
        for b in &coeffs {
            for c in &coeffs {
                out.push([a.clone(), b.clone(), c.clone()]);
            }
        }
    }
    out
}

/// [`identify`] plus a change of basis `g` with `λg = structure_of(id)`.
/// Fails with `NeedsFieldExtension` when the normal form needs a square
/// root the field does not have.
pub fn identify_with_witness(lam: &Sv) -> Result<(AlgebraId, Matrix3<Fe>), CatalogueError> {
    let id = identify(lam)?;
    let f = lam.field().clone();
    let g = match &id {
        AlgebraId::A0 => Matrix3::identity(&f.one()),
        AlgebraId::C5 => {
            let x = small_vectors(&f)
                .into_iter()
                .find(|x| {
                    let xx = lam.product(x, x);
                    lam.product(&xx, x).iter().any(|c| !c.is_zero())
                })
                .ok_or_else(|| {
                    CatalogueError::NeedsFieldExtension("a vector with nonzero cube".into())
                })?;
            let x2 = lam.product(&x, &x);
            let x3 = lam.product(&x, &x2);
            columns([&x, &x2, &x3])
        }
        AlgebraId::C1 => {
            let x = small_vectors(&f)
                .into_iter()
                .find(|x| lam.product(x, x).iter().any(|c| !c.is_zero()))
                .ok_or_else(|| {
                    CatalogueError::NeedsFieldExtension("a vector with nonzero square".into())
                })?;
            let xx = lam.product(&x, &x);
            let y = algprops::annihilator_basis(lam)
                .into_iter()
                .find(|y| independent(&[&xx, y, &x]))
                .ok_or(CatalogueError::NotNilpotentAssociative)?;
            columns([&xx, &y, &x])
        }
        AlgebraId::L1 => {
            let p = pairing(lam)?;
            let v1: [Fe; 3] = std::array::from_fn(|i| p.z[i].mul(&p.m[0][1]));
            columns([&v1, &p.w[0], &p.w[1]])
        }
        AlgebraId::Adelta(_) | AlgebraId::C3 => {
            let p = pairing(lam)?;
            let o = f.one();
            let z0 = f.zero();
            let q = |c1: &Fe, c2: &Fe| {
                // M(x, x) for x = c1 w1 + c2 w2
                c1.mul(c1)
                    .mul(&p.m[0][0])
                    .add(&c1.mul(c2).mul(&p.m[0][1].add(&p.m[1][0])))
                    .add(&c2.mul(c2).mul(&p.m[1][1]))
            };
            let (c1, c2) = [
                (o.clone(), z0.clone()),
                (z0.clone(), o.clone()),
                (o.clone(), o.clone()),
            ]
            .into_iter()
            .find(|(a, b)| !q(a, b).is_zero())
            .ok_or(CatalogueError::NotNilpotentAssociative)?;
            let s = q(&c1, &c2);
            let x = lin(&c1, &p.w[0], &c2, &p.w[1]);
            let xx = lam.product(&x, &x);
            // r1 = Mᵀx and r2 = Mx in w-coordinates
            let r1 = [
                c1.mul(&p.m[0][0]).add(&c2.mul(&p.m[1][0])),
                c1.mul(&p.m[0][1]).add(&c2.mul(&p.m[1][1])),
            ];
            let r2 = [
                p.m[0][0].mul(&c1).add(&p.m[0][1].mul(&c2)),
                p.m[1][0].mul(&c1).add(&p.m[1][1].mul(&c2)),
            ];
            let (d1, d2) = if matches!(id, AlgebraId::Adelta(_)) {
                // x·y = s z and y·x = 0
                let det = r1[0].mul(&r2[1]).sub(&r1[1].mul(&r2[0]));
                let inv = det.checked_inv()?;
                (s.mul(&r2[1]).mul(&inv), s.mul(&r2[0]).neg().mul(&inv))
            } else {
                // x·y = 0, then rescale y so that y·y = x·x
                let (y1, y2) = (r1[1].neg(), r1[0].clone());
                let dy = q(&y1, &y2);
                let ratio = s.checked_div(&dy)?;
                let r = fields::sqrt(&ratio)?
                    .ok_or_else(|| CatalogueError::NeedsFieldExtension(format!("x^2-({ratio})")))?;
                (y1.mul(&r), y2.mul(&r))
            };
            let y = lin(&d1, &p.w[0], &d2, &p.w[1]);
            columns([&xx, &x, &y])
        }
        _ => unreachable!("identify returns table ids"),
    };
    let target = structure_of(&id, &f)?;
    let got = lam.act(&g)?;
    if got != target {
        return Err(CatalogueError::WitnessFailed(format!(
            "normal form gave {got}, expected {target}"
        )));
    }
    Ok((id, g))
}

/// [`identify_with_witness`], adjoining `√det M` when c3's normal form
/// needs it. Returns the field the witness lives in.
pub fn identify_with_witness_extending(
    lam: &Sv,
) -> Result<(AlgebraId, Matrix3<Fe>, Field), CatalogueError> {
    match identify_with_witness(lam) {
        Ok((id, g)) => Ok((id, g, lam.field().clone())),
        Err(CatalogueError::NeedsFieldExtension(need)) => {
            if identify(lam)? != AlgebraId::C3 {
                return Err(CatalogueError::NeedsFieldExtension(need));
            }
            let p = pairing(lam)?;
            let det = p.m[0][0].mul(&p.m[1][1]).sub(&p.m[0][1].mul(&p.m[1][0]));
            let (_, ext) = sqrt_or_extend(&det)?;
            let (id, g) = identify_with_witness(&lam.coerce(&ext)?)?;
            Ok((id, g, ext))
        }
        Err(e) => Err(e),
    }
}
