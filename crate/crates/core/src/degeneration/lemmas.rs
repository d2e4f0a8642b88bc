//! Polynomial identity checks for the coefficient formulas used in the two
//! non-degeneration lemmas. Everything is denominator-cleared: `act_cleared`
//! returns `det(g)·λg`, and the upper-triangular expansions are multiplied
//! through by `b11`.

use super::{mark_gate, triple_name, CharClass};
use crate::fields::{Fe, Field};
use crate::polyring::{MultiPoly, Registry};
use crate::ring::Ring;
use crate::structspace::{Matrix3, StructureVector, TripleIndex};

type Pv = StructureVector<MultiPoly>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaInput {
    /// `231 + ξ·321`, acted on by the generic `g`.
    SigmaXi,
    /// `231 + β·321`, acted on by upper-triangular `b`.
    SigmaBeta,
    /// `−231 + 321 + 331`.
    Nu,
    /// `221 + 2·321 + 331`.
    Rho,
}

/// A deliberate corruption, used to show that the checks have teeth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mutation {
    /// Add `delta` to one structure constant of an input vector.
    Input {
        input: LemmaInput,
        triple: TripleIndex,
        delta: i64,
    },
    /// Add `delta` to the expected right-hand side of the named check.
    Formula { name: String, delta: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: String,
    pub variables: usize,
    pub passed: bool,
    /// First offending coefficient, when the check failed.
    pub detail: Option<String>,
}

#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub field: Field,
    pub checks: Vec<IdentityCheck>,
}

impl LemmaReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail.as_deref().unwrap_or("")))
            .collect()
    }

    pub fn check(&self, name: &str) -> Option<&IdentityCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Ctx<'a> {
    field: &'a Field,
    mutation: Option<&'a Mutation>,
    checks: Vec<IdentityCheck>,
}

impl Ctx<'_> {
    fn input(&self, which: LemmaInput, mut v: Pv) -> Pv {
        if let Some(Mutation::Input {
            input,
            triple,
            delta,
        }) = self.mutation
        {
            if *input == which {
                let reg = v.proto().registry().clone();
                let bump = MultiPoly::constant(&reg, self.field.from_int(*delta));
                let c = v.get(*triple).add(&bump);
                v.set(*triple, c);
            }
        }
        v
    }

    fn rhs(&self, name: &str, p: MultiPoly) -> MultiPoly {
        match self.mutation {
            Some(Mutation::Formula { name: n, delta }) if n == name => {
                let bump = MultiPoly::constant(p.registry(), self.field.from_int(*delta));
                p.add(&bump)
            }
            _ => p,
        }
    }

    /// One scalar identity `lhs = rhs`.
    fn scalar(&mut self, name: &str, vars: usize, lhs: MultiPoly, rhs: MultiPoly) {
        let rhs = self.rhs(name, rhs);
        let passed = lhs == rhs;
        let detail = (!passed).then(|| format!("lhs {lhs} != rhs {rhs}"));
        self.checks.push(IdentityCheck {
            name: name.into(),
            variables: vars,
            passed,
            detail,
        });
    }

    /// All 27 coordinates of `lhs = rhs`.
    fn vector(&mut self, name: &str, vars: usize, lhs: &Pv, rhs: &Pv) {
        let mut detail = None;
        for t in TripleIndex::all() {
            let r = self.rhs(&format!("{name}[{}]", triple_name(t)), rhs.get(t));
            let r = if t == TripleIndex::new(2, 3, 1).unwrap() {
                self.rhs(name, r)
            } else {
                r
            };
            let l = lhs.get(t);
            if l != r {
                detail = Some(format!("coefficient {}: {l} != {r}", triple_name(t)));
                break;
            }
        }
        self.checks.push(IdentityCheck {
            name: name.into(),
            variables: vars,
            passed: detail.is_none(),
            detail,
        });
    }
}

fn sv(reg: &Registry, f: &Field, terms: &[((usize, usize, usize), MultiPoly)]) -> Pv {
    let mut v = StructureVector::zero(&MultiPoly::zero(f, reg));
    for ((i, j, k), c) in terms {
        let t = TripleIndex::new(*i, *j, *k).unwrap();
        let s = v.get(t).add(c);
        v.set(t, s);
    }
    v
}

/// Runs every identity over `field` (any field; the intended ones are the
/// rationals and small prime fields). A clean run over the rationals or
/// GF(2) opens the session gate for that characteristic case.
pub fn verify_lemma_identities(field: &Field, mutation: Option<&Mutation>) -> LemmaReport {
    let f = field;
    let mut cx = Ctx {
        field: f,
        mutation,
        checks: Vec::new(),
    };
    let c = |reg: &Registry, n: i64| MultiPoly::constant(reg, f.from_int(n));

    // generic g and ξ: 10 variables
    let greg = Registry::new(&[
        "g11", "g12", "g13", "g21", "g22", "g23", "g31", "g32", "g33", "xi",
    ]);
    let gv = MultiPoly::vars(f, &greg);
    let g = Matrix3::from_fn(|r, col| gv[3 * r + col].clone());
    let xi = gv[9].clone();
    let (g22, g23, g32, g33) = (&gv[4], &gv[5], &gv[7], &gv[8]);
    let one_g = c(&greg, 1);
    let sigma_xi = cx.input(
        LemmaInput::SigmaXi,
        sv(
            &greg,
            f,
            &[((2, 3, 1), one_g.clone()), ((3, 2, 1), xi.clone())],
        ),
    );
    let mu = sigma_xi.act_cleared(&g);
    let gamma = g22.mul(g33).sub(&g23.mul(g32));
    let one_xi = one_g.add(&xi);
    let m231 = gamma.mul(&g22.mul(g33).add(&xi.mul(g23).mul(g32)));
    let m321 = gamma.mul(&g23.mul(g32).add(&xi.mul(g22).mul(g33)));
    let m331 = gamma.mul(&one_xi).mul(g23).mul(g33);
    let m221 = gamma.mul(&one_xi).mul(g22).mul(g32);
    let at = |v: &Pv, i, j, k| v.at(i, j, k);
    for lemma in ["lemma-3.1", "lemma-3.2"] {
        cx.scalar(
            &format!("{lemma} mu231"),
            10,
            at(&mu, 2, 3, 1),
            m231.clone(),
        );
        cx.scalar(
            &format!("{lemma} mu321"),
            10,
            at(&mu, 3, 2, 1),
            m321.clone(),
        );
        cx.scalar(
            &format!("{lemma} mu331"),
            10,
            at(&mu, 3, 3, 1),
            m331.clone(),
        );
        cx.scalar(
            &format!("{lemma} mu221"),
            10,
            at(&mu, 2, 2, 1),
            m221.clone(),
        );
    }
    let sym = g22.mul(g33).add(&g23.mul(g32));
    cx.scalar(
        "lemma-3.2 mu321+mu231",
        10,
        at(&mu, 3, 2, 1).add(&at(&mu, 2, 3, 1)),
        gamma.mul(&one_xi).mul(&sym),
    );
    if f.characteristic() == 2 {
        cx.scalar(
            "lemma-3.2 gamma=gamma' (char 2)",
            4,
            gamma.clone(),
            sym.clone(),
        );
    }

    // upper-triangular b and β: 7 variables
    let breg = Registry::new(&["b11", "b12", "b13", "b22", "b23", "b33", "beta"]);
    let bv = MultiPoly::vars(f, &breg);
    let (b11, b12, b13, b22, b23, b33, beta) =
        (&bv[0], &bv[1], &bv[2], &bv[3], &bv[4], &bv[5], &bv[6]);
    let z = MultiPoly::zero(f, &breg);
    let b = Matrix3::new([
        [b11.clone(), b12.clone(), b13.clone()],
        [z.clone(), b22.clone(), b23.clone()],
        [z.clone(), z.clone(), b33.clone()],
    ]);
    let det_b = b.det().clone();
    let one_b = c(&breg, 1);
    let lam = cx.input(
        LemmaInput::SigmaBeta,
        sv(
            &breg,
            f,
            &[((2, 3, 1), one_b.clone()), ((3, 2, 1), beta.clone())],
        ),
    );
    let lam_b = lam.act_cleared(&b).scale(b11);
    let p = b22.mul(b33);
    let expected = sv(
        &breg,
        f,
        &[
            ((2, 3, 1), p.clone()),
            ((3, 2, 1), beta.mul(&p)),
            ((3, 3, 1), one_b.add(beta).mul(b23).mul(b33)),
        ],
    )
    .scale(&det_b);
    cx.vector("lemma-3.1 lambda*b", 7, &lam_b, &expected);
    cx.scalar(
        "lemma-3.1 X321-beta*X231 on lambda*B",
        7,
        at(&lam_b, 3, 2, 1).sub(&beta.mul(&at(&lam_b, 2, 3, 1))),
        z.clone(),
    );

    let nu = cx.input(
        LemmaInput::Nu,
        sv(
            &breg,
            f,
            &[
                ((2, 3, 1), c(&breg, -1)),
                ((3, 2, 1), one_b.clone()),
                ((3, 3, 1), one_b.clone()),
            ],
        ),
    );
    let nu_b = nu.act_cleared(&b).scale(b11);
    let expected = sv(
        &breg,
        f,
        &[
            ((2, 3, 1), p.neg()),
            ((3, 2, 1), p.clone()),
            ((3, 3, 1), b33.mul(b33)),
        ],
    )
    .scale(&det_b);
    cx.vector("lemma-3.2 nu*b", 6, &nu_b, &expected);
    cx.scalar(
        "lemma-3.2 X231+X321 on nu*B",
        6,
        at(&nu_b, 2, 3, 1).add(&at(&nu_b, 3, 2, 1)),
        z.clone(),
    );

    // ν ∈ O(ρ) through e2' = e2 − e3, exactly over the field
    let ereg = Registry::new::<&str>(&[]);
    let k = |n: i64| MultiPoly::constant(&ereg, f.from_int(n));
    let rho = cx.input(
        LemmaInput::Rho,
        sv(
            &ereg,
            f,
            &[((2, 2, 1), k(1)), ((3, 2, 1), k(2)), ((3, 3, 1), k(1))],
        ),
    );
    let change: Matrix3<MultiPoly> = Matrix3::from_ints(f, [[1, 0, 0], [0, 1, 0], [0, -1, 1]])
        .map(|x: &Fe| MultiPoly::constant(&ereg, x.clone()));
    let nu_exact = sv(
        &ereg,
        f,
        &[((2, 3, 1), k(-1)), ((3, 2, 1), k(1)), ((3, 3, 1), k(1))],
    );
    // the change has determinant 1, so act_cleared is the action itself
    cx.vector(
        "lemma-3.2 nu in O(rho)",
        0,
        &rho.act_cleared(&change),
        &nu_exact,
    );

    let report = LemmaReport {
        field: f.clone(),
        checks: cx.checks,
    };
    let is_base = f.characteristic() == 0 || (f.characteristic() == 2 && f.order() == Some(2));
    if mutation.is_none() && report.all_passed() && is_base {
        mark_gate(CharClass::of_field(f));
    }
    report
}
