//! Seeded random search for witness curves over a small finite field.
//!
//! Candidate `i` is drawn from its own ChaCha stream, so the outcome depends
//! only on the seed and the budget, never on scheduling.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{verify_witness, Curve, DegenError};
use crate::catalogue::{self, AlgebraId};
use crate::fields::{Fe, Field, SmallField};
use crate::structspace::StructureVector;

/// Highest supported entry degree.
pub const MAX_DEGREE: usize = 4;
const LEN: usize = 4 * MAX_DEGREE + 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExecutionMode {
    Sequential,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub degree: usize,
    pub budget: u64,
    pub seed: u64,
    pub mode: ExecutionMode,
}

impl SearchConfig {
    pub fn new(degree: usize, budget: u64, seed: u64) -> SearchConfig {
        SearchConfig {
            degree,
            budget,
            seed,
            mode: ExecutionMode::default(),
        }
    }

    pub fn with_mode(self, mode: ExecutionMode) -> SearchConfig {
        SearchConfig { mode, ..self }
    }
}

#[derive(Debug, Clone)]
pub struct Found {
    pub index: u64,
    pub curve: Curve,
    pub limit: StructureVector<Fe>,
    /// The same entries read over the rationals, when that re-verifies.
    pub lifted: Option<Curve>,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub found: Option<Found>,
    pub tried: u64,
}

type Poly = [u8; LEN];

struct Arith<'a> {
    f: &'a SmallField,
}

impl Arith<'_> {
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        std::array::from_fn(|i| self.f.add(a[i], b[i]))
    }

    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        std::array::from_fn(|i| self.f.sub(a[i], b[i]))
    }

    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = [0u8; LEN];
        let (da, db) = (deg(a), deg(b));
        let (Some(da), Some(db)) = (da, db) else {
            return out;
        };
        for i in 0..=da {
            if a[i] == 0 {
                continue;
            }
            for j in 0..=db.min(LEN - 1 - i) {
                if b[j] != 0 {
                    out[i + j] = self.f.add(out[i + j], self.f.mul(a[i], b[j]));
                }
            }
        }
        out
    }
}

fn deg(a: &Poly) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn ord(a: &Poly) -> Option<usize> {
    a.iter().position(|&c| c != 0)
}

fn monomial(c: u8, e: usize) -> Poly {
    let mut p = [0u8; LEN];
    p[e] = c;
    p
}

fn constant_invertible(f: &SmallField, rng: &mut ChaCha8Rng) -> [[u8; 3]; 3] {
    let q = f.order();
    loop {
        let m: [[u8; 3]; 3] =
            std::array::from_fn(|_| std::array::from_fn(|_| rng.gen_range(0..q) as u8));
        let t1 = f.sub(f.mul(m[1][1], m[2][2]), f.mul(m[1][2], m[2][1]));
        let t2 = f.sub(f.mul(m[1][0], m[2][2]), f.mul(m[1][2], m[2][0]));
        let t3 = f.sub(f.mul(m[1][0], m[2][1]), f.mul(m[1][1], m[2][0]));
        let d = f.add(
            f.sub(f.mul(m[0][0], t1), f.mul(m[0][1], t2)),
            f.mul(m[0][2], t3),
        );
        if d != 0 {
            return m;
        }
    }
}

fn random_monomial(f: &SmallField, rng: &mut ChaCha8Rng, max_e: usize) -> Poly {
    let c = rng.gen_range(1..f.order()) as u8;
    monomial(c, rng.gen_range(0..=max_e))
}

fn random_permutation(rng: &mut ChaCha8Rng) -> [usize; 3] {
    const P: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    P[rng.gen_range(0..6)]
}

/// `P · diag(t^a) · R` with `P` constant and `R` of one of several shapes.
fn sample(f: &SmallField, degree: usize, rng: &mut ChaCha8Rng) -> [[Poly; 3]; 3] {
    let ar = Arith { f };
    let exps: [usize; 3] = std::array::from_fn(|_| rng.gen_range(0..=degree));
    let kind = rng.gen_range(0..4);
    let mut right: [[Poly; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| [0u8; LEN]));
    match kind {
        // constant
        0 => {
            let q = constant_invertible(f, rng);
            for r in 0..3 {
                for c in 0..3 {
                    right[r][c] = monomial(q[r][c], 0);
                }
            }
        }
        // unipotent with monomial entries, degree-capped per row
        1 => {
            for r in 0..3 {
                right[r][r] = monomial(1, 0);
                for c in r + 1..3 {
                    if rng.gen_bool(0.5) {
                        right[r][c] = random_monomial(f, rng, degree - exps[r]);
                    }
                }
            }
        }
        // sparse: permutation with monomial perturbations
        _ => {
            let p = random_permutation(rng);
            for r in 0..3 {
                right[r][p[r]] = monomial(rng.gen_range(1..f.order()) as u8, 0);
                for c in 0..3 {
                    if c != p[r] && rng.gen_bool(0.25) {
                        right[r][c] = random_monomial(f, rng, degree - exps[r]);
                    }
                }
            }
        }
    }
    let left = if rng.gen_bool(0.5) {
        let p = random_permutation(rng);
        let mut m = [[0u8; 3]; 3];
        for r in 0..3 {
            m[r][p[r]] = rng.gen_range(1..f.order()) as u8;
        }
        m
    } else {
        constant_invertible(f, rng)
    };
    // left · diag(t^exps) · right
    std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            (0..3).fold([0u8; LEN], |acc, k| {
                if left[r][k] == 0 {
                    return acc;
                }
                let term = ar.mul(&monomial(left[r][k], exps[k]), &right[k][c]);
                ar.add(&acc, &term)
            })
        })
    })
}

struct Problem<'a> {
    f: &'a SmallField,
    support: Vec<((usize, usize, usize), u8)>,
    target: AlgebraId,
    target_vec: StructureVector<Fe>,
    target_commutative: bool,
}

impl Problem<'_> {
    /// The limit as a dense table, or `None` if `g(0)` is invertible, `g` is
    /// singular, or a coefficient has a pole.
    fn limit(&self, g: &[[Poly; 3]; 3]) -> Option<[u8; 27]> {
        let ar = Arith { f: self.f };
        let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
            ar.sub(
                &ar.mul(&g[r1][c1], &g[r2][c2]),
                &ar.mul(&g[r1][c2], &g[r2][c1]),
            )
        };
        // adj[c][k] = cofactor(k, c)
        let mut adj: [[Poly; 3]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| [0u8; LEN]));
        for r in 0..3 {
            for c in 0..3 {
                let rs: Vec<usize> = (0..3).filter(|&x| x != r).collect();
                let cs: Vec<usize> = (0..3).filter(|&x| x != c).collect();
                let m = minor(rs[0], rs[1], cs[0], cs[1]);
                adj[c][r] = if (r + c) % 2 == 0 {
                    m
                } else {
                    ar.sub(&[0u8; LEN], &m)
                };
            }
        }
        let det = (0..3).fold([0u8; LEN], |acc, c| {
            ar.add(&acc, &ar.mul(&g[0][c], &adj[c][0]))
        });
        let v = ord(&det)?;
        if v == 0 {
            return None;
        }
        let dinv = self.f.inv(det[v]).unwrap();
        let mut out = [0u8; 27];
        let mut dense: [Poly; 27] = [[0u8; LEN]; 27];
        for &((i, j, k), lam) in &self.support {
            for a in 0..3 {
                if deg(&g[i][a]).is_none() {
                    continue;
                }
                let x = ar.mul(&monomial(lam, 0), &g[i][a]);
                for b in 0..3 {
                    if deg(&g[j][b]).is_none() {
                        continue;
                    }
                    let y = ar.mul(&x, &g[j][b]);
                    for c in 0..3 {
                        let n = 9 * a + 3 * b + c;
                        dense[n] = ar.add(&dense[n], &ar.mul(&y, &adj[c][k]));
                    }
                }
            }
        }
        for n in 0..27 {
            if let Some(o) = ord(&dense[n]) {
                if o < v {
                    return None;
                }
            }
            out[n] = self.f.mul(dense[n][v], dinv);
        }
        Some(out)
    }

    fn matches(&self, lim: &[u8; 27]) -> Option<StructureVector<Fe>> {
        if self.target == AlgebraId::A0 {
            return lim
                .iter()
                .all(|&x| x == 0)
                .then(|| StructureVector::zero(&self.f.field().zero()));
        }
        if lim.iter().all(|&x| x == 0) {
            return None;
        }
        let commutative = (0..27).all(|n| lim[n] == lim[9 * ((n / 3) % 3) + 3 * (n / 9) + n % 3]);
        if commutative != self.target_commutative {
            return None;
        }
        let dense: Vec<Fe> = lim.iter().map(|&x| self.f.element(x)).collect();
        let mu = StructureVector::from_dense(&self.f.field().zero(), &dense);
        if mu == self.target_vec {
            return Some(mu);
        }
        let got = catalogue::identify(&mu).ok()?;
        (got == self.target).then_some(mu)
    }

    fn to_curve(&self, g: &[[Poly; 3]; 3]) -> Option<Curve> {
        let strings: Vec<Vec<String>> = g
            .iter()
            .map(|row| {
                row.iter()
                    .map(|p| render(p, |x| self.f.element(x).to_string()))
                    .collect()
            })
            .collect();
        Curve::parse(self.f.field(), &strings).ok()
    }
}

fn render(p: &Poly, coeff: impl Fn(u8) -> String) -> String {
    let terms: Vec<String> = (0..LEN)
        .rev()
        .filter(|&e| p[e] != 0)
        .map(|e| {
            let c = coeff(p[e]);
            let c = if c.contains(['+', '-']) || c.contains('*') {
                format!("({c})")
            } else {
                c
            };
            match e {
                0 => c,
                1 => format!("{c}*t"),
                _ => format!("{c}*t^{e}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Residues in `(−p/2, p/2]` as integers, for lifting prime-field curves.
fn lift(f: &SmallField, p: &Poly) -> String {
    let q = f.order() as i64;
    render(p, |x| {
        let v = x as i64;
        let s = if v > q / 2 { v - q } else { v };
        s.to_string()
    })
}

fn lift_id(id: &AlgebraId, f: &SmallField) -> Option<AlgebraId> {
    let q = f.order() as i64;
    let lift_param = |x: &Fe| {
        let v = x.as_residue()? as i64;
        Some(Field::rationals().from_int(if v > q / 2 { v - q } else { v }))
    };
    Some(match id {
        AlgebraId::Adelta(x) => AlgebraId::Adelta(lift_param(x)?),
        AlgebraId::A3kappa(x) => AlgebraId::A3kappa(lift_param(x)?),
        AlgebraId::Hbeta(x) => AlgebraId::Hbeta(lift_param(x)?),
        other => other.clone(),
    })
}

/// Look for `g(t)` with entries of degree at most `degree` whose limit is
/// isomorphic to `dst`. Finding nothing is evidence, not proof.
pub fn search_witness(
    src: &AlgebraId,
    dst: &AlgebraId,
    field: &Field,
    cfg: &SearchConfig,
) -> Result<SearchOutcome, DegenError> {
    let sf = SmallField::new(field)?;
    let degree = cfg.degree.clamp(1, MAX_DEGREE);
    let lam = catalogue::structure_of(src, field)?;
    let target = catalogue::canonicalize(dst, field)?.id;
    let target_vec = catalogue::structure_of(&target, field)?;
    let problem = Problem {
        f: &sf,
        support: lam
            .support()
            .map(|(t, c)| ((t.i() - 1, t.j() - 1, t.k() - 1), sf.index(c)))
            .collect(),
        target_commutative: crate::algprops::is_commutative(&target_vec),
        target,
        target_vec,
    };
    let attempt = |i: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        rng.set_stream(i);
        let g = sample(&sf, degree, &mut rng);
        let lim = problem.limit(&g)?;
        let mu = problem.matches(&lim)?;
        Some((i, g, mu))
    };
    let hit = run(cfg, attempt);
    let Some((index, g, mu)) = hit else {
        return Ok(SearchOutcome {
            found: None,
            tried: cfg.budget,
        });
    };
    let curve = problem
        .to_curve(&g)
        .expect("a curve with a limit is invertible");
    verify_witness(&lam, &curve, dst, true)?;
    let lifted =
        if field.order() == Some(field.characteristic() as u128) && field.characteristic() > 2 {
            let strings: Vec<Vec<String>> = g
                .iter()
                .map(|r| r.iter().map(|p| lift(&sf, p)).collect())
                .collect();
            let q = Field::rationals();
            let ok = |c: &Curve| -> Option<()> {
                let s = lift_id(src, &sf)?;
                let d = lift_id(dst, &sf)?;
                verify_witness(&catalogue::structure_of(&s, &q).ok()?, c, &d, true)
                    .ok()
                    .map(|_| ())
            };
            Curve::parse(&q, &strings).ok().filter(|c| ok(c).is_some())
        } else {
            None
        };
    Ok(SearchOutcome {
        found: Some(Found {
            index,
            curve,
            limit: mu,
            lifted,
        }),
        tried: index + 1,
    })
}

#[cfg(feature = "parallel")]
fn run<T: Send>(cfg: &SearchConfig, attempt: impl Fn(u64) -> Option<T> + Sync + Send) -> Option<T> {
    use rayon::prelude::*;
    match cfg.mode {
        ExecutionMode::Parallel => (0..cfg.budget).into_par_iter().find_map_first(attempt),
        ExecutionMode::Sequential => (0..cfg.budget).find_map(attempt),
    }
}

#[cfg(not(feature = "parallel"))]
fn run<T: Send>(cfg: &SearchConfig, attempt: impl Fn(u64) -> Option<T> + Sync + Send) -> Option<T> {
    (0..cfg.budget).find_map(attempt)
}
