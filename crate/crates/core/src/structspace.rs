//! Structure vectors on a fixed 3-dimensional space and the right action of
//! GL₃ by change of basis.
//!
//! `λ_{ijk}` is the `e_k` coefficient of `e_i e_j`. Indices are 1-based at the
//! API surface. For a matrix `g` the new basis is `v_j = Σ_i g_{ij} e_i`, and
//! `(λg)_{abc} = Σ g_{ia} g_{jb} ĝ_{ck} λ_{ijk}` with `ĝ = g⁻¹`.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fields::{Fe, Field, FieldError};
use crate::ring::{FieldLike, Ring};
use crate::text::atomize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructError {
    #[error("index ({0},{1},{2}) out of range")]
    IndexOutOfRange(usize, usize, usize),
    #[error("matrix is not invertible")]
    Singular,
    #[error("product e{0}e{1} given twice")]
    DuplicateRelation(usize, usize),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TripleIndex {
    i: u8,
    j: u8,
    k: u8,
}

impl TripleIndex {
    pub fn new(i: usize, j: usize, k: usize) -> Result<TripleIndex, StructError> {
        if [i, j, k].iter().any(|&x| !(1..=3).contains(&x)) {
            return Err(StructError::IndexOutOfRange(i, j, k));
        }
        Ok(TripleIndex {
            i: i as u8,
            j: j as u8,
            k: k as u8,
        })
    }

    /// 0-based position in lexicographic order.
    pub fn flat(self) -> usize {
        9 * (self.i as usize - 1) + 3 * (self.j as usize - 1) + (self.k as usize - 1)
    }

    pub fn from_flat(n: usize) -> TripleIndex {
        assert!(n < 27);
        TripleIndex {
            i: (n / 9 + 1) as u8,
            j: (n / 3 % 3 + 1) as u8,
            k: (n % 3 + 1) as u8,
        }
    }

    pub fn all() -> impl Iterator<Item = TripleIndex> {
        (0..27).map(TripleIndex::from_flat)
    }

    pub fn i(self) -> usize {
        self.i as usize
    }

    pub fn j(self) -> usize {
        self.j as usize
    }

    pub fn k(self) -> usize {
        self.k as usize
    }
}

impl fmt::Display for TripleIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.i, self.j, self.k)
    }
}

/// Sparse structure vector; absent entries are zero.
#[derive(Clone, PartialEq)]
pub struct StructureVector<S: Ring> {
    zero: S,
    entries: BTreeMap<TripleIndex, S>,
}

impl<S: Ring> StructureVector<S> {
    /// The zero vector with scalars shaped like `proto`.
    pub fn zero(proto: &S) -> StructureVector<S> {
        StructureVector {
            zero: proto.zero_like(),
            entries: BTreeMap::new(),
        }
    }

    pub fn basis_vector(
        proto: &S,
        i: usize,
        j: usize,
        k: usize,
    ) -> Result<StructureVector<S>, StructError> {
        let mut v = StructureVector::zero(proto);
        v.set(TripleIndex::new(i, j, k)?, proto.one_like());
        Ok(v)
    }

    /// Build from `(i, j, [e1, e2, e3] coefficients of e_i e_j)`.
    pub fn from_relations(
        proto: &S,
        rels: &[(usize, usize, [S; 3])],
    ) -> Result<StructureVector<S>, StructError> {
        let mut v = StructureVector::zero(proto);
        let mut seen = Vec::new();
        for (i, j, coeffs) in rels {
            if seen.contains(&(*i, *j)) {
                return Err(StructError::DuplicateRelation(*i, *j));
            }
            seen.push((*i, *j));
            for (k, c) in coeffs.iter().enumerate() {
                v.set(TripleIndex::new(*i, *j, k + 1)?, c.clone());
            }
        }
        Ok(v)
    }

    pub fn from_dense(proto: &S, dense: &[S]) -> StructureVector<S> {
        assert_eq!(dense.len(), 27);
        let mut v = StructureVector::zero(proto);
        for (n, c) in dense.iter().enumerate() {
            v.set(TripleIndex::from_flat(n), c.clone());
        }
        v
    }

    pub fn dense(&self) -> Vec<S> {
        TripleIndex::all().map(|t| self.get(t)).collect()
    }

    pub fn proto(&self) -> &S {
        &self.zero
    }

    pub fn get(&self, t: TripleIndex) -> S {
        self.entries
            .get(&t)
            .cloned()
            .unwrap_or_else(|| self.zero.clone())
    }

    /// `λ_{ijk}` with 1-based indices; panics when out of range.
    pub fn at(&self, i: usize, j: usize, k: usize) -> S {
        self.get(TripleIndex::new(i, j, k).expect("index in range"))
    }

    pub fn set(&mut self, t: TripleIndex, c: S) {
        if c.is_zero() {
            self.entries.remove(&t);
        } else {
            self.entries.insert(t, c);
        }
    }

    pub fn support(&self) -> impl Iterator<Item = (TripleIndex, &S)> {
        self.entries.iter().map(|(t, c)| (*t, c))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, o: &StructureVector<S>) -> StructureVector<S> {
        let mut out = self.clone();
        for (t, c) in o.support() {
            out.set(t, out.get(t).add(c));
        }
        out
    }

    pub fn sub(&self, o: &StructureVector<S>) -> StructureVector<S> {
        self.add(&o.scale(&self.zero.from_int_like(-1)))
    }

    pub fn scale(&self, c: &S) -> StructureVector<S> {
        let mut out = StructureVector::zero(&self.zero);
        for (t, x) in self.support() {
            out.set(t, x.mul(c));
        }
        out
    }

    pub fn map<T: Ring, F: Fn(&S) -> T>(&self, proto: &T, f: F) -> StructureVector<T> {
        let mut out = StructureVector::zero(proto);
        for (t, x) in self.support() {
            out.set(t, f(x));
        }
        out
    }

    /// `[u, v] = Σ u_i v_j λ_{ijk} e_k`.
    pub fn product(&self, u: &[S; 3], v: &[S; 3]) -> [S; 3] {
        let mut out = [self.zero.clone(), self.zero.clone(), self.zero.clone()];
        for (t, c) in self.support() {
            let (a, b) = (&u[t.i() - 1], &v[t.j() - 1]);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            out[t.k() - 1] = out[t.k() - 1].add(&a.mul(b).mul(c));
        }
        out
    }

    /// `det(g)·(λg)`, which needs no division: `Σ g_{ia} g_{jb} adj_{ck} λ_{ijk}`.
    pub fn act_cleared(&self, g: &Matrix3<S>) -> StructureVector<S> {
        let adj = g.adjugate();
        let mut dense: Vec<S> = vec![self.zero.clone(); 27];
        for (t, lam) in self.support() {
            let (i, j, k) = (t.i() - 1, t.j() - 1, t.k() - 1);
            for a in 0..3 {
                let ga = &g.m[i][a];
                if ga.is_zero() {
                    continue;
                }
                let x = lam.mul(ga);
                for b in 0..3 {
                    let gb = &g.m[j][b];
                    if gb.is_zero() {
                        continue;
                    }
                    let y = x.mul(gb);
                    for c in 0..3 {
                        let h = &adj.m[c][k];
                        if h.is_zero() {
                            continue;
                        }
                        let n = 9 * a + 3 * b + c;
                        dense[n] = dense[n].add(&y.mul(h));
                    }
                }
            }
        }
        StructureVector::from_dense(&self.zero, &dense)
    }
}

impl<S: FieldLike> StructureVector<S> {
    /// The right action `λ ↦ λg`.
    pub fn act(&self, g: &Matrix3<S>) -> Result<StructureVector<S>, StructError> {
        let inv_det = g.det().inv().ok_or(StructError::Singular)?;
        Ok(self.act_cleared(g).scale(&inv_det))
    }
}

impl<S: Ring + fmt::Display> fmt::Display for StructureVector<S> {
    /// `221+231+2*331`; the zero vector is `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (n, (t, c)) in self.support().enumerate() {
            let coeff = c.to_string();
            let term = match coeff.as_str() {
                "1" => t.to_string(),
                "-1" => format!("-{t}"),
                _ => format!("{}*{t}", atomize(&coeff)),
            };
            if n > 0 && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        f.write_str(&out)
    }
}

impl<S: Ring + fmt::Display> fmt::Debug for StructureVector<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Split at top-level `+`/`-`, keeping the sign with its term.
fn split_terms(src: &str) -> Vec<String> {
    let mut terms = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in src.chars().filter(|c| !c.is_whitespace()) {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && !cur.is_empty() && !cur.ends_with(['*', '/', '^']) => {
                terms.push(std::mem::take(&mut cur));
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    terms
}

impl StructureVector<Fe> {
    pub fn field(&self) -> &Field {
        self.zero.field()
    }

    /// Parse `231 - 321`, `221+2*321+331`, `(1+w)*112`. A bare `0` is the
    /// zero vector.
    pub fn parse(field: &Field, src: &str) -> Result<StructureVector<Fe>, StructError> {
        let mut v = StructureVector::zero(&field.zero());
        if src.trim() == "0" {
            return Ok(v);
        }
        for term in split_terms(src) {
            let (sign, body) = match term.strip_prefix('-') {
                Some(b) => (-1, b.to_string()),
                None => (1, term.trim_start_matches('+').to_string()),
            };
            let (coeff, basis) = match body.rfind('*') {
                Some(p) => (field.parse(&body[..p])?, &body[p + 1..]),
                None => (field.one(), body.as_str()),
            };
            let digits: Vec<usize> = basis
                .chars()
                .filter_map(|c| c.to_digit(10))
                .map(|d| d as usize)
                .collect();
            if digits.len() != 3 || basis.len() != 3 {
                return Err(StructError::Malformed(format!(
                    "bad basis symbol {basis:?}"
                )));
            }
            let t = TripleIndex::new(digits[0], digits[1], digits[2])?;
            let c = coeff.mul(&field.from_int(sign));
            v.set(t, v.get(t).add(&c));
        }
        Ok(v)
    }

    pub fn coerce(&self, field: &Field) -> Result<StructureVector<Fe>, StructError> {
        let mut out = StructureVector::zero(&field.zero());
        for (t, c) in self.support() {
            out.set(t, field.coerce(c)?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<JsonEntry> = self
            .support()
            .map(|(t, c)| JsonEntry {
                i: t.i(),
                j: t.j(),
                k: t.k(),
                c: c.to_string(),
            })
            .collect();
        serde_json::json!({ "field": self.field().to_json(), "entries": entries })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<StructureVector<Fe>, StructError> {
        let doc: JsonVector =
            serde_json::from_value(v.clone()).map_err(|e| StructError::Malformed(e.to_string()))?;
        let field = Field::from_json(&doc.field)?;
        let mut out = StructureVector::zero(&field.zero());
        for e in doc.entries {
            let t = TripleIndex::new(e.i, e.j, e.k)?;
            if out.entries.contains_key(&t) {
                return Err(StructError::Malformed(format!("entry {t} given twice")));
            }
            out.set(t, field.parse(&e.c)?);
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct JsonEntry {
    i: usize,
    j: usize,
    k: usize,
    c: String,
}

#[derive(Deserialize)]
struct JsonVector {
    field: serde_json::Value,
    entries: Vec<JsonEntry>,
}

/// A 3×3 matrix, row-major, with its determinant computed once.
#[derive(Clone, PartialEq)]
pub struct Matrix3<S: Ring> {
    m: [[S; 3]; 3],
    det: S,
}

fn det3<S: Ring>(m: &[[S; 3]; 3]) -> S {
    let minor =
        |a: usize, b: usize, c: usize, d: usize| m[1][a].mul(&m[2][b]).sub(&m[1][c].mul(&m[2][d]));
    m[0][0]
        .mul(&minor(1, 2, 2, 1))
        .sub(&m[0][1].mul(&minor(0, 2, 2, 0)))
        .add(&m[0][2].mul(&minor(0, 1, 1, 0)))
}

impl<S: Ring> Matrix3<S> {
    pub fn new(rows: [[S; 3]; 3]) -> Matrix3<S> {
        let det = det3(&rows);
        Matrix3 { m: rows, det }
    }

    pub fn from_fn<F: FnMut(usize, usize) -> S>(mut f: F) -> Matrix3<S> {
        Matrix3::new(std::array::from_fn(|r| std::array::from_fn(|c| f(r, c))))
    }

    pub fn identity(proto: &S) -> Matrix3<S> {
        Matrix3::from_fn(|r, c| {
            if r == c {
                proto.one_like()
            } else {
                proto.zero_like()
            }
        })
    }

    pub fn diag(d: [S; 3]) -> Matrix3<S> {
        let z = d[0].zero_like();
        Matrix3::from_fn(|r, c| if r == c { d[r].clone() } else { z.clone() })
    }

    pub fn scalar(c: &S) -> Matrix3<S> {
        Matrix3::diag([c.clone(), c.clone(), c.clone()])
    }

    /// Entry in row `r`, column `c` (0-based).
    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.m[r][c]
    }

    pub fn rows(&self) -> &[[S; 3]; 3] {
        &self.m
    }

    pub fn det(&self) -> &S {
        &self.det
    }

    pub fn is_invertible_in_domain(&self) -> bool {
        !self.det.is_zero()
    }

    /// `adj(g)` with `g·adj(g) = det(g)·I`.
    pub fn adjugate(&self) -> Matrix3<S> {
        let m = &self.m;
        let cof = |r: usize, c: usize| {
            let rs: Vec<usize> = (0..3).filter(|&x| x != r).collect();
            let cs: Vec<usize> = (0..3).filter(|&x| x != c).collect();
            let d = m[rs[0]][cs[0]]
                .mul(&m[rs[1]][cs[1]])
                .sub(&m[rs[0]][cs[1]].mul(&m[rs[1]][cs[0]]));
            if (r + c) % 2 == 0 {
                d
            } else {
                d.neg()
            }
        };
        Matrix3::from_fn(|r, c| cof(c, r))
    }

    pub fn mul(&self, o: &Matrix3<S>) -> Matrix3<S> {
        Matrix3::from_fn(|r, c| {
            (0..3).fold(self.m[0][0].zero_like(), |acc, k| {
                acc.add(&self.m[r][k].mul(&o.m[k][c]))
            })
        })
    }

    pub fn transpose(&self) -> Matrix3<S> {
        Matrix3::from_fn(|r, c| self.m[c][r].clone())
    }

    pub fn map<T: Ring, F: Fn(&S) -> T>(&self, f: F) -> Matrix3<T> {
        Matrix3::from_fn(|r, c| f(&self.m[r][c]))
    }

    /// `M v` for a column vector.
    pub fn apply(&self, v: &[S; 3]) -> [S; 3] {
        std::array::from_fn(|r| {
            (0..3).fold(v[0].zero_like(), |acc, k| acc.add(&self.m[r][k].mul(&v[k])))
        })
    }
}

impl<S: FieldLike> Matrix3<S> {
    pub fn inverse(&self) -> Result<Matrix3<S>, StructError> {
        let inv = self.det.inv().ok_or(StructError::Singular)?;
        Ok(self.adjugate().map(|x| x.mul(&inv)))
    }
}

impl<S: Ring + fmt::Display> fmt::Display for Matrix3<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| {
                format!(
                    "[{}]",
                    r.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                )
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl<S: Ring + fmt::Display> fmt::Debug for Matrix3<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Matrix3<Fe> {
    /// Rows of entries in the coefficient grammar.
    pub fn parse_rows<S: AsRef<str>>(
        field: &Field,
        rows: &[Vec<S>],
    ) -> Result<Matrix3<Fe>, StructError> {
        if rows.len() != 3 || rows.iter().any(|r| r.len() != 3) {
            return Err(StructError::Malformed("matrix must be 3x3".into()));
        }
        let mut out: Vec<Fe> = Vec::with_capacity(9);
        for r in rows {
            for s in r {
                out.push(field.parse(s.as_ref())?);
            }
        }
        Ok(Matrix3::from_fn(|r, c| out[3 * r + c].clone()))
    }

    pub fn from_ints(field: &Field, rows: [[i64; 3]; 3]) -> Matrix3<Fe> {
        Matrix3::from_fn(|r, c| field.from_int(rows[r][c]))
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.m
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect())
            .collect()
    }

    pub fn coerce(&self, field: &Field) -> Result<Matrix3<Fe>, StructError> {
        let mut out = Vec::with_capacity(9);
        for r in &self.m {
            for x in r {
                out.push(field.coerce(x)?);
            }
        }
        Ok(Matrix3::from_fn(|r, c| out[3 * r + c].clone()))
    }

    /// A uniformly random invertible matrix (small-height over infinite fields).
    pub fn random_invertible<R: Rng + ?Sized>(field: &Field, rng: &mut R) -> Matrix3<Fe> {
        loop {
            let g = Matrix3::from_fn(|_, _| field.random(rng));
            if !g.det.is_zero() {
                return g;
            }
        }
    }
}

/// Kronecker product of dense matrices.
pub fn kron<S: Ring>(a: &[Vec<S>], b: &[Vec<S>]) -> Vec<Vec<S>> {
    let (ar, ac) = (a.len(), a[0].len());
    let (br, bc) = (b.len(), b[0].len());
    (0..ar * br)
        .map(|r| {
            (0..ac * bc)
                .map(|c| a[r / br][c / bc].mul(&b[r % br][c % bc]))
                .collect()
        })
        .collect()
}

/// `λg` computed as the row vector `λ` times `g ⊗ (g ⊗ (g⁻¹)ᵀ)`.
pub fn act_via_kronecker<S: FieldLike>(
    lam: &StructureVector<S>,
    g: &Matrix3<S>,
) -> Result<StructureVector<S>, StructError> {
    let dense = |m: &Matrix3<S>| -> Vec<Vec<S>> { m.rows().iter().map(|r| r.to_vec()).collect() };
    let ginv_t = g.inverse()?.transpose();
    let big = kron(&dense(g), &kron(&dense(g), &dense(&ginv_t)));
    let v = lam.dense();
    let proto = lam.proto();
    let out: Vec<S> = (0..27)
        .map(|c| (0..27).fold(proto.zero_like(), |acc, r| acc.add(&v[r].mul(&big[r][c]))))
        .collect();
    Ok(StructureVector::from_dense(proto, &out))
}
