//! Predicates and basis-invariant dimensions of an algebra given by its
//! structure vector.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fields::{Fe, Field};
use crate::linalg;
use crate::polyring::{MultiPoly, Registry};
use crate::ring::Ring;
use crate::structspace::{StructureVector, TripleIndex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("algebra is not nilpotent (fifth term of the lower chain is nonzero)")]
    NotNilpotent,
}

type Sv = StructureVector<Fe>;

fn unit(f: &Field, i: usize) -> [Fe; 3] {
    std::array::from_fn(|k| if k == i { f.one() } else { f.zero() })
}

/// Polynomial entries get elimination without division.
fn rank(f: &Field, rows: &[Vec<Fe>]) -> usize {
    if f.function_variable().is_some() {
        linalg::rank_fraction_free(rows)
    } else {
        linalg::rank(rows)
    }
}

/// `(e_a e_b) e_c = e_a (e_b e_c)` for all basis triples.
pub fn is_associative(lam: &Sv) -> bool {
    let f = lam.field();
    for a in 0..3 {
        for b in 0..3 {
            let ab = lam.product(&unit(f, a), &unit(f, b));
            for c in 0..3 {
                let bc = lam.product(&unit(f, b), &unit(f, c));
                if lam.product(&ab, &unit(f, c)) != lam.product(&unit(f, a), &bc) {
                    return false;
                }
            }
        }
    }
    true
}

/// Dimensions of `L_1 = V ⊇ L_2 ⊇ ...` with `L_{m+1} = span{[w, v]}`, left-normed.
pub fn lower_chain(lam: &Sv) -> Vec<usize> {
    let f = lam.field();
    let mut basis: Vec<Vec<Fe>> = (0..3).map(|i| unit(f, i).to_vec()).collect();
    let mut dims = vec![3];
    for _ in 0..4 {
        let mut next = Vec::new();
        for w in &basis {
            let w3: [Fe; 3] = [w[0].clone(), w[1].clone(), w[2].clone()];
            for j in 0..3 {
                next.push(lam.product(&w3, &unit(f, j)).to_vec());
            }
        }
        basis = linalg::row_basis(&next);
        dims.push(basis.len());
        if basis.is_empty() {
            break;
        }
    }
    dims
}

/// Least `r` with `L_{r+1} = 0`, except that the zero algebra gets 0.
pub fn nilpotency_class(lam: &Sv) -> Result<usize, AlgError> {
    let dims = lower_chain(lam);
    let r = dims
        .iter()
        .position(|&d| d == 0)
        .ok_or(AlgError::NotNilpotent)?;
    Ok(if r == 1 { 0 } else { r })
}

pub fn is_commutative(lam: &Sv) -> bool {
    TripleIndex::all().all(|t| {
        let s = TripleIndex::new(t.j(), t.i(), t.k()).unwrap();
        lam.get(t) == lam.get(s)
    })
}

/// The coordinates of `[u, u]` for the symbolic vector `u = x1 e1 + x2 e2 + x3 e3`.
pub fn square_polynomials(lam: &Sv) -> [MultiPoly; 3] {
    let f = lam.field();
    let reg = Registry::new(&["x1", "x2", "x3"]);
    let x = MultiPoly::vars(f, &reg);
    let lifted = lam.map(&MultiPoly::zero(f, &reg), |c| {
        MultiPoly::constant(&reg, c.clone())
    });
    let u = [x[0].clone(), x[1].clone(), x[2].clone()];
    lifted.product(&u, &u)
}

/// `[u, u] ∈ span(u)` for all `u`, checked as vanishing of the 2×2 minors
/// `x_i q_j − x_j q_i` as polynomials.
pub fn in_m_star_star(lam: &Sv) -> bool {
    let f = lam.field();
    let q = square_polynomials(lam);
    let reg = q[0].registry().clone();
    let x = MultiPoly::vars(f, &reg);
    [(0, 1), (0, 2), (1, 2)]
        .iter()
        .all(|&(i, j)| x[i].mul(&q[j]).sub(&x[j].mul(&q[i])).is_identically_zero())
}

/// The same predicate checked on every vector of a finite field.
pub fn in_m_star_star_exhaustive(lam: &Sv) -> Option<bool> {
    let elems = lam.field().elements()?;
    for a in &elems {
        for b in &elems {
            for c in &elems {
                let u = [a.clone(), b.clone(), c.clone()];
                let s = lam.product(&u, &u);
                for (i, j) in [(0, 1), (0, 2), (1, 2)] {
                    if !u[i].mul(&s[j]).sub(&u[j].mul(&s[i])).is_zero() {
                        return Some(false);
                    }
                }
            }
        }
    }
    Some(true)
}

/// The 27×9 system `D[e_i,e_j] = [De_i,e_j] + [e_i,De_j]`, unknown
/// `D_{ab}` (the `e_a` coordinate of `De_b`) at column `3(a-1)+(b-1)`.
pub fn derivation_equations(lam: &Sv) -> Vec<Vec<Fe>> {
    let f = lam.field();
    let mut rows = Vec::with_capacity(27);
    let l = |i: usize, j: usize, k: usize| lam.at(i + 1, j + 1, k + 1);
    for i in 0..3 {
        for j in 0..3 {
            for c in 0..3 {
                let mut row = vec![f.zero(); 9];
                for k in 0..3 {
                    row[3 * c + k] = row[3 * c + k].add(&l(i, j, k));
                }
                for a in 0..3 {
                    row[3 * a + i] = row[3 * a + i].sub(&l(a, j, c));
                }
                for b in 0..3 {
                    row[3 * b + j] = row[3 * b + j].sub(&l(i, b, c));
                }
                rows.push(row);
            }
        }
    }
    rows
}

pub fn derivation_dimension(lam: &Sv) -> usize {
    9 - rank(lam.field(), &derivation_equations(lam))
}

/// `dim span{e_i e_j}`.
pub fn square_dim(lam: &Sv) -> usize {
    let f = lam.field();
    let rows: Vec<Vec<Fe>> = (0..9)
        .map(|n| lam.product(&unit(f, n / 3), &unit(f, n % 3)).to_vec())
        .collect();
    rank(f, &rows)
}

/// `dim{u : uv = vu = 0 for all v}`.
pub fn annihilator_dim(lam: &Sv) -> usize {
    let f = lam.field();
    let rows: Vec<Vec<Fe>> = (0..3)
        .map(|a| {
            let mut row = Vec::with_capacity(18);
            for j in 0..3 {
                row.extend(lam.product(&unit(f, a), &unit(f, j)));
                row.extend(lam.product(&unit(f, j), &unit(f, a)));
            }
            row
        })
        .collect();
    3 - rank(f, &rows)
}

/// A basis of the two-sided annihilator.
pub fn annihilator_basis(lam: &Sv) -> Vec<[Fe; 3]> {
    let f = lam.field();
    let mut rows = Vec::with_capacity(18);
    for j in 0..3 {
        let right: Vec<[Fe; 3]> = (0..3)
            .map(|a| lam.product(&unit(f, a), &unit(f, j)))
            .collect();
        let left: Vec<[Fe; 3]> = (0..3)
            .map(|a| lam.product(&unit(f, j), &unit(f, a)))
            .collect();
        for side in [right, left] {
            for k in 0..3 {
                rows.push((0..3).map(|a| side[a][k].clone()).collect());
            }
        }
    }
    linalg::nullspace(&rows, 3, &f.zero())
        .into_iter()
        .map(|v| [v[0].clone(), v[1].clone(), v[2].clone()])
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub associative: bool,
    pub nilpotency_class: usize,
    pub commutative: bool,
    pub in_m_star_star: bool,
    pub derivation_dim: usize,
    pub square_dim: usize,
    pub annihilator_dim: usize,
}

pub fn invariant_profile(lam: &Sv) -> Result<InvariantProfile, AlgError> {
    Ok(InvariantProfile {
        associative: is_associative(lam),
        nilpotency_class: nilpotency_class(lam)?,
        commutative: is_commutative(lam),
        in_m_star_star: in_m_star_star(lam),
        derivation_dim: derivation_dimension(lam),
        square_dim: square_dim(lam),
        annihilator_dim: annihilator_dim(lam),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(f: &Field, s: &str) -> Sv {
        StructureVector::parse(f, s).unwrap()
    }

    #[test]
    fn annihilator_basis_spans_the_annihilator() {
        let f = Field::prime(7).unwrap();
        for s in ["331", "221+331", "231-321", "112+123+213", "0"] {
            let lam = sv(&f, s);
            let basis = annihilator_basis(&lam);
            assert_eq!(basis.len(), annihilator_dim(&lam), "{s}");
            for y in &basis {
                for j in 0..3 {
                    assert!(lam.product(y, &unit(&f, j)).iter().all(Ring::is_zero));
                    assert!(lam.product(&unit(&f, j), y).iter().all(Ring::is_zero));
                }
            }
        }
    }

    #[test]
    fn associativity_examples() {
        let f7 = Field::prime(7).unwrap();
        for d in 0..7 {
            assert!(is_associative(&sv(&f7, &format!("221+231+{d}*331"))));
        }
        // (e2 e3) e3 = e2 but e2 (e3 e3) = 0
        assert!(!is_associative(&sv(&f7, "231+132")));
        assert!(is_associative(&sv(&f7, "0")));
    }

    #[test]
    fn class_convention() {
        let q = Field::rationals();
        assert_eq!(nilpotency_class(&sv(&q, "112+123+213")), Ok(3));
        assert_eq!(nilpotency_class(&sv(&q, "0")), Ok(0));
        assert_eq!(nilpotency_class(&sv(&q, "221+331")), Ok(2));
        assert_eq!(
            nilpotency_class(&sv(&q, "111")),
            Err(AlgError::NotNilpotent)
        );
    }

    #[test]
    fn commutativity_examples() {
        assert!(is_commutative(&sv(&Field::rationals(), "112+123+213")));
        assert!(!is_commutative(&sv(&Field::prime(3).unwrap(), "231-321")));
        assert!(is_commutative(&sv(&Field::prime(2).unwrap(), "231-321")));
        assert!(!is_commutative(&sv(&Field::rationals(), "221+231+5*331")));
    }

    #[test]
    fn m_star_star_examples() {
        let q = Field::rationals();
        assert!(in_m_star_star(&sv(&q, "0")));
        assert!(!in_m_star_star(&sv(&q, "331")));
        assert!(in_m_star_star(&sv(&q, "231-321")));
        let q = square_polynomials(&sv(&Field::rationals(), "231+5*321"));
        assert_eq!(q[0].to_string(), "6*x2*x3");
    }

    #[test]
    fn profile_examples() {
        let q = Field::rationals();
        let c1 = invariant_profile(&sv(&q, "331")).unwrap();
        assert_eq!((c1.square_dim, c1.annihilator_dim), (1, 2));
        let c3 = invariant_profile(&sv(&q, "221+331")).unwrap();
        assert_eq!((c3.square_dim, c3.annihilator_dim), (1, 1));
        let a0 = invariant_profile(&sv(&q, "0")).unwrap();
        assert_eq!(
            (a0.square_dim, a0.annihilator_dim, a0.derivation_dim),
            (0, 3, 9)
        );
    }
}
