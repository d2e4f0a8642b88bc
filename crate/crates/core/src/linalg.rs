//! Exact dense linear algebra on small systems.

use crate::ring::{FieldLike, Ring};

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<S: FieldLike>(rows: &mut Vec<Vec<S>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in c..ncols {
                    let t = rows[r][j].mul(&f);
                    rows[i][j] = rows[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank<S: FieldLike>(rows: &[Vec<S>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// A basis of the row space, in reduced echelon form.
pub fn row_basis<S: FieldLike>(rows: &[Vec<S>]) -> Vec<Vec<S>> {
    let mut m = rows.to_vec();
    rref(&mut m);
    m
}

/// A basis of `{x : rows · x = 0}` with `ncols` unknowns.
pub fn nullspace<S: FieldLike>(rows: &[Vec<S>], ncols: usize, proto: &S) -> Vec<Vec<S>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![proto.zero_like(); ncols];
            v[f] = proto.one_like();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = row[f].neg();
            }
            v
        })
        .collect()
}

/// Rank over an integral domain without division: rows are combined as
/// `a·r − b·p`, so entries stay in the ring.
pub fn rank_fraction_free<S: Ring>(rows: &[Vec<S>]) -> usize {
    let mut m = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let a = m[r][c].clone();
            let b = m[i][c].clone();
            for j in c..ncols {
                m[i][j] = m[i][j].mul(&a).sub(&m[r][j].mul(&b));
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::{Fe, Field};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_matrix(f: &Field, n: usize, m: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Fe>> {
        // low rank by construction half of the time
        let k = rng.gen_range(0..=n.min(m));
        let a: Vec<Vec<Fe>> = (0..n)
            .map(|_| (0..k).map(|_| f.random(rng)).collect())
            .collect();
        let b: Vec<Vec<Fe>> = (0..k)
            .map(|_| (0..m).map(|_| f.random(rng)).collect())
            .collect();
        (0..n)
            .map(|i| {
                (0..m)
                    .map(|j| (0..k).fold(f.zero(), |acc, l| acc.add(&a[i][l].mul(&b[l][j]))))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn rank_nullity_and_fraction_free_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for f in [Field::prime(5).unwrap(), Field::rationals()] {
            for _ in 0..100 {
                let (n, m) = (rng.gen_range(1..6), rng.gen_range(1..6));
                let a = random_matrix(&f, n, m, &mut rng);
                let r = rank(&a);
                assert_eq!(rank_fraction_free(&a), r);
                let ns = nullspace(&a, m, &f.zero());
                assert_eq!(ns.len() + r, m);
                for v in &ns {
                    for row in &a {
                        let dot = row
                            .iter()
                            .zip(v)
                            .fold(f.zero(), |acc, (x, y)| acc.add(&x.mul(y)));
                        assert!(dot.is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn fraction_free_rank_over_polynomials() {
        let q = Field::rationals();
        let reg = crate::polyring::Registry::new(&["x", "y"]);
        let p = |s: &str| crate::polyring::MultiPoly::parse(&q, &reg, s).unwrap();
        let m = vec![vec![p("x"), p("y")], vec![p("x^2"), p("x*y")]];
        assert_eq!(rank_fraction_free(&m), 1);
        let m = vec![vec![p("x"), p("y")], vec![p("y"), p("x")]];
        assert_eq!(rank_fraction_free(&m), 2);
    }
}
