//! Dense univariate polynomials over a field context, constant-first.
//!
//! The zero polynomial is the empty vector; every other vector is trimmed
//! so its last entry is nonzero.

use super::{Elem, Field};

pub(crate) fn trim(f: &Field, p: &mut Vec<Elem>) {
    while p.last().is_some_and(|c| f.is_zero_e(c)) {
        p.pop();
    }
}

pub(crate) fn degree(p: &[Elem]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub(crate) fn constant(f: &Field, c: Elem) -> Vec<Elem> {
    let mut v = vec![c];
    trim(f, &mut v);
    v
}

pub(crate) fn add(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len().max(b.len());
    let zero = f.zero_e();
    let mut out: Vec<Elem> = (0..n)
        .map(|i| f.add_e(a.get(i).unwrap_or(&zero), b.get(i).unwrap_or(&zero)))
        .collect();
    trim(f, &mut out);
    out
}

pub(crate) fn neg(f: &Field, a: &[Elem]) -> Vec<Elem> {
    a.iter().map(|c| f.neg_e(c)).collect()
}

pub(crate) fn sub(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    add(f, a, &neg(f, b))
}

pub(crate) fn scale(f: &Field, a: &[Elem], c: &Elem) -> Vec<Elem> {
    if f.is_zero_e(c) {
        return Vec::new();
    }
    a.iter().map(|x| f.mul_e(x, c)).collect()
}

pub(crate) fn mul(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero_e(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero_e(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let prod = f.mul_e(x, y);
            out[i + j] = f.add_e(&out[i + j], &prod);
        }
    }
    trim(f, &mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem(f: &Field, a: &[Elem], b: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = f
        .inv_e(&b[db])
        .expect("trimmed polynomial has nonzero leading term");
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![f.zero_e(); rem.len() - db];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = f.mul_e(&rem[dr], &lead_inv);
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            let t = f.mul_e(&c, bc);
            rem[shift + i] = f.sub_e(&rem[shift + i], &t);
        }
        quot[shift] = c;
        trim(f, &mut rem);
    }
    trim(f, &mut quot);
    (quot, rem)
}

pub(crate) fn monic(f: &Field, a: &[Elem]) -> Vec<Elem> {
    match a.last() {
        None => Vec::new(),
        Some(lc) => {
            let inv = f.inv_e(lc).expect("nonzero leading coefficient");
            scale(f, a, &inv)
        }
    }
}

/// Monic greatest common divisor (zero if both inputs are zero).
pub(crate) fn gcd(f: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let (_, r) = divrem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Returns `(g, s)` with `s·a ≡ g (mod m)`, `g = gcd(a, m)` monic.
pub(crate) fn inverse_cofactor(f: &Field, a: &[Elem], m: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
    let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
    let (mut s0, mut s1): (Vec<Elem>, Vec<Elem>) = (Vec::new(), constant(f, f.one_e()));
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1);
        let s = sub(f, &s0, &mul(f, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    match r0.last() {
        None => (Vec::new(), Vec::new()),
        Some(lc) => {
            let inv = f.inv_e(lc).expect("nonzero");
            (scale(f, &r0, &inv), scale(f, &s0, &inv))
        }
    }
}

pub(crate) fn eval(f: &Field, p: &[Elem], x: &Elem) -> Elem {
    let mut acc = f.zero_e();
    for c in p.iter().rev() {
        acc = f.add_e(&f.mul_e(&acc, x), c);
    }
    acc
}

pub(crate) fn is_one(f: &Field, p: &[Elem]) -> bool {
    p.len() == 1 && p[0] == f.one_e()
}
