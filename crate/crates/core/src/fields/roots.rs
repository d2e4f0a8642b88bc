//! Square roots, quadratic roots and root adjunction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{upoly, Elem, Fe, Field, FieldError, FieldKind};
use crate::ring::{FieldLike, Ring};

/// Exhaustive searches are only run below this many elements.
const ENUMERATION_LIMIT: u128 = 1 << 20;

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

fn finite_sqrt(x: &Fe) -> Result<Option<Fe>, FieldError> {
    let f = x.field();
    let q = f.order().expect("finite");
    if x.is_zero() {
        return Ok(Some(x.clone()));
    }
    if f.characteristic() == 2 {
        // Frobenius is bijective: sqrt(x) = x^(q/2)
        return Ok(Some(x.pow((q / 2) as u64)));
    }
    let q1 = q - 1;
    let half = u64::try_from(q1 / 2)
        .map_err(|_| FieldError::Unsupported("field too large for square roots".into()))?;
    if !x.pow(half).is_one() {
        return Ok(None);
    }
    // Tonelli–Shanks over an arbitrary odd-order finite field
    let mut s = 0u32;
    let mut m = q1;
    while m % 2 == 0 {
        m /= 2;
        s += 1;
    }
    let minus_one = f.from_int(-1);
    let mut idx = 2u128;
    let z = loop {
        let cand = f.element_from_index(idx).expect("non-residue exists");
        if cand.pow(half) == minus_one {
            break cand;
        }
        idx += 1;
    };
    let m = m as u64;
    let mut c = z.pow(m);
    let mut t = x.pow(m);
    let mut r = x.pow(m.div_ceil(2));
    let mut big_m = s;
    while !t.is_one() {
        let mut i = 0u32;
        let mut tt = t.clone();
        while !tt.is_one() {
            tt = tt.mul(&tt);
            i += 1;
        }
        let mut b = c.clone();
        for _ in 0..(big_m - i - 1) {
            b = b.mul(&b);
        }
        big_m = i;
        c = b.mul(&b);
        t = t.mul(&c);
        r = r.mul(&b);
    }
    Ok(Some(r))
}

/// Square root over a degree-2 extension of a base with square roots
/// (odd or zero characteristic). Writes the generator as `-p1/2 + s` with
/// `s^2 = d` and solves `(X + Y s)^2 = A + B s` in the base.
fn quadratic_extension_sqrt(x: &Fe) -> Result<Option<Fe>, FieldError> {
    let f = x.field();
    let base = f.base().expect("extension");
    let (modulus, _) = match f.kind() {
        FieldKind::Extension { modulus, name, .. } => (modulus, name),
        _ => unreachable!(),
    };
    let wrap = |e: &Elem| base.wrap(e.clone());
    let p0 = wrap(&modulus[0]);
    let p1 = wrap(&modulus[1]);
    let two = base.from_int(2);
    let half_p1 = p1.div(&two).expect("char != 2");
    let d = half_p1.mul(&half_p1).sub(&p0);
    let coeffs = x.base_coefficients().unwrap();
    let a = coeffs.first().cloned().unwrap_or_else(|| base.zero());
    let b = coeffs.get(1).cloned().unwrap_or_else(|| base.zero());
    // x = a + b w = (a - b p1/2) + b s
    let big_a = a.sub(&b.mul(&half_p1));
    let big_b = b;
    let mut candidates: Vec<(Fe, Fe)> = Vec::new();
    if big_b.is_zero() {
        if let Some(r) = sqrt(&big_a)? {
            candidates.push((r, base.zero()));
        }
        if !d.is_zero() {
            if let Some(r) = sqrt(&big_a.div(&d).unwrap())? {
                candidates.push((base.zero(), r));
            }
        }
    } else {
        let norm = big_a.mul(&big_a).sub(&d.mul(&big_b).mul(&big_b));
        if let Some(n) = sqrt(&norm)? {
            for cand in [big_a.add(&n), big_a.sub(&n)] {
                if let Some(xx) = sqrt(&cand.div(&two).unwrap())? {
                    if !xx.is_zero() {
                        let yy = big_b.div(&two.mul(&xx)).unwrap();
                        candidates.push((xx, yy));
                    }
                }
            }
        }
    }
    let w = f.generator().unwrap();
    let s = w.add(&f.coerce(&half_p1)?);
    for (xx, yy) in candidates {
        let r = f.coerce(&xx)?.add(&f.coerce(&yy)?.mul(&s));
        if r.mul(&r) == *x {
            return Ok(Some(r));
        }
    }
    Ok(None)
}

/// A square root of `x` in its own field, if one exists there.
pub fn sqrt(x: &Fe) -> Result<Option<Fe>, FieldError> {
    let f = x.field();
    if f.is_finite() {
        return finite_sqrt(x);
    }
    match (f.kind(), x.elem()) {
        (FieldKind::Rationals, Elem::Q(q)) => Ok(rational_sqrt(q).map(|r| f.wrap(Elem::Q(r)))),
        (FieldKind::Extension { modulus, .. }, _)
            if modulus.len() == 3 && f.characteristic() != 2 =>
        {
            quadratic_extension_sqrt(x)
        }
        _ => {
            if x.is_zero() || x.is_one() {
                return Ok(Some(x.clone()));
            }
            Err(FieldError::Unsupported(format!("square roots in {f}")))
        }
    }
}

fn dedup(mut roots: Vec<Fe>) -> Vec<Fe> {
    let mut out: Vec<Fe> = Vec::new();
    for r in roots.drain(..) {
        if !out.contains(&r) {
            out.push(r);
        }
    }
    out
}

/// All roots of `a x^2 + b x + c` lying in the common field of the inputs.
/// An empty result means the polynomial is irreducible there.
pub fn quadratic_roots(a: &Fe, b: &Fe, c: &Fe) -> Result<Vec<Fe>, FieldError> {
    a.checked_add(b)?;
    a.checked_add(c)?;
    if a.is_zero() {
        return Err(FieldError::ZeroLeadingCoefficient);
    }
    let f = a.field();
    let eval = |x: &Fe| a.mul(x).mul(x).add(&b.mul(x)).add(c);
    if f.characteristic() == 2 {
        if b.is_zero() {
            let r = sqrt(&c.div(a).unwrap())?;
            return Ok(r.into_iter().collect());
        }
        return match f.order() {
            Some(q) if q <= ENUMERATION_LIMIT => Ok(f
                .elements()
                .unwrap()
                .into_iter()
                .filter(|x| eval(x).is_zero())
                .collect()),
            _ => Err(FieldError::Unsupported(format!(
                "Artin–Schreier roots in {f}"
            ))),
        };
    }
    let disc = b.mul(b).sub(&f.from_int(4).mul(a).mul(c));
    let Some(s) = sqrt(&disc)? else {
        return Ok(Vec::new());
    };
    let two_a = f.from_int(2).mul(a);
    let r1 = b.neg().add(&s).div(&two_a).unwrap();
    let r2 = b.neg().sub(&s).div(&two_a).unwrap();
    let roots: Vec<Fe> = dedup(vec![r1, r2])
        .into_iter()
        .filter(|x| eval(x).is_zero())
        .collect();
    Ok(roots)
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, FieldError> {
    let n = n.abs();
    let limit = n.sqrt();
    if limit > BigInt::from(10_000_000u64) {
        return Err(FieldError::Unsupported(
            "rational root test on large coefficients".into(),
        ));
    }
    let lim = limit.to_u64().unwrap();
    let mut out = Vec::new();
    for d in 1..=lim {
        let bd = BigInt::from(d);
        if (&n % &bd).is_zero() {
            out.push(bd.clone());
            let other = &n / &bd;
            if other != bd {
                out.push(other);
            }
        }
    }
    Ok(out)
}

/// Roots of a constant-first coefficient list: exhaustive search over small
/// finite fields, the rational root test over `Q`, and the quadratic
/// formula elsewhere.
pub fn roots_in_field(poly: &[Fe]) -> Result<Vec<Fe>, FieldError> {
    let f = poly
        .first()
        .ok_or(FieldError::DegreeTooSmall)?
        .field()
        .clone();
    let mut coeffs: Vec<Elem> = poly
        .iter()
        .map(|c| f.coerce(c).map(|x| x.elem().clone()))
        .collect::<Result<_, _>>()?;
    upoly::trim(&f, &mut coeffs);
    let Some(deg) = upoly::degree(&coeffs) else {
        return Err(FieldError::ZeroLeadingCoefficient);
    };
    let eval = |x: &Fe| f.wrap(upoly::eval(&f, &coeffs, x.elem()));
    if deg == 0 {
        return Ok(Vec::new());
    }
    if let Some(q) = f.order() {
        if q <= ENUMERATION_LIMIT {
            return Ok(f
                .elements()
                .unwrap()
                .into_iter()
                .filter(|x| eval(x).is_zero())
                .collect());
        }
    }
    if deg == 2 {
        let c = |i: usize| f.wrap(coeffs[i].clone());
        return quadratic_roots(&c(2), &c(1), &c(0));
    }
    if let FieldKind::Rationals = f.kind() {
        let qs: Vec<BigRational> = coeffs
            .iter()
            .map(|e| match e {
                Elem::Q(q) => q.clone(),
                _ => unreachable!(),
            })
            .collect();
        let lcm = qs.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = qs
            .iter()
            .map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut roots = Vec::new();
        let low = ints.iter().position(|c| !c.is_zero()).unwrap();
        if low > 0 {
            roots.push(f.zero());
        }
        let lead = ints.last().unwrap().clone();
        for p in divisors(&ints[low])? {
            for q in divisors(&lead)? {
                for sign in [1, -1] {
                    let cand = f.wrap(Elem::Q(BigRational::new(&p * sign, q.clone())));
                    if eval(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        return Ok(roots);
    }
    Err(FieldError::Unsupported(format!(
        "roots of degree {deg} in {f}"
    )))
}

/// The inclusion of a field into one of its extensions.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub source: Field,
    pub target: Field,
}

impl Embedding {
    pub fn apply(&self, x: &Fe) -> Result<Fe, FieldError> {
        if x.field() != &self.source {
            return Err(FieldError::DescriptorMismatch(
                x.field().to_string(),
                self.source.to_string(),
            ));
        }
        self.target.coerce(x)
    }
}

/// Adjoin a root of `poly` (constant-first) to `desc`, naming it `name`.
///
/// Irreducibility is verified by root absence for degrees 2 and 3; above
/// that the caller vouches for it.
pub fn extend_with_root(
    desc: &Field,
    poly: &[Fe],
    name: &str,
) -> Result<(Field, Embedding), FieldError> {
    let mut coeffs: Vec<Elem> = poly
        .iter()
        .map(|c| desc.coerce(c).map(|x| x.elem().clone()))
        .collect::<Result<_, _>>()?;
    upoly::trim(desc, &mut coeffs);
    let deg = upoly::degree(&coeffs).unwrap_or(0);
    if deg < 2 {
        return Err(FieldError::DegreeTooSmall);
    }
    if desc.tower_names().iter().any(|n| n == name) {
        return Err(FieldError::NameClash(name.to_string()));
    }
    if name.is_empty()
        || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        || name.chars().next().unwrap().is_ascii_digit()
    {
        return Err(FieldError::BadDescriptor(format!(
            "invalid generator name {name:?}"
        )));
    }
    if deg <= 3 {
        let wrapped: Vec<Fe> = coeffs.iter().map(|e| desc.wrap(e.clone())).collect();
        if let Some(r) = roots_in_field(&wrapped)?.first() {
            return Err(FieldError::RootExists(r.to_string()));
        }
    }
    let modulus = upoly::monic(desc, &coeffs);
    let field = Field(std::sync::Arc::new(FieldKind::Extension {
        base: desc.clone(),
        modulus,
        name: name.to_string(),
    }));
    let emb = Embedding {
        source: desc.clone(),
        target: field.clone(),
    };
    Ok((field, emb))
}
