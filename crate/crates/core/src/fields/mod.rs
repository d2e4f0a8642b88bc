//! Exact arithmetic over a constructible tower of fields.
//!
//! A [`Field`] is a cheap, shareable descriptor: the rationals, a prime field
//! GF(p), a simple algebraic extension of another descriptor, or the field of
//! univariate rational functions over another descriptor. A [`Fe`] pairs a
//! canonical representation with its descriptor. Nothing here is global; an
//! extension exists only because some computation asked for it.

mod json;
mod render;
mod roots;
mod table;
pub(crate) mod upoly;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

use crate::ring::{FieldLike, Ring};
use crate::text::{self, Expr, ParseError};

pub use json::{ExtSpec, FieldSpec, MinPolyCoeff};
pub use roots::{extend_with_root, quadratic_roots, roots_in_field, sqrt, Embedding};
pub use table::SmallField;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot map {value} from {from} into {to}")]
    NotEmbeddable {
        value: String,
        from: String,
        to: String,
    },
    #[error("polynomial already has a root {0} in the base field")]
    RootExists(String),
    #[error("extension polynomial must have degree at least 2")]
    DegreeTooSmall,
    #[error("generator name {0:?} is already used in this tower")]
    NameClash(String),
    #[error("leading coefficient is zero")]
    ZeroLeadingCoefficient,
    #[error("unknown identifier {0:?}")]
    UnknownIdentifier(String),
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("malformed field descriptor: {0}")]
    BadDescriptor(String),
}

/// Canonical representation of a field element, interpreted against a
/// [`Field`] descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    /// Lowest terms, positive denominator.
    Q(BigRational),
    /// Residue in `[0, p)`.
    Fp(u64),
    /// Polynomial in the generator over the base, degree below the modulus.
    Poly(Vec<Elem>),
    /// Numerator and monic denominator over the base, coprime.
    Frac(Vec<Elem>, Vec<Elem>),
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum FieldKind {
    Rationals,
    Prime(u64),
    Extension {
        base: Field,
        /// Monic, constant-first.
        modulus: Vec<Elem>,
        name: String,
    },
    RationalFunctions {
        base: Field,
        var: String,
    },
}

#[derive(Clone)]
pub struct Field(Arc<FieldKind>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldKind::Rationals => f.write_str("Q"),
            FieldKind::Prime(p) => write!(f, "GF({p})"),
            FieldKind::Extension {
                base,
                modulus,
                name,
            } => {
                let m = render::render_upoly(base, modulus, name, false);
                write!(f, "{base}[{name}]/({m})")
            }
            FieldKind::RationalFunctions { base, var } => write!(f, "{base}({var})"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

impl Field {
    pub fn rationals() -> Field {
        Field(Arc::new(FieldKind::Rationals))
    }

    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field(Arc::new(FieldKind::Prime(p))))
    }

    /// The prime field of a characteristic: `Q` for 0, `GF(p)` otherwise.
    pub fn prime_field(characteristic: u64) -> Result<Field, FieldError> {
        if characteristic == 0 {
            Ok(Field::rationals())
        } else {
            Field::prime(characteristic)
        }
    }

    /// The field of rational functions in `var` over `base`.
    pub fn rational_functions(base: &Field, var: &str) -> Result<Field, FieldError> {
        if base.tower_names().iter().any(|n| n == var) {
            return Err(FieldError::NameClash(var.to_string()));
        }
        Ok(Field(Arc::new(FieldKind::RationalFunctions {
            base: base.clone(),
            var: var.to_string(),
        })))
    }

    pub(crate) fn kind(&self) -> &FieldKind {
        &self.0
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => *p,
            FieldKind::Extension { base, .. } | FieldKind::RationalFunctions { base, .. } => {
                base.characteristic()
            }
        }
    }

    /// Number of elements for finite fields.
    pub fn order(&self) -> Option<u128> {
        match &*self.0 {
            FieldKind::Prime(p) => Some(*p as u128),
            FieldKind::Extension { base, modulus, .. } => {
                let q = base.order()?;
                q.checked_pow((modulus.len() - 1) as u32)
            }
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// Base of an extension or rational-function field.
    pub fn base(&self) -> Option<&Field> {
        match &*self.0 {
            FieldKind::Extension { base, .. } | FieldKind::RationalFunctions { base, .. } => {
                Some(base)
            }
            _ => None,
        }
    }

    /// Degree of a simple extension over its base.
    pub fn extension_degree(&self) -> Option<usize> {
        match &*self.0 {
            FieldKind::Extension { modulus, .. } => Some(modulus.len() - 1),
            _ => None,
        }
    }

    /// Monic minimal polynomial of a simple extension, constant-first.
    pub fn modulus_coefficients(&self) -> Option<Vec<Fe>> {
        match &*self.0 {
            FieldKind::Extension { base, modulus, .. } => {
                Some(modulus.iter().map(|e| base.wrap(e.clone())).collect())
            }
            _ => None,
        }
    }

    /// Variable name of a rational-function field.
    pub fn function_variable(&self) -> Option<&str> {
        match &*self.0 {
            FieldKind::RationalFunctions { var, .. } => Some(var),
            _ => None,
        }
    }

    /// Generator name of a simple extension.
    pub fn generator_name(&self) -> Option<&str> {
        match &*self.0 {
            FieldKind::Extension { name, .. } => Some(name),
            _ => None,
        }
    }

    /// All generator and variable names down the tower, outermost first.
    pub fn tower_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut cur = Some(self);
        while let Some(f) = cur {
            match &*f.0 {
                FieldKind::Extension { name, .. } => out.push(name.clone()),
                FieldKind::RationalFunctions { var, .. } => out.push(var.clone()),
                _ => {}
            }
            cur = f.base();
        }
        out
    }

    /// The innermost `Q` or `GF(p)`.
    pub fn prime_subfield(&self) -> Field {
        match self.base() {
            Some(b) => b.prime_subfield(),
            None => self.clone(),
        }
    }

    // ---- raw element arithmetic -------------------------------------------------

    pub(crate) fn zero_e(&self) -> Elem {
        match &*self.0 {
            FieldKind::Rationals => Elem::Q(BigRational::zero()),
            FieldKind::Prime(_) => Elem::Fp(0),
            FieldKind::Extension { .. } => Elem::Poly(Vec::new()),
            FieldKind::RationalFunctions { base, .. } => Elem::Frac(Vec::new(), vec![base.one_e()]),
        }
    }

    pub(crate) fn one_e(&self) -> Elem {
        match &*self.0 {
            FieldKind::Rationals => Elem::Q(BigRational::one()),
            FieldKind::Prime(p) => Elem::Fp(1 % p),
            FieldKind::Extension { base, .. } => Elem::Poly(vec![base.one_e()]),
            FieldKind::RationalFunctions { base, .. } => {
                Elem::Frac(vec![base.one_e()], vec![base.one_e()])
            }
        }
    }

    pub(crate) fn int_e(&self, n: &BigInt) -> Elem {
        match &*self.0 {
            FieldKind::Rationals => Elem::Q(BigRational::from_integer(n.clone())),
            FieldKind::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Elem::Fp(r.to_u64().expect("residue fits"))
            }
            FieldKind::Extension { base, .. } => Elem::Poly(upoly::constant(base, base.int_e(n))),
            FieldKind::RationalFunctions { base, .. } => {
                Elem::Frac(upoly::constant(base, base.int_e(n)), vec![base.one_e()])
            }
        }
    }

    pub(crate) fn is_zero_e(&self, a: &Elem) -> bool {
        match a {
            Elem::Q(x) => x.is_zero(),
            Elem::Fp(x) => *x == 0,
            Elem::Poly(c) => c.is_empty(),
            Elem::Frac(n, _) => n.is_empty(),
        }
    }

    fn frac_normalize(base: &Field, num: Vec<Elem>, den: Vec<Elem>) -> Elem {
        if num.is_empty() {
            return Elem::Frac(Vec::new(), vec![base.one_e()]);
        }
        if upoly::is_one(base, &den) {
            return Elem::Frac(num, den);
        }
        let g = upoly::gcd(base, &num, &den);
        let (mut n, mut d) = if upoly::is_one(base, &g) {
            (num, den)
        } else {
            (
                upoly::divrem(base, &num, &g).0,
                upoly::divrem(base, &den, &g).0,
            )
        };
        let lc = d.last().expect("nonzero denominator").clone();
        if lc != base.one_e() {
            let inv = base.inv_e(&lc).expect("nonzero");
            n = upoly::scale(base, &n, &inv);
            d = upoly::scale(base, &d, &inv);
        }
        Elem::Frac(n, d)
    }

    pub(crate) fn add_e(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (FieldKind::Rationals, Elem::Q(x), Elem::Q(y)) => Elem::Q(x + y),
            (FieldKind::Prime(p), Elem::Fp(x), Elem::Fp(y)) => {
                Elem::Fp(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            (FieldKind::Extension { base, .. }, Elem::Poly(x), Elem::Poly(y)) => {
                Elem::Poly(upoly::add(base, x, y))
            }
            (FieldKind::RationalFunctions { base, .. }, Elem::Frac(n1, d1), Elem::Frac(n2, d2)) => {
                if d1 == d2 {
                    Self::frac_normalize(base, upoly::add(base, n1, n2), d1.clone())
                } else {
                    let num =
                        upoly::add(base, &upoly::mul(base, n1, d2), &upoly::mul(base, n2, d1));
                    Self::frac_normalize(base, num, upoly::mul(base, d1, d2))
                }
            }
            _ => panic!("element representation does not match {self}"),
        }
    }

    pub(crate) fn neg_e(&self, a: &Elem) -> Elem {
        match (&*self.0, a) {
            (FieldKind::Rationals, Elem::Q(x)) => Elem::Q(-x),
            (FieldKind::Prime(p), Elem::Fp(x)) => Elem::Fp(if *x == 0 { 0 } else { p - x }),
            (FieldKind::Extension { base, .. }, Elem::Poly(x)) => Elem::Poly(upoly::neg(base, x)),
            (FieldKind::RationalFunctions { base, .. }, Elem::Frac(n, d)) => {
                Elem::Frac(upoly::neg(base, n), d.clone())
            }
            _ => panic!("element representation does not match {self}"),
        }
    }

    pub(crate) fn sub_e(&self, a: &Elem, b: &Elem) -> Elem {
        self.add_e(a, &self.neg_e(b))
    }

    pub(crate) fn mul_e(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (FieldKind::Rationals, Elem::Q(x), Elem::Q(y)) => Elem::Q(x * y),
            (FieldKind::Prime(p), Elem::Fp(x), Elem::Fp(y)) => {
                Elem::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (FieldKind::Extension { base, modulus, .. }, Elem::Poly(x), Elem::Poly(y)) => {
                let prod = upoly::mul(base, x, y);
                if prod.len() < modulus.len() {
                    Elem::Poly(prod)
                } else {
                    Elem::Poly(upoly::divrem(base, &prod, modulus).1)
                }
            }
            (FieldKind::RationalFunctions { base, .. }, Elem::Frac(n1, d1), Elem::Frac(n2, d2)) => {
                let num = upoly::mul(base, n1, n2);
                if upoly::is_one(base, d1) && upoly::is_one(base, d2) {
                    return Self::frac_normalize(base, num, d1.clone());
                }
                Self::frac_normalize(base, num, upoly::mul(base, d1, d2))
            }
            _ => panic!("element representation does not match {self}"),
        }
    }

    pub(crate) fn inv_e(&self, a: &Elem) -> Option<Elem> {
        if self.is_zero_e(a) {
            return None;
        }
        Some(match (&*self.0, a) {
            (FieldKind::Rationals, Elem::Q(x)) => Elem::Q(x.recip()),
            (FieldKind::Prime(p), Elem::Fp(x)) => Elem::Fp(mod_pow(*x, p - 2, *p)),
            (FieldKind::Extension { base, modulus, .. }, Elem::Poly(x)) => {
                let (g, s) = upoly::inverse_cofactor(base, x, modulus);
                debug_assert!(upoly::is_one(base, &g), "modulus must be irreducible");
                if !upoly::is_one(base, &g) {
                    return None;
                }
                Elem::Poly(upoly::divrem(base, &s, modulus).1)
            }
            (FieldKind::RationalFunctions { base, .. }, Elem::Frac(n, d)) => {
                Self::frac_normalize(base, d.clone(), n.clone())
            }
            _ => panic!("element representation does not match {self}"),
        })
    }

    // ---- element construction ---------------------------------------------------

    pub(crate) fn wrap(&self, elem: Elem) -> Fe {
        Fe {
            field: self.clone(),
            elem,
        }
    }

    pub fn zero(&self) -> Fe {
        self.wrap(self.zero_e())
    }

    pub fn one(&self) -> Fe {
        self.wrap(self.one_e())
    }

    /// `m·1_F`.
    pub fn from_int(&self, m: i64) -> Fe {
        self.wrap(self.int_e(&BigInt::from(m)))
    }

    pub fn from_bigint(&self, m: &BigInt) -> Fe {
        self.wrap(self.int_e(m))
    }

    /// `num/den` as a field element.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Fe, FieldError> {
        self.from_int(num).checked_div(&self.from_int(den))
    }

    /// The adjoined generator of an extension, or the variable of a
    /// rational-function field.
    pub fn generator(&self) -> Option<Fe> {
        match &*self.0 {
            FieldKind::Extension { base, .. } => {
                Some(self.wrap(Elem::Poly(vec![base.zero_e(), base.one_e()])))
            }
            FieldKind::RationalFunctions { base, .. } => Some(self.wrap(Elem::Frac(
                vec![base.zero_e(), base.one_e()],
                vec![base.one_e()],
            ))),
            _ => None,
        }
    }

    /// Resolve a generator/variable name anywhere in the tower to an element
    /// of this field.
    pub fn lookup(&self, name: &str) -> Option<Fe> {
        let here = match &*self.0 {
            FieldKind::Extension { name: n, .. } if n == name => self.generator(),
            FieldKind::RationalFunctions { var, .. } if var == name => self.generator(),
            _ => None,
        };
        if here.is_some() {
            return here;
        }
        let inner = self.base()?.lookup(name)?;
        self.coerce(&inner).ok()
    }

    /// Map an element of a subfield (or a rational, for any characteristic
    /// where its denominator is invertible) into this field.
    pub fn coerce(&self, x: &Fe) -> Result<Fe, FieldError> {
        if x.field == *self {
            return Ok(x.clone());
        }
        let fail = || FieldError::NotEmbeddable {
            value: x.to_string(),
            from: x.field.to_string(),
            to: self.to_string(),
        };
        match &*self.0 {
            FieldKind::Rationals => Err(fail()),
            FieldKind::Prime(p) => match (&*x.field.0, &x.elem) {
                (FieldKind::Rationals, Elem::Q(q)) => {
                    let num = self.int_e(q.numer());
                    let den = self.int_e(q.denom());
                    let inv = self.inv_e(&den).ok_or_else(fail)?;
                    Ok(self.wrap(self.mul_e(&num, &inv)))
                }
                (FieldKind::Prime(p2), Elem::Fp(v)) if p2 == p => Ok(self.wrap(Elem::Fp(*v))),
                _ => Err(fail()),
            },
            FieldKind::Extension { base, .. } => {
                let inner = base.coerce(x).map_err(|_| fail())?;
                Ok(self.wrap(Elem::Poly(upoly::constant(base, inner.elem))))
            }
            FieldKind::RationalFunctions { base, .. } => {
                let inner = base.coerce(x).map_err(|_| fail())?;
                Ok(self.wrap(Elem::Frac(
                    upoly::constant(base, inner.elem),
                    vec![base.one_e()],
                )))
            }
        }
    }

    // ---- enumeration and sampling ----------------------------------------------

    /// Element number `idx` in a fixed enumeration of a finite field
    /// (index 0 is zero, index 1 is one).
    pub fn element_from_index(&self, idx: u128) -> Option<Fe> {
        let q = self.order()?;
        if idx >= q {
            return None;
        }
        Some(self.wrap(self.elem_from_index(idx)))
    }

    fn elem_from_index(&self, mut idx: u128) -> Elem {
        match &*self.0 {
            FieldKind::Prime(_) => Elem::Fp(idx as u64),
            FieldKind::Extension { base, modulus, .. } => {
                let qb = base.order().expect("finite base");
                let mut coeffs = Vec::with_capacity(modulus.len() - 1);
                for _ in 0..modulus.len() - 1 {
                    coeffs.push(base.elem_from_index(idx % qb));
                    idx /= qb;
                }
                upoly::trim(base, &mut coeffs);
                Elem::Poly(coeffs)
            }
            _ => unreachable!("infinite field"),
        }
    }

    /// Inverse of [`Field::element_from_index`].
    pub fn index_of(&self, x: &Fe) -> Option<u128> {
        if x.field != *self {
            return None;
        }
        self.index_of_elem(&x.elem)
    }

    pub(crate) fn index_of_elem(&self, e: &Elem) -> Option<u128> {
        match (&*self.0, e) {
            (FieldKind::Prime(_), Elem::Fp(v)) => Some(*v as u128),
            (FieldKind::Extension { base, .. }, Elem::Poly(c)) => {
                let qb = base.order()?;
                let mut idx = 0u128;
                for coeff in c.iter().rev() {
                    idx = idx * qb + base.index_of_elem(coeff)?;
                }
                Some(idx)
            }
            _ => None,
        }
    }

    /// Every element of a finite field in enumeration order.
    pub fn elements(&self) -> Option<Vec<Fe>> {
        let q = self.order()?;
        Some((0..q).map(|i| self.wrap(self.elem_from_index(i))).collect())
    }

    /// Uniform for finite fields; small-height values otherwise.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        if let Some(q) = self.order() {
            return self.wrap(self.elem_from_index(rng.gen_range(0..q)));
        }
        match &*self.0 {
            FieldKind::Rationals => {
                let n: i64 = rng.gen_range(-9..=9);
                let d: i64 = rng.gen_range(1..=5);
                self.wrap(Elem::Q(BigRational::new(n.into(), d.into())))
            }
            FieldKind::Extension { base, modulus, .. } => {
                let mut c: Vec<Elem> = (0..modulus.len() - 1)
                    .map(|_| base.random(rng).elem)
                    .collect();
                upoly::trim(base, &mut c);
                self.wrap(Elem::Poly(c))
            }
            FieldKind::RationalFunctions { base, .. } => {
                let mut c: Vec<Elem> = (0..3).map(|_| base.random(rng).elem).collect();
                upoly::trim(base, &mut c);
                self.wrap(Elem::Frac(c, vec![base.one_e()]))
            }
            FieldKind::Prime(_) => unreachable!(),
        }
    }

    /// Uniform nonzero element (small-height for infinite fields).
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Fe {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    // ---- text -------------------------------------------------------------------

    /// Parse the coefficient grammar (`-3`, `2/7`, `2+3w`, `(t^2+1)/t`).
    pub fn parse(&self, src: &str) -> Result<Fe, FieldError> {
        let expr = text::parse_expr(src)?;
        self.eval_expr(&expr)
    }

    pub(crate) fn eval_expr(&self, e: &Expr) -> Result<Fe, FieldError> {
        Ok(match e {
            Expr::Int(n) => self.from_bigint(n),
            Expr::Ident(name) => self
                .lookup(name)
                .ok_or_else(|| FieldError::UnknownIdentifier(name.clone()))?,
            Expr::Add(a, b) => self.eval_expr(a)?.add(&self.eval_expr(b)?),
            Expr::Sub(a, b) => self.eval_expr(a)?.sub(&self.eval_expr(b)?),
            Expr::Mul(a, b) => self.eval_expr(a)?.mul(&self.eval_expr(b)?),
            Expr::Div(a, b) => self.eval_expr(a)?.checked_div(&self.eval_expr(b)?)?,
            Expr::Neg(a) => self.eval_expr(a)?.neg(),
            Expr::Pow(a, k) => self.eval_expr(a)?.pow(*k as u64),
        })
    }
}

/// An element of a [`Field`], always in canonical form.
#[derive(Clone)]
pub struct Fe {
    field: Field,
    elem: Elem,
}

impl PartialEq for Fe {
    fn eq(&self, other: &Self) -> bool {
        self.elem == other.elem && self.field == other.field
    }
}

impl Eq for Fe {}

impl Hash for Fe {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elem.hash(state);
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.field)
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render::render_elem(&self.field, &self.elem))
    }
}

impl Fe {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elem(&self) -> &Elem {
        &self.elem
    }

    fn check_same(&self, other: &Fe) -> Result<(), FieldError> {
        if self.field != other.field {
            return Err(FieldError::DescriptorMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        Ok(())
    }

    fn assert_same(&self, other: &Fe) {
        if let Err(e) = self.check_same(other) {
            panic!("{e}");
        }
    }

    pub fn checked_add(&self, rhs: &Fe) -> Result<Fe, FieldError> {
        self.check_same(rhs)?;
        Ok(self.field.wrap(self.field.add_e(&self.elem, &rhs.elem)))
    }

    pub fn checked_sub(&self, rhs: &Fe) -> Result<Fe, FieldError> {
        self.check_same(rhs)?;
        Ok(self.field.wrap(self.field.sub_e(&self.elem, &rhs.elem)))
    }

    pub fn checked_mul(&self, rhs: &Fe) -> Result<Fe, FieldError> {
        self.check_same(rhs)?;
        Ok(self.field.wrap(self.field.mul_e(&self.elem, &rhs.elem)))
    }

    pub fn checked_inv(&self) -> Result<Fe, FieldError> {
        self.field
            .inv_e(&self.elem)
            .map(|e| self.field.wrap(e))
            .ok_or(FieldError::DivisionByZero)
    }

    pub fn checked_div(&self, rhs: &Fe) -> Result<Fe, FieldError> {
        self.check_same(rhs)?;
        Ok(self.mul(&rhs.checked_inv()?))
    }

    /// Rational value, when this is an element of `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.elem {
            Elem::Q(q) => Some(q),
            _ => None,
        }
    }

    /// Residue, when this is an element of a prime field.
    pub fn as_residue(&self) -> Option<u64> {
        match &self.elem {
            Elem::Fp(v) => Some(*v),
            _ => None,
        }
    }

    /// Coefficients over the base (extension elements and constants of
    /// rational-function fields).
    pub fn base_coefficients(&self) -> Option<Vec<Fe>> {
        let base = self.field.base()?;
        match &self.elem {
            Elem::Poly(c) => Some(c.iter().map(|e| base.wrap(e.clone())).collect()),
            _ => None,
        }
    }

    /// Numerator and denominator coefficient lists (constant-first) of an
    /// element of a rational-function field.
    pub fn fraction_parts(&self) -> Option<(Vec<Fe>, Vec<Fe>)> {
        let base = self.field.base()?;
        match &self.elem {
            Elem::Frac(n, d) => Some((
                n.iter().map(|e| base.wrap(e.clone())).collect(),
                d.iter().map(|e| base.wrap(e.clone())).collect(),
            )),
            _ => None,
        }
    }

    /// Build a rational function from constant-first coefficient lists over
    /// the base.
    pub fn from_fraction_parts(field: &Field, num: &[Fe], den: &[Fe]) -> Result<Fe, FieldError> {
        let base = match field.kind() {
            FieldKind::RationalFunctions { base, .. } => base,
            _ => {
                return Err(FieldError::Unsupported(format!(
                    "{field} is not a function field"
                )))
            }
        };
        let lift = |cs: &[Fe]| -> Result<Vec<Elem>, FieldError> {
            let mut v = cs
                .iter()
                .map(|c| base.coerce(c).map(|x| x.elem))
                .collect::<Result<Vec<_>, _>>()?;
            upoly::trim(base, &mut v);
            Ok(v)
        };
        let n = lift(num)?;
        let d = lift(den)?;
        if d.is_empty() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(field.wrap(Field::frac_normalize(base, n, d)))
    }

    /// Is this the image of an integer (or rational) under the prime-field map?
    pub fn is_prime_field_value(&self) -> bool {
        match &self.elem {
            Elem::Q(_) | Elem::Fp(_) => true,
            Elem::Poly(c) => {
                c.len() <= 1
                    && c.iter().all(|x| {
                        self.field
                            .base()
                            .unwrap()
                            .wrap(x.clone())
                            .is_prime_field_value()
                    })
            }
            Elem::Frac(n, d) => {
                let base = self.field.base().unwrap();
                n.len() <= 1
                    && d.len() == 1
                    && n.iter()
                        .all(|x| base.wrap(x.clone()).is_prime_field_value())
            }
        }
    }
}

impl Ring for Fe {
    fn zero_like(&self) -> Self {
        self.field.zero()
    }

    fn one_like(&self) -> Self {
        self.field.one()
    }

    fn from_int_like(&self, n: i64) -> Self {
        self.field.from_int(n)
    }

    fn is_zero(&self) -> bool {
        self.field.is_zero_e(&self.elem)
    }

    fn add(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        self.field.wrap(self.field.add_e(&self.elem, &rhs.elem))
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        self.field.wrap(self.field.sub_e(&self.elem, &rhs.elem))
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.assert_same(rhs);
        self.field.wrap(self.field.mul_e(&self.elem, &rhs.elem))
    }

    fn neg(&self) -> Self {
        self.field.wrap(self.field.neg_e(&self.elem))
    }
}

impl FieldLike for Fe {
    fn inv(&self) -> Option<Self> {
        self.field.inv_e(&self.elem).map(|e| self.field.wrap(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    pub(crate) fn gf4() -> Field {
        let f2 = gf(2);
        let poly = [f2.one(), f2.one(), f2.one()];
        extend_with_root(&f2, &poly, "w").unwrap().0
    }

    fn gf49() -> Field {
        let f7 = gf(7);
        extend_with_root(&f7, &[f7.one(), f7.zero(), f7.one()], "w")
            .unwrap()
            .0
    }

    fn q_omega() -> Field {
        let q = Field::rationals();
        extend_with_root(&q, &[q.one(), q.zero(), q.one()], "w")
            .unwrap()
            .0
    }

    #[test]
    fn inverse_mod_seven() {
        let f = gf(7);
        assert_eq!(f.from_int(3).inv().unwrap(), f.from_int(5));
    }

    #[test]
    fn rational_sum() {
        let q = Field::rationals();
        let a = q.from_ratio(2, 3).unwrap();
        let b = q.from_ratio(1, 6).unwrap();
        assert_eq!(a.add(&b), q.from_ratio(5, 6).unwrap());
        assert_eq!(a.add(&b).to_string(), "5/6");
    }

    #[test]
    fn characteristic_two_collapse() {
        let f = gf(2);
        assert!(f.from_int(2).is_zero());
        assert_eq!(f.from_int(-1), f.one());
    }

    #[test]
    fn errors_on_zero_division_and_mismatch() {
        let f = gf(7);
        assert_eq!(f.zero().checked_inv(), Err(FieldError::DivisionByZero));
        let g = gf(5);
        assert!(matches!(
            f.one().checked_add(&g.one()),
            Err(FieldError::DescriptorMismatch(_, _))
        ));
        assert!(matches!(Field::prime(9), Err(FieldError::NotPrime(9))));
    }

    #[test]
    fn extension_sizes_and_generator() {
        let f = gf49();
        assert_eq!(f.order(), Some(49));
        let w = f.generator().unwrap();
        assert_eq!(w.mul(&w), f.from_int(-1));
        assert_eq!(gf4().order(), Some(4));
    }

    #[test]
    fn embedding_commutes_with_inversion() {
        let f7 = gf(7);
        let (f49, emb) = extend_with_root(&f7, &[f7.one(), f7.zero(), f7.one()], "w").unwrap();
        let three = f7.from_int(3);
        let lifted_inv = emb.apply(&three).unwrap().inv().unwrap();
        assert_eq!(lifted_inv, emb.apply(&three.inv().unwrap()).unwrap());
        assert_eq!(lifted_inv.field(), &f49);
    }

    #[test]
    fn parse_and_render_extension_elements() {
        let f = q_omega();
        let x = f.parse("2+3w").unwrap();
        assert_eq!(x.to_string(), "2+3w");
        let y = f.parse("-1/2w").unwrap();
        assert_eq!(y.to_string(), "(-1/2)w");
        assert_eq!(f.parse(&y.to_string()).unwrap(), y);
        assert_eq!(f.parse("w^2").unwrap(), f.from_int(-1));
        assert!(matches!(
            f.parse("v"),
            Err(FieldError::UnknownIdentifier(_))
        ));
    }

    #[test]
    fn rational_functions_reduce() {
        let q = Field::rationals();
        let ft = Field::rational_functions(&q, "t").unwrap();
        let r = ft.parse("(t^2+2t)/(t+1)").unwrap();
        let s = ft.parse("t/t^2").unwrap();
        assert_eq!(s, ft.parse("1/t").unwrap());
        assert_eq!(s.to_string(), "1/t");
        assert_eq!(ft.parse(&r.to_string()).unwrap(), r);
        let prod = r.mul(&r.inv().unwrap());
        assert!(prod.is_one());
    }

    #[test]
    fn index_enumeration_round_trips() {
        for f in [gf(5), gf4(), gf49()] {
            let elems = f.elements().unwrap();
            assert_eq!(elems.len() as u128, f.order().unwrap());
            for (i, e) in elems.iter().enumerate() {
                assert_eq!(f.index_of(e), Some(i as u128));
            }
            assert!(elems[0].is_zero());
            assert!(elems[1].is_one());
        }
    }

    fn axioms(f: &Field, seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
            assert_eq!(a.add(&b), b.add(&a));
            assert_eq!(a.mul(&b), b.mul(&a));
            assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            if !a.is_zero() {
                assert!(a.mul(&a.inv().unwrap()).is_one());
            }
            // re-canonicalizing is the identity
            assert_eq!(f.parse(&a.to_string()).unwrap(), a);
        }
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let q = Field::rationals();
        let ft = Field::rational_functions(&gf(5), "t").unwrap();
        for (i, f) in [q.clone(), gf(7), gf(2), gf4(), gf49(), q_omega(), ft]
            .iter()
            .enumerate()
        {
            axioms(f, i as u64);
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for f in [gf(7), gf4(), gf49()] {
            let p = f.characteristic();
            assert!(f.from_int(p as i64).is_zero());
            for _ in 0..100 {
                let (x, y) = (f.random(&mut rng), f.random(&mut rng));
                assert_eq!(x.add(&y).pow(p), x.pow(p).add(&y.pow(p)));
            }
        }
    }

    #[test]
    fn coercion_rules() {
        let q = Field::rationals();
        let f7 = gf(7);
        let half = q.from_ratio(1, 2).unwrap();
        assert_eq!(f7.coerce(&half).unwrap(), f7.from_int(4));
        assert!(gf(2).coerce(&half).is_err());
        assert!(q.coerce(&f7.one()).is_err());
        let f49 = gf49();
        assert_eq!(f49.coerce(&f7.from_int(3)).unwrap(), f49.from_int(3));
        assert!(f49.coerce(&gf(5).one()).is_err());
    }
}
