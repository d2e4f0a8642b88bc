//! Sparse multivariate polynomials over a [`Field`] and the limit of a
//! univariate rational function at zero.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::fields::{Fe, Field, FieldError};
use crate::ring::{FieldLike, Ring};
use crate::text::{self, atomize, Expr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("variable registries differ")]
    RegistryMismatch,
    #[error("no value assigned to variable {0:?}")]
    MissingVariable(String),
    #[error("unknown identifier {0:?}")]
    UnknownIdentifier(String),
    #[error("pole at zero")]
    PoleAtZero,
    #[error("division by a non-constant polynomial")]
    NonConstantDivisor,
    #[error("expected a function of {0} only")]
    NotUnivariate(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Ordered variable names shared by all polynomials of one ring.
#[derive(Clone, PartialEq, Eq)]
pub struct Registry(Arc<Vec<String>>);

impl Registry {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Registry {
        Registry(Arc::new(
            names.iter().map(|s| s.as_ref().to_string()).collect(),
        ))
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl fmt::Debug for Registry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Exponent vectors in lexicographic order, nonzero coefficients only.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    field: Field,
    reg: Registry,
    terms: BTreeMap<Vec<u32>, Fe>,
}

impl MultiPoly {
    pub fn zero(field: &Field, reg: &Registry) -> MultiPoly {
        MultiPoly {
            field: field.clone(),
            reg: reg.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(reg: &Registry, c: Fe) -> MultiPoly {
        let mut p = MultiPoly::zero(c.field(), reg);
        if !c.is_zero() {
            p.terms.insert(vec![0; reg.len()], c);
        }
        p
    }

    pub fn var(field: &Field, reg: &Registry, name: &str) -> Result<MultiPoly, PolyError> {
        let i = reg
            .position(name)
            .ok_or_else(|| PolyError::UnknownIdentifier(name.into()))?;
        Ok(MultiPoly::monomial(reg, field.one(), &{
            let mut e = vec![0; reg.len()];
            e[i] = 1;
            e
        }))
    }

    /// All variables of `reg` in order.
    pub fn vars(field: &Field, reg: &Registry) -> Vec<MultiPoly> {
        reg.names()
            .iter()
            .map(|n| MultiPoly::var(field, reg, n).unwrap())
            .collect()
    }

    pub fn monomial(reg: &Registry, c: Fe, exps: &[u32]) -> MultiPoly {
        assert_eq!(exps.len(), reg.len(), "exponent vector length");
        let mut p = MultiPoly::zero(c.field(), reg);
        if !c.is_zero() {
            p.terms.insert(exps.to_vec(), c);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn registry(&self) -> &Registry {
        &self.reg
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &Fe)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_identically_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> Fe {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// The constant value, if the polynomial has no variables in its support.
    pub fn as_constant(&self) -> Option<Fe> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn compatible(&self, o: &MultiPoly) -> Result<(), PolyError> {
        if self.reg != o.reg {
            return Err(PolyError::RegistryMismatch);
        }
        if self.field != o.field {
            return Err(FieldError::DescriptorMismatch(
                self.field.to_string(),
                o.field.to_string(),
            )
            .into());
        }
        Ok(())
    }

    fn insert_add(terms: &mut BTreeMap<Vec<u32>, Fe>, e: Vec<u32>, c: Fe) {
        use std::collections::btree_map::Entry;
        match terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn checked_add(&self, o: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.compatible(o)?;
        let mut out = self.clone();
        for (e, c) in &o.terms {
            Self::insert_add(&mut out.terms, e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, o: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.checked_add(&Ring::neg(o))
    }

    pub fn checked_mul(&self, o: &MultiPoly) -> Result<MultiPoly, PolyError> {
        self.compatible(o)?;
        let mut out = MultiPoly::zero(&self.field, &self.reg);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                Self::insert_add(&mut out.terms, e, c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Fe) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field, &self.reg);
        if c.is_zero() {
            return out;
        }
        out.terms = self
            .terms
            .iter()
            .map(|(e, x)| (e.clone(), x.mul(c)))
            .collect();
        out
    }

    /// Evaluate with values given in registry order.
    pub fn evaluate_at(&self, values: &[Fe]) -> Result<Fe, PolyError> {
        if values.len() != self.reg.len() {
            return Err(PolyError::RegistryMismatch);
        }
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in values.iter().zip(e) {
                if k > 0 {
                    t = t.checked_mul(&x.pow(k as u64))?;
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// The evaluation homomorphism. Variables absent from the support may be
    /// left unassigned.
    pub fn evaluate(&self, assignment: &BTreeMap<String, Fe>) -> Result<Fe, PolyError> {
        let used: Vec<bool> = (0..self.reg.len())
            .map(|i| self.terms.keys().any(|e| e[i] > 0))
            .collect();
        let mut values = Vec::with_capacity(self.reg.len());
        for (i, name) in self.reg.names().iter().enumerate() {
            match assignment.get(name) {
                Some(v) => values.push(self.field.coerce(v)?),
                None if !used[i] => values.push(self.field.zero()),
                None => return Err(PolyError::MissingVariable(name.clone())),
            }
        }
        self.evaluate_at(&values)
    }

    /// Parse the polynomial grammar (`3*x1^2 - x2 + 1/2`). Identifiers are
    /// registry variables first, then generators of the coefficient field.
    pub fn parse(field: &Field, reg: &Registry, src: &str) -> Result<MultiPoly, PolyError> {
        let e = text::parse_expr(src).map_err(FieldError::from)?;
        Self::from_expr(field, reg, &e)
    }

    fn from_expr(field: &Field, reg: &Registry, e: &Expr) -> Result<MultiPoly, PolyError> {
        let rec = |x: &Expr| Self::from_expr(field, reg, x);
        Ok(match e {
            Expr::Int(n) => MultiPoly::constant(reg, field.from_bigint(n)),
            Expr::Ident(name) => {
                if reg.position(name).is_some() {
                    MultiPoly::var(field, reg, name)?
                } else {
                    let c = field
                        .lookup(name)
                        .ok_or_else(|| PolyError::UnknownIdentifier(name.clone()))?;
                    MultiPoly::constant(reg, c)
                }
            }
            Expr::Add(a, b) => rec(a)?.checked_add(&rec(b)?)?,
            Expr::Sub(a, b) => rec(a)?.checked_sub(&rec(b)?)?,
            Expr::Mul(a, b) => rec(a)?.checked_mul(&rec(b)?)?,
            Expr::Div(a, b) => {
                let d = rec(b)?.as_constant().ok_or(PolyError::NonConstantDivisor)?;
                rec(a)?.scale(&d.checked_inv()?)
            }
            Expr::Neg(a) => Ring::neg(&rec(a)?),
            Expr::Pow(a, k) => Ring::pow(&rec(a)?, *k as u64),
        })
    }
}

impl fmt::Display for MultiPoly {
    /// Highest term first in lexicographic order; factors joined by `*`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .zip(self.reg.names())
                .filter(|(k, _)| **k > 0)
                .map(|(k, name)| {
                    if *k == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            let coeff = c.to_string();
            let term = if mono.is_empty() {
                coeff
            } else if coeff == "1" {
                mono.join("*")
            } else if coeff == "-1" {
                format!("-{}", mono.join("*"))
            } else {
                format!("{}*{}", atomize(&coeff), mono.join("*"))
            };
            if n > 0 && !term.starts_with('-') {
                out.push('+');
            }
            out.push_str(&term);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Ring for MultiPoly {
    fn zero_like(&self) -> Self {
        MultiPoly::zero(&self.field, &self.reg)
    }

    fn one_like(&self) -> Self {
        MultiPoly::constant(&self.reg, self.field.one())
    }

    fn from_int_like(&self, n: i64) -> Self {
        MultiPoly::constant(&self.reg, self.field.from_int(n))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("compatible polynomials")
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("compatible polynomials")
    }

    fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("compatible polynomials")
    }

    fn neg(&self) -> Self {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }
}

/// A quotient of polynomials over one registry. Univariate quotients are
/// reduced by a GCD; multivariate ones only shed common monomial factors,
/// so callers that need exactness compare by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    pub num: MultiPoly,
    pub den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<RationalFunction, PolyError> {
        num.compatible(&den)?;
        if den.is_identically_zero() {
            return Err(FieldError::DivisionByZero.into());
        }
        Ok(RationalFunction { num, den }.reduced())
    }

    pub fn from_poly(p: MultiPoly) -> RationalFunction {
        let den = p.one_like();
        RationalFunction { num: p, den }
    }

    fn reduced(self) -> RationalFunction {
        if self.num.reg.len() == 1 {
            let var = self.num.reg.names()[0].clone();
            let ft = Field::rational_functions(&self.num.field, &var).expect("fresh variable");
            if let Ok(x) = self.to_function_field(&ft) {
                return RationalFunction::from_function_field(&x, &self.num.reg);
            }
            return self;
        }
        // strip the common monomial factor
        let nv = self.num.reg.len();
        let mut common = vec![u32::MAX; nv];
        for e in self.num.terms.keys().chain(self.den.terms.keys()) {
            for (c, x) in common.iter_mut().zip(e) {
                *c = (*c).min(*x);
            }
        }
        if self.num.is_empty() || common.iter().all(|&c| c == 0) {
            return self;
        }
        let shift = |p: &MultiPoly| {
            let mut out = p.zero_like();
            out.terms = p
                .terms
                .iter()
                .map(|(e, c)| {
                    (
                        e.iter().zip(&common).map(|(a, b)| a - b).collect(),
                        c.clone(),
                    )
                })
                .collect();
            out
        };
        RationalFunction {
            num: shift(&self.num),
            den: shift(&self.den),
        }
    }

    /// The same function as an element of the univariate function field.
    pub fn to_function_field(&self, ft: &Field) -> Result<Fe, PolyError> {
        let var = ft
            .function_variable()
            .ok_or_else(|| PolyError::NotUnivariate("?".into()))?;
        let i = self
            .num
            .reg
            .position(var)
            .ok_or_else(|| PolyError::NotUnivariate(var.into()))?;
        let coeffs = |p: &MultiPoly| -> Result<Vec<Fe>, PolyError> {
            let deg = p.degree_in(i).unwrap_or(0) as usize;
            let mut v = vec![p.field.zero(); deg + 1];
            for (e, c) in &p.terms {
                if e.iter().enumerate().any(|(j, &k)| j != i && k > 0) {
                    return Err(PolyError::NotUnivariate(var.into()));
                }
                v[e[i] as usize] = c.clone();
            }
            Ok(v)
        };
        Ok(Fe::from_fraction_parts(
            ft,
            &coeffs(&self.num)?,
            &coeffs(&self.den)?,
        )?)
    }

    pub fn from_function_field(x: &Fe, reg: &Registry) -> RationalFunction {
        let (n, d) = x.fraction_parts().expect("function-field element");
        let base = x.field().base().unwrap().clone();
        let build = |cs: &[Fe]| {
            let mut p = MultiPoly::zero(&base, reg);
            for (k, c) in cs.iter().enumerate() {
                MultiPoly::insert_add(&mut p.terms, vec![k as u32], c.clone());
            }
            p
        };
        RationalFunction {
            num: build(&n),
            den: build(&d),
        }
    }

    /// `a/b = c/d` iff `ad = bc`.
    pub fn equals(&self, o: &RationalFunction) -> Result<bool, PolyError> {
        Ok(self.num.checked_mul(&o.den)? == o.num.checked_mul(&self.den)?)
    }
}

/// Value at `var = 0` of a univariate rational function, after reduction.
pub fn limit_at_zero(r: &Fe) -> Result<Fe, PolyError> {
    let (n, d) = r
        .fraction_parts()
        .ok_or_else(|| PolyError::NotUnivariate(r.field().to_string()))?;
    let base = r.field().base().unwrap();
    let at0 = |cs: &[Fe]| cs.first().cloned().unwrap_or_else(|| base.zero());
    let d0 = at0(&d);
    if d0.is_zero() {
        return Err(PolyError::PoleAtZero);
    }
    Ok(at0(&n).div(&d0).unwrap())
}

/// `base(var)`, the field in which curve entries live.
pub fn rational_function_field(base: &Field, var: &str) -> Result<Field, FieldError> {
    Field::rational_functions(base, var)
}
