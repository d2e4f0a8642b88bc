//! Lookup-table arithmetic for finite fields with at most 256 elements,
//! used by the hot loops of witness search. Elements are their enumeration
//! indices from [`Field::element_from_index`].

use super::{Fe, Field, FieldError};
use crate::ring::{FieldLike, Ring};

#[derive(Clone)]
pub struct SmallField {
    field: Field,
    q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl std::fmt::Debug for SmallField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SmallField({})", self.field)
    }
}

impl SmallField {
    pub fn new(field: &Field) -> Result<SmallField, FieldError> {
        let q = match field.order() {
            Some(q) if q <= 256 => q as usize,
            _ => {
                return Err(FieldError::Unsupported(format!(
                    "table arithmetic for {field}"
                )))
            }
        };
        let elems = field.elements().unwrap();
        let idx = |x: &Fe| field.index_of(x).unwrap() as u8;
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for i in 0..q {
            for j in i..q {
                let s = idx(&elems[i].add(&elems[j]));
                let p = idx(&elems[i].mul(&elems[j]));
                add[i * q + j] = s;
                add[j * q + i] = s;
                mul[i * q + j] = p;
                mul[j * q + i] = p;
            }
        }
        let neg = elems.iter().map(|x| idx(&x.neg())).collect();
        let inv = elems
            .iter()
            .map(|x| x.inv().map(|y| idx(&y)).unwrap_or(0))
            .collect();
        Ok(SmallField {
            field: field.clone(),
            q,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.field.characteristic()
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// `None` for zero.
    #[inline]
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn from_int(&self, n: i64) -> u8 {
        self.index(&self.field.from_int(n))
    }

    pub fn index(&self, x: &Fe) -> u8 {
        self.field.index_of(x).expect("element of this field") as u8
    }

    pub fn element(&self, a: u8) -> Fe {
        self.field
            .element_from_index(a as u128)
            .expect("index in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::extend_with_root;

    #[test]
    fn tables_agree_with_generic_arithmetic() {
        let f2 = Field::prime(2).unwrap();
        let (f4, _) = extend_with_root(&f2, &[f2.one(), f2.one(), f2.one()], "w").unwrap();
        for f in [Field::prime(7).unwrap(), f4, Field::prime(251).unwrap()] {
            let t = SmallField::new(&f).unwrap();
            let q = t.order();
            let step = if q > 16 { 13 } else { 1 };
            for a in (0..q).step_by(step) {
                for b in (0..q).step_by(step) {
                    let (x, y) = (t.element(a as u8), t.element(b as u8));
                    assert_eq!(t.element(t.add(a as u8, b as u8)), x.add(&y));
                    assert_eq!(t.element(t.mul(a as u8, b as u8)), x.mul(&y));
                    assert_eq!(t.element(t.sub(a as u8, b as u8)), x.sub(&y));
                }
                if a != 0 {
                    assert_eq!(t.mul(a as u8, t.inv(a as u8).unwrap()), 1);
                }
            }
        }
        assert!(SmallField::new(&Field::rationals()).is_err());
    }
}
