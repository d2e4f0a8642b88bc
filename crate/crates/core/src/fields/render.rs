use num_traits::One;

use super::{Elem, Field, FieldKind};
use crate::text::atomize;

pub(crate) fn render_elem(field: &Field, e: &Elem) -> String {
    match (field.kind(), e) {
        (FieldKind::Rationals, Elem::Q(q)) => {
            if q.denom().is_one() {
                q.numer().to_string()
            } else {
                format!("{}/{}", q.numer(), q.denom())
            }
        }
        (FieldKind::Prime(_), Elem::Fp(v)) => v.to_string(),
        (FieldKind::Extension { base, name, .. }, Elem::Poly(c)) => {
            render_upoly(base, c, name, false)
        }
        (FieldKind::RationalFunctions { base, var }, Elem::Frac(n, d)) => {
            let num = render_upoly(base, n, var, true);
            if super::upoly::is_one(base, d) {
                num
            } else {
                let den = render_upoly(base, d, var, true);
                format!("{}/{}", atomize(&num), atomize(&den))
            }
        }
        _ => "<invalid>".to_string(),
    }
}

/// Render a univariate polynomial. Extension elements are written
/// constant-first (`2+3w`), rational-function parts highest degree first.
pub(crate) fn render_upoly(base: &Field, c: &[Elem], var: &str, descending: bool) -> String {
    if c.is_empty() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    let order: Vec<usize> = if descending {
        (0..c.len()).rev().collect()
    } else {
        (0..c.len()).collect()
    };
    for k in order {
        if base.is_zero_e(&c[k]) {
            continue;
        }
        let coeff = render_elem(base, &c[k]);
        let mono = match k {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{k}"),
        };
        let term = if k == 0 {
            coeff
        } else if coeff == "1" {
            mono
        } else if coeff == "-1" {
            format!("-{mono}")
        } else {
            format!("{}{mono}", atomize(&coeff))
        };
        terms.push(term);
    }
    let mut out = String::new();
    for (i, t) in terms.iter().enumerate() {
        if i > 0 && !t.starts_with('-') {
            out.push('+');
        }
        out.push_str(t);
    }
    out
}
