use std::fmt;

use super::{Monomial, Polynomial};
use crate::ff::{Field, FieldElem};

/// Prime-field coefficients print as symmetric residues (`p - 1` shows as `-1`);
/// extension-field coefficients print as `[c0,...,c_{r-1}]` and are always added.
fn signed_coeff(f: &Field, c: FieldElem) -> (bool, String) {
    if f.r() > 1 {
        return (false, f.format_elem(c));
    }
    let v = c.index();
    if f.p() > 2 && v > f.p() / 2 {
        (true, (f.p() - v).to_string())
    } else {
        (false, v.to_string())
    }
}

fn write_monomial(out: &mut String, prefix: &str, m: &Monomial) {
    let mut first = true;
    for (i, &a) in m.exps().iter().enumerate() {
        if a == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(prefix);
        out.push_str(&(i + 1).to_string());
        if a > 1 {
            out.push('^');
            out.push_str(&a.to_string());
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let field = self.field();
        let mut out = String::new();
        for (idx, (mono, c)) in self.terms().enumerate() {
            let (negative, mag) = signed_coeff(field, c);
            match (idx, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if mono.is_one() {
                out.push_str(&mag);
                continue;
            }
            if mag != "1" {
                out.push_str(&mag);
                out.push('*');
            }
            write_monomial(&mut out, self.ring().prefix(), mono);
        }
        f.write_str(&out)
    }
}
