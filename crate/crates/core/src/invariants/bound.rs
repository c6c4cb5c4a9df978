//! Exponent bound for invariants of the full general linear group on `S / m^[Q]`.

use serde::Serialize;

use super::brute::{degree_basis, fixed_spaces, frobenius_exponent, DegreeBasis, FixedSpace, HilbertFunction};
use crate::error::{Error, Result};
use crate::ff::{prime_power, Field};
use crate::group::general_linear_group;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub q: u64,
    pub n: usize,
    pub m: u32,
    /// `Q - q`, the largest exponent allowed below the top degree.
    pub exponent_bound: u32,
    pub hilbert: HilbertFunction,
    /// Exponent vectors in the support of some invariant that break the bound.
    pub violations: Vec<Vec<u32>>,
    /// Dimension of the invariants of degree `n (Q - 1)`.
    pub top_dim: u64,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.top_dim == 1
    }
}

fn gl_spaces(q: u64, n: usize, m: u32, cap: u64) -> Result<(DegreeBasis, Vec<FixedSpace>)> {
    let (p, r) = prime_power(q).ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
    if n < 1 || m < 1 {
        return Err(Error::InvalidArgument("n and m must be at least 1".into()));
    }
    let field = Field::new(p, r)?;
    let basis = degree_basis(n, frobenius_exponent(q, m)?, cap)?;
    let group = general_linear_group(&field, n)?;
    let spaces = fixed_spaces(&basis, &field, &group)?;
    Ok((basis, spaces))
}

/// Hilbert function of `(S / m^[q^m])^{GL_n(F_q)}` by brute force over all group elements.
pub fn full_gl_hilbert(q: u64, n: usize, m: u32, cap: u64) -> Result<HilbertFunction> {
    let (_, spaces) = gl_spaces(q, n, m, cap)?;
    Ok(HilbertFunction::from_dims(spaces.iter().map(|s| s.dim() as u64).collect()))
}

/// Checks that every monomial in the support of a `GL_n(F_q)`-invariant of `S / m^[Q]` is
/// either `x_1^{Q-1} ... x_n^{Q-1}` or has all exponents at most `Q - q`, and that the top
/// degree `n (Q - 1)` carries exactly one invariant.
pub fn check_exponent_bound(q: u64, n: usize, m: u32, cap: u64) -> Result<BoundReport> {
    let (basis, spaces) = gl_spaces(q, n, m, cap)?;
    let big_q = basis.frobenius_exponent();
    let bound = big_q - q as u32;
    let top = basis.top_degree();
    let mut violations = Vec::new();
    for space in &spaces {
        if space.degree == top {
            continue;
        }
        let mut support: Vec<usize> = space.basis.iter().flatten().map(|&(i, _)| i).collect();
        support.sort_unstable();
        support.dedup();
        for i in support {
            let mono = &basis.monomials(space.degree)[i];
            if mono.exps().iter().any(|&a| a > bound) {
                violations.push(mono.exps().to_vec());
            }
        }
    }
    let hilbert = HilbertFunction::from_dims(spaces.iter().map(|s| s.dim() as u64).collect());
    let top_dim = hilbert.dim(top);
    Ok(BoundReport { q, n, m, exponent_bound: bound, hilbert, violations, top_dim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::DEFAULT_MONOMIAL_CAP;

    #[test]
    fn gl2_f2_top_invariant() {
        let r = check_exponent_bound(2, 2, 1, DEFAULT_MONOMIAL_CAP).unwrap();
        assert!(r.holds());
        assert_eq!(r.hilbert.dims, vec![1, 0, 1]);
    }
}
