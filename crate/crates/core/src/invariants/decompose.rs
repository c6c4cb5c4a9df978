//! The spaces `A_G = (S^G + m^[Q]) / m^[Q]` and `B_G`, and the direct-sum check
//! `(S / m^[Q])^G = A_G ⊕ B_G` against the brute-force fixed spaces.

use rayon::prelude::*;
use serde::Serialize;

use super::brute::{brute_force_spaces, degree_basis, frobenius_exponent, to_sparse, DegreeBasis};
use super::{basic_invariants, BasicInvariants, HilbertFunction};
use crate::error::{Error, Result};
use crate::ff::{rank_of_sparse, SparseVec};
use crate::group::GroupSpec;
use crate::poly::{Monomial, Polynomial};

/// Powers `f^0, f^1, ...` reduced modulo `m^[Q]`, stopping before the first zero power or
/// once the degree passes `max_degree`.
fn truncated_powers(f: &Polynomial, q: u32, max_degree: u64) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::one(f.ring())];
    let step = f.terms().next().map_or(0, |(m, _)| m.degree());
    loop {
        if step == 0 || step * out.len() as u64 > max_degree {
            return out;
        }
        let next = out.last().unwrap().mul_truncated(f, q).expect("same ring");
        if next.is_zero() {
            return out;
        }
        out.push(next);
    }
}

/// Visits every product `prod_i powers[i][c_i]` that survives modulo `m^[Q]`, with its degree.
fn for_each_product(
    powers: &[Vec<Polynomial>],
    q: u32,
    seed: Polynomial,
    max_degree: u64,
    visit: &mut dyn FnMut(&Polynomial),
) {
    fn go(
        powers: &[Vec<Polynomial>],
        q: u32,
        acc: &Polynomial,
        max_degree: u64,
        visit: &mut dyn FnMut(&Polynomial),
    ) {
        let Some((first, rest)) = powers.split_first() else {
            visit(acc);
            return;
        };
        for p in first {
            let next = acc.mul_truncated(p, q).expect("same ring");
            if next.is_zero() || next.terms().next().unwrap().0.degree() > max_degree {
                break;
            }
            go(rest, q, &next, max_degree, visit);
        }
    }
    if !seed.is_zero() {
        go(powers, q, &seed, max_degree, visit);
    }
}

fn bucket(basis: &DegreeBasis, products: Vec<Polynomial>) -> Result<Vec<Vec<SparseVec>>> {
    let mut out = vec![Vec::new(); basis.top_degree() + 1];
    for p in products {
        let d = p.terms().next().unwrap().0.degree() as usize;
        let v = to_sparse(&p, basis, d)?;
        if !v.is_empty() {
            out[d].push(v);
        }
    }
    Ok(out)
}

/// Spanning vectors of `A_G` in each degree: the f-monomials reduced modulo `m^[Q]`.
pub fn a_space(basic: &BasicInvariants, basis: &DegreeBasis) -> Result<Vec<Vec<SparseVec>>> {
    let q = basis.frobenius_exponent();
    let top = basis.top_degree() as u64;
    let powers: Vec<Vec<Polynomial>> = basic.polys().iter().map(|f| truncated_powers(f, q, top)).collect();
    let mut products = Vec::new();
    for_each_product(&powers, q, Polynomial::one(basic.x_ring()), top, &mut |p| products.push(p.clone()));
    bucket(basis, products)
}

/// Spanning vectors of `B_G` in each degree: `F[f_1, ..., f_{n-1}]`-multiples of
/// `x_1^{a_1} ... x_ell^{a_ell} x_n^{Q-1}` with `a_i < b` and `sum a_i >= 2`.
pub fn b_space(basic: &BasicInvariants, basis: &DegreeBasis) -> Result<Vec<Vec<SparseVec>>> {
    let q = basis.frobenius_exponent();
    let top = basis.top_degree() as u64;
    let n = basic.n();
    let ell = basic.spec().ell;
    let b = basic.base() as u32;
    let powers: Vec<Vec<Polynomial>> = basic.polys()[..n - 1].iter().map(|f| truncated_powers(f, q, top)).collect();
    let mut products = Vec::new();
    let mut a = vec![0u32; ell];
    loop {
        if a.iter().sum::<u32>() >= 2 {
            let mut exps = vec![0u32; n];
            exps[..ell].copy_from_slice(&a);
            exps[n - 1] = q - 1;
            let seed = Polynomial::monomial(basic.x_ring(), Monomial::new(exps), basic.field().one())
                .reduce_mod_frobenius(q);
            for_each_product(&powers, q, seed, top, &mut |p| products.push(p.clone()));
        }
        let Some(i) = a.iter().position(|&x| x + 1 < b) else {
            break;
        };
        a[i] += 1;
        a[..i].iter_mut().for_each(|x| *x = 0);
    }
    bucket(basis, products)
}

fn ranks(basic: &BasicInvariants, vectors: &[Vec<SparseVec>]) -> Vec<u64> {
    vectors.par_iter().map(|v| rank_of_sparse(basic.field(), v) as u64).collect()
}

fn decomposable(spec: &GroupSpec) -> Result<()> {
    spec.validate()?;
    if spec.r > 1 && !spec.full_stabilizer {
        return Err(Error::InvalidSpec(format!(
            "{spec}: the A_G ⊕ B_G decomposition is only established over F_p or for the full stabilizer"
        )));
    }
    Ok(())
}

fn setup(spec: &GroupSpec, m: u32, cap: u64) -> Result<(BasicInvariants, DegreeBasis)> {
    decomposable(spec)?;
    let q = frobenius_exponent(spec.q(), m)?;
    Ok((basic_invariants(spec)?, degree_basis(spec.n, q, cap)?))
}

pub fn a_space_dims(spec: &GroupSpec, m: u32, cap: u64) -> Result<HilbertFunction> {
    let (basic, basis) = setup(spec, m, cap)?;
    Ok(HilbertFunction::from_dims(ranks(&basic, &a_space(&basic, &basis)?)))
}

pub fn b_space_dims(spec: &GroupSpec, m: u32, cap: u64) -> Result<HilbertFunction> {
    let (basic, basis) = setup(spec, m, cap)?;
    Ok(HilbertFunction::from_dims(ranks(&basic, &b_space(&basic, &basis)?)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub a: u64,
    pub b: u64,
    pub sum: u64,
    pub brute: u64,
    /// Rank of the union of the `A_G` and `B_G` spanning sets.
    pub stacked: u64,
    /// Rank of `A_G`, `B_G` and the brute-force invariants together.
    pub with_invariants: u64,
}

impl DegreeReport {
    /// `A + B = brute`, the sum is direct, and both spaces lie inside the invariants.
    pub fn holds(&self) -> bool {
        self.sum == self.brute && self.stacked == self.sum && self.with_invariants == self.brute
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub spec: GroupSpec,
    pub m: u32,
    pub degrees: Vec<DegreeReport>,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(DegreeReport::holds)
    }

    pub fn failures(&self) -> Vec<&DegreeReport> {
        self.degrees.iter().filter(|r| !r.holds()).collect()
    }

    pub fn a_dims(&self) -> HilbertFunction {
        HilbertFunction::from_dims(self.degrees.iter().map(|r| r.a).collect())
    }

    pub fn b_dims(&self) -> HilbertFunction {
        HilbertFunction::from_dims(self.degrees.iter().map(|r| r.b).collect())
    }

    pub fn brute_dims(&self) -> HilbertFunction {
        HilbertFunction::from_dims(self.degrees.iter().map(|r| r.brute).collect())
    }

    /// Rows `degree,A,B,total,brute`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,A,B,total,brute\n");
        for r in &self.degrees {
            out.push_str(&format!("{},{},{},{},{}\n", r.degree, r.a, r.b, r.sum, r.brute));
        }
        out
    }
}

/// Computes `A_G`, `B_G` and the brute-force invariants degree by degree and compares them.
/// A mismatch is reported in the returned rows rather than as an error.
pub fn verify_decomposition(spec: &GroupSpec, m: u32, cap: u64) -> Result<DecompositionReport> {
    let (basic, basis) = setup(spec, m, cap)?;
    let a = a_space(&basic, &basis)?;
    let b = b_space(&basic, &basis)?;
    let (_, _, fixed) = brute_force_spaces(spec, m, cap)?;
    let field = basic.field();
    let degrees = (0..=basis.top_degree())
        .into_par_iter()
        .map(|d| {
            let ra = rank_of_sparse(field, &a[d]) as u64;
            let rb = rank_of_sparse(field, &b[d]) as u64;
            let mut union: Vec<SparseVec> = a[d].iter().chain(&b[d]).cloned().collect();
            let stacked = rank_of_sparse(field, &union) as u64;
            union.extend(fixed[d].basis.iter().cloned());
            let with_invariants = rank_of_sparse(field, &union) as u64;
            DegreeReport {
                degree: d,
                a: ra,
                b: rb,
                sum: ra + rb,
                brute: fixed[d].dim() as u64,
                stacked,
                with_invariants,
            }
        })
        .collect();
    Ok(DecompositionReport { spec: spec.clone(), m, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::DEFAULT_MONOMIAL_CAP;

    #[test]
    fn f2_plane() {
        let r = verify_decomposition(&GroupSpec::normalized(2, 2, 1, 1), 1, DEFAULT_MONOMIAL_CAP).unwrap();
        assert!(r.holds());
        assert_eq!(r.a_dims().dims, vec![1, 1, 1]);
        assert_eq!(r.b_dims().total, 0);
    }

    #[test]
    fn f3_plane_has_b_in_degree_four() {
        let b = b_space_dims(&GroupSpec::normalized(3, 2, 1, 1), 1, DEFAULT_MONOMIAL_CAP).unwrap();
        assert_eq!(b.dims, vec![0, 0, 0, 0, 1]);
    }

    #[test]
    fn trivial_group_is_all_a() {
        let r = verify_decomposition(&GroupSpec::normalized(3, 2, 0, 1), 1, DEFAULT_MONOMIAL_CAP).unwrap();
        assert!(r.holds());
        assert_eq!(r.a_dims().total, 9);
        assert_eq!(r.b_dims().total, 0);
    }

    #[test]
    fn non_prime_subgroups_rejected() {
        assert!(verify_decomposition(&GroupSpec { r: 2, ..GroupSpec::normalized(2, 2, 0, 3) }, 1, 1000).is_err());
    }
}
