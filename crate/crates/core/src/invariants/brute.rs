//! Fixed spaces of `S / m^[Q]` by exact linear algebra, one degree at a time.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{rank_of_sparse, sparse_nullspace, Field, FieldElem, SparseVec};
use crate::group::{build_group, GroupElement, GroupSpec};
use crate::poly::{Monomial, PolyRing, Polynomial};
use crate::qseries::TruncatedSeries;

/// Default bound on `Q^n`, the dimension of the quotient.
pub const DEFAULT_MONOMIAL_CAP: u64 = 1_000_000;

/// The monomial basis `{x^a : a_i < Q}` of `S / m^[Q]`, split by total degree.
#[derive(Clone, Debug)]
pub struct DegreeBasis {
    n: usize,
    q: u32,
    by_degree: Vec<Vec<Monomial>>,
    /// Position of each monomial inside its degree, indexed by the mixed-radix code.
    local: Vec<u32>,
}

/// Enumerates the quotient basis, failing when `Q^n` exceeds `cap`.
pub fn degree_basis(n: usize, q: u32, cap: u64) -> Result<DegreeBasis> {
    let size = (q as u64)
        .checked_pow(n as u32)
        .filter(|&s| s <= cap)
        .ok_or(Error::CapExceeded { what: "quotient monomial basis", required: (q as u64).saturating_pow(n as u32), cap })?;
    let top = n * (q as usize - 1);
    let mut by_degree: Vec<Vec<Monomial>> = vec![Vec::new(); top + 1];
    let mut local = vec![0u32; size as usize];
    for code in 0..size {
        let mut c = code;
        let exps: Vec<u32> = (0..n)
            .map(|_| {
                let a = (c % q as u64) as u32;
                c /= q as u64;
                a
            })
            .collect();
        let d = exps.iter().sum::<u32>() as usize;
        local[code as usize] = by_degree[d].len() as u32;
        by_degree[d].push(Monomial::new(exps));
    }
    Ok(DegreeBasis { n, q, by_degree, local })
}

impl DegreeBasis {
    pub fn nvars(&self) -> usize {
        self.n
    }

    /// The Frobenius exponent `Q`.
    pub fn frobenius_exponent(&self) -> u32 {
        self.q
    }

    /// `n (Q - 1)`, the degree of `x_1^{Q-1} ... x_n^{Q-1}`.
    pub fn top_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    pub fn monomials(&self, d: usize) -> &[Monomial] {
        self.by_degree.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn dim(&self, d: usize) -> usize {
        self.monomials(d).len()
    }

    pub fn total(&self) -> usize {
        self.by_degree.iter().map(Vec::len).sum()
    }

    /// Position of a monomial inside its degree, or `None` if it lies in `m^[Q]`.
    pub fn index(&self, mono: &Monomial) -> Option<usize> {
        if mono.nvars() != self.n || mono.in_frobenius(self.q) {
            return None;
        }
        let code = mono.exps().iter().rev().fold(0usize, |acc, &a| acc * self.q as usize + a as usize);
        Some(self.local[code] as usize)
    }
}

/// Coordinates of a homogeneous polynomial of degree `d` in the quotient basis.
/// Terms in `m^[Q]` are dropped; terms of another degree are an error.
pub fn to_sparse(f: &Polynomial, basis: &DegreeBasis, d: usize) -> Result<SparseVec> {
    let mut out = Vec::with_capacity(f.len());
    for (mono, c) in f.terms() {
        if mono.degree() as usize != d {
            return Err(Error::DimensionMismatch(format!("term of degree {} in degree {d}", mono.degree())));
        }
        if let Some(i) = basis.index(mono) {
            out.push((i, c));
        }
    }
    out.sort_unstable_by_key(|&(i, _)| i);
    Ok(out)
}

/// Truncated powers of the images `g . x_j`, from which `g . x^a mod m^[Q]` is assembled.
#[derive(Clone, Debug)]
pub struct ActionTable {
    ring: Arc<PolyRing>,
    q: u32,
    powers: Vec<Vec<Polynomial>>,
}

impl ActionTable {
    pub fn new(g: &GroupElement, ring: &Arc<PolyRing>, q: u32) -> Result<Self> {
        let n = ring.nvars();
        if g.dim() != n {
            return Err(Error::DimensionMismatch(format!("{}x{} matrix on {n} variables", g.dim(), g.dim())));
        }
        let powers = (0..n)
            .map(|j| {
                let image = g.act(&Polynomial::var(ring, j))?;
                let mut row = vec![Polynomial::one(ring)];
                for k in 1..q {
                    let next = row[k as usize - 1].mul_truncated(&image, q)?;
                    row.push(next);
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ActionTable { ring: ring.clone(), q, powers })
    }

    /// `g . x^a` reduced modulo `m^[Q]`; `a` must have all exponents below `Q`.
    pub fn image(&self, mono: &Monomial) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for (j, &a) in mono.exps().iter().enumerate() {
            if a == 0 {
                continue;
            }
            acc = acc.mul_truncated(&self.powers[j][a as usize], self.q).expect("same ring");
            if acc.is_zero() {
                break;
            }
        }
        acc
    }
}

/// A basis of the invariants of degree `degree`, in coordinates of [`DegreeBasis::monomials`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedSpace {
    pub degree: usize,
    pub basis: Vec<SparseVec>,
}

impl FixedSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Per-degree dimensions of `(S / m^[Q])^G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertFunction {
    pub dims: Vec<u64>,
    pub total: u64,
}

impl HilbertFunction {
    pub fn from_dims(dims: Vec<u64>) -> Self {
        let total = dims.iter().sum();
        HilbertFunction { dims, total }
    }

    pub fn dim(&self, d: usize) -> u64 {
        self.dims.get(d).copied().unwrap_or(0)
    }

    pub fn to_series(&self) -> TruncatedSeries {
        let coeffs: Vec<i64> = self.dims.iter().map(|&c| c as i64).collect();
        let d = coeffs.len().saturating_sub(1);
        TruncatedSeries::from_coeffs(coeffs, d)
    }
}

fn lin_comb(f: &Field, vectors: &[SparseVec], coeffs: &SparseVec) -> SparseVec {
    let mut acc: std::collections::BTreeMap<usize, FieldElem> = std::collections::BTreeMap::new();
    for &(k, c) in coeffs {
        for &(i, v) in &vectors[k] {
            let slot = acc.entry(i).or_insert(FieldElem::ZERO);
            *slot = f.add(*slot, f.mul(c, v));
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

fn fixed_in_degree(basis: &DegreeBasis, field: &Field, tables: &[ActionTable], d: usize) -> Result<FixedSpace> {
    let monos = basis.monomials(d);
    let mut space: Vec<SparseVec> = (0..monos.len()).map(|i| vec![(i, FieldElem::ONE)]).collect();
    for table in tables {
        if space.is_empty() {
            break;
        }
        let mut cache: Vec<Option<SparseVec>> = vec![None; monos.len()];
        let mut columns = Vec::with_capacity(space.len());
        for v in &space {
            let mut image = Vec::new();
            for &(i, c) in v {
                if cache[i].is_none() {
                    cache[i] = Some(to_sparse(&table.image(&monos[i]), basis, d)?);
                }
                image.extend(cache[i].as_ref().unwrap().iter().map(|&(j, x)| (j, field.mul(c, x))));
                image.push((i, field.neg(c)));
            }
            columns.push(normalize(field, image));
        }
        let kernel = sparse_nullspace(field, &columns);
        space = kernel.iter().map(|k| lin_comb(field, &space, k)).collect();
    }
    Ok(FixedSpace { degree: d, basis: space })
}

fn normalize(f: &Field, mut v: SparseVec) -> SparseVec {
    v.sort_unstable_by_key(|&(i, _)| i);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc = f.add(*acc, c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

/// Common fixed spaces of `gens` in every degree of `S / m^[Q]`, degrees in parallel.
pub fn fixed_spaces(basis: &DegreeBasis, field: &Field, gens: &[GroupElement]) -> Result<Vec<FixedSpace>> {
    let ring = PolyRing::standard(field, basis.nvars());
    let tables =
        gens.iter().map(|g| ActionTable::new(g, &ring, basis.frobenius_exponent())).collect::<Result<Vec<_>>>()?;
    (0..=basis.top_degree()).into_par_iter().map(|d| fixed_in_degree(basis, field, &tables, d)).collect()
}

/// Hilbert function of `(S / m^[Q])^G` for the group generated by `gens`.
pub fn hilbert_of_generators(field: &Field, n: usize, gens: &[GroupElement], q: u32, cap: u64) -> Result<HilbertFunction> {
    let basis = degree_basis(n, q, cap)?;
    let spaces = fixed_spaces(&basis, field, gens)?;
    Ok(HilbertFunction::from_dims(spaces.iter().map(|s| s.dim() as u64).collect()))
}

/// Brute-force Hilbert function of `(S / m^[q^m])^G` for the group of `spec`.
pub fn brute_force_hilbert(spec: &GroupSpec, m: u32, cap: u64) -> Result<HilbertFunction> {
    let (_, _, spaces) = brute_force_spaces(spec, m, cap)?;
    Ok(HilbertFunction::from_dims(spaces.iter().map(|s| s.dim() as u64).collect()))
}

/// The field, quotient basis and per-degree fixed spaces for `spec` at exponent `m`.
pub fn brute_force_spaces(spec: &GroupSpec, m: u32, cap: u64) -> Result<(Field, DegreeBasis, Vec<FixedSpace>)> {
    spec.validate()?;
    if m < 1 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let q = frobenius_exponent(spec.q(), m)?;
    let field = spec.field()?;
    let basis = degree_basis(spec.n, q, cap)?;
    let spaces = fixed_spaces(&basis, &field, &build_group(spec)?)?;
    Ok((field, basis, spaces))
}

/// `q^m`, checked to fit comfortably in a `u32`.
pub fn frobenius_exponent(q: u64, m: u32) -> Result<u32> {
    q.checked_pow(m)
        .filter(|&v| v <= u32::MAX as u64 / 4)
        .map(|v| v as u32)
        .ok_or_else(|| Error::InvalidArgument(format!("{q}^{m} is too large")))
}

/// Rank of a family of vectors of one degree.
pub fn span_dim(field: &Field, vectors: &[SparseVec]) -> usize {
    rank_of_sparse(field, vectors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_indexing_round_trips() {
        let b = degree_basis(3, 4, DEFAULT_MONOMIAL_CAP).unwrap();
        assert_eq!(b.total(), 64);
        assert_eq!(b.top_degree(), 9);
        for d in 0..=b.top_degree() {
            for (i, m) in b.monomials(d).iter().enumerate() {
                assert_eq!(b.index(m), Some(i));
            }
        }
        assert_eq!(b.index(&Monomial::new(vec![4, 0, 0])), None);
    }

    #[test]
    fn cap_is_enforced() {
        match degree_basis(4, 40, 1000) {
            Err(Error::CapExceeded { required, cap, .. }) => assert_eq!((required, cap), (2_560_000, 1000)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn two_dim_f2_transvection() {
        let hf = brute_force_hilbert(&GroupSpec::normalized(2, 2, 1, 1), 1, DEFAULT_MONOMIAL_CAP).unwrap();
        assert_eq!(hf.dims, vec![1, 1, 1]);
        assert_eq!(hf.total, 3);
    }

    #[test]
    fn trivial_group_fixes_everything() {
        let hf = brute_force_hilbert(&GroupSpec::normalized(3, 2, 0, 1), 2, DEFAULT_MONOMIAL_CAP).unwrap();
        assert_eq!(hf.total, 81);
    }
}
