//! Subduction into the basic invariants, certification that the h-generators are a
//! Groebner basis of `S^G ∩ m^[Q]`, Hilbert series of monomial ideals in `S^G`, and the
//! free resolution of `S^G ∩ m^[p^m]` for `n = 2`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::sparse_nullspace;
use crate::group::GroupSpec;
use crate::invariants::{
    a_space_dims, basic_invariants, degree_basis, h_generators, to_sparse, BasicInvariants, HGenerators,
    DEFAULT_MONOMIAL_CAP,
};
use crate::poly::{Monomial, Polynomial};
use crate::qseries::{hilbert_invariant_ring, RationalExpr, TruncatedSeries};

/// A polynomial in `f_1, ..., f_n`, ordered by the weighted graded-lex order of `S^G`.
pub type FPoly = Polynomial;

/// Writes an invariant `f` as a polynomial in the basic invariants.
///
/// Since `LM_S(f_i) = x_i^{w_i}`, the leading monomial `x^a` of `f` must equal
/// `prod_i x_i^{w_i c_i}`; the matching term `c f^c` is subtracted and the loop repeats.
pub fn subduct(f: &Polynomial, basic: &BasicInvariants) -> Result<FPoly> {
    let ring = basic.x_ring();
    if f.ring().nvars() != ring.nvars() || f.field() != basic.field() {
        return Err(Error::RingMismatch);
    }
    let weights = basic.weights().to_vec();
    let mut cache: HashMap<(usize, u32), Polynomial> = HashMap::new();
    let mut rest = f.with_ring(ring)?;
    let mut out = Polynomial::zero(basic.f_ring());
    while !rest.is_zero() {
        let (lm, c) = rest.leading_term()?;
        let mut exps = Vec::with_capacity(weights.len());
        for (i, (&a, &w)) in lm.exps().iter().zip(&weights).enumerate() {
            if a % w != 0 {
                return Err(Error::NotInvariant(format!(
                    "leading monomial {lm:?} has x{}-exponent {a}, not a multiple of {w}",
                    i + 1
                )));
            }
            exps.push(a / w);
        }
        let mut term = Polynomial::constant(ring, c);
        for (i, &k) in exps.iter().enumerate() {
            if k > 0 {
                let pw = cache.entry((i, k)).or_insert_with(|| basic.polys()[i].pow(k as u64));
                term = &term * pw;
            }
        }
        rest = &rest - &term;
        out = &out + &Polynomial::monomial(basic.f_ring(), Monomial::new(exps), c);
    }
    Ok(out)
}

/// Reduction of one S-polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub pair: [usize; 2],
    pub remainder: String,
}

impl Certificate {
    pub fn is_zero(&self) -> bool {
        self.remainder == "0"
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BuchbergerReport {
    pub spec: GroupSpec,
    pub m: u32,
    pub generators: Vec<String>,
    pub leading_monomials: Vec<String>,
    pub certificates: Vec<Certificate>,
    /// Whether each `x`-expansion lies in `m^[Q]`.
    pub membership: Vec<bool>,
    /// Whether each `x`-expansion equals its explicit closed form.
    pub closed_forms: Vec<bool>,
    /// `Hilb(S^G / in(h)) = Hilb(A_G)` with `A_G` ranked by linear algebra; `None` when the
    /// quotient is beyond the monomial cap.
    pub hilbert_certificate: Option<bool>,
    /// Reduced Groebner basis of the linear-algebra kernel equals that of the h-list.
    pub from_scratch: Option<bool>,
}

impl BuchbergerReport {
    pub fn passed(&self) -> bool {
        self.certificates.iter().all(Certificate::is_zero)
            && self.membership.iter().all(|&b| b)
            && self.closed_forms.iter().all(|&b| b)
            && self.hilbert_certificate != Some(false)
            && self.from_scratch != Some(false)
    }

    pub fn failures(&self) -> Vec<&Certificate> {
        self.certificates.iter().filter(|c| !c.is_zero()).collect()
    }
}

fn f_monomial_string(h: &HGenerators, m: &Monomial) -> String {
    Polynomial::monomial(h.basic().f_ring(), m.clone(), h.basic().field().one()).to_string()
}

/// Reduces every S-polynomial of the h-list by the h-list (first divisor wins) and checks
/// that each generator lies in `m^[Q]` and matches its closed form. With `cap`, also
/// compares `Hilb(S^G / in(h))` with the brute-force `Hilb(A_G)`.
pub fn buchberger_check(h: &HGenerators, cap: Option<u64>) -> Result<BuchbergerReport> {
    let polys = h.f_polys();
    let q = h.frobenius_exponent();
    let pairs: Vec<(usize, usize)> =
        (0..polys.len()).flat_map(|i| (i + 1..polys.len()).map(move |j| (i, j))).collect();
    let certificates = pairs
        .par_iter()
        .map(|&(i, j)| {
            let s = polys[i].s_polynomial(&polys[j])?;
            let (_, rem) = s.divide(&polys)?;
            Ok(Certificate { pair: [i, j], remainder: rem.to_string() })
        })
        .collect::<Result<Vec<_>>>()?;
    let membership = h.gens().iter().map(|g| g.x_poly.reduce_mod_frobenius(q).is_zero()).collect();
    let closed_forms = h.gens().iter().map(|g| g.x_poly == h.closed_form(g.label)).collect();
    let leads = polys.iter().map(|p| p.leading_monomial().cloned()).collect::<Result<Vec<_>>>()?;
    let hilbert_certificate = match cap {
        Some(cap) => hilbert_certificate(h, &leads, cap)?,
        None => None,
    };
    Ok(BuchbergerReport {
        spec: h.basic().spec().clone(),
        m: h.m(),
        generators: polys.iter().map(|p| p.to_string()).collect(),
        leading_monomials: leads.iter().map(|m| f_monomial_string(h, m)).collect(),
        certificates,
        membership,
        closed_forms,
        hilbert_certificate,
        from_scratch: None,
    })
}

fn hilbert_certificate(h: &HGenerators, leads: &[Monomial], cap: u64) -> Result<Option<bool>> {
    let a = match a_space_dims(h.basic().spec(), h.m(), cap) {
        Ok(a) => a,
        Err(Error::CapExceeded { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let q = h.frobenius_exponent() as usize;
    let d = a.dims.len() - 1 + 2 * q;
    let quotient = initial_ideal_hilbert(leads, h.basic().weights(), d);
    let expected = TruncatedSeries::from_coeffs(a.dims.iter().map(|&c| c as i64).collect(), d);
    Ok(Some(quotient == expected))
}

/// Hilbert series of `F[f_1, ..., f_n] / (leads)` to degree `d`, by inclusion–exclusion
/// over the lcm of every subset of the generators.
pub fn initial_ideal_hilbert(leads: &[Monomial], weights: &[u32], d: usize) -> TruncatedSeries {
    let free = hilbert_invariant_ring(weights, d);
    let mut acc = TruncatedSeries::zero(d);
    fn go(leads: &[Monomial], weights: &[u32], lcm: Monomial, sign: i64, free: &TruncatedSeries, acc: &mut TruncatedSeries) {
        *acc = acc.add(&free.shift(lcm.weighted_degree(weights)).scale(sign));
        for (i, m) in leads.iter().enumerate() {
            go(&leads[i + 1..], weights, lcm.lcm(m), -sign, free, acc);
        }
    }
    go(leads, weights, Monomial::one(weights.len()), 1, &free, &mut acc);
    acc
}

/// `f ∈ (h)` decided by division by the h-list.
pub fn in_ideal_by_division(f: &FPoly, h: &HGenerators) -> Result<bool> {
    Ok(f.divide(&h.f_polys())?.1.is_zero())
}

/// `f ∈ S^G ∩ m^[Q]` decided by expanding and reducing modulo `m^[Q]`.
pub fn in_ideal_by_expansion(f: &FPoly, h: &HGenerators) -> Result<bool> {
    Ok(h.basic().expand_truncated(f, h.frobenius_exponent())?.is_zero())
}

/// Reduced Groebner basis of the ideal generated by `gens`, sorted by leading monomial.
pub fn buchberger(gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let mut basis: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(Polynomial::monic).collect();
    let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|i| (0..i).map(move |j| (j, i))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (li, lj) = (basis[i].leading_monomial()?, basis[j].leading_monomial()?);
        if li.mul(lj) == li.lcm(lj) {
            continue;
        }
        let (_, rem) = basis[i].s_polynomial(&basis[j])?.divide(&basis)?;
        if !rem.is_zero() {
            let k = basis.len();
            basis.push(rem.monic());
            pairs.extend((0..k).map(|j| (j, k)));
        }
    }
    reduce_basis(basis)
}

fn reduce_basis(basis: Vec<Polynomial>) -> Result<Vec<Polynomial>> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial()?;
        let redundant = basis.iter().enumerate().any(|(j, o)| {
            let lo = o.leading_monomial().unwrap();
            j != i && lo.divides(lm) && (lo != lm || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> =
            minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, p)| p.clone()).collect();
        let (lm, c) = minimal[i].leading_term()?;
        let tail = &minimal[i] - &Polynomial::monomial(minimal[i].ring(), lm.clone(), c);
        let (_, rem) = tail.divide(&others)?;
        reduced.push((&Polynomial::monomial(minimal[i].ring(), lm.clone(), c) + &rem).monic());
    }
    reduced.sort_by(|a, b| a.leading_monomial().unwrap().cmp(b.leading_monomial().unwrap()));
    Ok(reduced)
}

/// All exponent vectors of weighted degree `d`.
pub fn monomials_of_weighted_degree(weights: &[u32], d: u64) -> Vec<Vec<u32>> {
    fn go(weights: &[u32], d: u64, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        match weights.split_first() {
            None => {
                if d == 0 {
                    out.push(prefix.clone());
                }
            }
            Some((&w, rest)) => {
                for c in 0..=(d / w as u64) {
                    prefix.push(c as u32);
                    go(rest, d - c * w as u64, prefix, out);
                    prefix.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(weights, d, &mut Vec::new(), &mut out);
    out
}

/// A spanning set of `S^G ∩ m^[Q]` in weighted degrees up to `max_degree`, computed as the
/// kernel of `F[f_1, ..., f_n]_d -> S / m^[Q]` in each degree.
pub fn kernel_generators(basic: &BasicInvariants, q: u32, max_degree: u64, cap: u64) -> Result<Vec<FPoly>> {
    let basis = degree_basis(basic.n(), q, cap)?;
    let field = basic.field();
    let mut out = Vec::new();
    for d in 1..=max_degree {
        let monos = monomials_of_weighted_degree(basic.weights(), d);
        let columns = monos
            .iter()
            .map(|e| {
                let x = basic.expand_truncated(&basic.f_monomial(e.clone()), q)?;
                if d as usize > basis.top_degree() {
                    return Ok(Vec::new());
                }
                to_sparse(&x, &basis, d as usize)
            })
            .collect::<Result<Vec<_>>>()?;
        for v in sparse_nullspace(field, &columns) {
            let terms = v.into_iter().map(|(k, c)| (monos[k].clone(), c));
            out.push(Polynomial::from_terms(basic.f_ring(), terms)?);
        }
    }
    Ok(out)
}

/// Second oracle: Buchberger from scratch on the linear-algebra kernel up to degree `2Q`
/// must give the same reduced basis as the h-list.
pub fn from_scratch_check(h: &HGenerators, cap: u64) -> Result<bool> {
    let q = h.frobenius_exponent();
    let kernel = kernel_generators(h.basic(), q, 2 * q as u64 + h.basic().spec().e, cap)?;
    Ok(buchberger(&kernel)? == buchberger(&h.f_polys())?)
}

/// A syzygy `(s_0, ..., s_k)` with `sum s_i h_i = 0`.
#[derive(Clone, Debug)]
pub struct SyzygyVector {
    pub name: String,
    pub entries: Vec<FPoly>,
}

impl SyzygyVector {
    pub fn dot(&self, gens: &[FPoly]) -> Result<FPoly> {
        if gens.len() != self.entries.len() {
            return Err(Error::DimensionMismatch(format!("{} entries against {} generators", self.entries.len(), gens.len())));
        }
        let mut acc = Polynomial::zero(gens[0].ring());
        for (s, g) in self.entries.iter().zip(gens) {
            acc = acc.checked_add(&s.checked_mul(g)?)?;
        }
        Ok(acc)
    }

    pub fn scale_by(&self, c: &FPoly) -> Result<SyzygyVector> {
        let entries = self.entries.iter().map(|s| s.checked_mul(c)).collect::<Result<Vec<_>>>()?;
        Ok(SyzygyVector { name: format!("({c})*{}", self.name), entries })
    }

    pub fn checked_sub(&self, other: &SyzygyVector) -> Result<SyzygyVector> {
        let entries =
            self.entries.iter().zip(&other.entries).map(|(a, b)| a.checked_sub(b)).collect::<Result<Vec<_>>>()?;
        Ok(SyzygyVector { name: format!("{} - {}", self.name, other.name), entries })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SyzygyCheck {
    pub name: String,
    pub entries: Vec<String>,
    pub dot_is_zero: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionReport {
    pub p: u64,
    pub m: u32,
    pub e: u64,
    pub modular: bool,
    pub generators: Vec<String>,
    /// Whether each generator lies in `m^[p^m]` once expanded.
    pub membership: Vec<bool>,
    pub syzygies: Vec<SyzygyCheck>,
    /// `tau_{0,2} = (R - f_1^{p^{m-1}}) tau_{0,1} - f_2^E tau_{1,2}` (modular case only).
    pub redundancy_holds: Option<bool>,
    pub f0_shifts: Vec<u64>,
    pub f1_shifts: Vec<u64>,
    pub truncation: usize,
    /// `Hilb(S^G) - Hilb(A_G)` with `A_G` ranked by linear algebra.
    pub ideal_series: Vec<i64>,
    /// `Hilb(F_0) - Hilb(F_1)`.
    pub resolution_series: Vec<i64>,
    pub closed_form: String,
    /// The closed form expanded.
    pub closed_form_series: Vec<i64>,
}

impl ResolutionReport {
    pub fn holds(&self) -> bool {
        self.membership.iter().all(|&b| b)
            && self.syzygies.iter().all(|s| s.dot_is_zero)
            && self.redundancy_holds != Some(false)
            && self.ideal_series == self.resolution_series
            && self.ideal_series == self.closed_form_series
    }
}

/// Builds the syzygies of the generators of `S^G ∩ m^[p^m]` for `n = 2` and checks them:
/// with a transvection (`modular`) the generators are `h_0, h_1, h_2` and the syzygies
/// `tau_{0,1}, tau_{1,2}`; without, they are `f_1^{p^m}, f_2^{1+E}` and the Koszul syzygy.
pub fn resolution_2d(p: u64, m: u32, e: u64, modular: bool) -> Result<ResolutionReport> {
    let spec = GroupSpec::normalized(p, 2, usize::from(modular), e);
    spec.validate()?;
    if m < 1 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let basic = basic_invariants(&spec)?;
    let ring = basic.f_ring().clone();
    let one = basic.field().one();
    let fm = |a: u64, b: u64| Polynomial::monomial(&ring, Monomial::new(vec![a as u32, b as u32]), one);
    let neg = |f: &Polynomial| -f.clone();
    let q = p.pow(m);
    let big_e = (q - 1) / e;

    let (gens, syzygies, redundancy, f0, f1, numerator) = if modular {
        let h = h_generators(&basic, m)?;
        let gens = h.f_polys();
        let pw = |k: u32| p.pow(k);
        // R = sum_{k=1}^{m-1} f_1^{p^{m-k-1}} f_2^{(p^m - p^{m-k})/e}
        let mut r_sum = Polynomial::zero(&ring);
        for k in 1..m {
            r_sum = &r_sum + &fm(pw(m - k - 1), (q - pw(m - k)) / e);
        }
        let lead = fm(pw(m - 1), 0);
        let tau01 = SyzygyVector {
            name: "tau_01".into(),
            entries: vec![neg(&(&lead + &r_sum)), fm(0, big_e), Polynomial::zero(&ring)],
        };
        let mut first = Polynomial::zero(&ring);
        for j in 1..m {
            for k in 1..m {
                first = &first + &fm(pw(m - j - 1) + pw(m - k - 1), (q - pw(m - j) - pw(m - k) + 1) / e);
            }
        }
        let tau12 = SyzygyVector { name: "tau_12".into(), entries: vec![neg(&first), &r_sum - &lead, fm(0, 1)] };
        let tau02 = SyzygyVector { name: "tau_02".into(), entries: vec![gens[2].clone(), Polynomial::zero(&ring), neg(&gens[0])] };
        let combo = tau01.scale_by(&(&r_sum - &lead))?.checked_sub(&tau12.scale_by(&fm(0, big_e))?)?;
        let redundancy = combo.entries == tau02.entries;
        let f0 = vec![q + e - 1, q + e, 2 * q];
        let f1 = vec![2 * q + e, 2 * q + e - 1];
        let numerator = vec![(1, q + e - 1), (1, q + e), (1, 2 * q), (-1, 2 * q + e), (-1, 2 * q + e - 1)];
        (gens, vec![tau01, tau12, tau02], Some(redundancy), f0, f1, numerator)
    } else {
        let gens = vec![fm(q, 0), fm(0, 1 + big_e)];
        let tau = SyzygyVector { name: "tau".into(), entries: vec![gens[1].clone(), neg(&gens[0])] };
        let f0 = vec![q, q + e - 1];
        let f1 = vec![2 * q + e - 1];
        let numerator = vec![(1, q), (1, q + e - 1), (-1, 2 * q + e - 1)];
        (gens, vec![tau], None, f0, f1, numerator)
    };

    let membership = gens
        .iter()
        .map(|g| Ok(basic.expand_truncated(g, q as u32)?.is_zero()))
        .collect::<Result<Vec<_>>>()?;
    let syzygies = syzygies
        .iter()
        .map(|s| {
            Ok(SyzygyCheck {
                name: s.name.clone(),
                entries: s.entries.iter().map(|x| x.to_string()).collect(),
                dot_is_zero: s.dot(&gens)?.is_zero(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let a = a_space_dims(&spec, m, DEFAULT_MONOMIAL_CAP)?;
    let d = 2 * q as usize + e as usize + 2;
    let hs = hilbert_invariant_ring(basic.weights(), d);
    let ideal_series = hs.sub(&TruncatedSeries::from_coeffs(a.dims.iter().map(|&c| c as i64).collect(), d));
    let shifted = |shifts: &[u64]| shifts.iter().fold(TruncatedSeries::zero(d), |acc, &s| acc.add(&hs.shift(s)));
    let resolution_series = shifted(&f0).sub(&shifted(&f1));
    let closed = RationalExpr::polynomial(&numerator).over(e).over(if modular { p } else { 1 });
    let closed_form = format!(
        "({}) / ((1-t^{e})(1-t^{}))",
        numerator.iter().map(|&(c, k)| format!("{}t^{k}", if c < 0 { "-" } else { "+" })).collect::<Vec<_>>().join(" "),
        if modular { p } else { 1 }
    );
    Ok(ResolutionReport {
        p,
        m,
        e,
        modular,
        generators: gens.iter().map(|g| g.to_string()).collect(),
        membership,
        syzygies,
        redundancy_holds: redundancy,
        f0_shifts: f0,
        f1_shifts: f1,
        truncation: d,
        ideal_series: ideal_series.coeffs().to_vec(),
        resolution_series: resolution_series.coeffs().to_vec(),
        closed_form,
        closed_form_series: closed.expand(d).coeffs().to_vec(),
    })
}
