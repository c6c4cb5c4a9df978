//! Truncated integer power series in `t`, q-integers, Gaussian and (q,t)-binomial
//! coefficients, and the closed-form Hilbert series of the invariant spaces.
//!
//! Rational expressions are expanded without division: each factor `1 / (1 - t^w)` is
//! applied as the recurrence `c[i] += c[i - w]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Coefficients `c_0, ..., c_D` of a power series truncated above degree `D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TruncatedSeries {
    coeffs: Vec<i64>,
    truncation: usize,
}

impl TruncatedSeries {
    pub fn zero(d: usize) -> Self {
        TruncatedSeries { coeffs: vec![0; d + 1], truncation: d }
    }

    pub fn one(d: usize) -> Self {
        Self::monomial(1, 0, d)
    }

    /// `c t^k`, truncated.
    pub fn monomial(c: i64, k: u64, d: usize) -> Self {
        let mut s = Self::zero(d);
        if k <= d as u64 {
            s.coeffs[k as usize] = c;
        }
        s
    }

    /// Takes the first `d + 1` entries of `coeffs`, padding with zeros.
    pub fn from_coeffs(mut coeffs: Vec<i64>, d: usize) -> Self {
        coeffs.resize(d + 1, 0);
        TruncatedSeries { coeffs, truncation: d }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    /// Sum of all coefficients: the value at `t = 1` whenever the series is a polynomial
    /// of degree at most `D`.
    pub fn total(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Index of the last nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0)
    }

    pub fn truncate(&self, d: usize) -> Self {
        Self::from_coeffs(self.coeffs[..=d.min(self.truncation)].to_vec(), d)
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.truncation, other.truncation, "series truncated at different degrees");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.checked_add(*b).expect("overflow")).collect();
        TruncatedSeries { coeffs, truncation: self.truncation }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check(other);
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.checked_sub(*b).expect("overflow")).collect();
        TruncatedSeries { coeffs, truncation: self.truncation }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        let d = self.truncation;
        let mut out = vec![0i64; d + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs[..=d - i].iter().enumerate() {
                out[i + j] = out[i + j].checked_add(a.checked_mul(b).expect("overflow")).expect("overflow");
            }
        }
        TruncatedSeries { coeffs: out, truncation: d }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.truncation), |acc, _| acc.mul(self))
    }

    pub fn scale(&self, c: i64) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a.checked_mul(c).expect("overflow")).collect(),
            truncation: self.truncation,
        }
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: u64) -> Self {
        let mut out = Self::zero(self.truncation);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if let Some(j) = (i as u64).checked_add(k).filter(|&j| j <= self.truncation as u64) {
                out.coeffs[j as usize] = c;
            }
        }
        out
    }

    /// Multiplication by `1 / (1 - t^w)`.
    pub fn div_one_minus(&self, w: u64) -> Self {
        assert!(w >= 1, "denominator factors need positive exponents");
        let mut out = self.clone();
        let w = w as usize;
        for i in w..=self.truncation {
            out.coeffs[i] = out.coeffs[i].checked_add(out.coeffs[i - w]).expect("overflow");
        }
        out
    }

    /// Multiplication by `1 - t^w`.
    pub fn mul_one_minus(&self, w: u64) -> Self {
        self.sub(&self.shift(w))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] + O(t^{})", parts.join(", "), self.truncation + 1)
    }
}

/// `N(t) / prod_j (1 - t^{w_j})` with an integer polynomial numerator.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RationalExpr {
    numerator: BTreeMap<u64, i64>,
    denominator: Vec<u64>,
}

impl RationalExpr {
    pub fn one() -> Self {
        RationalExpr { numerator: BTreeMap::from([(0, 1)]), denominator: Vec::new() }
    }

    /// `sum c t^k` over the given `(c, k)` pairs.
    pub fn polynomial(terms: &[(i64, u64)]) -> Self {
        let mut numerator = BTreeMap::new();
        for &(c, k) in terms {
            *numerator.entry(k).or_insert(0) += c;
        }
        numerator.retain(|_, c| *c != 0);
        RationalExpr { numerator, denominator: Vec::new() }
    }

    /// `(1 - t^a) / (1 - t^b)`.
    pub fn ratio(a: u64, b: u64) -> Self {
        Self::polynomial(&[(1, 0), (-1, a)]).over(b)
    }

    pub fn numerator_terms(&self) -> Vec<(i64, u64)> {
        self.numerator.iter().map(|(&k, &c)| (c, k)).collect()
    }

    pub fn denominator(&self) -> &[u64] {
        &self.denominator
    }

    /// Adds a factor `1 / (1 - t^w)`.
    pub fn over(mut self, w: u64) -> Self {
        assert!(w >= 1, "denominator factors need positive exponents");
        self.denominator.push(w);
        self
    }

    pub fn times(&self, other: &RationalExpr) -> Self {
        let mut numerator = BTreeMap::new();
        for (&i, &a) in &self.numerator {
            for (&j, &b) in &other.numerator {
                *numerator.entry(i + j).or_insert(0i64) += a * b;
            }
        }
        numerator.retain(|_, c| *c != 0);
        let mut denominator = self.denominator.clone();
        denominator.extend(&other.denominator);
        RationalExpr { numerator, denominator }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.times(self))
    }

    pub fn shift(&self, k: u64) -> Self {
        RationalExpr {
            numerator: self.numerator.iter().map(|(&i, &c)| (i + k, c)).collect(),
            denominator: self.denominator.clone(),
        }
    }

    pub fn expand(&self, d: usize) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(d);
        for (&k, &c) in &self.numerator {
            if k <= d as u64 {
                s.coeffs[k as usize] += c;
            }
        }
        for &w in &self.denominator {
            s = s.div_one_minus(w);
        }
        s
    }
}

/// Expansion of `expr` to degree `d`.
pub fn expand(expr: &RationalExpr, d: usize) -> TruncatedSeries {
    expr.expand(d)
}

// Dense integer polynomials (low degree first), used where exact quotients are needed.

fn ipoly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn one_minus(w: u64) -> Vec<i64> {
    let mut v = vec![0i64; w as usize + 1];
    v[0] += 1;
    v[w as usize] -= 1;
    v
}

/// Exact quotient `a / b` for integer polynomials whose divisor has leading
/// coefficient `+-1`; `None` when the division leaves a remainder.
fn ipoly_div_exact(a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let mut b = b.to_vec();
    while b.last() == Some(&0) {
        b.pop();
    }
    let lead = *b.last()?;
    assert!(lead == 1 || lead == -1, "divisor must have unit leading coefficient");
    let mut rem = a.to_vec();
    while rem.last() == Some(&0) {
        rem.pop();
    }
    if rem.len() < b.len() {
        return rem.is_empty().then(|| vec![0]);
    }
    let mut quot = vec![0i64; rem.len() - b.len() + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + b.len() - 1] * lead;
        quot[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            rem[k + j] -= c * bj;
        }
    }
    rem.iter().all(|&r| r == 0).then_some(quot)
}

/// `[k]_{t^s} = 1 + t^s + ... + t^{s(k-1)}` as a dense polynomial.
pub fn q_integer(k: u64, s: u64) -> Vec<i64> {
    if k == 0 {
        return vec![0];
    }
    let mut v = vec![0i64; (s * (k - 1)) as usize + 1];
    for i in 0..k {
        v[(s * i) as usize] = 1;
    }
    v
}

/// Number of `k`-dimensional subspaces of `F_q^m`; 0 when `k > m`.
pub fn gaussian_binomial(m: u32, k: u32, q: u64) -> i128 {
    if k > m {
        return 0;
    }
    let q = q as i128;
    let (mut num, mut den) = (1i128, 1i128);
    for i in 0..k {
        num = num.checked_mul(q.pow(m) - q.pow(i)).expect("overflow");
        den = den.checked_mul(q.pow(k) - q.pow(i)).expect("overflow");
    }
    num / den
}

/// `[m k]_{q,t} = prod_{i<k} (1 - t^{q^m - q^i}) / (1 - t^{q^k - q^i})` as an exact polynomial.
pub fn qt_binomial_poly(m: u32, k: u32, q: u64) -> Vec<i64> {
    if k > m {
        return vec![0];
    }
    let mut num = vec![1i64];
    let mut den = vec![1i64];
    for i in 0..k {
        num = ipoly_mul(&num, &one_minus(q.pow(m) - q.pow(i)));
        den = ipoly_mul(&den, &one_minus(q.pow(k) - q.pow(i)));
    }
    ipoly_div_exact(&num, &den).expect("(q,t)-binomial is a polynomial")
}

pub fn qt_binomial(m: u32, k: u32, q: u64, d: usize) -> TruncatedSeries {
    TruncatedSeries::from_coeffs(qt_binomial_poly(m, k, q).into_iter().take(d + 1).collect(), d)
}

fn poly_series(p: &[i64], d: usize) -> TruncatedSeries {
    TruncatedSeries::from_coeffs(p.iter().copied().take(d + 1).collect(), d)
}

/// Top degree `n (q^m - 1)` of `S / (x_1^{q^m}, ..., x_n^{q^m})`.
pub fn default_truncation(q: u64, n: usize, m: u32) -> usize {
    n * (q.pow(m) - 1) as usize
}

/// `p^{m(n-1)} + p^{m(n-1)-ell} (p^m - 1) / e`.
pub fn dimension_fp(p: u64, n: usize, m: u32, ell: usize, e: u64) -> u128 {
    let p = p as u128;
    let mn = m * (n as u32 - 1);
    p.pow(mn) + p.pow(mn - ell as u32) * (p.pow(m) - 1) / e as u128
}

/// `q^{m(n-1)} + q^{(m-1)(n-1)} (q^m - 1) / (q - 1)`.
pub fn dimension_stabilizer(q: u64, n: usize, m: u32) -> u128 {
    let q = q as u128;
    let n1 = n as u32 - 1;
    q.pow(m * n1) + q.pow((m - 1) * n1) * (q.pow(m) - 1) / (q - 1)
}

/// `Hilb(S^G) = 1 / prod (1 - t^{w_i})` for basic invariants of the given degrees.
pub fn hilbert_invariant_ring(weights: &[u32], d: usize) -> TruncatedSeries {
    weights.iter().fold(RationalExpr::one(), |acc, &w| acc.over(w as u64)).expand(d)
}

fn check_fp_params(p: u64, n: usize, m: u32, ell: usize, e: u64) -> Result<()> {
    if n < 2 || m < 1 || ell > n - 1 || e == 0 || !(p - 1).is_multiple_of(e) {
        return Err(Error::InvalidSpec(format!("p={p} n={n} m={m} ell={ell} e={e}")));
    }
    Ok(())
}

/// Hilbert series of `(S / m^[p^m])^G` for a hyperplane-fixing `G <= GL_n(F_p)` with
/// transvection root space of dimension `ell` and semisimple part of order `e`.
///
/// The three equivalent closed forms are expanded independently and must agree.
pub fn hilbert_main_fp(p: u64, n: usize, m: u32, ell: usize, e: u64, d: usize) -> Result<TruncatedSeries> {
    check_fp_params(p, n, m, ell, e)?;
    let pm = p.pow(m);
    let (n_triv, ell32) = ((n - ell - 1) as u32, ell as u32);
    let prefix = RationalExpr::ratio(pm, 1).pow(n_triv).times(&RationalExpr::ratio(pm, p).pow(ell32));

    let inner = RationalExpr::ratio(pm - 1, e).expand(d).add(&RationalExpr::ratio(p, 1).pow(ell32).shift(pm - 1).expand(d));
    let form1 = prefix.expand(d).mul(&inner);

    let form2 = prefix
        .times(&RationalExpr::ratio(pm - 1, e))
        .expand(d)
        .add(&RationalExpr::ratio(pm, 1).pow(n as u32 - 1).shift(pm - 1).expand(d));

    let mut weights = vec![p as u32; ell];
    weights.extend(std::iter::repeat_n(1, n - ell - 1));
    weights.push(e as u32);
    let hs = hilbert_invariant_ring(&weights, d);
    let bracket = RationalExpr::polynomial(&[(1, 0), (-1, pm - 1)])
        .expand(d)
        .add(&RationalExpr::polynomial(&[(1, pm - 1), (-1, pm - 1 + e)]).times(&RationalExpr::ratio(p, 1).pow(ell32)).expand(d));
    let form3 = hs.mul(&RationalExpr::polynomial(&[(1, 0), (-1, pm)]).pow(n as u32 - 1).expand(d)).mul(&bracket);

    if form1 != form2 || form1 != form3 {
        return Err(Error::Internal(format!("closed forms disagree for p={p} n={n} m={m} ell={ell} e={e}")));
    }
    Ok(form1)
}

/// Factored display of the main series.
pub fn closed_form_fp(p: u64, n: usize, m: u32, ell: usize, e: u64) -> String {
    let pm = p.pow(m);
    format!(
        "((1-t^{pm})/(1-t))^{} * ((1-t^{pm})/(1-t^{p}))^{ell} * ((1-t^{})/(1-t^{e}) + t^{} * ((1-t^{p})/(1-t))^{ell})",
        n - ell - 1,
        pm - 1,
        pm - 1
    )
}

/// The nonmodular (`ell = 0`) form `(1-t^{p^m})^{n-1} (1-t^{p^m+e-1}) / ((1-t)^{n-1} (1-t^e))`.
pub fn hilbert_nonmodular(p: u64, n: usize, m: u32, e: u64, d: usize) -> TruncatedSeries {
    let pm = p.pow(m);
    RationalExpr::ratio(pm, 1)
        .pow(n as u32 - 1)
        .times(&RationalExpr::ratio(pm + e - 1, e))
        .expand(d)
}

/// Hilbert series of `(S / m^[q^m])^{GL_n(F_q)_H}`; the three closed forms are expanded
/// independently and must agree.
pub fn hilbert_stabilizer_fq(q: u64, n: usize, m: u32, d: usize) -> Result<TruncatedSeries> {
    if n < 2 || m < 1 || crate::ff::prime_power(q).is_none() {
        return Err(Error::InvalidSpec(format!("q={q} n={n} m={m}")));
    }
    let qm = q.pow(m);
    let n1 = n as u32 - 1;
    let a = poly_series(&q_integer(q.pow(m - 1), q), d).pow(n1).mul(&qt_binomial(m, 1, q, d));
    let b = poly_series(&q_integer(qm, 1), d).pow(n1).mul(&qt_binomial(m, 0, q, d)).shift(qm - 1);
    let form_qt = a.add(&b);

    let form1 = RationalExpr::ratio(qm, q)
        .pow(n1)
        .expand(d)
        .mul(&RationalExpr::ratio(qm - 1, q - 1).expand(d).add(&RationalExpr::ratio(q, 1).pow(n1).shift(qm - 1).expand(d)));

    let mut weights = vec![q as u32; n - 1];
    weights.push(q as u32 - 1);
    let bracket = RationalExpr::polynomial(&[(1, 0), (-1, qm - 1)])
        .expand(d)
        .add(&RationalExpr::polynomial(&[(1, qm - 1), (-1, qm + q - 2)]).times(&RationalExpr::ratio(q, 1).pow(n1)).expand(d));
    let form2 = hilbert_invariant_ring(&weights, d)
        .mul(&RationalExpr::polynomial(&[(1, 0), (-1, qm)]).pow(n1).expand(d))
        .mul(&bracket);

    if form_qt != form1 || form_qt != form2 {
        return Err(Error::Internal(format!("closed forms disagree for q={q} n={n} m={m}")));
    }
    Ok(form_qt)
}

pub fn closed_form_stabilizer(q: u64, n: usize, m: u32) -> String {
    format!(
        "([{}]_{{t^{q}}})^{} * [{m} 1]_{{{q},t}} + t^{} * ([{}]_t)^{} * [{m} 0]_{{{q},t}}",
        q.pow(m - 1),
        n - 1,
        q.pow(m) - 1,
        q.pow(m),
        n - 1
    )
}

/// Hilbert series of `A_G = (S^G + m^[b^m]) / m^[b^m]` for a maximal root space over the
/// base field of order `b` (`b = p` with semisimple order `e`, or `b = q` with `e = q - 1`):
/// `((1-t^{b^m})/(1-t^b))^{n-1} (1 - t^{b^m+e-1} + (n-1) t^{b^m} (1-t^e)) / (1-t^e)`.
pub fn hilbert_a(b: u64, n: usize, m: u32, e: u64, d: usize) -> TruncatedSeries {
    let bm = b.pow(m);
    let n1 = (n - 1) as i64;
    let num = RationalExpr::polynomial(&[(1, 0), (-1, bm + e - 1), (n1, bm), (-n1, bm + e)]).over(e);
    RationalExpr::ratio(bm, b).pow(n as u32 - 1).times(&num).expand(d)
}

/// Hilbert series of `B_G`:
/// `t^{b^m-1} (((1-t^b)/(1-t))^{n-1} - (n-1) t - 1) ((1-t^{b^m})/(1-t^b))^{n-1}`.
pub fn hilbert_b(b: u64, n: usize, m: u32, d: usize) -> TruncatedSeries {
    let bm = b.pow(m);
    let n1 = n as u32 - 1;
    let middle = RationalExpr::ratio(b, 1)
        .pow(n1)
        .expand(d)
        .sub(&RationalExpr::polynomial(&[(1, 0), (n1 as i64, 1)]).expand(d));
    middle.mul(&RationalExpr::ratio(bm, b).pow(n1).expand(d)).shift(bm - 1)
}

/// `sum_{k=0}^{min(n,m)} t^{(n-k)(q^m - q^k)} [m k]_{q,t}`: the conjectured Hilbert series
/// of `(S / m^[q^m])^{GL_n(F_q)}`.
pub fn lrs_conjecture(q: u64, n: usize, m: u32, d: usize) -> TruncatedSeries {
    let mut s = TruncatedSeries::zero(d);
    for k in 0..=(n as u32).min(m) {
        let shift = (n as u64 - k as u64) * (q.pow(m) - q.pow(k));
        s = s.add(&qt_binomial(m, k, q, d).shift(shift));
    }
    s
}

/// `sum_{k=0}^{min(n,m)} [m k]_q`: the value of [`lrs_conjecture`] at `t = 1`.
pub fn lrs_dimension(q: u64, n: usize, m: u32) -> i128 {
    (0..=(n as u32).min(m)).map(|k| gaussian_binomial(m, k, q)).sum()
}
