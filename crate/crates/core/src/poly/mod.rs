//! Sparse multivariate polynomials over a [`Field`].
//!
//! Every polynomial belongs to a [`PolyRing`], which fixes the field, the number of
//! variables, their degree weights and the variable prefix used for printing. The
//! ring's monomial order is weighted graded-lex with the first variable largest: for
//! `S = F[x_1, ..., x_n]` all weights are 1, for the invariant ring
//! `F[f_1, ..., f_n]` the weights are the degrees of the `f_i`.
//!
//! Terms are stored sorted by that order, so the leading term is always the last one.

mod display;

use std::collections::{BTreeMap, HashMap};
use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ff::{binom_mod_p, Field, FieldElem, MatrixFq};

/// Exponent vector `x_1^{a_1} ... x_n^{a_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// `x_i^k` in `nvars` variables (0-based `i`).
    pub fn var_power(nvars: usize, i: usize, k: u32) -> Self {
        let mut e = vec![0; nvars];
        e[i] = k;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&a| a as u64).sum()
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.0.iter().zip(weights).map(|(&a, &w)| a as u64 * w as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|a| a * k).collect())
    }

    /// Whether some exponent is at least `q`, i.e. the monomial lies in `(x_1^q, ..., x_n^q)`.
    pub fn in_frobenius(&self, q: u32) -> bool {
        self.0.iter().any(|&a| a >= q)
    }
}

/// Weighted graded-lex order with `x_1 > x_2 > ... > x_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    weights: Vec<u32>,
}

impl MonomialOrder {
    pub fn graded_lex(weights: Vec<u32>) -> Self {
        MonomialOrder { weights }
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    /// Weighted degree first, ties broken by the larger exponent of the earliest variable.
    pub fn cmp(&self, u: &Monomial, v: &Monomial) -> Ordering {
        u.weighted_degree(&self.weights)
            .cmp(&v.weighted_degree(&self.weights))
            .then_with(|| u.0.cmp(&v.0))
    }
}

/// Ambient ring descriptor shared by all polynomials of one ring.
#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: Field,
    weights: Vec<u32>,
    prefix: String,
}

impl PolyRing {
    pub fn new(field: &Field, weights: Vec<u32>, prefix: &str) -> Arc<PolyRing> {
        assert!(weights.iter().all(|&w| w > 0), "variable weights must be positive");
        Arc::new(PolyRing { field: field.clone(), weights, prefix: prefix.to_string() })
    }

    /// `F[x_1, ..., x_n]` with standard grading.
    pub fn standard(field: &Field, n: usize) -> Arc<PolyRing> {
        Self::new(field, vec![1; n], "x")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn prefix(&self) -> &str {
        &self.prefix
    }

    pub fn order(&self) -> MonomialOrder {
        MonomialOrder::graded_lex(self.weights.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Key {
    wdeg: u64,
    mono: Monomial,
}

/// A polynomial in canonical sparse form (no zero coefficients).
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Key, FieldElem>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: FieldElem) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, FieldElem::ONE)
    }

    /// The variable with 0-based index `i`.
    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var_power(ring.nvars(), i, 1), FieldElem::ONE)
    }

    pub fn monomial(ring: &Arc<PolyRing>, mono: Monomial, c: FieldElem) -> Self {
        assert_eq!(mono.nvars(), ring.nvars(), "monomial arity does not match the ring");
        let mut p = Self::zero(ring);
        p.add_term(mono, c);
        p
    }

    /// Sums the given terms (repeated monomials are combined).
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Vec<u32>, FieldElem)>) -> Result<Self> {
        let mut p = Self::zero(ring);
        for (exps, c) in terms {
            if exps.len() != ring.nvars() {
                return Err(Error::DimensionMismatch(format!(
                    "monomial with {} exponents in a ring with {} variables",
                    exps.len(),
                    ring.nvars()
                )));
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    /// Integer coefficients reduced into the prime subfield.
    pub fn from_int_terms(ring: &Arc<PolyRing>, terms: &[(i64, &[u32])]) -> Result<Self> {
        let f = ring.field().clone();
        Self::from_terms(ring, terms.iter().map(|&(c, e)| (e.to_vec(), f.from_int(c))))
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        &self.ring.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, FieldElem)> + '_ {
        self.terms.iter().rev().map(|(k, &c)| (&k.mono, c))
    }

    pub fn coeff(&self, mono: &Monomial) -> FieldElem {
        let key = Key { wdeg: mono.weighted_degree(&self.ring.weights), mono: mono.clone() };
        self.terms.get(&key).copied().unwrap_or(FieldElem::ZERO)
    }

    /// Leading term in the ring's order.
    pub fn leading_term(&self) -> Result<(&Monomial, FieldElem)> {
        self.terms.last_key_value().map(|(k, &c)| (&k.mono, c)).ok_or(Error::LeadingOfZero)
    }

    pub fn leading_monomial(&self) -> Result<&Monomial> {
        self.leading_term().map(|(m, _)| m)
    }

    /// Leading term under an arbitrary weighted graded-lex order.
    pub fn leading_term_in(&self, order: &MonomialOrder) -> Result<(&Monomial, FieldElem)> {
        self.terms().max_by(|a, b| order.cmp(a.0, b.0)).ok_or(Error::LeadingOfZero)
    }

    /// Largest weighted degree of a term (0 for the zero polynomial).
    pub fn weighted_degree(&self) -> u64 {
        self.terms.last_key_value().map_or(0, |(k, _)| k.wdeg)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys();
        match it.next() {
            None => true,
            Some(first) => it.all(|k| k.wdeg == first.wdeg),
        }
    }

    fn add_term(&mut self, mono: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        let key = Key { wdeg: mono.weighted_degree(&self.ring.weights), mono };
        let f = &self.ring.field;
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = f.add(*o.get(), c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_term(k.mono.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let f = self.ring.field.clone();
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_term(k.mono.clone(), f.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_filtered(other, None))
    }

    /// Product with every term divisible by some `x_i^q` dropped.
    pub fn mul_truncated(&self, other: &Polynomial, q: u32) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_filtered(other, Some(q)))
    }

    fn mul_filtered(&self, other: &Polynomial, q: Option<u32>) -> Polynomial {
        let f = &self.ring.field;
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc: HashMap<Monomial, FieldElem> = HashMap::with_capacity(self.len() * other.len());
        for (ka, &ca) in &small.terms {
            for (kb, &cb) in &large.terms {
                let mono = ka.mono.mul(&kb.mono);
                if q.is_some_and(|q| mono.in_frobenius(q)) {
                    continue;
                }
                let c = f.mul(ca, cb);
                let slot = acc.entry(mono).or_insert(FieldElem::ZERO);
                *slot = f.add(*slot, c);
            }
        }
        let weights = &self.ring.weights;
        Polynomial {
            ring: self.ring.clone(),
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(mono, c)| (Key { wdeg: mono.weighted_degree(weights), mono }, c))
                .collect(),
        }
    }

    pub fn scale(&self, c: FieldElem) -> Polynomial {
        let f = &self.ring.field;
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, &x)| (k.clone(), f.mul(x, c))).collect(),
        }
    }

    /// `c * mono * self`.
    pub fn mul_term(&self, mono: &Monomial, c: FieldElem) -> Polynomial {
        let f = &self.ring.field;
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        let w = mono.weighted_degree(&self.ring.weights);
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, &x)| (Key { wdeg: k.wdeg + w, mono: k.mono.mul(mono) }, f.mul(x, c)))
                .collect(),
        }
    }

    pub fn pow(&self, k: u64) -> Polynomial {
        self.pow_filtered(k, None)
    }

    /// `self^k` with every term in `(x_1^q, ..., x_n^q)` dropped along the way.
    pub fn pow_truncated(&self, k: u64, q: u32) -> Polynomial {
        self.pow_filtered(k, Some(q))
    }

    fn pow_filtered(&self, k: u64, q: Option<u32>) -> Polynomial {
        let keep = |p: Polynomial| match q {
            Some(q) => p.reduce_mod_frobenius(q),
            None => p,
        };
        if k == 0 {
            return keep(Self::one(&self.ring));
        }
        match self.len() {
            0 => Self::zero(&self.ring),
            1 => {
                let (mono, c) = self.leading_term().unwrap();
                let k32 = u32::try_from(k).expect("exponent overflow");
                keep(Self::monomial(&self.ring, mono.pow(k32), self.field().pow(c, k)))
            }
            2 => self.binomial_pow(k, q),
            _ => {
                let mut acc = keep(Self::one(&self.ring));
                let mut base = keep(self.clone());
                let mut k = k;
                while k > 0 {
                    if k & 1 == 1 {
                        acc = acc.mul_filtered(&base, q);
                    }
                    k >>= 1;
                    if k > 0 {
                        base = base.mul_filtered(&base, q);
                    }
                }
                acc
            }
        }
    }

    /// `(c_u u + c_v v)^k = sum_i C(k, i) c_u^{k-i} c_v^i u^{k-i} v^i` with the binomials
    /// taken mod p by Lucas' theorem.
    fn binomial_pow(&self, k: u64, q: Option<u32>) -> Polynomial {
        let f = self.field().clone();
        let mut it = self.terms.iter();
        let (ku, &cu) = it.next().unwrap();
        let (kv, &cv) = it.next().unwrap();
        let (u, v) = (&ku.mono, &kv.mono);
        let mut out = Self::zero(&self.ring);
        let k32 = u32::try_from(k).expect("exponent overflow");
        for i in 0..=k32 {
            let b = binom_mod_p(k, i as u64, f.p());
            if b == 0 {
                continue;
            }
            let mono = u.pow(k32 - i).mul(&v.pow(i));
            if q.is_some_and(|q| mono.in_frobenius(q)) {
                continue;
            }
            let c = f.mul(f.from_int(b as i64), f.mul(f.pow(cu, (k32 - i) as u64), f.pow(cv, i as u64)));
            out.add_term(mono, c);
        }
        out
    }

    /// Canonical representative modulo `(x_1^q, ..., x_n^q)`: terms with an exponent `>= q`
    /// are deleted.
    pub fn reduce_mod_frobenius(&self, q: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| !k.mono.in_frobenius(q))
                .map(|(k, &c)| (k.clone(), c))
                .collect(),
        }
    }

    /// Makes the polynomial monic (leading coefficient 1); zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Ok((_, c)) => self.scale(self.field().inv(c).unwrap()),
            Err(_) => self.clone(),
        }
    }

    /// Re-homes the polynomial into another ring with the same field and arity.
    pub fn with_ring(&self, ring: &Arc<PolyRing>) -> Result<Polynomial> {
        if ring.nvars() != self.ring.nvars() || ring.field() != self.field() {
            return Err(Error::RingMismatch);
        }
        let mut out = Self::zero(ring);
        for (k, &c) in &self.terms {
            out.add_term(k.mono.clone(), c);
        }
        Ok(out)
    }

    /// Substitutes `x_i -> images[i]`; all images must share one ring, which becomes
    /// the ring of the result. With `trunc = Some(q)` every intermediate product is
    /// reduced modulo `(x_1^q, ..., x_n^q)`.
    pub fn compose(&self, images: &[Polynomial], trunc: Option<u32>) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::DimensionMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.ring.nvars()
            )));
        }
        let Some(target) = images.first().map(|p| p.ring.clone()) else {
            return Ok(self.clone());
        };
        for im in images {
            im.check_ring(&images[0])?;
        }
        if target.field() != self.field() {
            return Err(Error::RingMismatch);
        }
        let mut cache: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut out = Self::zero(&target);
        for (k, &c) in &self.terms {
            let mut term = Self::constant(&target, c);
            for (j, &a) in k.mono.0.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let pw = cache
                    .entry((j, a))
                    .or_insert_with(|| images[j].pow_filtered(a as u64, trunc))
                    .clone();
                term = term.mul_filtered(&pw, trunc);
                if term.is_zero() {
                    break;
                }
            }
            for (tk, &tc) in &term.terms {
                out.add_term(tk.mono.clone(), tc);
            }
        }
        Ok(out)
    }

    /// Linear change of variables `x_j -> sum_i g[j][i] x_i`, i.e. `f(x) -> f(g x)` with `x`
    /// the column of variables. This is a right action:
    /// `substitute_linear(f, g h) = substitute_linear(substitute_linear(f, g), h)`.
    pub fn substitute_linear(&self, g: &MatrixFq) -> Result<Polynomial> {
        let n = self.ring.nvars();
        if g.rows() != n || g.cols() != n {
            return Err(Error::DimensionMismatch(format!("{}x{} matrix on {n} variables", g.rows(), g.cols())));
        }
        if g.field() != self.field() {
            return Err(Error::RingMismatch);
        }
        let images: Vec<Polynomial> = (0..n)
            .map(|j| {
                let mut p = Self::zero(&self.ring);
                for i in 0..n {
                    p.add_term(Monomial::var_power(n, i, 1), g.get(j, i));
                }
                p
            })
            .collect();
        self.compose(&images, None)
    }

    /// Multivariate division with first-divisor-wins tie breaking: returns quotients and
    /// a remainder with `self = sum q_i d_i + rem`, no term of `rem` divisible by any
    /// leading monomial.
    pub fn divide(&self, divisors: &[Polynomial]) -> Result<(Vec<Polynomial>, Polynomial)> {
        let f = self.field().clone();
        let mut leads = Vec::with_capacity(divisors.len());
        for d in divisors {
            self.check_ring(d)?;
            let (m, c) = d.leading_term()?;
            leads.push((m.clone(), f.inv(c).unwrap()));
        }
        let mut quotients = vec![Self::zero(&self.ring); divisors.len()];
        let mut rem = Self::zero(&self.ring);
        let mut p = self.clone();
        while let Some((key, c)) = p.terms.pop_last() {
            let lm = key.mono;
            match leads.iter().position(|(m, _)| m.divides(&lm)) {
                Some(i) => {
                    let mono = lm.div(&leads[i].0).unwrap();
                    let coef = f.mul(c, leads[i].1);
                    quotients[i].add_term(mono.clone(), coef);
                    // the leading term cancels exactly; subtract the rest of the divisor
                    let mut rest = divisors[i].terms.iter().rev();
                    rest.next();
                    for (k, &dc) in rest {
                        p.add_term(k.mono.mul(&mono), f.neg(f.mul(coef, dc)));
                    }
                }
                None => rem.add_term(lm, c),
            }
        }
        Ok((quotients, rem))
    }

    /// S-polynomial `lcm/LT(a) * a - lcm/LT(b) * b`.
    pub fn s_polynomial(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let f = self.field();
        let (ma, ca) = self.leading_term()?;
        let (mb, cb) = other.leading_term()?;
        let l = ma.lcm(mb);
        let left = self.mul_term(&l.div(ma).unwrap(), f.inv(ca).unwrap());
        let right = other.mul_term(&l.div(mb).unwrap(), f.inv(cb).unwrap());
        left.checked_sub(&right)
    }
}

/// Leading monomial and coefficient of `f` under `order`.
pub fn leading_monomial(f: &Polynomial, order: &MonomialOrder) -> Result<(Monomial, FieldElem)> {
    f.leading_term_in(order).map(|(m, c)| (m.clone(), c))
}

/// Free-function form of [`Polynomial::reduce_mod_frobenius`].
pub fn reduce_mod_frobenius(f: &Polynomial, q: u32) -> Polynomial {
    f.reduce_mod_frobenius(q)
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomials from different rings")
            }
        }

        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;

            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        let f = self.field();
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, &c)| (k.clone(), f.neg(c))).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}
