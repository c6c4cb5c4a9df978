//! Exact arithmetic in `F_p` and `F_{p^r}`.
//!
//! Elements are encoded canonically as integers `c_0 + c_1 p + ... + c_{r-1} p^{r-1}`
//! where `c_i` are the coefficients of the residue class modulo the field's defining
//! polynomial. Prime fields use plain modular arithmetic; extension fields carry
//! discrete log/exp tables built from a primitive element.

mod linalg;
mod lucas;

pub use linalg::{rank_of_sparse, sparse_nullspace, MatrixFq, SparseVec};
pub use lucas::binom_mod_p;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Upper bound on `p^r` for extension fields (tables are `O(p^r)`).
pub const TABLE_CAP: u64 = 1 << 24;

/// An element of some [`Field`], stored as its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Canonical index in `[0, |F|)`.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Inner {
    p: u32,
    r: u32,
    size: u64,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// A finite field `F_{p^r}` with a deterministically chosen modulus.
#[derive(Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.r == other.inner.r
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.inner.modulus.iter().map(|c| c.to_string()).collect();
        write!(f, "GF({}^{}; modulus=[{}])", self.inner.p, self.inner.r, coeffs.join(","))
    }
}

/// Smallest nontrivial divisor of `n`, or `None` when `n` is prime.
pub fn smallest_divisor(n: u64) -> Option<u64> {
    if n < 2 {
        return Some(n);
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return Some(d);
        }
        d += 1;
    }
    None
}

/// Splits `q = p^r` into `(p, r)`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = smallest_divisor(q).unwrap_or(q);
    let mut rest = q;
    let mut r = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p, r))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p, low degree first. Only used while setting up a field.

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo the monic polynomial `b`.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    poly_trim(&mut a);
    let db = b.len() - 1;
    let p64 = p as u64;
    while a.len() > db {
        let lead = *a.last().unwrap() as u64;
        let shift = a.len() - 1 - db;
        for (i, &bc) in b.iter().enumerate() {
            let sub = lead * bc as u64 % p64;
            let cur = a[shift + i] as u64;
            a[shift + i] = ((cur + p64 - sub) % p64) as u32;
        }
        poly_trim(&mut a);
    }
    a
}

fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let p64 = p as u64;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let v = prod[i + j] as u64 + x as u64 * y as u64;
            prod[i + j] = (v % p64) as u32;
        }
    }
    let mut rem = poly_rem(&prod, modulus, p);
    rem.resize(modulus.len() - 1, 0);
    rem
}

fn poly_powmod(base: &[u32], mut k: u64, modulus: &[u32], p: u32) -> Vec<u32> {
    let r = modulus.len() - 1;
    let mut acc = vec![0u32; r];
    acc[0] = 1;
    let mut b = base.to_vec();
    while k > 0 {
        if k & 1 == 1 {
            acc = poly_mulmod(&acc, &b, modulus, p);
        }
        b = poly_mulmod(&b, &b, modulus, p);
        k >>= 1;
    }
    acc
}

/// Irreducibility of a monic polynomial by trial division with every monic
/// polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = digits(idx, p, d);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits(mut idx: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((idx % p as u64) as u32);
        idx /= p as u64;
    }
    out
}

/// Lexicographically smallest monic irreducible polynomial of degree `r`,
/// comparing coefficients from the constant term upward.
fn smallest_irreducible(p: u32, r: u32) -> Vec<u32> {
    let r = r as usize;
    let count = (p as u64).pow(r as u32);
    for rank in 0..count {
        // rank enumerates (c_0, ..., c_{r-1}) with c_0 most significant
        let mut coeffs = digits(rank, p, r);
        coeffs.reverse();
        coeffs.push(1);
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl Field {
    /// Builds `F_{p^r}`; for `r > 1` the modulus is the lexicographically smallest
    /// monic irreducible polynomial of degree `r`.
    pub fn new(p: u64, r: u32) -> Result<Field> {
        if r < 1 {
            return Err(Error::InvalidArgument(format!("extension degree r = {r} must be >= 1")));
        }
        if let Some(divisor) = smallest_divisor(p) {
            return Err(Error::NotPrime { p, divisor });
        }
        if p > (1u64 << 31) {
            return Err(Error::InvalidArgument(format!("p = {p} exceeds 2^31")));
        }
        let p = p as u32;
        if r == 1 {
            return Ok(Field {
                inner: Arc::new(Inner {
                    p,
                    r,
                    size: p as u64,
                    modulus: vec![0, 1],
                    exp: Vec::new(),
                    log: Vec::new(),
                }),
            });
        }
        let size = (p as u64)
            .checked_pow(r)
            .filter(|s| *s <= TABLE_CAP)
            .ok_or(Error::FieldTooLarge { p, r, cap: TABLE_CAP })?;
        let modulus = smallest_irreducible(p, r);
        let (exp, log) = build_tables(p, r, size, &modulus);
        Ok(Field { inner: Arc::new(Inner { p, r, size, modulus, exp, log }) })
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn r(&self) -> u32 {
        self.inner.r
    }

    /// Number of elements `q = p^r`.
    pub fn order(&self) -> u64 {
        self.inner.size
    }

    /// Defining polynomial, constant term first (monic, length `r + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElem {
        FieldElem(v.rem_euclid(self.inner.p as i64) as u32)
    }

    /// Element with canonical index `idx`.
    pub fn elem(&self, idx: u64) -> FieldElem {
        assert!(idx < self.inner.size, "index {idx} outside field of order {}", self.inner.size);
        FieldElem(idx as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.inner.size as u32).map(FieldElem)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem> {
        if coeffs.len() > self.inner.r as usize {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.inner.r
            )));
        }
        let p = self.inner.p as u64;
        let mut idx = 0u64;
        for &c in coeffs.iter().rev() {
            if c as u64 >= p {
                return Err(Error::InvalidArgument(format!("residue {c} not reduced mod {p}")));
            }
            idx = idx * p + c as u64;
        }
        Ok(FieldElem(idx as u32))
    }

    /// Coefficient sequence `[c_0, ..., c_{r-1}]`.
    pub fn coeffs(&self, x: FieldElem) -> Vec<u32> {
        digits(x.0 as u64, self.inner.p, self.inner.r as usize)
    }

    pub fn format_elem(&self, x: FieldElem) -> String {
        let c: Vec<String> = self.coeffs(x).iter().map(|c| c.to_string()).collect();
        format!("[{}]", c.join(","))
    }

    /// Whether `x` lies in the prime subfield.
    pub fn is_prime_subfield(&self, x: FieldElem) -> bool {
        x.0 < self.inner.p
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let p = self.inner.p;
        if self.inner.r == 1 {
            let s = a.0 as u64 + b.0 as u64;
            let p = p as u64;
            return FieldElem(if s >= p { s - p } else { s } as u32);
        }
        if p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            let d = (x % p + y % p) % p;
            out += d * place;
            place *= p;
            x /= p;
            y /= p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let p = self.inner.p;
        if a.0 == 0 {
            return a;
        }
        if self.inner.r == 1 {
            return FieldElem(p - a.0);
        }
        if p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            let d = (p - x % p) % p;
            out += d * place;
            place *= p;
            x /= p;
        }
        FieldElem(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.inner.r == 1 {
            return FieldElem((a.0 as u64 * b.0 as u64 % self.inner.p as u64) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let n = self.inner.size - 1;
        let l = (self.inner.log[a.0 as usize] as u64 + self.inner.log[b.0 as usize] as u64) % n;
        FieldElem(self.inner.exp[l as usize])
    }

    pub fn pow(&self, a: FieldElem, mut k: u64) -> FieldElem {
        let mut acc = FieldElem::ONE;
        let mut b = a;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        if a.0 == 0 {
            return None;
        }
        if self.inner.r == 1 {
            return Some(self.pow(a, self.inner.p as u64 - 2));
        }
        let n = self.inner.size - 1;
        let l = (n - self.inner.log[a.0 as usize] as u64) % n;
        Some(FieldElem(self.inner.exp[l as usize]))
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Option<FieldElem> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElem) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let n = self.inner.size - 1;
        let mut order = n;
        for f in prime_factors(n) {
            while order.is_multiple_of(f) && self.pow(a, order / f) == FieldElem::ONE {
                order /= f;
            }
        }
        Some(order)
    }

    /// Smallest element (by canonical index, scanning from 1) of exact order `e`.
    pub fn root_of_unity(&self, e: u64) -> Result<FieldElem> {
        let n = self.inner.size - 1;
        if e == 0 || !n.is_multiple_of(e) {
            return Err(Error::NoRootOfUnity { e, p: self.inner.p, r: self.inner.r });
        }
        (1..self.inner.size)
            .map(|i| FieldElem(i as u32))
            .find(|&x| self.multiplicative_order(x) == Some(e))
            .ok_or(Error::NoRootOfUnity { e, p: self.inner.p, r: self.inner.r })
    }

    /// A basis of `F_q` over `F_p`: `1, x, ..., x^{r-1}`.
    pub fn prime_basis(&self) -> Vec<FieldElem> {
        (0..self.inner.r).map(|i| FieldElem((self.inner.p as u64).pow(i) as u32)).collect()
    }
}

fn build_tables(p: u32, r: u32, size: u64, modulus: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let n = size - 1;
    let factors = prime_factors(n);
    let one = {
        let mut v = vec![0u32; r as usize];
        v[0] = 1;
        v
    };
    let generator = (2..size)
        .map(|i| digits(i, p, r as usize))
        .find(|g| factors.iter().all(|&f| poly_powmod(g, n / f, modulus, p) != one))
        .expect("multiplicative group of a finite field is cyclic");
    let mut exp = vec![0u32; n as usize];
    let mut log = vec![0u32; size as usize];
    let mut cur = one;
    for (k, slot) in exp.iter_mut().enumerate() {
        let idx = cur.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64) as u32;
        *slot = idx;
        log[idx as usize] = k as u32;
        cur = poly_mulmod(&cur, &generator, modulus, p);
    }
    (exp, log)
}

/// Ring embedding `F_{p^a} -> F_{p^{ab}}` sending the generator of the source to the
/// smallest root (by canonical index) of the source modulus in the destination.
#[derive(Clone, Debug)]
pub struct FieldEmbedding {
    src: Field,
    dst: Field,
    powers: Vec<FieldElem>,
}

impl FieldEmbedding {
    pub fn new(src: &Field, dst: &Field) -> Result<Self> {
        if src.p() != dst.p() {
            return Err(Error::IncompatibleFields(format!(
                "characteristics {} and {} differ",
                src.p(),
                dst.p()
            )));
        }
        if !dst.r().is_multiple_of(src.r()) {
            return Err(Error::IncompatibleFields(format!(
                "degree {} does not divide {}",
                src.r(),
                dst.r()
            )));
        }
        let beta = if src.r() == 1 {
            FieldElem::ZERO
        } else {
            let modulus = src.modulus();
            dst.elements()
                .find(|&x| {
                    let v = modulus
                        .iter()
                        .rev()
                        .fold(FieldElem::ZERO, |acc, &c| dst.add(dst.mul(acc, x), dst.from_int(c as i64)));
                    v.is_zero()
                })
                .ok_or_else(|| Error::Internal("subfield modulus has no root in extension".into()))?
        };
        let mut powers = Vec::with_capacity(src.r() as usize);
        let mut cur = FieldElem::ONE;
        for _ in 0..src.r() {
            powers.push(cur);
            cur = dst.mul(cur, beta);
        }
        Ok(FieldEmbedding { src: src.clone(), dst: dst.clone(), powers })
    }

    pub fn apply(&self, x: FieldElem) -> FieldElem {
        self.src
            .coeffs(x)
            .iter()
            .zip(&self.powers)
            .fold(FieldElem::ZERO, |acc, (&c, &b)| {
                self.dst.add(acc, self.dst.mul(self.dst.from_int(c as i64), b))
            })
    }

    pub fn source(&self) -> &Field {
        &self.src
    }

    pub fn target(&self) -> &Field {
        &self.dst
    }
}

/// One-shot form of [`FieldEmbedding`].
pub fn embed(src: &Field, dst: &Field, x: FieldElem) -> Result<FieldElem> {
    Ok(FieldEmbedding::new(src, dst)?.apply(x))
}
