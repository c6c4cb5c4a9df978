//! Basic invariants, the Groebner generators `h_0, h_{1,a}, h_{2,a,b}` of the invariants
//! lying in the Frobenius power `m^[Q]`, and brute-force fixed spaces of `S / m^[Q]`.
//!
//! Throughout, `b` denotes the base of the Frobenius power: `b = p` for the normalized
//! groups over `F_p` and `b = q` for full stabilizers over `F_q`, and `Q = b^m`.

mod bound;
mod brute;
mod decompose;

pub use bound::{check_exponent_bound, full_gl_hilbert, BoundReport};
pub use brute::{
    brute_force_hilbert, brute_force_spaces, degree_basis, fixed_spaces, frobenius_exponent, hilbert_of_generators,
    span_dim, to_sparse, ActionTable, DegreeBasis, FixedSpace, HilbertFunction, DEFAULT_MONOMIAL_CAP,
};
pub use decompose::{a_space, a_space_dims, b_space, b_space_dims, verify_decomposition, DecompositionReport, DegreeReport};

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::Field;
use crate::group::{build_group, GroupSpec};
use crate::poly::{Monomial, PolyRing, Polynomial};

/// Free generators `f_1, ..., f_n` of `S^G` together with the rings `S` and `F[f_1, ..., f_n]`.
#[derive(Clone, Debug)]
pub struct BasicInvariants {
    spec: GroupSpec,
    base: u64,
    x_ring: Arc<PolyRing>,
    f_ring: Arc<PolyRing>,
    polys: Vec<Polynomial>,
}

/// The basic invariants of a normalized spec:
/// `f_i = x_i^b - x_i x_n^{b-1}` for `i <= ell`, `f_i = x_i` for `ell < i < n`, `f_n = x_n^e`,
/// where `b = q` and `e = q - 1` for full stabilizers. Each is checked to be fixed by
/// every generator.
pub fn basic_invariants(spec: &GroupSpec) -> Result<BasicInvariants> {
    spec.validate()?;
    let field = spec.field()?;
    let n = spec.n;
    let base = if spec.full_stabilizer { spec.q() } else { spec.p };
    let x_ring = PolyRing::standard(&field, n);
    let mut polys = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for i in 0..n - 1 {
        if i < spec.ell {
            let mut hi = vec![0; n];
            hi[i] = base as u32;
            let mut lo = vec![0; n];
            lo[i] = 1;
            lo[n - 1] = base as u32 - 1;
            polys.push(Polynomial::from_terms(&x_ring, [(hi, field.one()), (lo, field.neg(field.one()))])?);
            weights.push(base as u32);
        } else {
            polys.push(Polynomial::var(&x_ring, i));
            weights.push(1);
        }
    }
    polys.push(Polynomial::monomial(&x_ring, Monomial::var_power(n, n - 1, spec.e as u32), field.one()));
    weights.push(spec.e as u32);
    for g in build_group(spec)? {
        for (i, f) in polys.iter().enumerate() {
            if &g.act(f)? != f {
                return Err(Error::Internal(format!("f_{} = {f} is not fixed by a generator of {spec}", i + 1)));
            }
        }
    }
    let f_ring = PolyRing::new(&field, weights, "f");
    Ok(BasicInvariants { spec: spec.clone(), base, x_ring, f_ring, polys })
}

impl BasicInvariants {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn field(&self) -> &Field {
        self.x_ring.field()
    }

    /// `p`, or `q` for full stabilizers.
    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn x_ring(&self) -> &Arc<PolyRing> {
        &self.x_ring
    }

    pub fn f_ring(&self) -> &Arc<PolyRing> {
        &self.f_ring
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    /// Degrees of `f_1, ..., f_n`.
    pub fn weights(&self) -> &[u32] {
        self.f_ring.weights()
    }

    /// `F(f_1, ..., f_n)` written in the `x` variables.
    pub fn expand(&self, f: &Polynomial) -> Result<Polynomial> {
        f.with_ring(&self.f_ring)?.compose(&self.polys, None)
    }

    /// [`expand`](Self::expand) followed by reduction modulo `m^[q]`, truncating as it goes.
    pub fn expand_truncated(&self, f: &Polynomial, q: u32) -> Result<Polynomial> {
        f.with_ring(&self.f_ring)?.compose(&self.polys, Some(q))
    }

    /// The f-monomial `f_1^{c_1} ... f_n^{c_n}`.
    pub fn f_monomial(&self, exps: Vec<u32>) -> Polynomial {
        Polynomial::monomial(&self.f_ring, Monomial::new(exps), self.field().one())
    }
}

/// Which Groebner generator an entry of [`HGenerators`] is (1-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum HLabel {
    H0,
    H1(usize),
    H2(usize, usize),
}

impl fmt::Display for HLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HLabel::H0 => write!(f, "h0"),
            HLabel::H1(a) => write!(f, "h1_{a}"),
            HLabel::H2(a, b) => write!(f, "h2_{a}_{b}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct HGenerator {
    pub label: HLabel,
    /// In the variables `f_1, ..., f_n`.
    pub f_poly: Polynomial,
    /// Expanded in `x_1, ..., x_n`.
    pub x_poly: Polynomial,
}

/// The generators of `S^G ∩ m^[Q]`, listed as `h_0`, then `h_{1,a}` for ascending `a`,
/// then `h_{2,a,b}` in lex order of `(a, b)`.
#[derive(Clone, Debug)]
pub struct HGenerators {
    basic: BasicInvariants,
    m: u32,
    gens: Vec<HGenerator>,
}

fn exact_div(num: u64, den: u64) -> Result<u64> {
    if !num.is_multiple_of(den) {
        return Err(Error::Internal(format!("{num} is not divisible by {den}")));
    }
    Ok(num / den)
}

/// With `E(j) = (Q - j) / e`:
/// `h_0 = f_n^{1 + E(1)}`,
/// `h_{1,a} = sum_{k<m} f_n^{1 + E(b^{m-k})} f_a^{b^{m-k-1}}`,
/// `h_{2,a,b} = f_a^{b^{m-1}} f_b^{b^{m-1}}` for `1 <= a <= b < n`.
pub fn h_generators(basic: &BasicInvariants, m: u32) -> Result<HGenerators> {
    let spec = basic.spec();
    if !spec.is_maximal() {
        return Err(Error::InvalidSpec(format!("{spec} does not have a maximal transvection root space")));
    }
    if m < 1 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let n = spec.n;
    let b = basic.base();
    let e = spec.e;
    let big_q = b.pow(m);
    let fmono = |pairs: &[(usize, u64)]| {
        let mut exps = vec![0u32; n];
        for &(i, k) in pairs {
            exps[i] += u32::try_from(k).expect("exponent fits in u32");
        }
        basic.f_monomial(exps)
    };
    let mut f_polys = vec![(HLabel::H0, fmono(&[(n - 1, 1 + exact_div(big_q - 1, e)?)]))];
    for a in 0..n - 1 {
        let mut h = Polynomial::zero(basic.f_ring());
        for k in 0..m {
            let fn_exp = 1 + exact_div(big_q - b.pow(m - k), e)?;
            h = &h + &fmono(&[(n - 1, fn_exp), (a, b.pow(m - k - 1))]);
        }
        f_polys.push((HLabel::H1(a + 1), h));
    }
    for a in 0..n - 1 {
        for c in a..n - 1 {
            f_polys.push((HLabel::H2(a + 1, c + 1), fmono(&[(a, b.pow(m - 1)), (c, b.pow(m - 1))])));
        }
    }
    let gens = f_polys
        .into_iter()
        .map(|(label, f_poly)| Ok(HGenerator { label, x_poly: basic.expand(&f_poly)?, f_poly }))
        .collect::<Result<Vec<_>>>()?;
    Ok(HGenerators { basic: basic.clone(), m, gens })
}

impl HGenerators {
    pub fn basic(&self) -> &BasicInvariants {
        &self.basic
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `Q = b^m`.
    pub fn frobenius_exponent(&self) -> u32 {
        self.basic.base().pow(self.m) as u32
    }

    pub fn gens(&self) -> &[HGenerator] {
        &self.gens
    }

    pub fn f_polys(&self) -> Vec<Polynomial> {
        self.gens.iter().map(|h| h.f_poly.clone()).collect()
    }

    pub fn get(&self, label: HLabel) -> Option<&HGenerator> {
        self.gens.iter().find(|h| h.label == label)
    }

    /// The explicit `x`-form of a generator:
    /// `h_0 = x_n^{Q+e-1}`, `h_{1,a} = x_a^Q x_n^e - x_a x_n^{Q+e-1}`, and
    /// `h_{2,a,b} = (x_a^Q - x_a^{Q/b} x_n^{(b-1)Q/b}) (x_b^Q - x_b^{Q/b} x_n^{(b-1)Q/b})`.
    pub fn closed_form(&self, label: HLabel) -> Polynomial {
        let ring = self.basic.x_ring();
        let f = ring.field();
        let n = self.basic.n();
        let q = self.frobenius_exponent();
        let e = self.basic.spec().e as u32;
        let b = self.basic.base() as u32;
        let mono = |pairs: &[(usize, u32)]| {
            let mut exps = vec![0u32; n];
            for &(i, k) in pairs {
                exps[i] += k;
            }
            exps
        };
        let (one, minus) = (f.one(), f.neg(f.one()));
        match label {
            HLabel::H0 => Polynomial::from_terms(ring, [(mono(&[(n - 1, q + e - 1)]), one)]).unwrap(),
            HLabel::H1(a) => Polynomial::from_terms(
                ring,
                [(mono(&[(a - 1, q), (n - 1, e)]), one), (mono(&[(a - 1, 1), (n - 1, q + e - 1)]), minus)],
            )
            .unwrap(),
            HLabel::H2(a, c) => {
                let factor = |i: usize| {
                    Polynomial::from_terms(
                        ring,
                        [(mono(&[(i - 1, q)]), one), (mono(&[(i - 1, q / b), (n - 1, (b - 1) * (q / b))]), minus)],
                    )
                    .unwrap()
                };
                &factor(a) * &factor(c)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn archetype_basic_invariants() {
        let spec = GroupSpec::normalized(5, 3, 2, 4);
        let b = basic_invariants(&spec).unwrap();
        let shown: Vec<String> = b.polys().iter().map(|f| f.to_string()).collect();
        assert_eq!(shown, ["x1^5 - x1*x3^4", "x2^5 - x2*x3^4", "x3^4"]);
        assert_eq!(b.weights(), &[5, 5, 4]);
    }

    #[test]
    fn trivial_group_invariants_are_variables() {
        let b = basic_invariants(&GroupSpec::normalized(3, 3, 0, 1)).unwrap();
        let shown: Vec<String> = b.polys().iter().map(|f| f.to_string()).collect();
        assert_eq!(shown, ["x1", "x2", "x3"]);
    }

    #[test]
    fn f4_stabilizer_invariants() {
        let b = basic_invariants(&GroupSpec::full_stabilizer(2, 2, 2)).unwrap();
        let shown: Vec<String> = b.polys().iter().map(|f| f.to_string()).collect();
        assert_eq!(shown, ["[1,0]*x1^4 + [1,0]*x1*x2^3", "[1,0]*x2^3"]);
    }

    #[test]
    fn h_generators_match_closed_forms() {
        for (spec, m) in [
            (GroupSpec::normalized(5, 3, 2, 4), 1),
            (GroupSpec::normalized(3, 3, 2, 2), 2),
            (GroupSpec::normalized(2, 2, 1, 1), 3),
            (GroupSpec::full_stabilizer(2, 2, 2), 2),
        ] {
            let basic = basic_invariants(&spec).unwrap();
            let h = h_generators(&basic, m).unwrap();
            let q = h.frobenius_exponent();
            assert_eq!(h.gens().len(), 1 + (spec.n - 1) + spec.n * (spec.n - 1) / 2);
            for g in h.gens() {
                assert_eq!(g.x_poly, h.closed_form(g.label), "{spec} m={m} {}", g.label);
                assert!(g.x_poly.reduce_mod_frobenius(q).is_zero());
            }
        }
    }

    #[test]
    fn h0_vanishes_mod_frobenius() {
        let basic = basic_invariants(&GroupSpec::normalized(5, 3, 2, 2)).unwrap();
        let h = h_generators(&basic, 1).unwrap();
        assert_eq!(h.gens()[0].x_poly.to_string(), "x3^6");
        assert!(h.gens()[0].x_poly.reduce_mod_frobenius(5).is_zero());
    }

    #[test]
    fn non_maximal_spec_rejected() {
        let basic = basic_invariants(&GroupSpec::normalized(5, 3, 1, 1)).unwrap();
        assert!(h_generators(&basic, 1).is_err());
    }
}
