use std::cmp::Ordering;
use std::sync::Arc;

use frobpow::group::{build_group, enumerate_spec, GroupSpec};
use frobpow::invariants::basic_invariants;
use frobpow::poly::MonomialOrder;
use frobpow::{Error, Field, MatrixFq, Monomial, PolyRing, Polynomial};
use proptest::prelude::*;

use proptest::strategy::ValueTree;

use super::{check, runner};

/// `count` deterministic draws from `strategy`, mapped through `f`.
pub fn sample<S: Strategy, T>(count: usize, strategy: S, f: impl Fn(S::Value) -> T) -> Vec<T> {
    let mut r = runner(1);
    (0..count).map(|_| f(strategy.new_tree(&mut r).unwrap().current())).collect()
}

pub type Terms = Vec<(Vec<u32>, u64)>;

pub fn terms(nvars: usize, max_exp: u32, max_terms: usize, q: u64) -> impl Strategy<Value = Terms> {
    proptest::collection::vec((proptest::collection::vec(0..=max_exp, nvars), 1..q), 0..=max_terms)
}

pub fn build(ring: &Arc<PolyRing>, t: &Terms) -> Polynomial {
    let f = ring.field().clone();
    Polynomial::from_terms(ring, t.iter().map(|(e, c)| (e.clone(), f.elem(*c)))).unwrap()
}

pub fn ring_axioms() {
    for (p, r) in [(5, 1), (2, 2)] {
        let f = Field::new(p, r).unwrap();
        let ring = PolyRing::standard(&f, 3);
        let q = f.order();
        check(500, (terms(3, 4, 5, q), terms(3, 4, 5, q), terms(3, 4, 5, q)), |(a, b, c)| {
            let (a, b, c) = (build(&ring, &a), build(&ring, &b), build(&ring, &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            prop_assert_eq!(a.pow(3), &(&a * &a) * &a);
            Ok(())
        });
    }
}

fn monomials_up_to(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in 0..=d {
        for b in 0..=d - a {
            for c in 0..=d - a - b {
                out.push(Monomial::new(vec![a, b, c]));
            }
        }
    }
    assert_eq!(n, 3);
    out
}

pub fn order_multiplicativity() {
    let monos = monomials_up_to(3, 6);
    for weights in [vec![1, 1, 1], vec![5, 5, 4], vec![3, 1, 2]] {
        let order = MonomialOrder::graded_lex(weights);
        for u in &monos {
            for v in &monos {
                if order.cmp(u, v) != Ordering::Less {
                    continue;
                }
                for w in &monos {
                    assert_eq!(order.cmp(&u.mul(w), &v.mul(w)), Ordering::Less, "{u:?} {v:?} {w:?}");
                }
            }
        }
    }
}

pub fn order_compatibility() {
    for spec in [GroupSpec::normalized(5, 3, 2, 4), GroupSpec::normalized(3, 3, 1, 2), GroupSpec::full_stabilizer(2, 2, 2)] {
        let basic = basic_invariants(&spec).unwrap();
        let q = basic.field().order();
        let n = spec.n;
        check(100, terms(n, 3, 4, q), |t| {
            let big = build(basic.f_ring(), &t);
            if big.is_zero() {
                return Ok(());
            }
            let (lm, c) = big.leading_term().unwrap();
            let lead = Polynomial::monomial(basic.f_ring(), lm.clone(), c);
            let lhs = basic.expand(&lead).unwrap();
            let rhs = basic.expand(&big).unwrap();
            prop_assert_eq!(lhs.leading_monomial().unwrap(), rhs.leading_monomial().unwrap());
            Ok(())
        });
    }
}

pub fn division_identity() {
    let f = Field::new(3, 1).unwrap();
    for weights in [vec![1, 1, 1], vec![3, 3, 2]] {
        let ring = PolyRing::new(&f, weights, "x");
        check(300, (terms(3, 5, 6, 3), proptest::collection::vec(terms(3, 3, 3, 3), 1..4)), |(t, ds)| {
            let target = build(&ring, &t);
            let divisors: Vec<Polynomial> = ds.iter().map(|d| build(&ring, d)).filter(|d| !d.is_zero()).collect();
            if divisors.is_empty() {
                return Ok(());
            }
            let (quotients, rem) = target.divide(&divisors).unwrap();
            let mut recombined = rem.clone();
            for (qi, di) in quotients.iter().zip(&divisors) {
                recombined = &recombined + &(qi * di);
            }
            prop_assert_eq!(recombined, target);
            for (mono, _) in rem.terms() {
                for d in &divisors {
                    prop_assert!(!d.leading_monomial().unwrap().divides(mono));
                }
            }
            Ok(())
        });
    }
}

pub fn action_composition() {
    for spec in [
        GroupSpec::normalized(2, 2, 1, 1),
        GroupSpec::normalized(3, 2, 1, 2),
        GroupSpec::normalized(3, 3, 2, 2),
        GroupSpec::normalized(5, 2, 0, 4),
        GroupSpec::full_stabilizer(2, 2, 2),
    ] {
        let field = spec.field().unwrap();
        let ring = PolyRing::standard(&field, spec.n);
        let elems = enumerate_spec(&spec).unwrap();
        let q = field.order();
        let samples = sample(4, terms(spec.n, 3, 4, q), |t| build(&ring, &t));
        for g in &elems {
            for h in &elems {
                let gh = g.mul(h);
                for f in &samples {
                    let m = gh.matrix();
                    assert_eq!(
                        f.substitute_linear(m).unwrap(),
                        f.substitute_linear(g.matrix()).unwrap().substitute_linear(h.matrix()).unwrap()
                    );
                    assert_eq!(gh.act(f).unwrap(), g.act(&h.act(f).unwrap()).unwrap());
                }
            }
        }
        let wrong = MatrixFq::identity(&field, spec.n + 1);
        assert!(matches!(samples[0].substitute_linear(&wrong), Err(Error::DimensionMismatch(_))));
        let other = Field::new(7, 1).unwrap();
        assert!(matches!(samples[0].substitute_linear(&MatrixFq::identity(&other, spec.n)), Err(Error::RingMismatch)));
        // the normal-form generators act as displayed
        let gens = build_group(&spec).unwrap();
        let n = spec.n;
        let xn = Polynomial::var(&ring, n - 1);
        let mut gens = gens.into_iter();
        if spec.e > 1 {
            let gn = gens.next().unwrap();
            let omega = field.root_of_unity(spec.e).unwrap();
            assert_eq!(gn.act(&xn).unwrap(), xn.scale(field.inv(omega).unwrap()));
        }
        if !spec.full_stabilizer {
            for (k, gk) in gens.enumerate() {
                let xk = Polynomial::var(&ring, k);
                assert_eq!(gk.act(&xk).unwrap(), &xk - &xn);
                for j in (0..n).filter(|&j| j != k) {
                    let xj = Polynomial::var(&ring, j);
                    assert_eq!(gk.act(&xj).unwrap(), xj);
                }
            }
        }
    }
}

pub fn frobenius_reduction() {
    let f = Field::new(5, 1).unwrap();
    let ring = PolyRing::standard(&f, 3);
    check(300, (terms(3, 9, 6, 5), terms(3, 9, 6, 5), 2u32..6, 1u64..5), |(a, b, q, c)| {
        let (a, b) = (build(&ring, &a), build(&ring, &b));
        let ra = a.reduce_mod_frobenius(q);
        prop_assert_eq!(ra.reduce_mod_frobenius(q), ra.clone());
        prop_assert_eq!((&a + &b).reduce_mod_frobenius(q), &ra + &b.reduce_mod_frobenius(q));
        prop_assert_eq!(a.scale(f.elem(c)).reduce_mod_frobenius(q), ra.scale(f.elem(c)));
        prop_assert!(ra.terms().all(|(m, _)| m.exps().iter().all(|&e| e < q)));
        prop_assert!((&a - &ra).terms().all(|(m, _)| m.in_frobenius(q)));
        Ok(())
    });
}
