use frobpow::group::{enumerate_spec, GroupSpec};
use frobpow::invariants::{basic_invariants, h_generators};
use frobpow::Error;
use frobpow::{Monomial, PolyRing, Polynomial};
use proptest::prelude::*;

use super::check;
use super::group::desk_specs;

pub fn invariance() {
    let mut specs = desk_specs(&[2, 3, 5], &[2, 3]);
    specs.extend([GroupSpec::full_stabilizer(2, 2, 2), GroupSpec::full_stabilizer(3, 2, 2), GroupSpec::full_stabilizer(2, 3, 2)]);
    for spec in specs {
        let basic = basic_invariants(&spec).unwrap();
        for g in enumerate_spec(&spec).unwrap() {
            for f in basic.polys() {
                assert_eq!(&g.act(f).unwrap(), f, "{spec}");
            }
        }
        if spec.is_maximal() {
            for m in 1..=2 {
                let h = h_generators(&basic, m).unwrap();
                let q = h.frobenius_exponent();
                for g in h.gens() {
                    assert!(g.x_poly.reduce_mod_frobenius(q).is_zero(), "{spec} {}", g.label);
                }
            }
        }
    }
}

/// Invalid parameters are rejected before any invariant is built.
pub fn invalid_parameters() {
    for bad in [GroupSpec::normalized(4, 2, 1, 1), GroupSpec::normalized(5, 2, 1, 3), GroupSpec::normalized(3, 2, 2, 1)] {
        assert!(matches!(basic_invariants(&bad), Err(Error::InvalidSpec(_))), "{bad}");
    }
    let partial = basic_invariants(&GroupSpec::normalized(3, 3, 1, 2)).unwrap();
    assert!(matches!(h_generators(&partial, 1), Err(Error::InvalidSpec(_))));
    let maximal = basic_invariants(&GroupSpec::normalized(3, 2, 1, 2)).unwrap();
    assert!(matches!(h_generators(&maximal, 0), Err(Error::InvalidArgument(_))));
    let foreign = Polynomial::var(&PolyRing::standard(maximal.field(), 3), 0);
    assert!(matches!(maximal.expand(&foreign), Err(Error::RingMismatch)));
    assert!(matches!(maximal.expand_truncated(&foreign, 3), Err(Error::RingMismatch)));
}

pub fn frobenius_rewrite() {
    for (spec, m) in [(GroupSpec::normalized(5, 3, 2, 4), 1), (GroupSpec::normalized(3, 3, 2, 1), 2), (GroupSpec::normalized(2, 3, 1, 1), 2)] {
        let basic = basic_invariants(&spec).unwrap();
        let n = spec.n;
        let p = spec.p as u32;
        let q = p.pow(m);
        let one = basic.field().one();
        check(200, (proptest::collection::vec(0..q, n - 1), 0..spec.ell), |(a, i)| {
            let mut exps = a.clone();
            exps.push(q - 1);
            let tail = Polynomial::monomial(basic.x_ring(), Monomial::new(exps.clone()), one);
            let lhs = (&basic.polys()[i] * &tail).reduce_mod_frobenius(q);
            exps[i] += p;
            let rhs = Polynomial::monomial(basic.x_ring(), Monomial::new(exps), one).reduce_mod_frobenius(q);
            prop_assert_eq!(lhs, rhs);
            Ok(())
        });
    }
}
