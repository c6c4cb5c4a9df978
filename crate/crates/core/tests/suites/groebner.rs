use frobpow::groebner::{in_ideal_by_division, in_ideal_by_expansion, monomials_of_weighted_degree, subduct};
use frobpow::group::GroupSpec;
use frobpow::invariants::{basic_invariants, h_generators};
use frobpow::{Error, Monomial, PolyRing, Polynomial};
use proptest::prelude::*;

use super::check;
use super::poly::{build, terms};

pub fn subduction_round_trip() {
    for spec in [
        GroupSpec::normalized(5, 3, 2, 4),
        GroupSpec::normalized(3, 3, 1, 2),
        GroupSpec::normalized(2, 2, 1, 1),
        GroupSpec::full_stabilizer(2, 2, 2),
    ] {
        let basic = basic_invariants(&spec).unwrap();
        let weights = basic.weights().to_vec();
        let monos: Vec<Vec<u32>> = (0..=30).flat_map(|d| monomials_of_weighted_degree(&weights, d)).collect();
        let q = basic.field().order();
        let count = monos.len();
        check(200, (proptest::collection::vec((0..count, 1..q), 1..4), 0..count), |(picks, single)| {
            let f = basic.f_monomial(monos[single].clone());
            prop_assert_eq!(subduct(&basic.expand(&f).unwrap(), &basic).unwrap(), f);
            let field = basic.field();
            let big = Polynomial::from_terms(basic.f_ring(), picks.iter().map(|&(i, c)| (monos[i].clone(), field.elem(c)))).unwrap();
            let x = basic.expand(&big).unwrap();
            let back = subduct(&x, &basic).unwrap();
            prop_assert_eq!(&back, &big);
            if !x.is_zero() {
                let lead = back.leading_monomial().unwrap().clone();
                let lead_x = basic.expand(&Polynomial::monomial(basic.f_ring(), lead, field.one())).unwrap();
                prop_assert_eq!(lead_x.leading_monomial().unwrap(), x.leading_monomial().unwrap());
            }
            Ok(())
        });
        // a lone power of x_1 is moved by g_1 (or by the diagonal part), so it is rejected
        let x1 = Polynomial::var(basic.x_ring(), 0);
        assert!(matches!(subduct(&x1, &basic), Err(Error::NotInvariant(_))), "{spec}");
        let foreign = Polynomial::var(&PolyRing::standard(basic.field(), spec.n + 1), 0);
        assert!(matches!(subduct(&foreign, &basic), Err(Error::RingMismatch)));
    }
}

pub fn ideal_membership() {
    for (spec, m) in [
        (GroupSpec::normalized(3, 2, 1, 2), 1),
        (GroupSpec::normalized(2, 3, 2, 1), 2),
        (GroupSpec::normalized(5, 3, 2, 4), 1),
        (GroupSpec::full_stabilizer(2, 2, 2), 1),
    ] {
        let basic = basic_invariants(&spec).unwrap();
        let h = h_generators(&basic, m).unwrap();
        let gens = h.f_polys();
        let leads: Vec<Monomial> = gens.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
        let top = spec.n as u64 * (h.frobenius_exponent() as u64 - 1);
        let standard: Vec<Vec<u32>> = (0..=top)
            .flat_map(|d| monomials_of_weighted_degree(basic.weights(), d))
            .filter(|e| {
                let mono = Monomial::new(e.clone());
                !leads.iter().any(|l| l.divides(&mono))
            })
            .collect();
        let q = basic.field().order();
        let n = spec.n;
        let ns = standard.len();
        let strat = (proptest::collection::vec(terms(n, 2, 3, q), gens.len()), 0..ns, 1..q);
        check(220, strat, |(multipliers, pick, c)| {
            let mut member = Polynomial::zero(basic.f_ring());
            for (t, g) in multipliers.iter().zip(&gens) {
                member = &member + &(&build(basic.f_ring(), t) * g);
            }
            prop_assert!(in_ideal_by_division(&member, &h).unwrap());
            prop_assert!(in_ideal_by_expansion(&member, &h).unwrap());
            let outsider = &member
                + &Polynomial::monomial(basic.f_ring(), Monomial::new(standard[pick].clone()), basic.field().elem(c));
            prop_assert!(!in_ideal_by_division(&outsider, &h).unwrap());
            prop_assert!(!in_ideal_by_expansion(&outsider, &h).unwrap());
            Ok(())
        });
        check(200, terms(n, 4, 4, q), |t| {
            let f = build(basic.f_ring(), &t);
            prop_assert_eq!(in_ideal_by_division(&f, &h).unwrap(), in_ideal_by_expansion(&f, &h).unwrap());
            Ok(())
        });
    }
}
