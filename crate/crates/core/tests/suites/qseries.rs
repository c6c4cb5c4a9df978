use frobpow::qseries::{
    dimension_fp, dimension_stabilizer, gaussian_binomial, hilbert_main_fp, hilbert_stabilizer_fq, qt_binomial_poly,
    RationalExpr, TruncatedSeries,
};
use proptest::prelude::*;

use super::check;

pub fn series_identities() {
    check(300, (proptest::collection::vec((-5i64..6, 0u64..12), 0..5), proptest::collection::vec(1u64..6, 0..4)), |(num, den)| {
        let d = 40;
        let mut expr = RationalExpr::polynomial(&num);
        for &w in &den {
            expr = expr.over(w);
        }
        let mut s = expr.expand(d);
        for &w in &den {
            s = s.mul_one_minus(w);
        }
        let mut expected = vec![0i64; d + 1];
        for &(c, k) in &num {
            if (k as usize) <= d {
                expected[k as usize] += c;
            }
        }
        prop_assert_eq!(s, TruncatedSeries::from_coeffs(expected, d));
        Ok(())
    });

    for q in [2u64, 3, 4, 5] {
        for m in 0..=4u32 {
            for k in 0..=m {
                let at_one: i128 = qt_binomial_poly(m, k, q).iter().map(|&c| c as i128).sum();
                assert_eq!(at_one, gaussian_binomial(m, k, q), "q={q} m={m} k={k}");
            }
        }
    }

    for p in [2u64, 3, 5] {
        for n in [2usize, 3] {
            for m in [1u32, 2] {
                let top = n * (p.pow(m) as usize - 1);
                for ell in 0..n {
                    for e in (1..p).filter(|e| (p - 1) % e == 0) {
                        let s = hilbert_main_fp(p, n, m, ell, e, top + 5).unwrap();
                        assert!(s.is_nonnegative());
                        assert!(s.degree().unwrap() <= top);
                        assert_eq!(s.total() as u128, dimension_fp(p, n, m, ell, e));
                    }
                }
                let stab = hilbert_stabilizer_fq(p, n, m, top + 5).unwrap();
                assert_eq!(stab, hilbert_main_fp(p, n, m, n - 1, p - 1, top + 5).unwrap());
            }
        }
    }
    for q in [4u64, 8, 9] {
        for m in [1u32, 2] {
            let top = 2 * (q.pow(m) as usize - 1);
            let s = hilbert_stabilizer_fq(q, 2, m, top + 5).unwrap();
            assert!(s.is_nonnegative());
            assert!(s.degree().unwrap() <= top);
            assert_eq!(s.total() as u128, dimension_stabilizer(q, 2, m));
        }
    }
}
