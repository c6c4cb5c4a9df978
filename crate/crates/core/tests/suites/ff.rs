use frobpow::ff::{binom_mod_p, sparse_nullspace, rank_of_sparse, SparseVec};
use frobpow::{Field, FieldElem, MatrixFq};
use proptest::prelude::*;

use super::check;

fn fields() -> Vec<Field> {
    [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (3, 4)]
        .into_iter()
        .map(|(p, r)| Field::new(p, r).unwrap())
        .collect()
}

pub fn field_axioms() {
    for f in fields() {
        let q = f.order();
        check(1000, (0..q, 0..q, 0..q), |(a, b, c)| {
            let (a, b, c) = (f.elem(a), f.elem(b), f.elem(c));
            prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            prop_assert_eq!(f.add(a, b), f.add(b, a));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            prop_assert_eq!(f.add(a, f.neg(a)), FieldElem::ZERO);
            prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElem::ONE);
                prop_assert_eq!(f.mul(f.div(b, a).unwrap(), a), b);
            } else {
                prop_assert!(f.inv(a).is_none());
                prop_assert!(f.div(b, a).is_none());
            }
            Ok(())
        });
    }
}

pub fn frobenius_identity() {
    for f in fields().into_iter().filter(|f| f.order() <= 81) {
        let p = f.p() as u64;
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)), "{f:?}");
            }
        }
    }
}

pub fn lucas_against_factorials() {
    let mut pascal = vec![vec![1u128]];
    for d in 1..=64usize {
        let prev = &pascal[d - 1];
        let row: Vec<u128> = (0..=d).map(|i| if i == 0 || i == d { 1 } else { prev[i - 1] + prev[i] }).collect();
        pascal.push(row);
    }
    for p in [2u32, 3, 5, 7] {
        for d in 0..=64u64 {
            for i in 0..=70u64 {
                let exact = pascal[d as usize].get(i as usize).copied().unwrap_or(0);
                assert_eq!(binom_mod_p(d, i, p) as u128, exact % p as u128, "C({d},{i}) mod {p}");
            }
        }
    }
}

fn brute_order(f: &Field, a: FieldElem) -> u64 {
    let mut x = a;
    let mut k = 1;
    while x != FieldElem::ONE {
        x = f.mul(x, a);
        k += 1;
    }
    k
}

pub fn roots_of_unity() {
    for f in fields() {
        let n = f.order() - 1;
        for e in (1..=n).filter(|e| n % e == 0) {
            let w = f.root_of_unity(e).unwrap();
            assert_eq!(brute_order(&f, w), e);
            assert_eq!(f.multiplicative_order(w), Some(e));
        }
        assert!(f.root_of_unity(n + 1).is_err());
    }
}

pub fn nullspace_property() {
    for f in [Field::new(3, 1).unwrap(), Field::new(2, 2).unwrap(), Field::new(5, 1).unwrap()] {
        let q = f.order();
        let strat = (1usize..5, 1usize..7).prop_flat_map(move |(r, c)| {
            (Just(r), Just(c), proptest::collection::vec(prop_oneof![3 => Just(0u64), 2 => 0..q], r * c))
        });
        check(300, strat, |(rows, cols, entries)| {
            let grid: Vec<Vec<FieldElem>> =
                (0..rows).map(|i| (0..cols).map(|j| f.elem(entries[i * cols + j])).collect()).collect();
            let m = MatrixFq::from_rows(&f, &grid).unwrap();
            let null = m.nullspace();
            prop_assert_eq!(m.rank() + null.len(), cols);
            for v in &null {
                prop_assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
            }
            let columns: Vec<SparseVec> = (0..cols)
                .map(|j| (0..rows).filter(|&i| !grid[i][j].is_zero()).map(|i| (i, grid[i][j])).collect())
                .collect();
            let sparse = sparse_nullspace(&f, &columns);
            prop_assert_eq!(sparse.len(), null.len());
            for v in &sparse {
                let mut dense = vec![FieldElem::ZERO; cols];
                for &(j, x) in v {
                    dense[j] = x;
                }
                prop_assert!(m.mul_vec(&dense).unwrap().iter().all(|x| x.is_zero()));
            }
            let row_vecs: Vec<SparseVec> = grid
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, &x)| (j, x)).collect())
                .collect();
            prop_assert_eq!(rank_of_sparse(&f, &row_vecs), m.rank());
            Ok(())
        });
    }
}
