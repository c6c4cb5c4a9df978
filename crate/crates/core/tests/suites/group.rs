use std::collections::HashSet;

use frobpow::group::{enumerate_spec, is_transvection, transvection_rootspace_dim, GroupSpec};
use frobpow::FieldElem;

/// Valid normalized specs with `p` in `ps` and `n` in `ns`, plus full stabilizers.
pub fn desk_specs(ps: &[u64], ns: &[usize]) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    for &p in ps {
        for &n in ns {
            for ell in 0..n {
                for e in (1..p).filter(|e| (p - 1) % e == 0) {
                    out.push(GroupSpec::normalized(p, n, ell, e));
                }
            }
        }
    }
    out
}

pub fn group_structure() {
    let mut specs = desk_specs(&[2, 3, 5], &[2, 3]);
    specs.extend([
        GroupSpec::full_stabilizer(2, 2, 2),
        GroupSpec::full_stabilizer(2, 2, 3),
        GroupSpec::full_stabilizer(2, 3, 2),
        GroupSpec::full_stabilizer(3, 2, 2),
    ]);
    for spec in specs {
        let field = spec.field().unwrap();
        let n = spec.n;
        let elems = enumerate_spec(&spec).unwrap();
        assert_eq!(elems.len() as u64, spec.order(), "{spec}");
        let q = spec.q();
        let expected_order = if spec.full_stabilizer { (q - 1) * q.pow(n as u32 - 1) } else { spec.e * q.pow(spec.ell as u32) };
        assert_eq!(elems.len() as u64, expected_order);

        let omega = field.root_of_unity(spec.e).unwrap();
        let mu: HashSet<FieldElem> = (0..spec.e).map(|k| field.pow(omega, k)).collect();
        let mut det_kernel = 0;
        let mut seen = HashSet::new();
        for g in &elems {
            let m = g.matrix();
            assert!(m.inverse().is_some());
            for j in 0..n - 1 {
                for i in 0..n {
                    assert_eq!(m.get(i, j), if i == j { FieldElem::ONE } else { FieldElem::ZERO }, "{spec}");
                }
            }
            // explicit description: last column (a, d) with a in the root space and d in mu_e
            let d = m.get(n - 1, n - 1);
            assert!(mu.contains(&d));
            for i in 0..n - 1 {
                let a = m.get(i, n - 1);
                if i >= spec.ell {
                    assert!(a.is_zero());
                } else if !spec.full_stabilizer {
                    assert!(field.is_prime_subfield(a));
                }
            }
            seen.insert(m.entries().to_vec());
            if !g.is_identity() {
                assert_eq!(g.fixed_space_dim(), n - 1, "non-identity elements are reflections");
            }
            if is_transvection(g).unwrap() {
                assert_eq!(g.determinant(), FieldElem::ONE);
            }
            if g.determinant() == FieldElem::ONE {
                det_kernel += 1;
            }
        }
        assert_eq!(seen.len(), elems.len());
        assert_eq!(det_kernel * spec.e as usize, elems.len(), "det kernel has index e");
        let root_dim = if spec.full_stabilizer { spec.ell * spec.r as usize } else { spec.ell };
        assert_eq!(transvection_rootspace_dim(&elems).unwrap(), root_dim, "{spec}");
    }
}
