//! Orbits of a hyperplane-fixing group on `(F_{q^m})^n`, counted by union-find.

use std::collections::BTreeMap;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ff::{Field, FieldElem, FieldEmbedding};
use crate::group::{build_group, GroupElement, GroupSpec};
use crate::qseries::{dimension_fp, dimension_stabilizer};

/// Default bound on the number of points `q^{mn}`.
pub const DEFAULT_POINT_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub n: usize,
    pub m: u32,
    /// `q^m`, the size of the coordinate field.
    pub coordinate_field: u64,
    pub group_order: u64,
    pub total_points: u64,
    pub orbits: u64,
    /// Orbit size mapped to the number of orbits of that size.
    pub histogram: BTreeMap<u64, u64>,
    /// Number of orbits predicted by the closed form, when one is established.
    pub formula: Option<u128>,
    /// Every point with `x_n = 0` is fixed.
    pub singletons_on_hyperplane: bool,
    /// Every orbit off the hyperplane has exactly `|G|` points.
    pub free_off_hyperplane: bool,
}

impl OrbitReport {
    pub fn matches_formula(&self) -> Option<bool> {
        self.formula.map(|f| f == self.orbits as u128)
    }

    /// Formula agreement plus the orbit-structure checks.
    pub fn holds(&self) -> bool {
        self.matches_formula() != Some(false) && self.singletons_on_hyperplane && self.free_off_hyperplane
    }

    /// `sum size * multiplicity`, which must be the number of points.
    pub fn histogram_points(&self) -> u64 {
        self.histogram.iter().map(|(s, k)| s * k).sum()
    }
}

/// The closed-form orbit count, for the cases where it is established: any normalized
/// group over `F_p`, and the full stabilizer over `F_q`.
pub fn orbit_formula(spec: &GroupSpec, m: u32) -> Option<u128> {
    if spec.full_stabilizer {
        Some(dimension_stabilizer(spec.q(), spec.n, m))
    } else if spec.r == 1 {
        Some(dimension_fp(spec.p, spec.n, m, spec.ell, spec.e))
    } else {
        None
    }
}

/// Enumerates the orbits of the group of `spec` on `(F_{q^m})^n` and compares the count
/// with [`orbit_formula`].
pub fn count_orbits_enum(spec: &GroupSpec, m: u32, cap: u64) -> Result<OrbitReport> {
    spec.validate()?;
    let gens = build_group(spec)?;
    let mut report = count_orbits_generators(&spec.field()?, spec.n, &gens, spec.order(), m, cap)?;
    report.formula = orbit_formula(spec, m);
    Ok(report)
}

/// Orbits of the group generated by `gens` on `(F_{q^m})^n`, without a formula comparison.
/// `group_order` is used for the structure check off the hyperplane.
pub fn count_orbits_generators(
    field: &Field,
    n: usize,
    gens: &[GroupElement],
    group_order: u64,
    m: u32,
    cap: u64,
) -> Result<OrbitReport> {
    if m < 1 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let big = Field::new(field.p() as u64, field.r() * m)?;
    let size = big.order();
    let total = size
        .checked_pow(n as u32)
        .filter(|&t| t <= cap)
        .ok_or(Error::CapExceeded { what: "orbit enumeration points", required: size.saturating_pow(n as u32), cap })?;
    let embedding = FieldEmbedding::new(field, &big)?;
    let mats: Vec<Vec<FieldElem>> = gens
        .iter()
        .map(|g| {
            if g.dim() != n {
                return Err(Error::DimensionMismatch(format!("{}x{} generator in dimension {n}", g.dim(), g.dim())));
            }
            Ok(g.matrix().entries().iter().map(|&x| embedding.apply(x)).collect())
        })
        .collect::<Result<Vec<_>>>()?;

    let decode = |mut code: u64| -> Vec<FieldElem> {
        (0..n)
            .map(|_| {
                let x = big.elem(code % size);
                code /= size;
                x
            })
            .collect()
    };
    let encode = |v: &[FieldElem]| v.iter().rev().fold(0u64, |acc, x| acc * size + x.index() as u64);

    let mut uf = UnionFind::<u32>::new(total as usize);
    let mut image = vec![FieldElem::ZERO; n];
    for code in 0..total {
        let v = decode(code);
        for mat in &mats {
            for (i, slot) in image.iter_mut().enumerate() {
                *slot = (0..n).fold(FieldElem::ZERO, |acc, j| big.add(acc, big.mul(mat[i * n + j], v[j])));
            }
            uf.union(code as u32, encode(&image) as u32);
        }
    }
    let labels = uf.into_labeling();
    let mut sizes: BTreeMap<u32, u64> = BTreeMap::new();
    for &l in &labels {
        *sizes.entry(l).or_default() += 1;
    }
    let mut histogram = BTreeMap::new();
    for &s in sizes.values() {
        *histogram.entry(s).or_default() += 1;
    }
    let on_hyperplane = |code: u64| decode(code)[n - 1].is_zero();
    let mut singletons_on_hyperplane = true;
    let mut free_off_hyperplane = true;
    for code in 0..total {
        let orbit_size = sizes[&labels[code as usize]];
        if on_hyperplane(code) {
            singletons_on_hyperplane &= orbit_size == 1;
        } else {
            free_off_hyperplane &= orbit_size == group_order;
        }
    }
    Ok(OrbitReport {
        n,
        m,
        coordinate_field: size,
        group_order,
        total_points: total,
        orbits: sizes.len() as u64,
        histogram,
        formula: None,
        singletons_on_hyperplane,
        free_off_hyperplane,
    })
}
