//! Reflection groups fixing the hyperplane `H = ker(x_n)` pointwise, in the normal form
//! where the semisimple generator is `diag(1, ..., 1, omega)` and the transvections are
//! `I + E_{k,n}`.
//!
//! Matrices act on column vectors of `V`; the induced action on `S = F[x_1, ..., x_n]`
//! is `(g . f)(x) = f(g^{-1} x)`, so `g_k = I + E_{k,n}` sends `x_k` to `x_k - x_n` and
//! `diag(1, ..., omega)` sends `x_n` to `omega^{-1} x_n`.
//!
//! For `g = [[1, 1], [0, 1]]` over `F_p`: `g^{-1} = [[1, -1], [0, 1]]`, so
//! `g . x_1 = x_1 - x_2`, `g . x_2 = x_2`, and `g . (x_1^p - x_1 x_2^{p-1}) = x_1^p - x_1 x_2^{p-1}`.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ff::{Field, FieldElem, MatrixFq};
use crate::poly::Polynomial;

/// Safety cap for closure enumeration.
pub const ENUMERATION_CAP: usize = 10_000_000;

/// Parameters of a normalized hyperplane-fixing reflection group over `F_q`, `q = p^r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub p: u64,
    #[serde(default = "one_u32")]
    pub r: u32,
    pub n: usize,
    pub ell: usize,
    pub e: u64,
    #[serde(default)]
    pub full_stabilizer: bool,
}

fn one_u32() -> u32 {
    1
}

impl GroupSpec {
    /// The family `<g_n, g_1, ..., g_ell>` over `F_p` with `g_n` of order `e`.
    pub fn normalized(p: u64, n: usize, ell: usize, e: u64) -> Self {
        GroupSpec { p, r: 1, n, ell, e, full_stabilizer: false }
    }

    /// The full pointwise stabilizer `GL_n(F_q)_H`, `q = p^r`.
    pub fn full_stabilizer(p: u64, r: u32, n: usize) -> Self {
        let q = p.pow(r);
        GroupSpec { p, r, n, ell: n.saturating_sub(1), e: q - 1, full_stabilizer: true }
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.r)
    }

    pub fn field(&self) -> Result<Field> {
        Field::new(self.p, self.r)
    }

    /// `e q^ell`, which equals `(q - 1) q^{n-1}` for full stabilizers.
    pub fn order(&self) -> u64 {
        self.e * self.q().pow(self.ell as u32)
    }

    /// Maximal transvection root space (`ell = n - 1`), which includes full stabilizers.
    pub fn is_maximal(&self) -> bool {
        self.ell + 1 == self.n
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if let Some(d) = crate::ff::smallest_divisor(self.p) {
            return bad(format!("p = {} is not prime (divisible by {d})", self.p));
        }
        if self.r < 1 {
            return bad("r must be at least 1".into());
        }
        if self.n < 2 {
            return bad(format!("n = {} but a hyperplane needs n >= 2", self.n));
        }
        let q = self
            .p
            .checked_pow(self.r)
            .filter(|&q| q <= crate::ff::TABLE_CAP)
            .ok_or_else(|| Error::InvalidSpec(format!("q = {}^{} is too large", self.p, self.r)))?;
        if self.e == 0 || (q - 1) % self.e != 0 {
            return bad(format!("e = {} does not divide q - 1 = {}", self.e, q - 1));
        }
        if self.ell > self.n - 1 {
            return bad(format!("ell = {} exceeds n - 1 = {}", self.ell, self.n - 1));
        }
        if self.full_stabilizer {
            if self.ell != self.n - 1 || self.e != q - 1 {
                return bad(format!(
                    "full stabilizer needs ell = n - 1 = {} and e = q - 1 = {}",
                    self.n - 1,
                    q - 1
                ));
            }
        } else if self.r > 1 && self.ell > 0 {
            return bad("over F_q with q not prime only ell = 0 or the full stabilizer is supported".into());
        }
        Ok(())
    }
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.full_stabilizer {
            write!(f, "GL_{}(F_{})_H", self.n, self.q())
        } else {
            write!(f, "G(p={}, r={}, n={}, ell={}, e={})", self.p, self.r, self.n, self.ell, self.e)
        }
    }
}

/// An invertible `n x n` matrix over the group's field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    mat: MatrixFq,
}

impl GroupElement {
    pub fn new(mat: MatrixFq) -> Result<Self> {
        if mat.rows() != mat.cols() {
            return Err(Error::DimensionMismatch("group elements are square".into()));
        }
        if mat.determinant().is_none_or(|d| d.is_zero()) {
            return Err(Error::InvalidArgument("matrix is not invertible".into()));
        }
        Ok(GroupElement { mat })
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        GroupElement { mat: MatrixFq::identity(field, n) }
    }

    pub fn matrix(&self) -> &MatrixFq {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        GroupElement { mat: self.mat.mul(&other.mat).expect("matching dimensions") }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement { mat: self.mat.inverse().expect("group elements are invertible") }
    }

    pub fn determinant(&self) -> FieldElem {
        self.mat.determinant().unwrap()
    }

    /// Matrix used to substitute variables: `x_j -> sum_i m[j][i] x_i` realizes `f -> g . f`.
    pub fn substitution_matrix(&self) -> MatrixFq {
        self.inverse().mat
    }

    /// `g . f = f(g^{-1} x)`; a left action on polynomials.
    pub fn act(&self, f: &Polynomial) -> Result<Polynomial> {
        f.substitute_linear(&self.substitution_matrix())
    }

    /// `g v` for a column vector `v`.
    pub fn apply(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        self.mat.mul_vec(v).expect("vector length matches")
    }

    /// Dimension of the fixed space `{v : g v = v}`.
    pub fn fixed_space_dim(&self) -> usize {
        let f = self.mat.field().clone();
        let n = self.dim();
        let mut diff = self.mat.clone();
        for i in 0..n {
            diff.set(i, i, f.sub(diff.get(i, i), FieldElem::ONE));
        }
        n - diff.rank()
    }
}

/// The semisimple reflection `diag(1, ..., 1, omega)`.
pub fn diagonal_reflection(field: &Field, n: usize, omega: FieldElem) -> GroupElement {
    let mut m = MatrixFq::identity(field, n);
    m.set(n - 1, n - 1, omega);
    GroupElement { mat: m }
}

/// The transvection `I + gamma E_{k,n}` (0-based `k`), acting by `x_k -> x_k - gamma x_n`.
pub fn transvection(field: &Field, n: usize, k: usize, gamma: FieldElem) -> GroupElement {
    let mut m = MatrixFq::identity(field, n);
    m.set(k, n - 1, gamma);
    GroupElement { mat: m }
}

/// Normal-form generators: `g_n = diag(1, ..., omega)` first (omitted when `e = 1`), then
/// the transvections `g_1, ..., g_ell`. Full stabilizers over `F_{p^r}` use the
/// transvections `I + gamma E_{k,n}` for `gamma` in the basis `1, x, ..., x^{r-1}` of
/// `F_q` over `F_p`, for every `k < n`.
pub fn build_group(spec: &GroupSpec) -> Result<Vec<GroupElement>> {
    spec.validate()?;
    let field = spec.field()?;
    let n = spec.n;
    let mut gens = Vec::new();
    if spec.e > 1 {
        gens.push(diagonal_reflection(&field, n, field.root_of_unity(spec.e)?));
    }
    let gammas = if spec.full_stabilizer { field.prime_basis() } else { vec![FieldElem::ONE] };
    for k in 0..spec.ell {
        for &g in &gammas {
            gens.push(transvection(&field, n, k, g));
        }
    }
    Ok(gens)
}

fn key(g: &GroupElement) -> Vec<u32> {
    g.mat.entries().iter().map(|x| x.index()).collect()
}

/// Closure of the generators under multiplication (breadth-first), identity first.
pub fn enumerate(field: &Field, n: usize, gens: &[GroupElement]) -> Result<Vec<GroupElement>> {
    enumerate_capped(field, n, gens, ENUMERATION_CAP)
}

pub fn enumerate_capped(field: &Field, n: usize, gens: &[GroupElement], cap: usize) -> Result<Vec<GroupElement>> {
    let id = GroupElement::identity(field, n);
    let mut seen: HashSet<Vec<u32>> = HashSet::from([key(&id)]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = g.mul(s);
            if seen.insert(key(&h)) {
                if out.len() >= cap {
                    return Err(Error::CapExceeded { what: "group enumeration", required: out.len() as u64 + 1, cap: cap as u64 });
                }
                out.push(h.clone());
                queue.push_back(h);
            }
        }
    }
    Ok(out)
}

/// Enumerates the group of `spec` and checks its order against `e q^ell`.
pub fn enumerate_spec(spec: &GroupSpec) -> Result<Vec<GroupElement>> {
    let gens = build_group(spec)?;
    let elems = enumerate(&spec.field()?, spec.n, &gens)?;
    if elems.len() as u64 != spec.order() {
        return Err(Error::Internal(format!("{spec} has {} elements, expected {}", elems.len(), spec.order())));
    }
    Ok(elems)
}

/// All of `GL_n(F)`, by exhaustive search over matrices (tiny cases only).
pub fn general_linear_group(field: &Field, n: usize) -> Result<Vec<GroupElement>> {
    let q = field.order();
    let total = q
        .checked_pow((n * n) as u32)
        .filter(|&t| t <= 1 << 20)
        .ok_or(Error::CapExceeded { what: "GL_n enumeration", required: u64::MAX, cap: 1 << 20 })?;
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let rows: Vec<Vec<FieldElem>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        let x = field.elem(c % q);
                        c /= q;
                        x
                    })
                    .collect()
            })
            .collect();
        let m = MatrixFq::from_rows(field, &rows)?;
        if m.determinant().is_some_and(|d| !d.is_zero()) {
            out.push(GroupElement { mat: m });
        }
    }
    Ok(out)
}

/// The root vector `alpha_g` with `g v = v + x_n(v) alpha_g`, or `None` for the identity.
/// Fails when `g` does not fix `v_1, ..., v_{n-1}`.
pub fn root_vector(g: &GroupElement) -> Result<Option<Vec<FieldElem>>> {
    let n = g.dim();
    let f = g.mat.field();
    for j in 0..n - 1 {
        for i in 0..n {
            let want = if i == j { FieldElem::ONE } else { FieldElem::ZERO };
            if g.mat.get(i, j) != want {
                return Err(Error::InvalidArgument(format!("matrix does not fix v_{} pointwise", j + 1)));
            }
        }
    }
    let alpha: Vec<FieldElem> = (0..n)
        .map(|i| if i == n - 1 { f.sub(g.mat.get(i, n - 1), FieldElem::ONE) } else { g.mat.get(i, n - 1) })
        .collect();
    Ok(alpha.iter().any(|x| !x.is_zero()).then_some(alpha))
}

/// Transvections are the non-identity elements whose root vector lies in `H`.
pub fn is_transvection(g: &GroupElement) -> Result<bool> {
    Ok(root_vector(g)?.is_some_and(|a| a.last().unwrap().is_zero()))
}

/// `dim_{F_p}` of the span of the root vectors lying in `H`.
pub fn transvection_rootspace_dim(elements: &[GroupElement]) -> Result<usize> {
    let Some(first) = elements.first() else {
        return Ok(0);
    };
    let field = first.mat.field().clone();
    let prime = Field::new(field.p() as u64, 1)?;
    let mut rows = Vec::new();
    for g in elements {
        if let Some(alpha) = root_vector(g)? {
            if alpha.last().unwrap().is_zero() {
                let flat: Vec<FieldElem> =
                    alpha.iter().flat_map(|&a| field.coeffs(a)).map(|c| prime.from_int(c as i64)).collect();
                rows.push(flat);
            }
        }
    }
    if rows.is_empty() {
        return Ok(0);
    }
    Ok(MatrixFq::from_rows(&prime, &rows)?.rank())
}
