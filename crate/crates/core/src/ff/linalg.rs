//! Dense matrices over a [`Field`] and exact Gaussian elimination.

use std::collections::BTreeMap;
use std::ops::Index;

use petgraph::unionfind::UnionFind;

use super::{Field, FieldElem};
use crate::error::{Error, Result};

/// Sparse vector as `(coordinate, nonzero value)` pairs.
pub type SparseVec = Vec<(usize, FieldElem)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFq {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElem>,
}

impl MatrixFq {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        MatrixFq { field: field.clone(), rows, cols, entries: vec![FieldElem::ZERO; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<FieldElem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(MatrixFq {
            field: field.clone(),
            rows: rows.len(),
            cols,
            entries: rows.concat(),
        })
    }

    /// Integer entries, reduced into the prime subfield.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<Vec<FieldElem>> =
            rows.iter().map(|r| r.iter().map(|&v| field.from_int(v)).collect()).collect();
        Self::from_rows(field, &rows)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| self.get(i, j) == if i == j { FieldElem::ONE } else { FieldElem::ZERO })
            })
    }

    pub fn mul(&self, other: &MatrixFq) -> Result<MatrixFq> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = MatrixFq::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(k, j))));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(FieldElem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    pub fn transpose(&self) -> MatrixFq {
        let mut out = MatrixFq::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns (chosen left to right).
    pub fn rref(&self) -> (MatrixFq, Vec<usize>) {
        let mut m = self.clone();
        let pivots = rref_in_place(&self.field, self.rows, self.cols, &mut m.entries);
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace in the free-variable parameterization: one vector
    /// per non-pivot column `j`, with a 1 in position `j`.
    pub fn nullspace(&self) -> Vec<Vec<FieldElem>> {
        let (r, pivots) = self.rref();
        nullspace_from_rref(&self.field, &r.entries, self.cols, &pivots)
    }

    pub fn inverse(&self) -> Option<MatrixFq> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let f = &self.field;
        let mut aug = vec![FieldElem::ZERO; n * 2 * n];
        for i in 0..n {
            aug[i * 2 * n..i * 2 * n + n].copy_from_slice(self.row(i));
            aug[i * 2 * n + n + i] = FieldElem::ONE;
        }
        let pivots = rref_in_place(f, n, 2 * n, &mut aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = MatrixFq::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug[i * 2 * n + n + j]);
            }
        }
        Some(out)
    }

    pub fn determinant(&self) -> Option<FieldElem> {
        if self.rows != self.cols {
            return None;
        }
        let f = &self.field;
        let n = self.rows;
        let mut m = self.entries.clone();
        let mut det = FieldElem::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&r| !m[r * n + c].is_zero()) else {
                return Some(FieldElem::ZERO);
            };
            if pr != c {
                for j in 0..n {
                    m.swap(pr * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let piv = m[c * n + c];
            det = f.mul(det, piv);
            let inv = f.inv(piv).unwrap();
            for r in c + 1..n {
                let factor = f.mul(m[r * n + c], inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m[r * n + j], f.mul(factor, m[c * n + j]));
                    m[r * n + j] = v;
                }
            }
        }
        Some(det)
    }
}

impl Index<(usize, usize)> for MatrixFq {
    type Output = FieldElem;

    fn index(&self, (i, j): (usize, usize)) -> &FieldElem {
        assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

fn rref_in_place(f: &Field, rows: usize, cols: usize, m: &mut [FieldElem]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !m[i * cols + c].is_zero()) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                m.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(m[r * cols + c]).unwrap();
        for j in c..cols {
            m[r * cols + j] = f.mul(m[r * cols + j], inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m[i * cols + c];
            if factor.is_zero() {
                continue;
            }
            for j in c..cols {
                let pivot_val = m[r * cols + j];
                if !pivot_val.is_zero() {
                    m[i * cols + j] = f.sub(m[i * cols + j], f.mul(factor, pivot_val));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn nullspace_from_rref(f: &Field, m: &[FieldElem], cols: usize, pivots: &[usize]) -> Vec<Vec<FieldElem>> {
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&j| !is_pivot[j])
        .map(|free| {
            let mut v = vec![FieldElem::ZERO; cols];
            v[free] = FieldElem::ONE;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m[row * cols + free]);
            }
            v
        })
        .collect()
}

/// Connected blocks of a sparse matrix given by its columns: columns sharing a row
/// end up in the same block. Returns `(rows, columns)` per block, each sorted.
fn blocks(columns: &[SparseVec]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let ncols = columns.len();
    let mut uf = UnionFind::<usize>::new(ncols);
    let mut first_col_of_row: BTreeMap<usize, usize> = BTreeMap::new();
    for (j, col) in columns.iter().enumerate() {
        for &(i, _) in col {
            match first_col_of_row.get(&i) {
                Some(&k) => {
                    uf.union(k, j);
                }
                None => {
                    first_col_of_row.insert(i, j);
                }
            }
        }
    }
    let mut by_root: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    let mut order = Vec::new();
    for j in 0..ncols {
        let root = uf.find(j);
        let entry = by_root.entry(root).or_insert_with(|| {
            order.push(root);
            (Vec::new(), Vec::new())
        });
        entry.1.push(j);
    }
    for (&i, &j) in &first_col_of_row {
        by_root.get_mut(&uf.find(j)).unwrap().0.push(i);
    }
    order.into_iter().map(|root| by_root.remove(&root).unwrap()).collect()
}

/// Kernel of the linear map `x -> sum_j x_j * columns[j]`, computed block by block.
///
/// Each returned vector is indexed by column and supported inside one block.
pub fn sparse_nullspace(f: &Field, columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut out = Vec::new();
    for (rows, cols) in blocks(columns) {
        if rows.is_empty() {
            out.extend(cols.iter().map(|&j| vec![(j, FieldElem::ONE)]));
            continue;
        }
        let row_pos: BTreeMap<usize, usize> = rows.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let (nr, nc) = (rows.len(), cols.len());
        let mut dense = vec![FieldElem::ZERO; nr * nc];
        for (k, &j) in cols.iter().enumerate() {
            for &(i, v) in &columns[j] {
                dense[row_pos[&i] * nc + k] = f.add(dense[row_pos[&i] * nc + k], v);
            }
        }
        let pivots = rref_in_place(f, nr, nc, &mut dense);
        for v in nullspace_from_rref(f, &dense, nc, &pivots) {
            out.push(
                v.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (cols[k], x))
                    .collect(),
            );
        }
    }
    out
}

/// Rank of a family of sparse vectors (rank is additive over connected blocks).
pub fn rank_of_sparse(f: &Field, vectors: &[SparseVec]) -> usize {
    blocks(vectors)
        .into_iter()
        .map(|(coords, members)| {
            if coords.is_empty() {
                return 0;
            }
            let pos: BTreeMap<usize, usize> = coords.iter().enumerate().map(|(k, &i)| (i, k)).collect();
            let (nr, nc) = (members.len(), coords.len());
            let mut dense = vec![FieldElem::ZERO; nr * nc];
            for (k, &j) in members.iter().enumerate() {
                for &(i, v) in &vectors[j] {
                    dense[k * nc + pos[&i]] = f.add(dense[k * nc + pos[&i]], v);
                }
            }
            rref_in_place(f, nr, nc, &mut dense).len()
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_trivial_nullspace() {
        let f3 = Field::new(3, 1).unwrap();
        assert!(MatrixFq::identity(&f3, 2).nullspace().is_empty());
    }

    #[test]
    fn x_plus_y_over_f2() {
        let f2 = Field::new(2, 1).unwrap();
        let m = MatrixFq::from_ints(&f2, &[&[1, 1], &[0, 0]]).unwrap();
        assert_eq!(m.nullspace(), vec![vec![f2.one(), f2.one()]]);
    }

    #[test]
    fn single_row_over_f5() {
        let f5 = Field::new(5, 1).unwrap();
        let m = MatrixFq::from_ints(&f5, &[&[1, 2, 3, 4]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.len(), 3);
        for v in &ns {
            assert!(m.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
        // free-variable parameterization: (-2, 1, 0, 0), (-3, 0, 1, 0), (-4, 0, 0, 1)
        assert_eq!(ns[0], vec![f5.from_int(3), f5.one(), f5.zero(), f5.zero()]);
    }

    #[test]
    fn empty_matrix_nullspace_is_full() {
        let f5 = Field::new(5, 1).unwrap();
        let m = MatrixFq::zeros(&f5, 0, 3);
        assert_eq!(m.nullspace().len(), 3);
    }

    #[test]
    fn inverse_and_determinant() {
        let f9 = Field::new(3, 2).unwrap();
        let a = f9.elem(5);
        let m = MatrixFq::from_rows(&f9, &[vec![f9.one(), a], vec![f9.zero(), a]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).unwrap().is_identity());
        assert_eq!(m.determinant(), Some(a));
        let singular = MatrixFq::from_ints(&f9, &[&[1, 2], &[2, 1]]).unwrap();
        assert!(singular.inverse().is_none());
        assert_eq!(singular.determinant(), Some(f9.zero()));
    }

    #[test]
    fn sparse_nullspace_matches_dense() {
        let f3 = Field::new(3, 1).unwrap();
        // columns of a 4x5 matrix with two blocks plus a zero column
        let rows: &[&[i64]] = &[&[1, 2, 0, 0, 0], &[2, 1, 0, 0, 0], &[0, 0, 1, 0, 1], &[0, 0, 0, 0, 2]];
        let dense = MatrixFq::from_ints(&f3, rows).unwrap();
        let columns: Vec<SparseVec> = (0..5)
            .map(|j| (0..4).filter(|&i| !dense.get(i, j).is_zero()).map(|i| (i, dense.get(i, j))).collect())
            .collect();
        let sparse = sparse_nullspace(&f3, &columns);
        assert_eq!(sparse.len(), dense.nullspace().len());
        for v in &sparse {
            let mut full = vec![f3.zero(); 5];
            for &(j, x) in v {
                full[j] = x;
            }
            assert!(dense.mul_vec(&full).unwrap().iter().all(|x| x.is_zero()));
        }
        let as_rows: Vec<SparseVec> = (0..4)
            .map(|i| (0..5).filter(|&j| !dense.get(i, j).is_zero()).map(|j| (j, dense.get(i, j))).collect())
            .collect();
        assert_eq!(rank_of_sparse(&f3, &as_rows), dense.rank());
    }
}
