//! Exact linear algebra over [`Scalar`]: dense matrices, reduced echelon form,
//! and subspace arithmetic (sum, intersection, preimage, quotient dimension).
//!
//! Pivoting always takes the first nonzero entry in column order. With exact
//! arithmetic no magnitude heuristics are needed and results are deterministic.

use std::fmt;

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("matrix has {rows} rows but the target subspace lives in dimension {ambient}")]
    DimensionMismatch { rows: usize, ambient: usize },
    #[error("quotient undefined: denominator is not contained in numerator")]
    NotContained,
}

pub type Vector = Vec<Scalar>;

/// Dense row-major matrix. Zero rows or zero columns are allowed and act as
/// maps from or to the zero space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Integer shorthand for tests and fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.data[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Nonzero entries as `(row, col, value)`, row-major.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(k, x)| (k / self.cols, k % self.cols, x))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (r, c, x) in self.nonzero_entries() {
            t.set(c, r, x.clone());
        }
        t
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|r| dot(self.row(r), v))
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Matrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    /// Stack `other` under `self`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut rows: Vec<Vector> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let pivots = rref_rows(&mut rows, self.cols);
        let reduced = if rows.is_empty() {
            Matrix::zeros(0, self.cols)
        } else {
            Matrix::from_rows(rows)
        };
        (reduced, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// `{x : Mx = 0}`.
    pub fn kernel(&self) -> Subspace {
        Subspace::from_canonical(self.cols, kernel_vectors(self))
    }

    /// Column span.
    pub fn image(&self) -> Subspace {
        Subspace::span(self.rows, &self.columns())
    }

    /// `{x : Mx ∈ W}`.
    pub fn preimage(&self, target: &Subspace) -> Result<Subspace, LinalgError> {
        if target.ambient_dim() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                rows: self.rows,
                ambient: target.ambient_dim(),
            });
        }
        let w = Matrix::from_columns(self.rows, target.basis()).neg();
        let joint = self.hstack(&w);
        let xs: Vec<Vector> = kernel_vectors(&joint)
            .into_iter()
            .map(|v| v[..self.cols].to_vec())
            .collect();
        Ok(Subspace::span(self.cols, &xs))
    }
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    let mut acc = Scalar::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Reduce `rows` in place to reduced row echelon form, dropping zero rows.
/// Returns the pivot column of each remaining row.
pub fn rref_rows(rows: &mut Vec<Vector>, cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..cols {
        let Some(found) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][col].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[next].iter_mut().skip(col) {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = rows[next].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == next || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for c in col..cols {
                if !pivot_row[c].is_zero() {
                    row[c] -= &(&factor * &pivot_row[c]);
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    pivots
}

/// Kernel basis read off the reduced echelon form: one vector per free column.
fn kernel_vectors(m: &Matrix) -> Vec<Vector> {
    let (reduced, pivots) = m.rref();
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Scalar::zero(); m.cols];
        v[free] = Scalar::one();
        for (r, &p) in pivots.iter().enumerate() {
            let x = reduced.get(r, free);
            if !x.is_zero() {
                v[p] = -x;
            }
        }
        out.push(v);
    }
    out
}

/// A linear subspace of `K^n`, stored by its reduced row echelon basis so
/// equal subspaces have identical representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Self {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::span(ambient_dim, &Matrix::identity(ambient_dim).columns())
    }

    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Self {
        let mut rows: Vec<Vector> = vectors
            .iter()
            .inspect(|v| assert_eq!(v.len(), ambient_dim, "vector length mismatch"))
            .filter(|v| !is_zero_vector(v))
            .cloned()
            .collect();
        rref_rows(&mut rows, ambient_dim);
        Self {
            ambient_dim,
            basis: rows,
        }
    }

    fn from_canonical(ambient_dim: usize, vectors: Vec<Vector>) -> Self {
        Self::span(ambient_dim, &vectors)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length mismatch");
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Remainder of `v` after clearing the pivot coordinates of the basis.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut out = v.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
            if out[p].is_zero() {
                continue;
            }
            let factor = out[p].clone();
            for (o, x) in out.iter_mut().zip(row).skip(p) {
                if !x.is_zero() {
                    *o -= &(&factor * x);
                }
            }
        }
        out
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|v| other.contains(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Ok(Subspace::span(self.ambient_dim, &all))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        // (x, y) with Ux = Vy
        let u = Matrix::from_columns(self.ambient_dim, &self.basis);
        let v = Matrix::from_columns(self.ambient_dim, &other.basis).neg();
        let joint = u.hstack(&v);
        let vectors: Vec<Vector> = kernel_vectors(&joint)
            .into_iter()
            .map(|k| u.apply(&k[..self.dim()]))
            .collect();
        Ok(Subspace::span(self.ambient_dim, &vectors))
    }

    /// `dim(self / sub)`; fails unless `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Subspace) -> Result<usize, LinalgError> {
        self.check_ambient(sub)?;
        if !sub.is_subspace_of(self) {
            return Err(LinalgError::NotContained);
        }
        Ok(self.dim() - sub.dim())
    }

    /// Image of this subspace under `m`.
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient_dim, "map dimension mismatch");
        let images: Vec<Vector> = self.basis.iter().map(|v| m.apply(v)).collect();
        Subspace::span(m.rows(), &images)
    }

    /// Extend this subspace's basis by vectors drawn from `candidates`, in
    /// order, to a basis of `self + span(candidates)`. Returns the chosen vectors.
    pub fn complement_from(&self, candidates: &[Vector]) -> Vec<Vector> {
        let mut acc = self.clone();
        let mut chosen = Vec::new();
        for c in candidates {
            if !acc.contains(c) {
                chosen.push(c.clone());
                acc = acc.sum(&Subspace::span(self.ambient_dim, std::slice::from_ref(c))).unwrap();
            }
        }
        chosen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| Scalar::from_int(x)).collect()
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(Matrix::identity(3).rank(), 3);
        assert_eq!(Matrix::zeros(2, 3).rank(), 0);
        assert_eq!(Matrix::zeros(0, 4).rank(), 0);
        assert_eq!(Matrix::zeros(4, 0).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::zeros(2, 3).kernel(), Subspace::full(3));
        let m = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert_eq!(m.kernel(), Subspace::span(2, &[v(&[0, 1])]));
        assert_eq!(Matrix::zeros(0, 2).kernel().dim(), 2);
    }

    #[test]
    fn image_examples() {
        assert_eq!(Matrix::identity(2).image(), Subspace::full(2));
        assert!(Matrix::zeros(3, 2).image().is_zero());
    }

    #[test]
    fn sum_examples() {
        let u = Subspace::span(2, &[v(&[1, 0])]);
        assert_eq!(u.sum(&Subspace::zero(2)).unwrap(), u);
        let w = Subspace::span(2, &[v(&[0, 1])]);
        assert_eq!(u.sum(&w).unwrap(), Subspace::full(2));
        let a = Subspace::span(3, &[v(&[1, 1, 0])]);
        let b = Subspace::span(3, &[v(&[1, -1, 0])]);
        let plane = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 0])]);
        assert_eq!(a.sum(&b).unwrap(), plane);
        assert!(matches!(
            a.sum(&u),
            Err(LinalgError::AmbientMismatch { left: 3, right: 2 })
        ));
    }

    #[test]
    fn intersect_examples() {
        let u = Subspace::span(2, &[v(&[1, 0])]);
        let w = Subspace::span(2, &[v(&[0, 1])]);
        assert_eq!(u.intersect(&u).unwrap(), u);
        assert!(u.intersect(&w).unwrap().is_zero());
        let diag = Subspace::span(2, &[v(&[1, 1])]);
        assert_eq!(Subspace::full(2).intersect(&diag).unwrap(), diag);
        assert!(u.intersect(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn quotient_examples() {
        let u = Subspace::span(3, &[v(&[1, 0, 0]), v(&[0, 1, 1])]);
        assert_eq!(u.quotient_dim(&u).unwrap(), 0);
        assert_eq!(u.quotient_dim(&Subspace::zero(3)).unwrap(), 2);
        let outside = Subspace::span(3, &[v(&[0, 0, 1])]);
        assert_eq!(u.quotient_dim(&outside), Err(LinalgError::NotContained));
    }

    #[test]
    fn preimage_examples() {
        let m = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert_eq!(m.preimage(&Subspace::full(2)).unwrap(), Subspace::full(2));
        let w = Subspace::span(2, &[v(&[1, 1])]);
        assert_eq!(Matrix::identity(2).preimage(&w).unwrap(), w);
        let target = Subspace::span(2, &[v(&[0, 1])]);
        assert_eq!(m.preimage(&target).unwrap(), Subspace::span(2, &[v(&[0, 1])]));
        assert!(m.preimage(&Subspace::full(3)).is_err());
    }

    #[test]
    fn canonical_representatives() {
        let a = Subspace::span(3, &[v(&[1, 2, 3]), v(&[0, 1, 1])]);
        let b = Subspace::span(3, &[v(&[1, 3, 4]), v(&[2, 5, 7])]);
        assert_eq!(a, b);
    }

    #[test]
    fn complement_extends_to_full_basis() {
        let u = Subspace::span(3, &[v(&[1, 1, 0])]);
        let chosen = u.complement_from(&Matrix::identity(3).columns());
        assert_eq!(chosen.len(), 2);
        assert_eq!(chosen[0], v(&[1, 0, 0]));
    }
}
