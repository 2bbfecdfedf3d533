//! Dense matrices over `Z` with arbitrary-precision entries.
//!
//! Everything downstream (Smith normal form, kernels, homology) runs on this
//! one type. Dimensions of zero rows or columns are first-class: a `0 x n`
//! matrix is the differential out of degree zero, an `n x 0` matrix presents
//! a module with no relations.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::MatrixError;
use crate::ring::RingSpec;

/// A `rows x cols` integer matrix, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// `m` times the identity, the relation block adjoined when lifting a
    /// computation from `Z/m` to `Z`.
    pub fn scalar(n: usize, value: impl Into<BigInt>) -> Self {
        let value = value.into();
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = value.clone();
        }
        m
    }

    /// Builds from nested rows; all rows must have equal length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(
            rows.iter().all(|row| row.len() == c),
            "ragged rows in matrix literal"
        );
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().cloned().map(Into::into))
            .collect();
        IntMatrix {
            rows: r,
            cols: c,
            entries,
        }
    }

    /// A matrix with one column.
    pub fn column<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        IntMatrix {
            rows: entries.len(),
            cols: 1,
            entries: entries.iter().cloned().map(Into::into).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Zero as an element of the given ring (entrywise congruence).
    pub fn is_zero_over(&self, ring: RingSpec) -> bool {
        self.entries.iter().all(|e| ring.is_zero(e))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Incompatible {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::Incompatible {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e += o;
        }
        Ok(out)
    }

    pub fn neg(&self) -> IntMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = -e.clone();
        }
        out
    }

    pub fn scale(&self, factor: impl Into<BigInt>) -> IntMatrix {
        let factor = factor.into();
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e *= &factor;
        }
        out
    }

    /// Entrywise canonical residues in the ring.
    pub fn reduced(&self, ring: RingSpec) -> IntMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = ring.reduce(e);
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.rows != other.rows {
            return Err(MatrixError::Incompatible {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                out[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != other.cols {
            return Err(MatrixError::Incompatible {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = IntMatrix::zeros(self.rows + other.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..self.cols {
                out[(self.rows + i, j)] = other[(i, j)].clone();
            }
        }
        Ok(out)
    }

    /// 2x2 block matrix; dimensions must agree blockwise.
    pub fn block(
        a: &IntMatrix,
        b: &IntMatrix,
        c: &IntMatrix,
        d: &IntMatrix,
    ) -> Result<IntMatrix, MatrixError> {
        a.hstack(b)?.vstack(&c.hstack(d)?)
    }

    pub fn block_diag(blocks: &[&IntMatrix]) -> IntMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = IntMatrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn column_vec(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut out = IntMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length mismatch");
            for (i, e) in col.iter().enumerate() {
                out[(i, j)] = e.clone();
            }
        }
        out
    }

    /// Keeps the listed columns, in the given order.
    pub fn select_columns(&self, indices: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, indices.len());
        for (jj, &j) in indices.iter().enumerate() {
            for i in 0..self.rows {
                out[(i, jj)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Keeps the listed rows, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> IntMatrix {
        let mut out = IntMatrix::zeros(indices.len(), self.cols);
        for (ii, &i) in indices.iter().enumerate() {
            for j in 0..self.cols {
                out[(ii, j)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// The first `n` rows.
    pub fn top_rows(&self, n: usize) -> IntMatrix {
        self.select_rows(&(0..n).collect::<Vec<_>>())
    }

    /// Determinant by fraction-free (Bareiss) elimination. Exact; used as an
    /// oracle independent of the Smith normal form routines.
    pub fn determinant(&self) -> Result<BigInt, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let pivot_row = (k + 1..n).find(|&i| !m[(i, k)].is_zero());
                match pivot_row {
                    Some(i) => {
                        m.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = num / &prev; // exact division in Bareiss
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        Ok(sign * m[(n - 1, n - 1)].clone())
    }

    /// True when `|det| = 1`.
    pub fn is_unimodular(&self) -> bool {
        matches!(self.determinant(), Ok(d) if d.abs().is_one())
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let ai = a * self.cols + j;
            let bi = b * self.cols + j;
            self.entries.swap(ai, bi);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let ai = i * self.cols + a;
            let bi = i * self.cols + b;
            self.entries.swap(ai, bi);
        }
    }

    /// row[target] += q * row[source]
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        for j in 0..self.cols {
            let add = &self[(source, j)] * q;
            self[(target, j)] += add;
        }
    }

    /// col[target] += q * col[source]
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        for i in 0..self.rows {
            let add = &self[(i, source)] * q;
            self[(i, target)] += add;
        }
    }

    pub(crate) fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }

    pub(crate) fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self[(i, j)].clone();
            self[(i, j)] = v;
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_stack() {
        let a = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let b = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, IntMatrix::from_rows(&[vec![2, 1], vec![4, 3]]));
        let stacked = a.hstack(&b).unwrap();
        assert_eq!(stacked.cols(), 4);
        assert_eq!(stacked[(1, 2)], BigInt::from(1));
    }

    #[test]
    fn empty_dimensions_multiply() {
        let a = IntMatrix::zeros(0, 3);
        let b = IntMatrix::zeros(3, 2);
        let ab = a.mul(&b).unwrap();
        assert_eq!((ab.rows(), ab.cols()), (0, 2));
        let c = IntMatrix::zeros(2, 0);
        let d = IntMatrix::zeros(0, 5);
        let cd = c.mul(&d).unwrap();
        assert_eq!((cd.rows(), cd.cols()), (2, 5));
        assert!(cd.is_zero());
    }

    #[test]
    fn determinant_bareiss() {
        let a = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(a.determinant().unwrap(), BigInt::from(-8));
        let id = IntMatrix::identity(4);
        assert_eq!(id.determinant().unwrap(), BigInt::from(1));
        assert!(id.is_unimodular());
        let singular = IntMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.determinant().unwrap(), BigInt::from(0));
        let zero_by_zero = IntMatrix::zeros(0, 0);
        assert_eq!(zero_by_zero.determinant().unwrap(), BigInt::from(1));
    }

    #[test]
    fn dimension_errors() {
        let a = IntMatrix::zeros(2, 3);
        let b = IntMatrix::zeros(2, 3);
        assert!(a.mul(&b).is_err());
        assert!(a.determinant().is_err());
    }
}
