//! Exact dense linear algebra over the base field.
//!
//! Everything downstream (Hilbert functions, kernel and cokernel slices, the
//! duality oracle) reduces to row reduction of scalar matrices assembled on
//! monomial bases. Reduction is plain Gauss-Jordan with the first nonzero
//! pivot per column; over a field this is deterministic, so reduced echelon
//! forms are canonical.

use crate::field::{FieldSpec, Scalar};

/// A dense matrix of scalars, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalarMatrix {
    pub field: FieldSpec,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Scalar>,
}

impl ScalarMatrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        ScalarMatrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// In-place reduction to reduced row echelon form. Returns the pivot
    /// columns in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let field = self.field;
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let found = (pivot_row..self.rows).find(|&r| !self.at(r, col).is_zero());
            let Some(r) = found else { continue };
            self.swap_rows(pivot_row, r);
            // Normalize the pivot to 1.
            let inv = self
                .at(pivot_row, col)
                .inv(&field)
                .expect("nonzero pivot is invertible over a field");
            for c in col..self.cols {
                let v = self.at(pivot_row, c).mul(&inv, &field).unwrap();
                self.set(pivot_row, c, v);
            }
            // Clear the column everywhere else.
            for r2 in 0..self.rows {
                if r2 == pivot_row || self.at(r2, col).is_zero() {
                    continue;
                }
                let factor = self.at(r2, col).clone();
                for c in col..self.cols {
                    let delta = self.at(pivot_row, c).mul(&factor, &field).unwrap();
                    let v = self.at(r2, c).sub(&delta, &field).unwrap();
                    self.set(r2, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Rank by forward elimination only (cheaper than full RREF when the
    /// echelon form itself is not needed).
    pub fn rank(mut self) -> usize {
        let field = self.field;
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let found = (rank..self.rows).find(|&r| !self.at(r, col).is_zero());
            let Some(r) = found else { continue };
            self.swap_rows(rank, r);
            let inv = self.at(rank, col).inv(&field).unwrap();
            for r2 in rank + 1..self.rows {
                if self.at(r2, col).is_zero() {
                    continue;
                }
                let factor = self.at(r2, col).mul(&inv, &field).unwrap();
                for c in col..self.cols {
                    let delta = self.at(rank, c).mul(&factor, &field).unwrap();
                    let v = self.at(r2, c).sub(&delta, &field).unwrap();
                    self.set(r2, c, v);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Canonical basis of the right null space: one row per free column of
    /// the RREF, themselves in reduced echelon form.
    pub fn nullspace(mut self) -> Vec<Vec<Scalar>> {
        let field = self.field;
        let cols = self.cols;
        let pivots = self.rref();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; cols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..cols {
            if is_pivot[free] {
                continue;
            }
            let mut vec = vec![field.zero(); cols];
            vec[free] = field.one();
            for (row, &p) in pivots.iter().enumerate() {
                // x_p = -sum over free columns of RREF entries.
                vec[p] = self.at(row, free).neg(&field);
            }
            basis.push(vec);
        }
        // Rows are already reduced-echelon with unit leading entries in the
        // free columns when read left to right.
        basis
    }
}

/// Reduces a list of row vectors to a canonical echelon basis of their span.
/// Returns (rank rows in RREF, pivot columns).
pub fn row_space(field: FieldSpec, rows: Vec<Vec<Scalar>>, cols: usize) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut m = ScalarMatrix::zero(field, rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            m.set(i, j, v.clone());
        }
    }
    let pivots = m.rref();
    let kept: Vec<Vec<Scalar>> = (0..pivots.len()).map(|r| m.row(r).to_vec()).collect();
    (kept, pivots)
}
