//! Matrices over the polynomial ring.

use std::fmt;

use crate::field::FieldSpec;
use crate::poly::{Polynomial, PolyError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    DimensionMismatch { left: (usize, usize), right: (usize, usize) },
    RingMismatch,
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::DimensionMismatch { left, right } => write!(
                f,
                "dimension mismatch: {}x{} vs {}x{}",
                left.0, left.1, right.0, right.1
            ),
            MatrixError::RingMismatch => write!(f, "matrix entries live in different rings"),
        }
    }
}

impl std::error::Error for MatrixError {}

impl From<PolyError> for MatrixError {
    fn from(_: PolyError) -> Self {
        MatrixError::RingMismatch
    }
}

/// A dense `rows x cols` matrix of polynomials sharing one ambient ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    pub field: FieldSpec,
    pub nvars: usize,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(field: FieldSpec, nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            field,
            nvars,
            rows,
            cols,
            entries: vec![Polynomial::zero(field, nvars); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, nvars: usize, size: usize) -> Self {
        let mut m = Self::zero(field, nvars, size, size);
        for i in 0..size {
            *m.entry_mut(i, i) = Polynomial::one(field, nvars);
        }
        m
    }

    pub fn from_rows(
        field: FieldSpec,
        nvars: usize,
        rows: Vec<Vec<Polynomial>>,
    ) -> Result<Self, MatrixError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(MatrixError::DimensionMismatch {
                    left: (nrows, ncols),
                    right: (nrows, row.len()),
                });
            }
            for e in row {
                if e.field != field || e.nvars != nvars {
                    return Err(MatrixError::RingMismatch);
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix { field, nvars, rows: nrows, cols: ncols, entries })
    }

    pub fn entry(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row * self.cols + col]
    }

    pub fn entry_mut(&mut self, row: usize, col: usize) -> &mut Polynomial {
        &mut self.entries[row * self.cols + col]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = Self::zero(self.field, self.nvars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.entry_mut(j, i) = self.entry(i, j).clone();
            }
        }
        out
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, MatrixError> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(MatrixError::RingMismatch);
        }
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let mut out = Self::zero(self.field, self.nvars, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(self.field, self.nvars);
                for k in 0..self.cols {
                    acc = acc.add(&self.entry(i, k).mul(other.entry(k, j))?)?;
                }
                *out.entry_mut(i, j) = acc;
            }
        }
        Ok(out)
    }

    /// Scalar-matrix `p * I` minus this matrix being zero tests `self == p*I`.
    pub fn equals_scalar_identity(&self, p: &Polynomial) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let expected_zero = if i == j {
                    match self.entry(i, j).sub(p) {
                        Ok(d) => d.is_zero(),
                        Err(_) => false,
                    }
                } else {
                    self.entry(i, j).is_zero()
                };
                if !expected_zero {
                    return false;
                }
            }
        }
        true
    }

    /// Block-diagonal sum of two matrices.
    pub fn block_diag(&self, other: &PolyMatrix) -> Result<PolyMatrix, MatrixError> {
        if self.field != other.field || self.nvars != other.nvars {
            return Err(MatrixError::RingMismatch);
        }
        let mut out = Self::zero(
            self.field,
            self.nvars,
            self.rows + other.rows,
            self.cols + other.cols,
        );
        for i in 0..self.rows {
            for j in 0..self.cols {
                *out.entry_mut(i, j) = self.entry(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                *out.entry_mut(self.rows + i, self.cols + j) = other.entry(i, j).clone();
            }
        }
        Ok(out)
    }

    /// Removes one row and one column.
    pub fn delete_row_col(&self, row: usize, col: usize) -> PolyMatrix {
        let mut out = Self::zero(self.field, self.nvars, self.rows - 1, self.cols - 1);
        let mut oi = 0;
        for i in 0..self.rows {
            if i == row {
                continue;
            }
            let mut oj = 0;
            for j in 0..self.cols {
                if j == col {
                    continue;
                }
                *out.entry_mut(oi, oj) = self.entry(i, j).clone();
                oj += 1;
            }
            oi += 1;
        }
        out
    }

    pub fn render_rows(&self, vars: &[String]) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j).render(vars)).collect())
            .collect()
    }
}
