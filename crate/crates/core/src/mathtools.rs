//! MATLAB-semantics numeric helpers built around a dense row-major matrix.
//!
//! The reductions follow MATLAB conventions rather than the target
//! language's: vectors reduce to a scalar, matrices reduce column-wise, and
//! NaN entries are ignored unless a whole column is NaN.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// Errors from matrix construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    /// Zero rows or zero columns requested.
    EmptyInput,
    /// Data length does not equal `rows * cols`.
    DimensionMismatch {
        /// Declared number of rows.
        rows: usize,
        /// Declared number of columns.
        cols: usize,
        /// Actual element count supplied.
        len: usize,
    },
}

impl core::fmt::Display for MatrixError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            MatrixError::EmptyInput => f.write_str("matrix must have at least one element"),
            MatrixError::DimensionMismatch { rows, cols, len } => {
                write!(f, "{rows}x{cols} matrix needs {} elements, got {len}", rows * cols)
            }
        }
    }
}

/// Dense matrix of `f64` in row-major order, never empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Builds a matrix from row-major data.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self, MatrixError> {
        if rows == 0 || cols == 0 {
            return Err(MatrixError::EmptyInput);
        }
        if data.len() != rows * cols {
            return Err(MatrixError::DimensionMismatch {
                rows,
                cols,
                len: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows, which must be non-empty and ragged-free.
    pub fn from_rows(rows: &[&[f64]]) -> Result<Self, MatrixError> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(MatrixError::EmptyInput);
        }
        let cols = rows[0].len();
        let mut data = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            if row.len() != cols {
                return Err(MatrixError::DimensionMismatch {
                    rows: rows.len(),
                    cols,
                    len: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Matrix::new(rows.len(), cols, data)
    }

    /// A 1x1 matrix.
    pub fn scalar(value: f64) -> Self {
        Self {
            rows: 1,
            cols: 1,
            data: vec![value],
        }
    }

    /// A 1xN row vector.
    pub fn row_vector(values: &[f64]) -> Result<Self, MatrixError> {
        Matrix::new(1, values.len(), values.to_vec())
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Row-major element slice.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Element at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.cols + col]
    }

    /// True for 1xN or Nx1 shapes.
    pub fn is_vector(&self) -> bool {
        self.rows == 1 || self.cols == 1
    }

    /// The single element of a 1x1 matrix.
    pub fn scalar_value(&self) -> Option<f64> {
        if self.rows == 1 && self.cols == 1 {
            Some(self.data[0])
        } else {
            None
        }
    }
}

/// NaN-ignoring maximum of two candidates, where `acc` may start as NaN.
fn nan_max(acc: f64, x: f64) -> f64 {
    if x.is_nan() {
        acc
    } else if acc.is_nan() || x > acc {
        x
    } else {
        acc
    }
}

fn nan_min(acc: f64, x: f64) -> f64 {
    if x.is_nan() {
        acc
    } else if acc.is_nan() || x < acc {
        x
    } else {
        acc
    }
}

/// MATLAB `max`: a vector reduces to a 1x1 scalar; a matrix reduces to a
/// 1xN row of column maxima. NaN entries are ignored unless every entry of a
/// column is NaN, in which case that column's result is NaN.
pub fn max(m: &Matrix) -> Matrix {
    reduce(m, nan_max)
}

/// MATLAB `min`, with the same shape and NaN rules as [`max`].
pub fn min(m: &Matrix) -> Matrix {
    reduce(m, nan_min)
}

fn reduce(m: &Matrix, op: fn(f64, f64) -> f64) -> Matrix {
    if m.is_vector() {
        let acc = m.data.iter().copied().fold(f64::NAN, op);
        return Matrix::scalar(acc);
    }
    let mut out = vec![f64::NAN; m.cols];
    for r in 0..m.rows {
        for (c, slot) in out.iter_mut().enumerate() {
            *slot = op(*slot, m.get(r, c));
        }
    }
    Matrix {
        rows: 1,
        cols: m.cols,
        data: out,
    }
}

/// MATLAB `find`: 1-based column-major indices of the nonzero elements.
/// NaN compares unequal to zero and therefore counts as nonzero.
pub fn find(m: &Matrix) -> Vec<usize> {
    let mut out = Vec::new();
    for c in 0..m.cols {
        for r in 0..m.rows {
            if m.get(r, c) != 0.0 {
                out.push(c * m.rows + r + 1);
            }
        }
    }
    out
}

/// Renders the matrix MATLAB-style for display, one row per line.
pub fn format_matrix(m: &Matrix) -> String {
    use crate::stringtools::num2str;
    let mut out = String::new();
    for r in 0..m.rows {
        for c in 0..m.cols {
            if c > 0 {
                out.push(' ');
            }
            out.push_str(&num2str(m.get(r, c)));
        }
        if r + 1 < m.rows {
            out.push('\n');
        }
    }
    out
}
