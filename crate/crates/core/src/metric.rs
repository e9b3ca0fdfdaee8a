//! The inner product g on the phase space Φ.

use crate::linalg::Matrix;
use crate::{Error, Result, MAX_DIM};

/// A validated positive-definite symmetric Gram matrix, `gram[i][j] = g(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Metric {
    gram: Matrix,
    inverse: Matrix,
    det: f64,
    diagonal: bool,
}

impl Metric {
    /// Validates and wraps a Gram matrix given by rows.
    ///
    /// Symmetry is checked on the stored values exactly; positive-definiteness
    /// is checked through a Cholesky factorization.
    pub fn new<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let gram = Matrix::from_rows(rows)?;
        Self::from_matrix(gram)
    }

    pub fn from_matrix(gram: Matrix) -> Result<Self> {
        let n = gram.dim();
        if n == 0 || n > MAX_DIM {
            return Err(Error::DimTooLarge(n));
        }
        if !gram.is_finite() {
            return Err(Error::NonFinite);
        }
        for i in 0..n {
            for j in i + 1..n {
                if gram[(i, j)] != gram[(j, i)] {
                    return Err(Error::NonSymmetric(i, j));
                }
            }
        }
        let chol = gram.cholesky()?;
        let det = (0..n).map(|i| chol[(i, i)] * chol[(i, i)]).product();
        let inverse = gram.inverse().ok_or(Error::NotPositiveDefinite {
            col: n - 1,
            pivot: 0.0,
        })?;
        let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || gram[(i, j)] == 0.0));
        Ok(Metric {
            gram,
            inverse,
            det,
            diagonal,
        })
    }

    /// The orthonormal metric on an n-dimensional phase space.
    pub fn identity(n: usize) -> Self {
        Self::from_matrix(Matrix::identity(n)).expect("identity metric is valid for 1..=16")
    }

    pub fn dim(&self) -> usize {
        self.gram.dim()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn inverse(&self) -> &Matrix {
        &self.inverse
    }

    pub fn det(&self) -> f64 {
        self.det
    }

    /// `g(e_i, e_j)` with 1-based indices.
    #[inline]
    pub fn g(&self, i: usize, j: usize) -> f64 {
        self.gram[(i - 1, j - 1)]
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal
    }

    /// `g(u, v)` for component vectors.
    pub fn inner(&self, u: &[f64], v: &[f64]) -> f64 {
        let gv = self.gram.apply(v);
        u.iter().zip(&gv).map(|(a, b)| a * b).sum()
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<()> {
        if n == self.dim() {
            Ok(())
        } else {
            Err(Error::DimMismatch(self.dim(), n))
        }
    }
}
