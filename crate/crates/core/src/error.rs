use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("dimension {0} is outside the supported range 1..={max}", max = crate::MAX_DIM)]
    DimTooLarge(usize),
    #[error("Gram matrix is not symmetric at ({0}, {1})")]
    NonSymmetric(usize, usize),
    #[error("Gram matrix is not positive-definite (pivot {pivot} at column {col})")]
    NotPositiveDefinite { col: usize, pivot: f64 },
    #[error("non-finite value encountered")]
    NonFinite,
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),
    #[error("invalid blade: {0}")]
    InvalidBlade(&'static str),
    #[error("map does not preserve the inner product (residual {0:e})")]
    NotOrthogonal(f64),
    #[error("element is not anti-hermitian (residual {0:e})")]
    NotAntiHermitian(f64),
    #[error("element is not a pure 2-form")]
    NotTwoForm,
    #[error("element is not a vector of the phase space")]
    NotAVector,
    #[error("mode mismatch: {0}")]
    ModeMismatch(&'static str),
    #[error("invalid time grid: need t1 > t0 and steps >= 1")]
    InvalidTimeGrid,
    #[error("deformation parameter must be finite and nonnegative, got {0}")]
    InvalidHbar(f64),
    #[error("grade {grade} exceeds dimension {dim}")]
    GradeTooLarge { grade: usize, dim: usize },
    #[error("combined grade {grade} exceeds dimension {dim}")]
    GradeOverflow { grade: usize, dim: usize },
    #[error("dense tensor is not totally antisymmetric (residual {0:e})")]
    NotAntisymmetric(f64),
}
