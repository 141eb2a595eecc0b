use thiserror::Error;

/// Errors raised while building complexes, running reductions, or checking
/// structural claims about them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: face {face} does not precede cell {cell}")]
    NonMonotonic { line: usize, cell: i64, face: i64 },

    #[error("line {line}: face {face} has dimension {face_dim}, expected {expected}")]
    DimMismatch {
        line: usize,
        face: i64,
        face_dim: i32,
        expected: i32,
    },

    #[error("line {line}: boundary of boundary is non-zero at cell {cell}")]
    DdZeroViolation { line: usize, cell: i64 },

    #[error("line {line}: simplex {simplex:?} is missing face {face:?}")]
    MissingFace {
        line: usize,
        simplex: Vec<u32>,
        face: Vec<u32>,
    },

    #[error("line {line}: duplicate simplex {simplex:?}")]
    DuplicateCell { line: usize, simplex: Vec<u32> },

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("enumeration cap exceeded: {needed} > {cap}")]
    CapExceeded { needed: u128, cap: u128 },

    #[error("ordering mismatch: {0}")]
    OrderingMismatch(String),

    #[error("verification of {check} failed: {detail}")]
    VerifyFail {
        check: String,
        detail: String,
        /// Offending cell sets, in internal indices.
        witness: Vec<Vec<usize>>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn verify(check: &str, detail: impl Into<String>, witness: Vec<Vec<usize>>) -> Self {
        Error::VerifyFail {
            check: check.to_string(),
            detail: detail.into(),
            witness,
        }
    }
}
