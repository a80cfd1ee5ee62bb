use thiserror::Error;

use crate::field::FieldDescriptor;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch {
        left: FieldDescriptor,
        right: FieldDescriptor,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("index ({row}, {col}) out of range for a {n}x{n} matrix (indices are 1-based)")]
    IndexOutOfRange { row: usize, col: usize, n: usize },

    #[error("singular matrix")]
    SingularMatrix,

    #[error("singular transform")]
    SingularTransform,

    #[error("unsupported field {field}: {reason}")]
    UnsupportedField {
        field: FieldDescriptor,
        reason: String,
    },

    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    #[error("invalid modulus {0}: must be a prime in [2, 2^31)")]
    InvalidModulus(u64),

    #[error("invalid dimension {0}: must be in [1, {max}]", max = crate::matrix::MAX_DIM)]
    InvalidDimension(usize),

    #[error("parse error: {0}")]
    Parse(String),
}
