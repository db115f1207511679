use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("algebra level {0} is not supported (levels 0..=3 are R, C, H, O)")]
    InvalidLevel(u8),
    #[error("operands live in different algebras ({0} vs {1})")]
    LevelMismatch(&'static str, &'static str),
    #[error("coefficient slice has length {got}, expected {expected}")]
    CoefficientLength { expected: usize, got: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("basis index {0} out of range for {1}")]
    IndexOutOfRange(usize, &'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("matrix is not in the image of the map (residual {0:.3e})")]
    NotInImage(f64),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::InvariantViolation(msg.into())
    }
}
