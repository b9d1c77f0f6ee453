//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{what} must be nonnegative, got {value}")]
    NegativeArgument { what: &'static str, value: i64 },
    #[error("root-of-unity order must be at least 2, got {0}")]
    InvalidOrder(u32),
    #[error("index {index} out of range for {what}")]
    IndexOutOfRange { what: String, index: i64 },
    #[error("operation requires generic mode")]
    RequiresGenericMode,
    #[error("operation requires root-of-unity mode")]
    RequiresRootOfUnity,
    #[error("a degree window is required for an infinite algebra")]
    WindowRequired,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("incompatible data: {0}")]
    Incompatible(String),
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
