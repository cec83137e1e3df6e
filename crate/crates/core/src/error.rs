use thiserror::Error;

/// Errors raised by the exact-arithmetic kernel and the geometric modules built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("negative exponent {0}")]
    NegativeExponent(i64),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("singular linear system, determinant = {det}")]
    SingularSystem { det: String },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("leading coefficient a_{p} vanishes identically")]
    DegenerateLeadingCoefficient { p: u32 },

    #[error("capacity exceeded: {what} needs {needed}, cap is {cap}")]
    Capacity {
        what: String,
        needed: usize,
        cap: usize,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
