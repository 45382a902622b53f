use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field descriptor: {0}")]
    InvalidField(String),

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("structure matrix is singular; the algebra is not idempotent")]
    Singular,

    #[error("the zero pattern admits no nonzero transversal")]
    NoTransversal,

    #[error("size cap exceeded: {what} (limit {limit})")]
    CapExceeded { what: String, limit: u64 },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    #[error("group is not closed under composition")]
    NotClosed,

    #[error("undecided equations: {}", .0.join("; "))]
    Indeterminate(Vec<String>),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
