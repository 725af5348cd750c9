//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("field order {q} exceeds bound {bound}")]
    FieldTooLarge { q: u64, bound: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("element rep {rep} out of range for field of order {q}")]
    ElementOutOfRange { rep: u32, q: u32 },

    #[error("operands belong to different fields")]
    MixedFields,

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("images do not form a bijection")]
    NotABijection,

    #[error("permutation group is not regular")]
    NotRegular,

    #[error("{what} cap exceeded: limit {limit}, needed {needed}")]
    CapExceeded {
        what: &'static str,
        limit: u64,
        needed: u64,
    },

    #[error("zero vector not allowed")]
    ZeroVector,

    #[error("zero code has no nonzero codeword")]
    ZeroCode,

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid spec: {0}")]
    InvalidSpec(String),

    #[error("multiplication table violates group axioms: {0}")]
    NotAGroup(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable process exit code for the CLI: 2 for parse errors, 3 for cap
    /// overruns, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } => 2,
            Error::CapExceeded { .. } | Error::FieldTooLarge { .. } => 3,
            _ => 1,
        }
    }
}
