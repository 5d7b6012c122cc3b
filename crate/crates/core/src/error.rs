//! Crate-wide error type.
//!
//! Errors split into two classes that the CLI maps to distinct exit codes:
//! violated preconditions (bad or out-of-contract input) and internal
//! inconsistencies (a mathematical identity that must hold failed, which
//! indicates a bug rather than bad input).

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),

    #[error("gram matrix is not symmetric")]
    NotSymmetric,

    #[error("lattice is not even: diagonal entry {0} is odd")]
    NotEven(String),

    #[error("gram matrix is not positive definite (leading minor {index} is {value})")]
    NotPositiveDefinite { index: usize, value: String },

    #[error("gram matrix is singular")]
    SingularGram,

    #[error("matrix does not preserve the gram form")]
    NotIsometry,

    #[error("vector is not in the dual lattice")]
    NotInDual,

    #[error("coset is not stable: (1-g) shift is not a lattice vector")]
    NotStable,

    #[error("{0}")]
    Precondition(String),

    #[error("functional is degenerate: kernel has index {got}, expected {expected}")]
    DegenerateFunctional { expected: String, got: String },

    #[error("unknown lattice or code name: {0}")]
    UnknownName(String),

    #[error("permutation action is not closed: generator moves a vector off the shell")]
    ActionNotClosed,

    #[error("permutation action is not faithful: shell does not span the space")]
    ActionNotFaithful,

    #[error("trivial sign lift unavailable: lattice is not doubly even")]
    NotDoublyEven,

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True when the error signals a failed mathematical identity rather
    /// than a violated precondition.
    pub fn is_inconsistency(&self) -> bool {
        matches!(self, Error::Inconsistency(_))
    }
}
