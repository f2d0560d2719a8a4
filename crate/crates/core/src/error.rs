use thiserror::Error;

/// Errors surfaced by constructors and checked operations.
///
/// Everything that can go wrong here is a precondition failure or a
/// resource limit; the verification routines themselves never error,
/// they return reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("truncation mismatch: left is truncated at {left}, right at {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("insufficient truncation: need degree {needed}, have {have}")]
    InsufficientTruncation { needed: usize, have: usize },

    #[error("simplicial set is not based")]
    NotBased,

    #[error("subcomplex is not closed under {op} at degree {degree}, simplex {id}")]
    NotSubcomplex {
        op: &'static str,
        degree: usize,
        id: usize,
    },

    #[error("map is not injective in degree {degree}: ids {a} and {b} collide")]
    NotInjective { degree: usize, a: usize, b: usize },

    #[error("map is not simplicial: {0}")]
    NotSimplicial(String),

    #[error("chain did not stabilize within the provided stages (checked {stages})")]
    NotStabilized { stages: usize },

    #[error("simplicial group is not degreewise abelian (degree {degree})")]
    NotAbelian { degree: usize },

    #[error("simplicial set is not reduced: {vertices} vertices")]
    NotReduced { vertices: usize },

    #[error("group action is not free")]
    NotFree,

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("comparison failed: {0}")]
    Mismatch(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
