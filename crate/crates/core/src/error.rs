use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent user input.
    #[error("input error: {0}")]
    Input(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    /// An argument had the wrong parity (e.g. an even vector where an odd
    /// one is required).
    #[error("parity error: {0}")]
    Parity(String),
    /// Data that violates a structural axiom the constructor depends on,
    /// such as `d∘d ≠ 0` in a chain complex.
    #[error("structural error: {0}")]
    Structural(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("degree cap {cap} exceeded; at least {required} is needed")]
    CapExceeded { cap: usize, required: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
