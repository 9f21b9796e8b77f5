use thiserror::Error;

/// Errors raised by the exact kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series did not meet the ratio test within {cap} terms")]
    NonConvergent { cap: usize },

    #[error("series diverges: {0}")]
    Divergent(String),

    #[error("series term {index} is negative")]
    NegativeTerm { index: usize },

    #[error("ratio threshold must lie in (0, 1), got {0}")]
    InvalidThreshold(String),

    #[error("index {index} is outside the {len} provided sequence values")]
    OutOfRange { index: usize, len: usize },

    #[error("inadmissible sequence: {0}")]
    Inadmissible(String),

    #[error("q-Stirling triangular solve left a nonzero remainder at ({n}, {k})")]
    InconsistentSystem { n: usize, k: usize },

    #[error("n = {n} exceeds the enumeration cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("lambda must be a positive rational, got {0}")]
    InvalidLambda(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
