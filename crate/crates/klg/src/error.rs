use thiserror::Error;

/// Errors raised by the library. Every variant carries enough text to tell
/// the user which input was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KlgError {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("not an element of C_{n}: {detail}")]
    NotSymplectic { n: usize, detail: String },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("{0} is not 123-avoiding, so it does not index a small patch")]
    NotSmallPatch(String),
    #[error("word is not reduced: {0}")]
    NotReduced(String),
    #[error("variable {0} is not in the ring")]
    UnknownVariable(String),
    #[error("variable {0} is missing from the ranking list")]
    UnrankedVariable(String),
    #[error("the zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("monomial ideal is not squarefree: {0}")]
    NotSquarefree(String),
    #[error("step budget of {0} exceeded")]
    BudgetExceeded(u64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, KlgError>;
