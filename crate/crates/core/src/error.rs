use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(u64, u64),
    #[error("no cone point of order {0}")]
    MissingConeOrder(u64),
    #[error("abelianization unavailable: {0}")]
    UnsupportedGamma(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("homomorphism enumeration needs {needed} table evaluations, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("fixed-point character has no entry for subgroup {0:?}")]
    MissingFixedPointData(Vec<usize>),
    #[error("verification failed: {0}")]
    Verification(String),
}
