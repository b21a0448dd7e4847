use thiserror::Error;

/// Errors raised by constructions and checks in this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("field of order {0} exceeds the supported size {1}")]
    FieldTooLarge(u64, u64),

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("polynomial {0} is reducible over the base field")]
    Reducible(String),

    #[error("polynomial has degree {got}, expected {expected}")]
    DegreeMismatch { expected: usize, got: usize },

    #[error("field elements belong to different fields")]
    FieldMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("companion matrix does not realise multiplication by x on rows")]
    CompanionOrientation,

    #[error("malformed field specification {0:?}: {1}")]
    FieldSpec(String, String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("zero vector does not define a projective point")]
    ZeroVector,

    #[error("empty input")]
    EmptyInput,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("enumeration of {requested} objects exceeds the budget of {limit}")]
    BudgetExceeded { requested: u128, limit: u128 },

    #[error("point set does not contain a frame of its ambient space")]
    NoFrame,

    #[error("point does not lie in the hyperplane at infinity")]
    NotAtInfinity,

    #[error("subspaces at infinity are not pairwise disjoint")]
    OverlappingSubspaces,

    #[error("subspace meets the fixed space pi")]
    MeetsPi,

    #[error("subspace does not meet the fixed space pi in exactly one point")]
    NotALineOfX,

    #[error("matrix is singular")]
    Singular,

    #[error("integer overflow while evaluating {0}")]
    Overflow(&'static str),

    #[error("ratio {num}/{den} is not an integer")]
    NonIntegralRatio { num: u128, den: u128 },

    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
