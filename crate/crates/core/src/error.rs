//! Error type shared by the whole library.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),
    #[error("prime modulus {0} is too large")]
    ModulusTooLarge(u64),
    #[error("cannot parse scalar {input:?}: {reason}")]
    ScalarParse { input: String, reason: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("degree {degree} out of range for truncation {max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("malformed word: {0}")]
    MalformedWord(String),
    #[error("arrows do not compose: {0}")]
    Composability(String),
    #[error("degeneracy data required but the module is face-only")]
    DegeneracyRequired,
    #[error("structural error: {0}")]
    Structural(String),
    #[error("no element of the {family} family factors the map at level {level}")]
    ClosureViolation { family: String, level: usize },
    #[error("unknown group family {0:?}")]
    UnknownFamily(String),
    #[error("invalid document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;
