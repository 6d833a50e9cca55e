//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("series truncation too small: need at least order {required}, have {available}")]
    InsufficientTruncation { required: i64, available: i64 },

    #[error("coefficient at exponent {exponent} is beyond the known truncation {truncation}")]
    CoefficientOutOfRange { exponent: i64, truncation: i64 },

    #[error("cannot invert a series with zero leading coefficient")]
    ZeroLeadingCoefficient,

    #[error("polynomial is not squarefree; gcd witness has degree {witness_degree}")]
    NotSquarefree { witness_degree: usize },

    #[error("value {0} is outside the admissible range {1}")]
    OutOfRange(String, String),

    #[error("series does not reduce to a polynomial in j: residual coefficient at q^{exponent} is {value}")]
    NotPolynomialInJ { exponent: i64, value: String },

    #[error("internal arithmetic check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
