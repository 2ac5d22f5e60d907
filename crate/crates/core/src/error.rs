use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: i64 },

    #[error("unknown generator label `{0}`")]
    UnknownLabel(String),

    #[error("matrix is not invertible over the integers (determinant {0})")]
    NotUnimodular(BigInt),

    #[error("coefficient extraction may only name formal variables, found `{0}`")]
    NonFormalVariable(String),

    #[error("law is not homogeneous of degree {degree}; witness: {witness}")]
    NotHomogeneous { degree: u32, witness: String },

    #[error("law is not multiplicative; witness: {witness}")]
    NotMultiplicative { witness: String },

    #[error("invalid fixture `{spec}`: {reason}")]
    Fixture { spec: String, reason: String },

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
