use thiserror::Error;

use crate::rational::HalfInt;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("weight mismatch: left operator expects source weight {expected}, right operator has target weight {found}")]
    WeightMismatch { expected: String, found: String },

    #[error("operator of order {order} has no principal symbol of degree {k}")]
    OrderExceeds { order: HalfInt, k: HalfInt },

    #[error("matrix is not in spo(2|2)")]
    NotSpoMember,

    #[error("{0} is not one of the quadratic Hamiltonians x^2, x*t1, x*t2")]
    NotQuadratic(String),

    #[error("zero denominator in coefficient {coefficient} at degree {degree}")]
    ZeroDenominator { coefficient: String, degree: HalfInt },

    #[error("symbols of different weight shift cannot be combined ({0} vs {1})")]
    DeltaMismatch(String, String),

    #[error("invalid argument: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
