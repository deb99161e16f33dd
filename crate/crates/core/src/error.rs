use thiserror::Error;

use crate::fraction::LaurentFraction;
use crate::laurent::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The divisor does not divide the dividend in Z[A, A^-1]. The payload is
    /// what was left when long division stopped.
    #[error("exact division failed, remainder {remainder}")]
    RemainderNonzero { remainder: LaurentPoly },

    #[error("fraction denominator is zero")]
    DivisionByZeroDenominator,

    #[error("{poly} has an exponent not divisible by {step}, cannot display in {variable}")]
    NotExpressible {
        poly: LaurentPoly,
        variable: &'static str,
        step: i64,
    },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("colors ({c}; {a}, {b}) are not admissible")]
    NotAdmissible { c: u32, a: u32, b: u32 },

    #[error("H_{k} of {knot} is not in Z[q^(1/2), q^(-1/2)]: residual {residual}")]
    IntegralityFailure {
        k: u32,
        knot: String,
        residual: LaurentFraction,
    },

    #[error("invalid knot parameters: {0}")]
    InvalidKnot(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
