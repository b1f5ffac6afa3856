//! Exact and self-validating arithmetic.

mod ball;
mod binomial;
mod quad;
mod rational;

pub use ball::{ball_arith, ball_digits, ball_sqrt, BallOp, BallReal, DIGITS_CAP};
pub use binomial::{central_binomial, CentralBinomials};
pub use quad::{quad_mul, quad_pow, QuadExt, Radicand};
pub use rational::{rat_normalize, Rational};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("quadratic field mismatch: sqrt({0}) vs sqrt({1})")]
    FieldMismatch(u32, u32),
    #[error("division by an interval containing zero")]
    DivisionByIntervalContainingZero,
    #[error("square root of a negative interval")]
    NegativeArgument,
    #[error("logarithm of a non-positive argument")]
    NonpositiveArgument,
    #[error("domain error: {0}")]
    Domain(&'static str),
}

/// Number of bits needed to represent `ceil(digits * log2(10))`.
pub fn digits_to_bits(digits: u64) -> u64 {
    (digits * 3322).div_ceil(1000)
}
