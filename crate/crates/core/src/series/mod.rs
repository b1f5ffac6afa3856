//! Exact term generation and rigorously bounded summation of
//! `Σ sign(n)·baseⁿ·p(n)/q(n)·C(2n,n)^cb`.
//!
//! Partial sums are exact elements of ℚ(√d); rounding happens once, when the
//! final sum is turned into a [`BallReal`] and the tail bound is folded into
//! its radius.

mod accel;
mod auto;
mod cert;
mod direct;
mod poly;
mod power;
mod term;

pub use accel::{sum_cvz, sum_euler};
pub use auto::{sum_auto, sum_with, SumPolicy};
pub use direct::{sum_direct, sum_direct_windowed, DEFAULT_WINDOW};
pub use poly::{Poly, RatPoly};
pub use term::{term_exact, term_ratio, TermGen, TermSign, TermSpec, TermSpecBuilder};

use thiserror::Error;

use crate::arith::{digits_to_bits, ArithError, BallReal, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("invalid term specification: {0}")]
    InvalidSpec(&'static str),
    #[error("term vanishes at n = {0}")]
    ZeroTerm(u64),
    #[error("no tail bound could be certified")]
    NoCertifiableTail,
    #[error("term budget of {0} exceeded")]
    MaxTermsExceeded(u64),
    #[error("series is not alternating")]
    NotAlternating,
    #[error("accelerated sum falls outside the partial-sum bracket")]
    GuardFailure,
    #[error("acceleration did not reach the target within its term budget")]
    SlowConvergence,
    #[error("series diverges")]
    Divergent,
    #[error("summation methods disagree")]
    MethodDisagreement,
    #[error(transparent)]
    Arith(#[from] ArithError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumMethod {
    Direct,
    Cvz,
    Euler,
}

impl SumMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SumMethod::Direct => "direct",
            SumMethod::Cvz => "cvz",
            SumMethod::Euler => "euler",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TailMode {
    Alternating,
    Geometric,
    PowerLaw,
    None,
}

/// A certified series value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumResult {
    /// Contains the exact infinite sum.
    pub value: BallReal,
    pub terms_used: u64,
    pub method: SumMethod,
    pub tail_mode: TailMode,
}

/// Target radius `2^-bits` for a summation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tolerance {
    bits: u64,
}

impl Tolerance {
    pub fn bits(bits: u64) -> Self {
        Tolerance { bits: bits.max(8) }
    }

    /// Radius at most `½·10^-digits`.
    pub fn digits(digits: u64) -> Self {
        Self::bits(digits_to_bits(digits) + 1)
    }

    pub fn get_bits(self) -> u64 {
        self.bits
    }

    /// Decimal digits covered by the tolerance, rounded down.
    pub fn decimal_digits(self) -> u64 {
        self.bits * 30103 / 100_000
    }

    pub fn target(self) -> Rational {
        Rational::one().mul_pow2(-(self.bits as i64))
    }

    /// Working precision for the returned balls.
    pub fn precision(self) -> u32 {
        u32::try_from(self.bits + 32).unwrap_or(u32::MAX)
    }
}
