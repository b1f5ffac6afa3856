//! Certified verification of series identities built from the central
//! binomial coefficient `C(2n, n)`.
//!
//! The crate is `no_std` (it needs `alloc`). It provides
//!
//! - exact arithmetic over ℚ and ℚ(√d) plus self-validating ball arithmetic ([`arith`]),
//! - certified transcendental constants: π, ln, arcsin, ζ(3), trigamma ([`constants`]),
//! - exact term generation and rigorously bounded summation ([`series`]),
//! - a small identity language with a builtin registry ([`lang`]),
//! - the verifier that turns two sides of an identity into a verdict ([`verify`]).
//!
//! Every approximate number is a [`BallReal`]: the exact value is always
//! inside `[center - radius, center + radius]`.
#![no_std]

extern crate alloc;

pub mod arith;
pub mod constants;
pub mod lang;
pub mod series;
pub mod verify;

pub use arith::{ArithError, BallReal, QuadExt, Radicand, Rational};
pub use lang::{Expectation, Expr, Identity, ParseError};
pub use series::{SumMethod, SumResult, TailMode, TermSign, TermSpec};
pub use verify::{Report, Verdict, VerdictStatus};



