use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::String;

use num_bigint::BigUint;

use crate::arith::{Radicand, Rational};

/// Expression tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    /// Nonnegative integer literal; negation is a [`Expr::Neg`] node.
    Int(BigUint),
    /// `p/q` literal as written (not reduced).
    Rat(BigUint, BigUint),
    /// `sqrt(d)` for `d ∈ {2, 3, 5}`.
    Surd(Radicand),
    Pi,
    Zeta3,
    Sigma,
    Param(String),
    Index(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, Exponent),
    Ln(Box<Expr>),
    Sqrt(Box<Expr>),
    Arcsin(Box<Expr>),
    /// `ψ′(p/q)` with `0 < p/q ≤ 1`, kept as written.
    Trigamma(BigUint, BigUint),
    CBinom(String),
    /// `Σ_{index=1}^∞ body`.
    Sum(String, Box<Expr>),
}

/// Literal exponent of a power.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Exponent {
    Int(i64),
    /// Non-integer rational with a small denominator.
    Rat(Rational),
    /// `coeff·index + offset` with `coeff ≠ 0`.
    Linear { index: String, coeff: i64, offset: i64 },
}

/// Largest denominator allowed in a rational exponent.
pub const MAX_EXPONENT_DENOM: u32 = 12;

/// Whether an identity is expected to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Expectation {
    Confirmed,
    Refuted,
}

impl Expectation {
    pub fn as_str(self) -> &'static str {
        match self {
            Expectation::Confirmed => "confirmed",
            Expectation::Refuted => "refuted",
        }
    }
}

/// A claimed equality `lhs = rhs` with named closed-form parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub lhs: Expr,
    pub rhs: Expr,
    pub params: BTreeMap<String, Expr>,
    pub expectation: Option<Expectation>,
    pub note: String,
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    pub fn int(n: u64) -> Expr {
        Expr::Int(BigUint::from(n))
    }

    pub fn rat(p: u64, q: u64) -> Expr {
        Expr::Rat(BigUint::from(p), BigUint::from(q))
    }

    pub fn param(name: &str) -> Expr {
        Expr::Param(name.into())
    }

    pub fn index(name: &str) -> Expr {
        Expr::Index(name.into())
    }

    pub fn add(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::Div(Box::new(a), Box::new(b))
    }

    pub fn neg(a: Expr) -> Expr {
        Expr::Neg(Box::new(a))
    }

    pub fn pow(a: Expr, e: Exponent) -> Expr {
        Expr::Pow(Box::new(a), e)
    }

    pub fn ln(a: Expr) -> Expr {
        Expr::Ln(Box::new(a))
    }

    pub fn sqrt(a: Expr) -> Expr {
        Expr::Sqrt(Box::new(a))
    }

    pub fn arcsin(a: Expr) -> Expr {
        Expr::Arcsin(Box::new(a))
    }

    pub fn sum(index: &str, body: Expr) -> Expr {
        Expr::Sum(index.into(), Box::new(body))
    }

    /// Number of `Sum` nodes in the tree.
    pub fn sum_count(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |e| {
            if matches!(e, Expr::Sum(..)) {
                n += 1;
            }
        });
        n
    }

    /// Whether `Param(name)` occurs.
    pub fn mentions_param(&self, name: &str) -> bool {
        let mut hit = false;
        self.visit(&mut |e| {
            if matches!(e, Expr::Param(p) if p == name) {
                hit = true;
            }
        });
        hit
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Ln(a) | Expr::Sqrt(a) | Expr::Arcsin(a) | Expr::Sum(_, a) => {
                a.visit(f)
            }
            _ => {}
        }
    }
}
