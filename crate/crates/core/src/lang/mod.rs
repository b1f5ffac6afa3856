//! The identity language: expressions, identity files and the builtin registry.
//!
//! Expression grammar (lowest precedence first):
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := "-" power | power
//! power  := atom ("^" exponent)?
//! atom   := INT "/" INT | INT | "(" expr ")" | IDENT | func "(" expr ")"
//!         | "trigamma" "(" INT "/" INT ")" | "cbinom" "(" IDENT ")"
//!         | "sum" "(" IDENT "=" "1" ".." "inf" "," expr ")"
//! ```
//!
//! `INT "/" INT` binds tighter than `^`, so `1/4^n` means `(1/4)^n`.
//! Exponents are integers, the summation index, or a parenthesized
//! expression that folds to a rational or to `a·n + b`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

mod ast;
mod exact;
mod lexer;
mod parser;
mod registry;
mod serialize;

pub use ast::{Expectation, Exponent, Expr, Identity, MAX_EXPONENT_DENOM};
pub use exact::{exact_sqrt, try_exact};
pub use parser::{parse_expr, parse_identities, MAX_INT_EXPONENT};
pub use registry::{builtin_registry, REGISTRY_SOURCE};
pub use serialize::{serialize, serialize_identity};

/// Whether the input is malformed or well-formed but meaningless.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax,
    Semantic,
}

/// Parse failure located at the first offending token (1-based line and column).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub col: usize,
    pub message: String,
    /// Tokens that would have been accepted; empty for semantic errors.
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn syntax(line: usize, col: usize, message: &str, expected: &[&str]) -> ParseError {
        ParseError {
            kind: ParseErrorKind::Syntax,
            line,
            col,
            message: message.to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn semantic(line: usize, col: usize, message: &str) -> ParseError {
        ParseError { kind: ParseErrorKind::Semantic, line, col, message: message.to_string(), expected: Vec::new() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected ")?;
            for (i, e) in self.expected.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "'{e}'")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl core::error::Error for ParseError {}
