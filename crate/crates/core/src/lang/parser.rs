use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use super::ast::{Expectation, Exponent, Expr, Identity, MAX_EXPONENT_DENOM};
use super::lexer::{tokenize, Tok, Token};
use super::ParseError;
use crate::arith::{Radicand, Rational};

/// Largest integer exponent accepted.
pub const MAX_INT_EXPONENT: i64 = 10_000;

const RESERVED: &[&str] = &["pi", "zeta3", "sigma", "sqrt", "ln", "arcsin", "trigamma", "cbinom", "sum", "inf"];
const ATOM_START: &[&str] = &["(", "integer", "identifier"];

/// Parses a single expression.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    let mut p = Parser::new(text)?;
    let e = p.expr()?;
    p.expect_tok(&Tok::Eof, &["+", "-", "*", "/", "^", "end of input"])?;
    Ok(e)
}

/// Parses an identity file.
pub fn parse_identities(text: &str) -> Result<Vec<Identity>, ParseError> {
    let mut p = Parser::new(text)?;
    let mut out = Vec::new();
    while p.peek().tok != Tok::Eof {
        out.push(p.identity()?);
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    /// Index of the enclosing sum, if any.
    scope: Option<String>,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser { toks: tokenize(text)?, pos: 0, scope: None })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        ParseError::syntax(t.line, t.col, &format!("unexpected {}", t.tok.describe()), expected)
    }

    fn semantic_at(&self, t: &Token, msg: &str) -> ParseError {
        ParseError::semantic(t.line, t.col, msg)
    }

    fn expect_tok(&mut self, tok: &Tok, expected: &[&str]) -> Result<Token, ParseError> {
        if &self.peek().tok == tok {
            Ok(self.bump())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn expect_sym(&mut self, tok: Tok) -> Result<Token, ParseError> {
        let sym = tok.symbol();
        self.expect_tok(&tok, &[sym])
    }

    fn expect_word(&mut self, word: &str) -> Result<Token, ParseError> {
        if matches!(&self.peek().tok, Tok::Ident(s) if s == word) {
            Ok(self.bump())
        } else {
            Err(self.unexpected(&[word]))
        }
    }

    fn ident(&mut self) -> Result<(Token, String), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                let s = s.clone();
                Ok((self.bump(), s))
            }
            _ => Err(self.unexpected(&["identifier"])),
        }
    }

    // Expressions.

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::add(lhs, self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::sub(lhs, self.term()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            match self.peek().tok {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::mul(lhs, self.factor()?);
                }
                Tok::Slash => {
                    self.bump();
                    lhs = Expr::div(lhs, self.factor()?);
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek().tok == Tok::Minus {
            self.bump();
            return Ok(Expr::neg(self.power()?));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let e = self.exponent()?;
        Ok(Expr::pow(base, e))
    }

    fn exponent(&mut self) -> Result<Exponent, ParseError> {
        let start = self.peek().clone();
        match &start.tok {
            Tok::Int(n) => {
                let k = n.to_i64().filter(|k| *k <= MAX_INT_EXPONENT);
                self.bump();
                k.map(Exponent::Int).ok_or_else(|| self.semantic_at(&start, "exponent too large"))
            }
            Tok::Ident(name) if self.scope.as_deref() == Some(name.as_str()) => {
                let index = name.clone();
                self.bump();
                Ok(Exponent::Linear { index, coeff: 1, offset: 0 })
            }
            Tok::Ident(_) => {
                Err(self.semantic_at(&start, "exponent must be a literal or linear in the summation index"))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(Tok::RParen)?;
                self.to_exponent(&e, &start)
            }
            _ => Err(self.unexpected(&["(", "integer", "identifier"])),
        }
    }

    fn to_exponent(&self, e: &Expr, at: &Token) -> Result<Exponent, ParseError> {
        let bad = || self.semantic_at(at, "exponent must be a literal or linear in the summation index");
        let (coeff, offset) = linear_form(e, self.scope.as_deref()).ok_or_else(bad)?;
        if coeff.is_zero() {
            if offset.is_integer() {
                let k = offset.numer().to_i64().filter(|k| k.abs() <= MAX_INT_EXPONENT);
                return k.map(Exponent::Int).ok_or_else(|| self.semantic_at(at, "exponent too large"));
            }
            if *offset.denom() > MAX_EXPONENT_DENOM.into() || offset.abs() > MAX_INT_EXPONENT {
                return Err(self.semantic_at(at, "rational exponent denominator too large"));
            }
            return Ok(Exponent::Rat(offset));
        }
        let (Some(c), Some(k)) = (as_small_int(&coeff), as_small_int(&offset)) else {
            return Err(bad());
        };
        let index = self.scope.clone().expect("coefficient implies an index");
        Ok(Exponent::Linear { index, coeff: c, offset: k })
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let t = self.peek().clone();
        match &t.tok {
            Tok::Int(n) => {
                let n = n.clone();
                self.bump();
                if self.peek().tok == Tok::Slash {
                    if let Tok::Int(d) = self.peek_at(1).clone() {
                        self.bump();
                        let dt = self.bump();
                        if d.is_zero() {
                            return Err(self.semantic_at(&dt, "zero denominator"));
                        }
                        return Ok(Expr::Rat(n, d));
                    }
                }
                Ok(Expr::Int(n))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) => {
                let name = name.clone();
                self.bump();
                self.named(&t, &name)
            }
            _ => Err(self.unexpected(ATOM_START)),
        }
    }

    fn named(&mut self, t: &Token, name: &str) -> Result<Expr, ParseError> {
        match name {
            "pi" => Ok(Expr::Pi),
            "zeta3" => Ok(Expr::Zeta3),
            "sigma" => Ok(Expr::Sigma),
            "inf" => Err(self.semantic_at(t, "'inf' is only allowed as a sum bound")),
            "sqrt" | "ln" | "arcsin" => {
                self.expect_sym(Tok::LParen)?;
                let arg = self.expr()?;
                self.expect_sym(Tok::RParen)?;
                Ok(match name {
                    "sqrt" => match surd_of(&arg) {
                        Some(d) => Expr::Surd(d),
                        None => Expr::Sqrt(Box::new(arg)),
                    },
                    "ln" => Expr::Ln(Box::new(arg)),
                    _ => Expr::Arcsin(Box::new(arg)),
                })
            }
            "trigamma" => {
                self.expect_sym(Tok::LParen)?;
                let at = self.peek().clone();
                let p = self.int_literal()?;
                self.expect_sym(Tok::Slash)?;
                let q = self.int_literal()?;
                self.expect_sym(Tok::RParen)?;
                if p.is_zero() || q.is_zero() || p > q {
                    return Err(self.semantic_at(&at, "trigamma argument must be a rational in (0, 1]"));
                }
                Ok(Expr::Trigamma(p, q))
            }
            "cbinom" => {
                self.expect_sym(Tok::LParen)?;
                let (it, idx) = self.ident()?;
                self.expect_sym(Tok::RParen)?;
                if self.scope.as_deref() != Some(idx.as_str()) {
                    return Err(self.semantic_at(&it, "cbinom argument must be the summation index"));
                }
                Ok(Expr::CBinom(idx))
            }
            "sum" => {
                if self.scope.is_some() {
                    return Err(self.semantic_at(t, "nested sums are not supported"));
                }
                self.expect_sym(Tok::LParen)?;
                let (_, idx) = self.ident()?;
                self.expect_sym(Tok::Eq)?;
                let lo = self.peek().clone();
                let one = self.int_literal()?;
                if !one.is_one() {
                    return Err(ParseError::syntax(lo.line, lo.col, "sum must start at 1", &["1"]));
                }
                self.expect_sym(Tok::DotDot)?;
                self.expect_word("inf")?;
                self.expect_sym(Tok::Comma)?;
                self.scope = Some(idx.clone());
                let body = self.expr();
                self.scope = None;
                let body = body?;
                self.expect_sym(Tok::RParen)?;
                Ok(Expr::Sum(idx, Box::new(body)))
            }
            _ => {
                if self.scope.as_deref() == Some(name) {
                    Ok(Expr::Index(name.to_string()))
                } else {
                    Ok(Expr::Param(name.to_string()))
                }
            }
        }
    }

    fn int_literal(&mut self) -> Result<BigUint, ParseError> {
        match &self.peek().tok {
            Tok::Int(n) => {
                let n = n.clone();
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected(&["integer"])),
        }
    }

    // Identity files.

    fn identity(&mut self) -> Result<Identity, ParseError> {
        self.expect_word("identity")?;
        let name = match &self.peek().tok {
            Tok::Str(s) => {
                let s = s.clone();
                self.bump();
                s
            }
            _ => return Err(self.unexpected(&["string"])),
        };
        self.expect_sym(Tok::LBrace)?;
        let (mut lhs, mut rhs, mut expectation, mut note) = (None, None, None, String::new());
        let mut params = BTreeMap::new();
        let keys = ["lhs", "rhs", "param", "expect", "note", "}"];
        loop {
            let t = self.peek().clone();
            let word = match &t.tok {
                Tok::RBrace => break,
                Tok::Ident(w) => w.clone(),
                _ => return Err(self.unexpected(&keys)),
            };
            match word.as_str() {
                "lhs" | "rhs" => {
                    self.bump();
                    self.expect_sym(Tok::Eq)?;
                    let e = self.expr()?;
                    if e.sum_count() > 1 {
                        return Err(self.semantic_at(&t, "each side may contain at most one sum"));
                    }
                    self.expect_tok(&Tok::Semi, &[";", "+", "-", "*", "/", "^"])?;
                    let slot = if word == "lhs" { &mut lhs } else { &mut rhs };
                    if slot.replace(e).is_some() {
                        return Err(self.semantic_at(&t, "duplicate side"));
                    }
                }
                "param" => {
                    self.bump();
                    let (pt, pname) = self.ident()?;
                    self.expect_sym(Tok::Eq)?;
                    let e = self.expr()?;
                    if e.sum_count() > 0 {
                        return Err(self.semantic_at(&pt, "parameters must be closed forms"));
                    }
                    self.expect_tok(&Tok::Semi, &[";", "+", "-", "*", "/", "^"])?;
                    if params.insert(pname, e).is_some() {
                        return Err(self.semantic_at(&pt, "duplicate parameter"));
                    }
                }
                "expect" => {
                    self.bump();
                    self.expect_sym(Tok::Eq)?;
                    expectation = Some(match &self.peek().tok {
                        Tok::Ident(w) if w == "confirmed" => Expectation::Confirmed,
                        Tok::Ident(w) if w == "refuted" => Expectation::Refuted,
                        _ => return Err(self.unexpected(&["confirmed", "refuted"])),
                    });
                    self.bump();
                    self.expect_sym(Tok::Semi)?;
                }
                "note" => {
                    self.bump();
                    self.expect_sym(Tok::Eq)?;
                    note = match &self.peek().tok {
                        Tok::Str(s) => s.clone(),
                        _ => return Err(self.unexpected(&["string"])),
                    };
                    self.bump();
                    self.expect_sym(Tok::Semi)?;
                }
                _ => return Err(self.unexpected(&keys)),
            }
        }
        let close = self.bump();
        let (Some(lhs), Some(rhs)) = (lhs, rhs) else {
            return Err(self.semantic_at(&close, "identity needs both lhs and rhs"));
        };
        check_params(&lhs, &rhs, &params).map_err(|m| self.semantic_at(&close, &m))?;
        Ok(Identity { name, lhs, rhs, params, expectation, note })
    }
}

/// Every referenced parameter is defined and the definitions are acyclic.
fn check_params(lhs: &Expr, rhs: &Expr, params: &BTreeMap<String, Expr>) -> Result<(), String> {
    let mut used = Vec::new();
    for e in [lhs, rhs].into_iter().chain(params.values()) {
        e.visit(&mut |x| {
            if let Expr::Param(p) = x {
                used.push(p.clone());
            }
        });
    }
    if let Some(p) = used.iter().find(|p| !params.contains_key(*p)) {
        return Err(format!("undefined parameter '{p}'"));
    }
    // Depth-first cycle check.
    fn visit(name: &str, params: &BTreeMap<String, Expr>, stack: &mut Vec<String>) -> Result<(), String> {
        if stack.iter().any(|s| s == name) {
            return Err(format!("cyclic parameter '{name}'"));
        }
        stack.push(name.into());
        let mut deps = Vec::new();
        params[name].visit(&mut |x| {
            if let Expr::Param(p) = x {
                deps.push(p.clone());
            }
        });
        for d in deps {
            visit(&d, params, stack)?;
        }
        stack.pop();
        Ok(())
    }
    for name in params.keys() {
        visit(name, params, &mut Vec::new())?;
    }
    Ok(())
}

fn surd_of(e: &Expr) -> Option<Radicand> {
    match e {
        Expr::Int(n) => n.to_u32().and_then(Radicand::from_value),
        _ => None,
    }
}

fn as_small_int(r: &Rational) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    r.numer().to_i64().filter(|k| k.abs() <= MAX_INT_EXPONENT)
}

/// `e = coeff·index + offset` with literal coefficients.
fn linear_form(e: &Expr, index: Option<&str>) -> Option<(Rational, Rational)> {
    let lit = |r: Rational| Some((Rational::zero(), r));
    match e {
        Expr::Int(n) => lit(Rational::from_int(num_bigint::BigInt::from(n.clone()))),
        Expr::Rat(p, q) => Rational::new(num_bigint::BigInt::from(p.clone()), num_bigint::BigInt::from(q.clone()))
            .ok()
            .and_then(lit),
        Expr::Index(i) if Some(i.as_str()) == index => Some((Rational::one(), Rational::zero())),
        Expr::Neg(a) => linear_form(a, index).map(|(c, k)| (-c, -k)),
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (c1, k1) = linear_form(a, index)?;
            let (c2, k2) = linear_form(b, index)?;
            if matches!(e, Expr::Add(..)) {
                Some((c1 + c2, k1 + k2))
            } else {
                Some((c1 - c2, k1 - k2))
            }
        }
        Expr::Mul(a, b) => {
            let (c1, k1) = linear_form(a, index)?;
            let (c2, k2) = linear_form(b, index)?;
            if c1.is_zero() {
                Some((&c2 * &k1, &k2 * &k1))
            } else if c2.is_zero() {
                Some((&c1 * &k2, &k1 * &k2))
            } else {
                None
            }
        }
        Expr::Div(a, b) => {
            let (c1, k1) = linear_form(a, index)?;
            let (c2, k2) = linear_form(b, index)?;
            if !c2.is_zero() || k2.is_zero() {
                return None;
            }
            Some((&c1 / &k2, &k1 / &k2))
        }
        _ => None,
    }
}
