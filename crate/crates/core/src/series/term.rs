use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::SeriesError;
use crate::arith::{quad_pow, QuadExt, Rational};

const MAX_DEGREE: usize = 8;

/// Sign pattern of the summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TermSign {
    Plus,
    /// `(-1)^(n+1)`
    AltPlus,
    /// `(-1)^n`
    AltMinus,
}

impl TermSign {
    pub fn at(self, n: u64) -> i32 {
        let odd = n % 2 == 1;
        match self {
            TermSign::Plus => 1,
            TermSign::AltPlus => {
                if odd {
                    1
                } else {
                    -1
                }
            }
            TermSign::AltMinus => {
                if odd {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn is_alternating(self) -> bool {
        self != TermSign::Plus
    }
}

/// `sign(n)·baseⁿ·p(n)/q(n)·C(2n,n)^cb_power` for `n ≥ start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermSpec {
    sign: TermSign,
    base: QuadExt,
    p: Poly,
    q: Poly,
    cb_power: i8,
    start: u64,
}

#[derive(Debug, Clone)]
pub struct TermSpecBuilder {
    sign: TermSign,
    base: QuadExt,
    p: Poly,
    q: Poly,
    cb_power: i8,
    start: u64,
}

impl Default for TermSpecBuilder {
    fn default() -> Self {
        TermSpecBuilder {
            sign: TermSign::Plus,
            base: QuadExt::one(),
            p: Poly::one(),
            q: Poly::one(),
            cb_power: 0,
            start: 1,
        }
    }
}

impl TermSpecBuilder {
    pub fn sign(mut self, sign: TermSign) -> Self {
        self.sign = sign;
        self
    }

    pub fn base(mut self, base: QuadExt) -> Self {
        self.base = base;
        self
    }

    /// Numerator coefficients, constant term first.
    pub fn numerator(mut self, coeffs: &[i64]) -> Self {
        self.p = Poly::from_i64(coeffs);
        self
    }

    pub fn numerator_poly(mut self, p: Poly) -> Self {
        self.p = p;
        self
    }

    /// Denominator coefficients, constant term first.
    pub fn denominator(mut self, coeffs: &[i64]) -> Self {
        self.q = Poly::from_i64(coeffs);
        self
    }

    pub fn denominator_poly(mut self, q: Poly) -> Self {
        self.q = q;
        self
    }

    pub fn cb_power(mut self, cb: i8) -> Self {
        self.cb_power = cb;
        self
    }

    pub fn start(mut self, start: u64) -> Self {
        self.start = start;
        self
    }

    pub fn build(self) -> Result<TermSpec, SeriesError> {
        if !(-1..=1).contains(&self.cb_power) {
            return Err(SeriesError::InvalidSpec("cb_power must be -1, 0 or 1"));
        }
        if self.base.is_zero() {
            return Err(SeriesError::InvalidSpec("base must be nonzero"));
        }
        if self.p.is_zero() {
            return Err(SeriesError::InvalidSpec("numerator polynomial is zero"));
        }
        if self.q.is_zero() {
            return Err(SeriesError::InvalidSpec("denominator polynomial is zero"));
        }
        if self.p.degree() > MAX_DEGREE || self.q.degree() > MAX_DEGREE {
            return Err(SeriesError::InvalidSpec("polynomial degree exceeds 8"));
        }
        if has_root_from(&self.q, self.start) {
            return Err(SeriesError::InvalidSpec("denominator vanishes inside the range"));
        }
        Ok(TermSpec {
            sign: self.sign,
            base: self.base,
            p: self.p,
            q: self.q,
            cb_power: self.cb_power,
            start: self.start,
        })
    }
}

/// Whether `q` has an integer root `≥ start`. Integer roots divide the
/// lowest nonzero coefficient, so only a finite range needs checking.
fn has_root_from(q: &Poly, start: u64) -> bool {
    let low = q.coeffs().iter().position(|c| !c.is_zero()).expect("nonzero");
    if low > 0 && start == 0 {
        return true;
    }
    let c = q.coeffs()[low].abs();
    let limit = c.to_u64().unwrap_or(u64::MAX);
    if limit <= 1_000_000 {
        return (start.max(1)..=limit).any(|n| q.eval_u64(n).is_zero());
    }
    // Huge constant term: fall back to the Cauchy bound.
    let lead = q.leading().abs();
    let max = q.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    let bound = (max / lead + 1u32).to_u64().unwrap_or(u64::MAX).min(10_000_000);
    (start.max(1)..=bound).any(|n| q.eval_u64(n).is_zero())
}

impl TermSpec {
    pub fn builder() -> TermSpecBuilder {
        TermSpecBuilder::default()
    }

    pub fn sign(&self) -> TermSign {
        self.sign
    }

    pub fn base(&self) -> &QuadExt {
        &self.base
    }

    pub fn numerator(&self) -> &Poly {
        &self.p
    }

    pub fn denominator(&self) -> &Poly {
        &self.q
    }

    pub fn cb_power(&self) -> i8 {
        self.cb_power
    }

    pub fn start(&self) -> u64 {
        self.start
    }

    /// Asymptotic ratio `ρ = |base|·4^cb_power`.
    pub fn rho(&self) -> QuadExt {
        let four = Rational::from(4).pow(self.cb_power as i64).expect("nonzero");
        self.base.abs().scale(&four)
    }

    /// Whether consecutive terms eventually differ in sign.
    pub fn is_effectively_alternating(&self) -> bool {
        self.sign.is_alternating() ^ (self.base.signum() < 0)
    }

    /// `2·(dq − dp) + cb_power`: twice the power-law decay exponent of `|a_n|`
    /// when `ρ = 1`.
    pub fn decay_twice(&self) -> i64 {
        2 * (self.q.degree() as i64 - self.p.degree() as i64) + self.cb_power as i64
    }

    /// Integer polynomials with `|a_{n+1}/a_n| = |base|·|num(n)/den(n)|`.
    pub fn ratio_polys(&self) -> (Poly, Poly) {
        let one = BigInt::from(1);
        let p1 = self.p.shift(&one);
        let q1 = self.q.shift(&one);
        let up = Poly::from_i64(&[2, 4]);
        let down = Poly::from_i64(&[1, 1]);
        let (fnum, fden) = match self.cb_power {
            1 => (up, down),
            -1 => (down, up),
            _ => (Poly::one(), Poly::one()),
        };
        (p1.mul(&self.q).mul(&fnum), self.p.mul(&q1).mul(&fden))
    }
}

/// Exact `n`-th term.
pub fn term_exact(spec: &TermSpec, n: u64) -> QuadExt {
    let cb = crate::arith::central_binomial(n);
    term_with(spec, n, &quad_pow(&spec.base, n), &cb)
}

fn term_with(spec: &TermSpec, n: u64, base_pow: &QuadExt, cb: &BigUint) -> QuadExt {
    let p = spec.p.eval_u64(n);
    let q = spec.q.eval_u64(n);
    let cb = BigInt::from(cb.clone());
    let (num, den) = match spec.cb_power {
        1 => (p * cb, q),
        -1 => (p, q * cb),
        _ => (p, q),
    };
    let num = num * spec.sign.at(n);
    let r = Rational::new(num, den).expect("denominator nonzero by invariant");
    base_pow.scale(&r)
}

/// Exact `|a_{n+1}| / |a_n|`.
pub fn term_ratio(spec: &TermSpec, n: u64) -> Result<QuadExt, SeriesError> {
    let (num, den) = spec.ratio_polys();
    let d = den.eval_u64(n);
    if d.is_zero() {
        return Err(SeriesError::ZeroTerm(n));
    }
    let r = Rational::new(num.eval_u64(n).abs(), d.abs())?;
    Ok(spec.base.abs().scale(&r))
}

/// Yields `(n, a_n)` for `n = start, start+1, …` with incremental powers and
/// binomials.
#[derive(Debug, Clone)]
pub struct TermGen<'a> {
    spec: &'a TermSpec,
    n: u64,
    base_pow: QuadExt,
    cb: BigUint,
}

impl<'a> TermGen<'a> {
    pub fn new(spec: &'a TermSpec) -> Self {
        Self::from_index(spec, spec.start)
    }

    pub fn from_index(spec: &'a TermSpec, n: u64) -> Self {
        TermGen {
            spec,
            n,
            base_pow: quad_pow(&spec.base, n),
            cb: crate::arith::central_binomial(n),
        }
    }

    /// Collects `count` consecutive terms.
    pub fn take_terms(&mut self, count: usize) -> Vec<QuadExt> {
        (0..count).map(|_| self.next().expect("infinite").1).collect()
    }
}

impl Iterator for TermGen<'_> {
    type Item = (u64, QuadExt);

    fn next(&mut self) -> Option<(u64, QuadExt)> {
        let n = self.n;
        let t = term_with(self.spec, n, &self.base_pow, &self.cb);
        self.base_pow = self.base_pow.mul(&self.spec.base).expect("same field");
        self.cb = &self.cb * BigUint::from(4 * n + 2) / BigUint::from(n + 1);
        self.n += 1;
        Some((n, t))
    }
}
