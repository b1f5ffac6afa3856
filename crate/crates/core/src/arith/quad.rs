use core::fmt;

use super::{ArithError, Rational};

/// Square-free radicands supported by [`QuadExt`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Radicand {
    Two,
    Three,
    Five,
}

impl Radicand {
    pub fn value(self) -> u32 {
        match self {
            Radicand::Two => 2,
            Radicand::Three => 3,
            Radicand::Five => 5,
        }
    }

    pub fn from_value(d: u32) -> Option<Self> {
        match d {
            2 => Some(Radicand::Two),
            3 => Some(Radicand::Three),
            5 => Some(Radicand::Five),
            _ => None,
        }
    }
}

/// Exact element `a + b·√d` of ℚ(√d).
///
/// `d` is `None` for plain rationals; a value with `b = 0` mixes freely with
/// any field.
#[derive(Clone)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: Option<Radicand>,
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, d: Radicand) -> Self {
        QuadExt { a, b, d: Some(d) }
    }

    pub fn rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero(), d: None }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(Rational::from(n))
    }

    /// `√d`.
    pub fn surd(d: Radicand) -> Self {
        Self::new(Rational::zero(), Rational::one(), d)
    }

    pub fn zero() -> Self {
        Self::rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// The field radicand, `None` when the value is rational.
    pub fn radicand(&self) -> Option<Radicand> {
        if self.b.is_zero() {
            None
        } else {
            self.d
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn join(&self, other: &QuadExt) -> Result<Option<Radicand>, ArithError> {
        match (self.radicand(), other.radicand()) {
            (None, d) | (d, None) => Ok(d.or(self.d).or(other.d)),
            (Some(x), Some(y)) if x == y => Ok(Some(x)),
            (Some(x), Some(y)) => Err(ArithError::FieldMismatch(x.value(), y.value())),
        }
    }

    fn d_rational(&self) -> Rational {
        Rational::from(self.d.map_or(1, |d| d.value() as i64))
    }

    pub fn add(&self, other: &QuadExt) -> Result<QuadExt, ArithError> {
        let d = self.join(other)?;
        Ok(QuadExt { a: &self.a + &other.a, b: &self.b + &other.b, d })
    }

    pub fn sub(&self, other: &QuadExt) -> Result<QuadExt, ArithError> {
        let d = self.join(other)?;
        Ok(QuadExt { a: &self.a - &other.a, b: &self.b - &other.b, d })
    }

    pub fn mul(&self, other: &QuadExt) -> Result<QuadExt, ArithError> {
        let d = self.join(other)?;
        let dv = Rational::from(d.map_or(1, |d| d.value() as i64));
        let a = &self.a * &other.a + &(&self.b * &other.b) * &dv;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(QuadExt { a, b, d })
    }

    pub fn scale(&self, k: &Rational) -> QuadExt {
        QuadExt { a: &self.a * k, b: &self.b * k, d: self.d }
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt { a: -&self.a, b: -&self.b, d: self.d }
    }

    pub fn conj(&self) -> QuadExt {
        QuadExt { a: self.a.clone(), b: -&self.b, d: self.d }
    }

    /// Field norm `a² - d·b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &(&self.b * &self.b) * &self.d_rational()
    }

    pub fn recip(&self) -> Result<QuadExt, ArithError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        let inv = n.recip()?;
        Ok(self.conj().scale(&inv))
    }

    pub fn div(&self, other: &QuadExt) -> Result<QuadExt, ArithError> {
        self.join(other)?;
        self.mul(&other.recip()?)
    }

    /// Integer power; negative exponents go through the reciprocal.
    pub fn pow(&self, k: i64) -> Result<QuadExt, ArithError> {
        if k < 0 {
            return Ok(quad_pow(&self.recip()?, k.unsigned_abs()));
        }
        Ok(quad_pow(self, k as u64))
    }

    /// Exact sign of `a + b√d`.
    pub fn signum(&self) -> i32 {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare a² with d·b².
        let a2 = &self.a * &self.a;
        let db2 = &(&self.b * &self.b) * &self.d_rational();
        match a2.cmp(&db2) {
            core::cmp::Ordering::Greater => sa,
            core::cmp::Ordering::Less => sb,
            core::cmp::Ordering::Equal => 0,
        }
    }

    pub fn abs(&self) -> QuadExt {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact comparison of two field elements.
    pub fn cmp_value(&self, other: &QuadExt) -> Result<core::cmp::Ordering, ArithError> {
        Ok(self.sub(other)?.signum().cmp(&0))
    }
}

/// Exact product in ℚ(√d).
pub fn quad_mul(x: &QuadExt, y: &QuadExt) -> Result<QuadExt, ArithError> {
    x.mul(y)
}

/// `x^k` by repeated squaring.
pub fn quad_pow(x: &QuadExt, k: u64) -> QuadExt {
    let mut acc = QuadExt { a: Rational::one(), b: Rational::zero(), d: x.d };
    let mut base = x.clone();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base).expect("same field");
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base).expect("same field");
        }
    }
    acc
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        QuadExt::rational(r)
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadExt {}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.radicand() {
            None => write!(f, "{}", self.a),
            Some(d) if self.a.is_zero() => write!(f, "{}*sqrt({})", self.b, d.value()),
            Some(d) => write!(f, "{} + {}*sqrt({})", self.a, self.b, d.value()),
        }
    }
}
