use alloc::format;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ArithError, QuadExt, Rational};

/// Reported by [`ball_digits`] for a ball of radius zero.
pub const DIGITS_CAP: u64 = 1_000_000;

/// Self-validating real number `(mid ± rad) · 2^exp`.
///
/// Containment invariant: the exact value the ball stands for lies in
/// `[(mid - rad)·2^exp, (mid + rad)·2^exp]`. After every operation the
/// center is rounded to at most `prec` significant bits and the rounding
/// error is folded into the radius.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BallReal {
    mid: BigInt,
    rad: BigUint,
    exp: i64,
    prec: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BallOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn ball_arith(op: BallOp, x: &BallReal, y: &BallReal) -> Result<BallReal, ArithError> {
    match op {
        BallOp::Add => Ok(x.add(y)),
        BallOp::Sub => Ok(x.sub(y)),
        BallOp::Mul => Ok(x.mul(y)),
        BallOp::Div => x.div(y),
    }
}

pub fn ball_sqrt(x: &BallReal) -> Result<BallReal, ArithError> {
    x.sqrt()
}

/// Certified decimal digits: the largest `D` with
/// `rad ≤ ½·10^-D·max(1, |mid|)`. Zero radius gives [`DIGITS_CAP`].
pub fn ball_digits(x: &BallReal) -> u64 {
    if x.rad.is_zero() {
        return DIGITS_CAP;
    }
    let r = x.rad_rational();
    let mut m = x.mid_rational().abs();
    if m < 1 {
        m = Rational::one();
    }
    let fits = |d: u64| {
        let ten = Rational::from_int(BigInt::from(10u32).pow(d as u32));
        &(&r * &ten) * &Rational::from(2) <= m
    };
    if !fits(0) {
        return 0;
    }
    // log10(m / r) bounds the answer from above.
    let span = m.log2_estimate().unwrap_or(0) - r.log2_estimate().unwrap_or(0) + 2;
    let mut hi = ((span.max(0) as u64) * 30103 / 100000 + 2).min(DIGITS_CAP);
    let mut lo = 0u64;
    if fits(hi) {
        return hi;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

fn bitlen(n: &BigInt) -> u64 {
    n.bits()
}

/// Rounds `n / 2^s` to nearest and returns it with the exact absolute error
/// in units of `2^0` (before the shift).
fn shift_round(n: &BigInt, s: u64) -> (BigInt, BigUint) {
    if s == 0 {
        return (n.clone(), BigUint::zero());
    }
    let half = BigInt::one() << (s - 1) as usize;
    let q: BigInt = (n + &half) >> s as usize;
    let err = (n - (&q << s as usize)).magnitude().clone();
    (q, err)
}

fn ceil_shift(n: &BigUint, s: u64) -> BigUint {
    if s == 0 {
        return n.clone();
    }
    let q: BigUint = n >> s as usize;
    if (&q << s as usize) == *n {
        q
    } else {
        q + 1u32
    }
}

fn ceil_div(n: &BigUint, d: &BigUint) -> BigUint {
    let (q, r) = n.div_rem(d);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

impl BallReal {
    fn raw(mid: BigInt, rad: BigUint, exp: i64, prec: u32) -> Self {
        let mut b = BallReal { mid, rad, exp, prec: prec.max(8) };
        b.normalize();
        b
    }

    pub fn zero(prec: u32) -> Self {
        BallReal { mid: BigInt::zero(), rad: BigUint::zero(), exp: 0, prec: prec.max(8) }
    }

    pub fn from_int(n: impl Into<BigInt>, prec: u32) -> Self {
        Self::raw(n.into(), BigUint::zero(), 0, prec)
    }

    /// Ball `(mid ± rad)·2^exp` from raw parts.
    pub fn from_parts(mid: BigInt, rad: BigUint, exp: i64, prec: u32) -> Self {
        Self::raw(mid, rad, exp, prec)
    }

    /// Tightest ball around an exact rational at `prec` bits.
    pub fn from_rational(r: &Rational, prec: u32) -> Self {
        let num = r.numer();
        let den = r.denom();
        if num.is_zero() {
            return Self::zero(prec);
        }
        if den.is_one() {
            return Self::from_int(num.clone(), prec);
        }
        let den_u = den.magnitude();
        if den_u.count_ones() == 1 {
            let tz = den_u.trailing_zeros().unwrap_or(0) as i64;
            return Self::raw(num.clone(), BigUint::zero(), -tz, prec);
        }
        let k = prec as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let (q, exact) = if k >= 0 {
            let (q, rem) = (num << k as usize).div_rem(den);
            (q, rem.is_zero())
        } else {
            let (q, rem) = num.div_rem(&(den << (-k) as usize));
            (q, rem.is_zero())
        };
        // Truncation toward zero: error < 1 unit.
        let rad = if exact { BigUint::zero() } else { BigUint::one() };
        Self::raw(q, rad, -k, prec)
    }

    pub fn from_quad(q: &QuadExt, prec: u32) -> Self {
        let work = prec + 8;
        let Some(d) = q.radicand() else {
            return Self::from_rational(q.a(), prec);
        };
        let root = Self::from_int(d.value(), work + 8).sqrt().expect("positive radicand");
        let res = if q.a().signum() * q.b().signum() < 0 {
            // a + b√d = norm / (a − b√d); the denominator has no cancellation.
            let conj = Self::from_rational(q.a(), work + 8).sub(&Self::from_rational(q.b(), work + 8).mul(&root));
            Self::from_rational(&q.norm(), work + 8).div(&conj).expect("conjugate is nonzero")
        } else {
            Self::from_rational(q.a(), work).add(&Self::from_rational(q.b(), work + 8).mul(&root))
        };
        res.with_prec(prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Same ball re-rounded to a new working precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        Self::raw(self.mid.clone(), self.rad.clone(), self.exp, prec)
    }

    pub fn mid(&self) -> &BigInt {
        &self.mid
    }

    pub fn rad(&self) -> &BigUint {
        &self.rad
    }

    pub fn exp(&self) -> i64 {
        self.exp
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    fn normalize(&mut self) {
        let bits = bitlen(&self.mid).max(self.rad.bits());
        let prec = self.prec as u64;
        if bits <= prec {
            return;
        }
        let s = bits - prec;
        let (m, err) = shift_round(&self.mid, s);
        self.rad = ceil_shift(&(&self.rad + err), s);
        self.mid = m;
        self.exp += s as i64;
    }

    fn top(&self) -> i64 {
        self.exp + bitlen(&self.mid).max(self.rad.bits()) as i64
    }

    /// `(mid, rad)` expressed at exponent `e`, rounding outward if needed.
    fn at_exp(&self, e: i64) -> (BigInt, BigUint) {
        if self.exp >= e {
            let s = (self.exp - e) as usize;
            (&self.mid << s, &self.rad << s)
        } else {
            let s = (e - self.exp) as u64;
            let (m, err) = shift_round(&self.mid, s);
            (m, ceil_shift(&(&self.rad + err), s))
        }
    }

    fn common_exp(&self, other: &Self, prec: u32) -> i64 {
        let lo = self.exp.min(other.exp);
        let top = self.top().max(other.top());
        lo.max(top - prec as i64 - 8)
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        let e = self.common_exp(other, prec);
        let (m1, r1) = self.at_exp(e);
        let (m2, r2) = other.at_exp(e);
        Self::raw(m1 + m2, r1 + r2, e, prec)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        BallReal { mid: -&self.mid, rad: self.rad.clone(), exp: self.exp, prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        BallReal { mid: self.mid.abs(), rad: self.rad.clone(), exp: self.exp, prec: self.prec }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        let am = self.mid.magnitude();
        let bm = other.mid.magnitude();
        let rad = am * &other.rad + bm * &self.rad + &self.rad * &other.rad;
        Self::raw(&self.mid * &other.mid, rad, self.exp + other.exp, prec)
    }

    pub fn div(&self, other: &Self) -> Result<Self, ArithError> {
        let prec = self.prec.max(other.prec);
        let ym = other.mid.magnitude();
        if *ym <= other.rad {
            return Err(ArithError::DivisionByIntervalContainingZero);
        }
        let k = (prec as i64 + 4 + other.mid.bits() as i64 - self.mid.bits() as i64).max(0) as usize;
        let (q, rem) = (&self.mid << k).div_rem(&other.mid);
        // |x/y - mx/my| ≤ (rx·|my| + |mx|·ry) / (|my|·(|my| - ry))
        let num = (&self.rad * ym + self.mid.magnitude() * &other.rad) << k;
        let den = ym * (ym - &other.rad);
        let mut rad = ceil_div(&num, &den);
        if !rem.is_zero() {
            rad += 1u32;
        }
        Ok(Self::raw(q, rad, self.exp - other.exp - k as i64, prec))
    }

    pub fn recip(&self) -> Result<Self, ArithError> {
        Self::from_int(1, self.prec).div(self)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        BallReal { mid: self.mid.clone(), rad: self.rad.clone(), exp: self.exp + k, prec: self.prec }
    }

    pub fn mul_rational(&self, r: &Rational) -> Self {
        self.mul(&Self::from_rational(r, self.prec + 4))
    }

    pub fn div_rational(&self, r: &Rational) -> Result<Self, ArithError> {
        Ok(self.mul_rational(&r.recip()?))
    }

    pub fn add_rational(&self, r: &Rational) -> Self {
        self.add(&Self::from_rational(r, self.prec + 4))
    }

    /// Integer power; `x^0 = 1` exactly.
    pub fn powi(&self, k: i64) -> Result<Self, ArithError> {
        if k < 0 {
            return self.powi(-k)?.recip();
        }
        let mut acc = Self::from_int(1, self.prec);
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Widens the radius by an upper bound of `|err|`.
    pub fn add_error(&self, err: &Rational) -> Self {
        if err.is_zero() {
            return self.clone();
        }
        // Refine the scale first so a small error is not swallowed by a
        // coarse exponent (exact integers sit at exponent 0).
        let err_top = err.log2_estimate().unwrap_or(0) + 1;
        let e = self.exp.min(self.top().max(err_top) - self.prec as i64 - 8);
        let (mid, rad) = self.at_exp(e);
        // |err| / 2^e rounded up.
        let scaled = err.abs().mul_pow2(-e);
        let extra = ceil_div(scaled.numer().magnitude(), scaled.denom().magnitude());
        Self::raw(mid, rad + extra, e, self.prec)
    }

    /// Square root. A ball whose lower end dips below zero (but whose
    /// upper end does not) is treated as `[0, hi]`.
    pub fn sqrt(&self) -> Result<Self, ArithError> {
        let prec = self.prec;
        let lo = &self.mid - BigInt::from(self.rad.clone());
        let hi = &self.mid + BigInt::from(self.rad.clone());
        if hi.sign() == Sign::Minus {
            return Err(ArithError::NegativeArgument);
        }
        if self.mid.is_zero() && self.rad.is_zero() {
            return Ok(Self::zero(prec));
        }
        if lo.sign() != Sign::Plus {
            // Enclose [0, sqrt(hi)] by (s/2 ± s/2) with s ≥ sqrt(hi).
            let k = sqrt_shift(hi.magnitude(), self.exp, prec as u64 + 4);
            let (s, e) = isqrt_scaled(hi.magnitude(), self.exp, k);
            let s = s + 1u32;
            let mid = BigInt::from(s.clone());
            return Ok(Self::raw(mid, s, e - 1, prec));
        }
        // Center: floor(sqrt(mid·2^exp)) at prec+4 bits; error < 1 unit.
        let k = sqrt_shift(self.mid.magnitude(), self.exp, prec as u64 + 4);
        let (s, e) = isqrt_scaled(self.mid.magnitude(), self.exp, k);
        // Propagation: |sqrt(x) - sqrt(m)| ≤ r / (sqrt(lo) + sqrt(m)).
        let (slo, _) = isqrt_scaled(lo.magnitude(), self.exp, k);
        let mut rad = BigUint::one();
        if !self.rad.is_zero() {
            // r·2^exp / ((slo + s)·2^e), expressed in units of 2^e.
            let denom = &slo + &s;
            let shift = self.exp - 2 * e;
            let num = if shift >= 0 {
                &self.rad << shift as usize
            } else {
                ceil_shift(&self.rad, (-shift) as u64)
            };
            rad += ceil_div(&num, &denom.max(BigUint::one()));
        }
        Ok(Self::raw(BigInt::from(s), rad, e, prec))
    }

    // Endpoints and comparisons.

    pub fn mid_rational(&self) -> Rational {
        Rational::from_int(self.mid.clone()).mul_pow2(self.exp)
    }

    pub fn rad_rational(&self) -> Rational {
        Rational::from_int(BigInt::from(self.rad.clone())).mul_pow2(self.exp)
    }

    pub fn lower_rational(&self) -> Rational {
        Rational::from_int(&self.mid - BigInt::from(self.rad.clone())).mul_pow2(self.exp)
    }

    pub fn upper_rational(&self) -> Rational {
        Rational::from_int(&self.mid + BigInt::from(self.rad.clone())).mul_pow2(self.exp)
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        self.lower_rational() <= *r && *r <= self.upper_rational()
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.magnitude() <= &self.rad
    }

    /// Lower end is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.mid.sign() == Sign::Plus && self.mid.magnitude() > &self.rad
    }

    pub fn is_negative(&self) -> bool {
        self.mid.sign() == Sign::Minus && self.mid.magnitude() > &self.rad
    }

    /// `[lo, hi]` endpoints at a common exponent.
    fn ends(&self, e: i64) -> (BigInt, BigInt) {
        debug_assert!(e <= self.exp);
        let s = (self.exp - e) as usize;
        let m = &self.mid << s;
        let r = BigInt::from(&self.rad << s);
        (&m - &r, m + r)
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        let e = self.exp.min(other.exp);
        let (l1, h1) = self.ends(e);
        let (l2, h2) = other.ends(e);
        l1 <= h2 && l2 <= h1
    }

    /// Ball enclosing the intersection of two intervals.
    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let e = self.exp.min(other.exp);
        let (l1, h1) = self.ends(e);
        let (l2, h2) = other.ends(e);
        let lo = l1.max(l2);
        let hi = h1.min(h2);
        if lo > hi {
            return None;
        }
        let rad = (&hi - &lo).magnitude().clone();
        Some(Self::raw(lo + hi, rad, e - 1, self.prec.max(other.prec)))
    }

    /// Smallest ball enclosing both.
    pub fn hull(&self, other: &Self) -> Self {
        let e = self.exp.min(other.exp);
        let (l1, h1) = self.ends(e);
        let (l2, h2) = other.ends(e);
        let lo = l1.min(l2);
        let hi = h1.max(h2);
        let rad = (&hi - &lo).magnitude().clone();
        Self::raw(lo + hi, rad, e - 1, self.prec.max(other.prec))
    }

    /// `|mid1 - mid2|` compared against `k·(rad1 + rad2)`.
    pub fn separation_exceeds(&self, other: &Self, k: u32) -> bool {
        let e = self.exp.min(other.exp);
        let s1 = (self.exp - e) as usize;
        let s2 = (other.exp - e) as usize;
        let dm = ((&self.mid << s1) - (&other.mid << s2)).magnitude().clone();
        let rs = (&self.rad << s1) + (&other.rad << s2);
        dm > rs * k
    }

    pub fn radius_le(&self, bound: &Rational) -> bool {
        self.rad_rational() <= *bound
    }

    /// Upper estimate of `log2(|mid| + rad)`; `None` for the exact zero.
    pub fn log2_upper(&self) -> Option<i64> {
        let m = self.mid.magnitude() + &self.rad;
        if m.is_zero() {
            None
        } else {
            Some(self.exp + m.bits() as i64)
        }
    }

    /// Radius as `log2` upper estimate; `None` when exact.
    pub fn rad_log2(&self) -> Option<i64> {
        if self.rad.is_zero() {
            None
        } else {
            Some(self.exp + self.rad.bits() as i64)
        }
    }

    pub fn cmp_mid(&self, other: &Self) -> Ordering {
        self.mid_rational().cmp(&other.mid_rational())
    }

    /// Nearest `f64` to the center (diagnostics only).
    pub fn to_f64(&self) -> f64 {
        let bits = bitlen(&self.mid) as i64;
        let s = (bits - 60).max(0);
        let m = (&self.mid >> s as usize).to_f64().unwrap_or(0.0);
        m * pow2_f64(self.exp + s)
    }

    /// Center rounded to `frac` decimals.
    pub fn to_decimal(&self, frac: usize) -> String {
        let scaled = self.mid_rational() * Rational::from_int(BigInt::from(10u32).pow(frac as u32));
        let (q, r) = scaled.numer().abs().div_rem(scaled.denom());
        let q = if BigInt::from(2) * r >= *scaled.denom() { q + 1 } else { q };
        let neg = scaled.signum() < 0 && !q.is_zero();
        let mut digits = q.to_str_radix(10);
        if digits.len() <= frac {
            let pad = frac + 1 - digits.len();
            digits = format!("{}{}", "0".repeat(pad), digits);
        }
        let (int, f) = digits.split_at(digits.len() - frac);
        let sign = if neg { "-" } else { "" };
        if frac == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{f}")
        }
    }

    /// Decimal rendering carrying one digit more than certified; `cap`
    /// limits the length for exact or nearly exact balls.
    pub fn to_decimal_certified(&self, cap: u64) -> String {
        let d = ball_digits(self).min(cap);
        let m = self.mid_rational().abs();
        let frac = if m < 1 {
            d + 1
        } else {
            let int_digits = m.numer().div_floor(m.denom()).to_str_radix(10).len() as u64;
            (d + 1).saturating_sub(int_digits)
        };
        self.to_decimal(frac as usize)
    }

    /// Radius in scientific notation, rounded up to 3 significant digits.
    pub fn radius_decimal(&self) -> String {
        let r = self.rad_rational();
        if r.is_zero() {
            return String::from("0");
        }
        let mut e10 = (r.log2_estimate().unwrap_or(0) as f64 * core::f64::consts::LOG10_2) as i64 - 1;
        loop {
            let m = scale10(&r, 2 - e10);
            let c = m.numer().div_ceil(m.denom());
            if c >= BigInt::from(1000) {
                e10 += 1;
                continue;
            }
            if c < BigInt::from(100) {
                e10 -= 1;
                continue;
            }
            let s = c.to_str_radix(10);
            return format!("{}.{}e{}", &s[..1], &s[1..], e10);
        }
    }
}

fn scale10(r: &Rational, k: i64) -> Rational {
    let p = Rational::from_int(BigInt::from(10u32).pow(k.unsigned_abs() as u32));
    if k >= 0 {
        r * &p
    } else {
        r / &p
    }
}

fn pow2_f64(e: i64) -> f64 {
    if e > 1023 {
        f64::INFINITY
    } else if e < -1074 {
        0.0
    } else if e < -1022 {
        f64::from_bits(1u64 << (e + 1074))
    } else {
        f64::from_bits(((e + 1023) as u64) << 52)
    }
}

/// Shift `k` such that `m·2^(2k)` has about `2·bits` bits and `exp - 2k`
/// is even.
fn sqrt_shift(m: &BigUint, exp: i64, bits: u64) -> i64 {
    let mut t = 2 * bits as i64 - m.bits() as i64 + 2;
    if (exp - t).rem_euclid(2) != 0 {
        t += 1;
    }
    t
}

/// `floor(sqrt(m·2^exp))` as `(s, e)` with value `s·2^e`; the shift `t`
/// from [`sqrt_shift`] makes `exp - t` even.
fn isqrt_scaled(m: &BigUint, exp: i64, t: i64) -> (BigUint, i64) {
    let scaled = if t >= 0 { m << t as usize } else { m >> (-t) as usize };
    let s = scaled.sqrt();
    (s, (exp - t) / 2)
}

impl fmt::Debug for BallReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} +/- {}]", self.to_decimal_certified(60), self.radius_decimal())
    }
}

impl fmt::Display for BallReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} +/- {}", self.to_decimal_certified(10_000), self.radius_decimal())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    fn pow2_rational(e: i64) -> Rational {
        Rational::one().mul_pow2(e)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::frac(n, d)
    }

    #[test]
    fn exact_rational_sum() {
        let s = BallReal::from_rational(&r(1, 3), P).add(&BallReal::from_rational(&r(1, 6), P));
        assert!(s.contains_rational(&r(1, 2)));
        assert!(s.rad_log2().unwrap() < -(P as i64) + 4);
    }

    #[test]
    fn division_by_zero_straddling_ball() {
        let y = BallReal::from_parts(BigInt::from(1), BigUint::from(2u32), -10, P);
        let x = BallReal::from_int(1, P);
        assert_eq!(ball_arith(BallOp::Div, &x, &y), Err(ArithError::DivisionByIntervalContainingZero));
        assert!(x.div(&BallReal::zero(P)).is_err());
    }

    #[test]
    fn product_radius_bound() {
        // 2 ± ε and 3 ± ε with ε = 2^-20.
        let eps = BigUint::one();
        let a = BallReal::from_parts(BigInt::from(2) << 20, eps.clone(), -20, P);
        let b = BallReal::from_parts(BigInt::from(3) << 20, eps, -20, P);
        let p = a.mul(&b);
        assert!(p.contains_rational(&Rational::from(6)));
        let e = pow2_rational(-20);
        let bound = &(&e * &Rational::from(5)) + &(&e * &e);
        // plus at most one unit of the working precision
        assert!(p.rad_rational() <= &bound + &pow2_rational(3 - P as i64));
    }

    #[test]
    fn sqrt_contains_root() {
        for n in [2, 3, 5, 10, 1 << 20] {
            let s = BallReal::from_int(n, P).sqrt().unwrap();
            assert!(s.mul(&s).contains_rational(&Rational::from(n)), "sqrt({n})");
            assert!(s.rad_log2().unwrap() < s.log2_upper().unwrap() - P as i64 + 4);
        }
        assert_eq!(BallReal::zero(P).sqrt().unwrap(), BallReal::zero(P));
        let s = BallReal::from_int(5, 200).sqrt().unwrap();
        assert!(s.to_decimal(7).starts_with("2.2360680"));
        // Odd exponents: 3/2 and sqrt(sqrt(2)).
        let s = BallReal::from_parts(BigInt::from(3), BigUint::zero(), -1, P).sqrt().unwrap();
        assert!(s.to_decimal(9).starts_with("1.224744871"));
        let s = BallReal::from_int(2, P).sqrt().unwrap().sqrt().unwrap();
        assert!(s.to_decimal(9).starts_with("1.189207115"));
    }

    #[test]
    fn sqrt_of_negative() {
        assert_eq!(BallReal::from_int(-1, P).sqrt(), Err(ArithError::NegativeArgument));
        // A ball touching zero from both sides encloses [0, sqrt(hi)].
        let z = BallReal::from_parts(BigInt::from(-1), BigUint::from(4u32), -100, P);
        let s = z.sqrt().unwrap();
        assert!(s.contains_zero());
        assert!(s.contains_rational(&pow2_rational(-50).mul_pow2(0)));
    }

    #[test]
    fn sqrt_of_wide_ball_contains_both_ends() {
        let x = BallReal::from_parts(BigInt::from(100), BigUint::from(10u32), 0, P);
        let s = x.sqrt().unwrap();
        assert!(s.mul(&s).contains_rational(&Rational::from(90)));
        assert!(s.mul(&s).contains_rational(&Rational::from(110)));
    }

    #[test]
    fn digits() {
        // 3.14159 with radius 1e-7
        let x = BallReal::from_rational(&r(314159, 100000), P).add_error(&r(1, 10_000_000));
        assert!(ball_digits(&x) >= 6);
        let y = BallReal::from_parts(BigInt::zero(), BigUint::one(), 0, P);
        assert_eq!(ball_digits(&y), 0);
        assert_eq!(ball_digits(&BallReal::from_rational(&r(1, 2), P)), DIGITS_CAP);
        let z = BallReal::from_rational(&r(1, 3), 64);
        assert_eq!(ball_digits(&z), 19);
    }

    #[test]
    fn decimal_rendering() {
        let x = BallReal::from_rational(&r(1, 3), P);
        assert_eq!(x.to_decimal(5), "0.33333");
        assert_eq!(x.neg().to_decimal(3), "-0.333");
        assert_eq!(BallReal::from_rational(&r(2, 3), P).to_decimal(2), "0.67");
        assert_eq!(BallReal::from_int(42, P).to_decimal(0), "42");
        let y = BallReal::from_int(1, P).add_error(&r(3, 1000));
        assert_eq!(y.radius_decimal(), "3.01e-3");
        assert_eq!(BallReal::from_rational(&r(1, 3), 64).to_decimal_certified(100).len(), 22);
    }

    #[test]
    fn intersect_and_hull() {
        let a = BallReal::from_parts(BigInt::from(10), BigUint::from(2u32), 0, P);
        let b = BallReal::from_parts(BigInt::from(13), BigUint::from(2u32), 0, P);
        let i = a.intersect(&b).unwrap();
        assert_eq!(i.lower_rational(), Rational::from(11));
        assert_eq!(i.upper_rational(), Rational::from(12));
        let h = a.hull(&b);
        assert_eq!(h.lower_rational(), Rational::from(8));
        assert_eq!(h.upper_rational(), Rational::from(15));
        let c = BallReal::from_int(20, P);
        assert!(a.intersect(&c).is_none());
        assert!(c.separation_exceeds(&a, 4));
        assert!(!c.separation_exceeds(&a, 5));
    }

    #[test]
    fn powers_and_reciprocals() {
        let x = BallReal::from_rational(&r(3, 7), P);
        assert!(x.powi(5).unwrap().contains_rational(&r(243, 16807)));
        assert!(x.powi(-2).unwrap().contains_rational(&r(49, 9)));
        assert!(x.powi(0).unwrap().contains_rational(&Rational::one()));
    }
}
