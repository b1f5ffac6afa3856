use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

/// Polynomial with integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::new(vec![c.into()])
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    /// The polynomial `n`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, n: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c;
        }
        acc
    }

    pub fn eval_u64(&self, n: u64) -> BigInt {
        self.eval(&BigInt::from(n))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::default();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    /// `p(n + s)` as a polynomial in `n` (Taylor shift).
    pub fn shift(&self, s: &BigInt) -> Poly {
        let mut c = self.coeffs.clone();
        let len = c.len();
        // Horner-style synthetic division, O(d²).
        for i in 0..len {
            for j in (i..len.saturating_sub(1)).rev() {
                let t = &c[j + 1] * s;
                c[j] += t;
            }
        }
        Poly::new(c)
    }

    /// +1 / -1 if every coefficient is ≥ 0 / ≤ 0 (and the polynomial is
    /// nonzero), otherwise 0.
    pub fn uniform_sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if self.coeffs.iter().all(|c| !c.is_negative()) {
            1
        } else if self.coeffs.iter().all(|c| !c.is_positive()) {
            -1
        } else {
            0
        }
    }

    /// Upper bound on `|p(n)| / n^deg` valid for all `n ≥ from ≥ 1`.
    pub fn abs_ratio_upper(&self, from: u64) -> Rational {
        let d = self.degree();
        let f = Rational::from(from as i64);
        let mut acc = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            let t = Rational::from_int(c.abs()) * f.pow(i as i64 - d as i64).expect("from ≥ 1");
            acc = acc + t;
        }
        acc
    }

    /// Lower bound on `|p(n)| / n^deg` for all `n ≥ from ≥ 1`; may be ≤ 0
    /// when `from` is too small to separate the leading term.
    pub fn abs_ratio_lower(&self, from: u64) -> Rational {
        let d = self.degree();
        let f = Rational::from(from as i64);
        let mut acc = Rational::from_int(self.leading().abs());
        for (i, c) in self.coeffs.iter().enumerate().take(d) {
            let t = Rational::from_int(c.abs()) * f.pow(i as i64 - d as i64).expect("from ≥ 1");
            acc = acc - t;
        }
        acc
    }

    pub fn to_rational(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| Rational::from_int(c.clone())).collect())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs.iter().map(|c| c.to_str_radix(10)).collect::<Vec<_>>())
    }
}

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &RatPoly) -> RatPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        RatPoly::new((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::default();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        RatPoly::new(out)
    }

    /// `n^k`.
    pub fn monomial(k: usize) -> RatPoly {
        let mut c = vec![Rational::zero(); k + 1];
        c[k] = Rational::one();
        RatPoly::new(c)
    }

    /// `p(n + 1)`.
    pub fn shift_one(&self) -> RatPoly {
        let mut c = self.coeffs.clone();
        let len = c.len();
        for i in 0..len {
            for j in (i..len.saturating_sub(1)).rev() {
                let t = c[j + 1].clone();
                c[j] = &c[j] + &t;
            }
        }
        RatPoly::new(c)
    }

    pub fn eval(&self, n: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * n) + c;
        }
        acc
    }

    /// Upper bound on `|p(n)| / n^deg` for all `n ≥ from ≥ 1`.
    pub fn abs_ratio_upper(&self, from: u64) -> Rational {
        let d = self.degree();
        let f = Rational::from(from as i64);
        let mut acc = Rational::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            acc = acc + c.abs() * f.pow(i as i64 - d as i64).expect("from ≥ 1");
        }
        acc
    }
}

/// `(n + 1)^k` with integer coefficients.
pub fn shifted_power(k: u32) -> Poly {
    Poly::from_i64(&[1, 1]).pow(k)
}

/// Generalized binomial coefficient `C(m, j)` for integer `m` (possibly negative).
pub fn gen_binomial(m: i64, j: u64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j {
        num *= BigInt::from(m - i as i64);
        den *= BigInt::from(i + 1);
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_matches_direct_evaluation() {
        let p = Poly::from_i64(&[3, -2, 0, 5, 1]);
        let s = BigInt::from(7);
        let ps = p.shift(&s);
        for n in -5..20i64 {
            let n = BigInt::from(n);
            assert_eq!(ps.eval(&n), p.eval(&(&n + &s)));
        }
        let r = p.to_rational().shift_one();
        for n in 0..10i64 {
            assert_eq!(r.eval(&Rational::from(n)), Rational::from_int(p.eval_u64(n as u64 + 1)));
        }
    }

    #[test]
    fn sign_and_bounds() {
        assert_eq!(Poly::from_i64(&[1, 0, 2]).uniform_sign(), 1);
        assert_eq!(Poly::from_i64(&[-1, 0, -2]).uniform_sign(), -1);
        assert_eq!(Poly::from_i64(&[-1, 2]).uniform_sign(), 0);
        let q = Poly::from_i64(&[0, 1, 1]); // n² + n
        let up = q.abs_ratio_upper(10);
        let lo = q.abs_ratio_lower(10);
        for n in 10..200u64 {
            let v = Rational::from_int(q.eval_u64(n)) / &Rational::from((n * n) as i64);
            assert!(lo <= v && v <= up);
        }
    }

    #[test]
    fn generalized_binomials() {
        assert_eq!(gen_binomial(5, 2), BigInt::from(10));
        assert_eq!(gen_binomial(-1, 3), BigInt::from(-1));
        assert_eq!(gen_binomial(-2, 2), BigInt::from(3));
        assert_eq!(gen_binomial(1, 2), BigInt::from(0));
    }
}
