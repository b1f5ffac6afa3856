//! Trigamma at rational points and ζ(3) by Euler–Maclaurin.
//!
//! Both asymptotic expansions are enveloping for a positive real argument:
//! the derivatives of `1/x²` and `1/x³` alternate in sign, so the remainder
//! after truncating the Bernoulli sum is bounded by the first omitted term.
//! The terms `B_2k / z^(2k+1)` first shrink and then grow factorially; the
//! sum stops once a term drops below the target or stops shrinking.

use num_bigint::BigInt;

use crate::arith::{ArithError, BallReal, Rational};

use super::bernoulli::Bernoulli;

/// Shift threshold `max(20, prec/3)` for the recurrences.
pub(crate) fn shift_threshold(prec: u32) -> u64 {
    (prec as u64 / 3).max(20)
}

fn log2_bits(n: u64) -> u32 {
    64 - n.leading_zeros()
}

/// Adds `Σ_{k≥1} coeff(k)·B_2k / z^(2k+1+extra)` until the terms fall below
/// `2^-work`; returns the exact partial sum and the first omitted term.
fn bernoulli_tail(
    z: &Rational,
    extra: i64,
    work: u32,
    coeff: impl Fn(usize) -> Rational,
) -> (Rational, Rational) {
    let mut bern = Bernoulli::new();
    let mut acc = Rational::zero();
    let target = Rational::one().mul_pow2(-(work as i64));
    let z2 = z * z;
    let mut zpow = z.pow(3 + extra).expect("z > 0");
    let mut prev: Option<Rational> = None;
    for k in 1.. {
        let term = &(bern.get(2 * k) * &coeff(k)) / &zpow;
        let mag = term.abs();
        if mag <= target || prev.as_ref().is_some_and(|p| mag >= *p) {
            return (acc, mag);
        }
        acc = acc + &term;
        prev = Some(mag);
        zpow = &zpow * &z2;
    }
    unreachable!()
}

/// ψ′(x) = Σ_{k≥0} 1/(x+k)² for rational `0 < x ≤ 1`.
pub fn trigamma_rat(x: &Rational, prec: u32) -> Result<BallReal, ArithError> {
    if x.signum() <= 0 || *x > 1 {
        return Err(ArithError::Domain("trigamma argument outside (0, 1]"));
    }
    let m = shift_threshold(prec);
    let work = prec + 16 + log2_bits(m);
    // ψ′(x) = ψ′(x+M) + Σ_{j<M} 1/(x+j)²
    let (p, q) = (x.numer().clone(), x.denom().clone());
    let q2 = &q * &q;
    let mut head = BallReal::zero(work);
    for j in 0..m {
        let d = &p + &q * BigInt::from(j);
        let term = Rational::new(q2.clone(), &d * &d).expect("x + j > 0");
        head = head.add(&BallReal::from_rational(&term, work));
    }
    let z = x + &Rational::from(m as i64);
    // 1/z + 1/(2z²) + Σ B_2k / z^(2k+1)
    let lead = z.recip()? + &(&z * &z * Rational::from(2)).recip()?;
    let (tail, omitted) = bernoulli_tail(&z, 0, work, |_| Rational::one());
    let asym = BallReal::from_rational(&(lead + tail), work).add_error(&omitted);
    Ok(head.add(&asym).with_prec(prec))
}

/// ζ(3) by Euler–Maclaurin on Σ 1/n³:
/// `Σ_{n<N} n⁻³ + 1/(2N²) + 1/(2N³) + Σ_k (2k+1)·B_2k / (2·N^(2k+2))`.
pub fn zeta3_euler_maclaurin(prec: u32) -> BallReal {
    let n = shift_threshold(prec);
    let work = prec + 16 + log2_bits(n);
    let mut head = BallReal::zero(work);
    for j in 1..n {
        let c = BigInt::from(j).pow(3);
        head = head.add(&BallReal::from_rational(&Rational::new(1, c).expect("j > 0"), work));
    }
    let nr = Rational::from(n as i64);
    let n2 = &nr * &nr;
    let lead = (&n2 * &Rational::from(2)).recip().expect("N > 0")
        + &(&(&n2 * &nr) * &Rational::from(2)).recip().expect("N > 0");
    let (tail, omitted) =
        bernoulli_tail(&nr, 1, work, |k| Rational::frac(2 * k as i64 + 1, 2));
    let asym = BallReal::from_rational(&(lead + tail), work).add_error(&omitted);
    head.add(&asym).with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::const_pi;

    #[test]
    fn trigamma_at_one_is_zeta2() {
        let t = trigamma_rat(&Rational::one(), 200).unwrap();
        let pi = const_pi(220);
        let z2 = pi.mul(&pi).div_rational(&Rational::from(6)).unwrap();
        let d = t.sub(&z2);
        assert!(d.contains_zero());
        assert!(d.rad_log2().unwrap() < -190);
    }

    /// Direct Hurwitz summation Σ_{k<K} 1/(x+k)² with the integral tail
    /// bracket [1/(x+K), 1/(x+K-1)] as an independent low-precision oracle.
    #[test]
    fn trigamma_third_against_direct_sum() {
        let x = Rational::frac(1, 3);
        let k = 4000i64;
        let mut s = Rational::zero();
        for j in 0..k {
            let d = &x + &Rational::from(j);
            s = s + &(&d * &d).recip().unwrap();
        }
        let lo = &s + &(&x + &Rational::from(k)).recip().unwrap();
        let hi = &s + &(&x + &Rational::from(k - 1)).recip().unwrap();
        let t = trigamma_rat(&x, 64).unwrap();
        assert!(t.lower_rational() <= hi && t.upper_rational() >= lo);
        assert!(t.to_decimal(7).starts_with("10.0955971"));
    }

    #[test]
    fn trigamma_domain() {
        assert!(trigamma_rat(&Rational::zero(), 64).is_err());
        assert!(trigamma_rat(&Rational::frac(3, 2), 64).is_err());
        assert!(trigamma_rat(&Rational::frac(-1, 2), 64).is_err());
    }

    #[test]
    fn zeta3_digits() {
        let z = zeta3_euler_maclaurin(200);
        assert!(z.to_decimal(15).starts_with("1.202056903159594"));
        assert!(z.rad_log2().unwrap() <= 8 - 200);
    }
}
