//! Logarithm and inverse trigonometric functions on balls.

use crate::arith::{ArithError, BallReal, QuadExt, Rational};

use super::pi::const_pi;

/// Reduced arguments satisfy |t| ≤ 2^-REDUCED_LOG2 before the power series starts.
const REDUCED_LOG2: i64 = -10;

fn pow2(e: i64) -> Rational {
    Rational::one().mul_pow2(e)
}

/// Σ_{j<J} s^j t^(2j+1)/(2j+1) for |t| small, with the geometric tail bound
/// `|t|^(2J+1) / (1 - t²) ≤ 2·|t|^(2J+1)` folded into the radius.
///
/// `alternating` selects arctan (`s = -1`) versus atanh (`s = +1`).
fn odd_series(t: &BallReal, work: u32, alternating: bool) -> BallReal {
    let Some(tlog) = t.log2_upper() else {
        return BallReal::zero(work);
    };
    debug_assert!(tlog <= REDUCED_LOG2 + 1);
    let t2 = t.mul(t);
    let mut power = t.clone();
    let mut acc = BallReal::zero(work);
    let mut j: u64 = 0;
    loop {
        let term = power.div_rational(&Rational::from((2 * j + 1) as i64)).expect("odd denominator");
        if alternating && j % 2 == 1 {
            acc = acc.sub(&term);
        } else {
            acc = acc.add(&term);
        }
        j += 1;
        power = power.mul(&t2);
        // |t|^(2j+1) ≤ 2^(tlog·(2j+1))
        let bound_log = tlog * (2 * j as i64 + 1);
        if bound_log < -(work as i64) - 8 {
            return acc.add_error(&pow2(bound_log + 1));
        }
    }
}

/// Natural logarithm of a positive ball.
///
/// Repeated square roots bring the argument within 2^-10 of 1, then
/// `ln y = 2·atanh((y-1)/(y+1))` and the result is scaled back by `2^k`.
pub fn ln_ball(x: &BallReal, prec: u32) -> Result<BallReal, ArithError> {
    if !x.is_positive() {
        return Err(ArithError::NonpositiveArgument);
    }
    let mag = x.log2_upper().unwrap_or(0).unsigned_abs() as u32;
    let work = prec + 48 + 2 * (64 - mag.leading_zeros());
    let one = BallReal::from_int(1, work);
    let mut y = x.with_prec(work);
    let mut k: i64 = 0;
    while y.sub(&one).log2_upper().is_some_and(|l| l > REDUCED_LOG2) {
        y = y.sqrt()?;
        k += 1;
        if k > 4096 {
            return Err(ArithError::Domain("logarithm argument reduction did not converge"));
        }
    }
    let t = y.sub(&one).div(&y.add(&one))?;
    Ok(odd_series(&t, work, false).mul_pow2(k + 1).with_prec(prec))
}

/// `ln(x)` for an exact positive element of ℚ(√d).
pub fn const_ln(x: &QuadExt, prec: u32) -> Result<BallReal, ArithError> {
    if x.signum() <= 0 {
        return Err(ArithError::NonpositiveArgument);
    }
    ln_ball(&BallReal::from_quad(x, prec + 32), prec)
}

/// arctan by argument halving `z → z/(1 + √(1+z²))` and a Taylor series.
pub fn arctan_ball(z: &BallReal, prec: u32) -> Result<BallReal, ArithError> {
    let work = prec + 40;
    let one = BallReal::from_int(1, work);
    let mut z = z.with_prec(work);
    let mut halvings: i64 = 0;
    while z.log2_upper().is_some_and(|l| l > REDUCED_LOG2) {
        let root = one.add(&z.mul(&z)).sqrt()?;
        z = z.div(&one.add(&root))?;
        halvings += 1;
        if halvings > 4096 {
            return Err(ArithError::Domain("arctan argument reduction did not converge"));
        }
    }
    Ok(odd_series(&z, work, true).mul_pow2(halvings).with_prec(prec))
}

/// arcsin on `[-1, 1]`.
///
/// Near the ends (`x² > 1/2`) the identity `arcsin x = π/2 − arcsin √(1−x²)`
/// avoids dividing by a vanishing `√(1−x²)`.
pub fn const_arcsin(x: &BallReal, prec: u32) -> Result<BallReal, ArithError> {
    let lo = x.lower_rational();
    let hi = x.upper_rational();
    if lo < -1 || hi > 1 {
        return Err(ArithError::Domain("arcsin argument outside [-1, 1]"));
    }
    let work = prec + 32;
    if x.is_exact() && (lo == 1 || lo == -1) {
        let half_pi = const_pi(work).mul_pow2(-1);
        let r = if lo == 1 { half_pi } else { half_pi.neg() };
        return Ok(r.with_prec(prec));
    }
    let x = x.with_prec(work);
    let one = BallReal::from_int(1, work);
    let near_end = x.mid_rational().abs() > Rational::frac(3, 4);
    if near_end {
        // u < 0.67, so the inner call takes the arctan route.
        let u = one.sub(&x.mul(&x)).sqrt()?;
        let inner = arcsin_via_arctan(&u, &one, work)?;
        let r = const_pi(work).mul_pow2(-1).sub(&inner);
        let r = if x.mid_rational().signum() < 0 { r.neg() } else { r };
        return Ok(r.with_prec(prec));
    }
    Ok(arcsin_via_arctan(&x, &one, work)?.with_prec(prec))
}

fn arcsin_via_arctan(x: &BallReal, one: &BallReal, work: u32) -> Result<BallReal, ArithError> {
    let c = one.sub(&x.mul(x)).sqrt()?;
    arctan_ball(&x.div(&c)?, work)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Radicand;

    #[test]
    fn ln_of_one_is_exact_zero() {
        let z = const_ln(&QuadExt::one(), 128).unwrap();
        assert!(z.contains_zero());
        assert!(z.rad_log2().map_or(true, |l| l <= 4 - 128));
    }

    #[test]
    fn ln_functional_equation() {
        let l4 = const_ln(&QuadExt::int(4), 160).unwrap();
        let l2 = const_ln(&QuadExt::int(2), 160).unwrap();
        let d = l4.sub(&l2.mul_pow2(1));
        assert!(d.contains_zero());
        assert!(d.rad_log2().unwrap() < -150);
        assert!(l2.to_decimal(20).starts_with("0.69314718055994530942"));
    }

    #[test]
    fn ln_rejects_nonpositive() {
        assert_eq!(const_ln(&QuadExt::zero(), 64), Err(ArithError::NonpositiveArgument));
        let neg = QuadExt::new(Rational::from(1), Rational::from(-1), Radicand::Two);
        assert_eq!(const_ln(&neg, 64), Err(ArithError::NonpositiveArgument));
    }

    #[test]
    fn arcsin_special_values() {
        let z = const_arcsin(&BallReal::zero(64), 64).unwrap();
        assert!(z.contains_zero());
        let half = const_arcsin(&BallReal::from_rational(&Rational::frac(1, 2), 200), 200).unwrap();
        let sixth_pi = const_pi(200).div_rational(&Rational::from(6)).unwrap();
        let d = half.sub(&sixth_pi);
        assert!(d.contains_zero() && d.rad_log2().unwrap() < -185);
        let one = const_arcsin(&BallReal::from_int(1, 100), 100).unwrap();
        assert!(one.overlaps(&const_pi(100).mul_pow2(-1)));
        let near = const_arcsin(&BallReal::from_rational(&Rational::frac(-99, 100), 100), 100).unwrap();
        assert!(near.to_decimal(8).starts_with("-1.42925685"));
        assert!(const_arcsin(&BallReal::from_rational(&Rational::frac(3, 2), 64), 64).is_err());
    }

    #[test]
    fn arctan_of_one_is_quarter_pi() {
        let a = arctan_ball(&BallReal::from_int(1, 200), 200).unwrap();
        assert!(a.overlaps(&const_pi(200).mul_pow2(-2)));
    }
}
