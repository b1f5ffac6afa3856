use crate::arith::{BallReal, Rational};
use crate::series::{sum_direct, TermSign, TermSpec, Tolerance};

use super::{trigamma::zeta3_euler_maclaurin, ConstError};

/// `(5/2)·Σ (-1)^(m-1) / (m³·C(2m,m))`, summed by the series engine.
pub fn zeta3_binomial_series(prec: u32) -> Result<BallReal, ConstError> {
    let spec = TermSpec::builder()
        .sign(TermSign::AltPlus)
        .denominator(&[0, 0, 0, 1])
        .cb_power(-1)
        .build()
        .expect("valid term spec");
    let sum = sum_direct(&spec, Tolerance::bits(prec as u64 + 8), 1_000_000)?;
    Ok(sum.value.mul_rational(&Rational::frac(5, 2)).with_prec(prec + 8))
}

/// ζ(3) from two independent methods; the returned ball is their
/// intersection, and disjoint balls mean one of them is broken.
pub fn const_zeta3(prec: u32) -> Result<BallReal, ConstError> {
    let work = prec + 8;
    let a = zeta3_binomial_series(work)?;
    let b = zeta3_euler_maclaurin(work);
    let both = a
        .intersect(&b)
        .ok_or(ConstError::InternalInconsistency("zeta(3) methods disagree"))?;
    Ok(both.with_prec(prec))
}
