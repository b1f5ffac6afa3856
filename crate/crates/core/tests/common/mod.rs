#![allow(dead_code)]

use binomv_core::{BallReal, Rational};
use num_bigint::BigInt;

/// Exact value of a decimal literal.
pub fn dec(s: &str) -> Rational {
    let (neg, s) = s.strip_prefix('-').map_or((false, s), |r| (true, r));
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    let digits: BigInt = format!("{int}{frac}").parse().unwrap();
    let r = Rational::new(digits, BigInt::from(10).pow(frac.len() as u32)).unwrap();
    if neg {
        -r
    } else {
        r
    }
}

/// Whether the ball meets `[v − 10^-k, v + 10^-k]`.
pub fn near(b: &BallReal, v: &str, k: u32) -> bool {
    let slack = Rational::new(1, BigInt::from(10).pow(k)).unwrap();
    let d = (b.mid_rational() - dec(v)).abs();
    d <= b.rad_rational() + slack
}
