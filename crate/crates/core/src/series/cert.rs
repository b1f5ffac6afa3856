//! Exact certificates that `|a_{n+1}/a_n| ≤ r` for every `n ≥ N`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::term::{term_ratio, TermSpec};
use crate::arith::{QuadExt, Rational};

/// Polynomial certificate.
///
/// After the shift `n = N + t` both ratio polynomials must have
/// coefficients of one sign (so they keep that sign for all `t ≥ 0`), the
/// same sign as each other, and `r·|den(N+t)| − |base|·|num(N+t)|` must have
/// only nonnegative coefficients.
pub fn ratio_certificate(spec: &TermSpec, from: u64, r: &QuadExt) -> bool {
    let (num, den) = spec.ratio_polys();
    let s = BigInt::from(from);
    let num = num.shift(&s);
    let den = den.shift(&s);
    let sn = num.uniform_sign();
    let sd = den.uniform_sign();
    if sn == 0 || sd == 0 || sn != sd || den.coeff(0).is_zero() {
        return false;
    }
    let base = spec.base().abs();
    let len = num.coeffs().len().max(den.coeffs().len());
    (0..len).all(|i| {
        let d = Rational::from_int(den.coeff(i) * sd);
        let n = Rational::from_int(num.coeff(i) * sn);
        let Ok(diff) = r.scale(&d).sub(&base.scale(&n)) else {
            return false;
        };
        diff.signum() >= 0
    })
}

/// Window check: `term_ratio(n) ≤ r` for `n ∈ [N, N+window]`, plus the
/// asymptotic limit strictly below `r` (or equal when `allow_equal`).
pub fn ratio_window(spec: &TermSpec, from: u64, window: u64, r: &QuadExt, allow_equal: bool) -> bool {
    let Ok(lim) = spec.rho().cmp_value(r) else {
        return false;
    };
    if lim.is_gt() || (lim.is_eq() && !allow_equal) {
        return false;
    }
    (from..=from + window).all(|n| match term_ratio(spec, n) {
        Ok(q) => q.cmp_value(r).is_ok_and(|o| o.is_le()),
        Err(_) => false,
    })
}

/// Either certificate.
pub fn ratio_bounded(spec: &TermSpec, from: u64, window: u64, r: &QuadExt, allow_equal: bool) -> bool {
    ratio_certificate(spec, from, r) || ratio_window(spec, from, window, r, allow_equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::TermSign;

    #[test]
    fn certifies_geometric_ratio() {
        let l5 = TermSpec::builder().denominator(&[0, 0, 0, 1]).cb_power(-1).build().unwrap();
        let third = QuadExt::rational(Rational::frac(1, 3));
        assert!(ratio_certificate(&l5, 1, &third));
        // The limit is 1/4, so 1/5 can never be certified.
        assert!(!ratio_certificate(&l5, 50, &QuadExt::rational(Rational::frac(1, 5))));
        assert!(!ratio_window(&l5, 50, 32, &QuadExt::rational(Rational::frac(1, 5)), false));
    }

    #[test]
    fn monotone_onset() {
        // |m³/C(2m,m)| grows until m = 3.
        let l6 = TermSpec::builder()
            .sign(TermSign::AltMinus)
            .numerator(&[0, 0, 0, 1])
            .cb_power(-1)
            .build()
            .unwrap();
        assert!(!ratio_certificate(&l6, 1, &QuadExt::one()));
        assert!(ratio_certificate(&l6, 3, &QuadExt::one()));
    }
}
