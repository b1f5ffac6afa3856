use super::cert::ratio_bounded;
use super::power::sum_power_law;
use super::term::{term_ratio, TermGen, TermSpec};
use super::{SeriesError, SumMethod, SumResult, TailMode, Tolerance};
use crate::arith::{BallReal, QuadExt, Rational};

/// Indices checked past the truncation point by the window certificate.
pub const DEFAULT_WINDOW: u64 = 32;

/// Direct summation with a certified tail, using the default window.
pub fn sum_direct(spec: &TermSpec, tol: Tolerance, max_terms: u64) -> Result<SumResult, SeriesError> {
    sum_direct_windowed(spec, tol, max_terms, DEFAULT_WINDOW)
}

/// Direct summation; the tail mode is picked from the term structure.
pub fn sum_direct_windowed(
    spec: &TermSpec,
    tol: Tolerance,
    max_terms: u64,
    window: u64,
) -> Result<SumResult, SeriesError> {
    if max_terms == 0 {
        return Err(SeriesError::NoCertifiableTail);
    }
    let rho = spec.rho();
    let rho_vs_one = rho.cmp_value(&QuadExt::one())?;
    if spec.is_effectively_alternating() {
        if rho_vs_one.is_gt() || (rho_vs_one.is_eq() && spec.decay_twice() <= 0) {
            return Err(SeriesError::NoCertifiableTail);
        }
        if rho_vs_one.is_eq() && boundary_terms_log2(spec, tol) > 64 - max_terms.leading_zeros() as i64 + 4 {
            return Err(SeriesError::MaxTermsExceeded(max_terms));
        }
        return truncate(spec, tol, max_terms, window, Mode::Alternating);
    }
    if rho_vs_one.is_lt() {
        return truncate(spec, tol, max_terms, window, Mode::Geometric);
    }
    if rho_vs_one.is_eq() && spec.cb_power() == 1 && spec.decay_twice() > 2 {
        return sum_power_law(spec, tol, max_terms);
    }
    Err(SeriesError::NoCertifiableTail)
}

/// Rough `log2 N` with `|a_N| ≈ 2^-bits` for `|a_n| ~ C·n^(-decay/2)`.
fn boundary_terms_log2(spec: &TermSpec, tol: Tolerance) -> i64 {
    let lp = spec.numerator().leading().bits() as i64;
    let lq = spec.denominator().leading().bits() as i64;
    let log_c = lp - lq + 1;
    2 * (log_c + tol.get_bits() as i64) / spec.decay_twice().max(1)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Alternating,
    Geometric,
}

fn truncate(
    spec: &TermSpec,
    tol: Tolerance,
    max_terms: u64,
    window: u64,
    mode: Mode,
) -> Result<SumResult, SeriesError> {
    let prec = tol.precision();
    let target = tol.target();
    let stop = -(tol.get_bits() as i64) - 2;
    let mut gen = TermGen::new(spec);
    let mut sum = QuadExt::zero();
    let (_, mut current) = gen.next().expect("infinite");
    let mut retry_at = spec.start();
    for used in 1..=max_terms {
        let n = spec.start() + used - 1;
        sum = sum.add(&current)?;
        let (_, next) = gen.next().expect("infinite");
        let small = quad_log2_upper(&next).map_or(true, |l| l <= stop);
        if small && n >= retry_at {
            let tail = match mode {
                Mode::Geometric => geometric_tail(spec, n, &next, window, prec)?,
                Mode::Alternating => alternating_tail(spec, n, &next, window, prec)?,
            };
            match tail {
                Some((shift, err)) if err <= target => {
                    let center = sum.add(&shift)?;
                    let value = BallReal::from_quad(&center, prec).add_error(&err);
                    let tail_mode = match mode {
                        Mode::Geometric => TailMode::Geometric,
                        Mode::Alternating => TailMode::Alternating,
                    };
                    return Ok(SumResult { value, terms_used: used, method: SumMethod::Direct, tail_mode });
                }
                _ => retry_at = n + 1 + (n - spec.start()) / 8,
            }
        }
        current = next;
    }
    Err(SeriesError::MaxTermsExceeded(max_terms))
}

/// Geometric tail after index `n`: center shift 0, error
/// `|a_{n+1}| / (1 − r)`.
fn geometric_tail(
    spec: &TermSpec,
    n: u64,
    next: &QuadExt,
    window: u64,
    prec: u32,
) -> Result<Option<(QuadExt, Rational)>, SeriesError> {
    let Ok(ratio) = term_ratio(spec, n) else {
        return Ok(None);
    };
    let one = QuadExt::one();
    if ratio.cmp_value(&one)?.is_ge() {
        return Ok(None);
    }
    let mut r = ratio.scale(&Rational::frac(11, 10));
    if r.cmp_value(&one)?.is_ge() {
        r = ratio.add(&one)?.scale(&Rational::frac(1, 2));
    }
    if !ratio_bounded(spec, n, window, &r, false) {
        return Ok(None);
    }
    let gap = quad_lower(&one.sub(&r)?, prec);
    if gap.signum() <= 0 {
        return Ok(None);
    }
    let err = quad_abs_upper(next, prec) / &gap;
    Ok(Some((QuadExt::zero(), err)))
}

/// Alternating tail after index `n`: it lies between 0 and `a_{n+1}`, so
/// the center moves by `a_{n+1}/2` and the error is `|a_{n+1}|/2`.
fn alternating_tail(
    spec: &TermSpec,
    n: u64,
    next: &QuadExt,
    window: u64,
    prec: u32,
) -> Result<Option<(QuadExt, Rational)>, SeriesError> {
    if !ratio_bounded(spec, n + 1, window, &QuadExt::one(), true) {
        return Ok(None);
    }
    let half = Rational::frac(1, 2);
    let err = quad_abs_upper(next, prec) * &half;
    Ok(Some((next.scale(&half), err)))
}

/// Upper estimate of `log2|x|`; `None` for zero.
pub(crate) fn quad_log2_upper(x: &QuadExt) -> Option<i64> {
    let a = x.a().log2_estimate();
    let b = x.b().log2_estimate();
    if x.a().signum() * x.b().signum() < 0 {
        // |x| = |norm| / |a − b√d| and |a − b√d| ≥ max(|a|, |b|).
        let n = x.norm().log2_estimate()?;
        return Some(n + 1 - (a.max(b).expect("both present") - 1) + 1);
    }
    match (a, b) {
        (None, None) => None,
        (a, b) => Some(a.map(|e| e + 1).max(b.map(|e| e + 3)).expect("one side present") + 1),
    }
}

/// Rational upper bound of `|x|`.
pub(crate) fn quad_abs_upper(x: &QuadExt, prec: u32) -> Rational {
    BallReal::from_quad(&x.abs(), prec).upper_rational()
}

/// Rational lower bound of `x`.
pub(crate) fn quad_lower(x: &QuadExt, prec: u32) -> Rational {
    BallReal::from_quad(x, prec).lower_rational()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{ball_digits, Radicand};
    use crate::series::{term_exact, TermSign};

    fn l5() -> TermSpec {
        TermSpec::builder().denominator(&[0, 0, 0, 1]).cb_power(-1).build().unwrap()
    }

    fn l3() -> TermSpec {
        TermSpec::builder().sign(TermSign::AltPlus).denominator(&[0, 1]).cb_power(-1).build().unwrap()
    }

    fn close_to(b: &BallReal, dec: &str) {
        let s = b.to_decimal(dec.len() - 2);
        assert_eq!(&s[..dec.len() - 1], &dec[..dec.len() - 1], "{s} vs {dec}");
    }

    #[test]
    fn geometric_sum_at_50_digits() {
        let r = sum_direct(&l5(), Tolerance::digits(50), 10_000).unwrap();
        assert_eq!(r.tail_mode, TailMode::Geometric);
        assert!(ball_digits(&r.value) >= 50);
        close_to(&r.value, "0.5229461921333351084");
        // Tail soundness: 50 more exact terms stay inside.
        let mut s = QuadExt::zero();
        for n in 1..=r.terms_used + 50 {
            s = s.add(&term_exact(&l5(), n)).unwrap();
        }
        assert!(r.value.contains_rational(s.as_rational().unwrap()));
    }

    #[test]
    fn alternating_sum() {
        let r = sum_direct(&l3(), Tolerance::digits(40), 10_000).unwrap();
        assert_eq!(r.tail_mode, TailMode::Alternating);
        close_to(&r.value, "0.4304089409640040388");
    }

    #[test]
    fn quadratic_base() {
        let base = QuadExt::new(Rational::from(4), Rational::from(-2), Radicand::Three);
        let l7 = TermSpec::builder().base(base).denominator(&[0, 0, 1]).cb_power(-1).build().unwrap();
        let r = sum_direct(&l7, Tolerance::digits(50), 10_000).unwrap();
        close_to(&r.value, "0.2808517901150824866");
    }

    #[test]
    fn degenerate_budgets() {
        assert_eq!(sum_direct(&l5(), Tolerance::digits(10), 0), Err(SeriesError::NoCertifiableTail));
        assert_eq!(sum_direct(&l5(), Tolerance::digits(50), 5), Err(SeriesError::MaxTermsExceeded(5)));
        let divergent = TermSpec::builder().cb_power(1).build().unwrap();
        assert_eq!(sum_direct(&divergent, Tolerance::digits(10), 100), Err(SeriesError::NoCertifiableTail));
    }

    #[test]
    fn deterministic() {
        let a = sum_direct(&l5(), Tolerance::digits(30), 10_000).unwrap();
        let b = sum_direct(&l5(), Tolerance::digits(30), 10_000).unwrap();
        assert_eq!(a, b);
    }
}
