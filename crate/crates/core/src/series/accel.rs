//! Acceleration of alternating series: Cohen–Villegas–Zagier and the Euler
//! transform. Both act on the tail past the monotonicity onset, and every
//! result must meet the bracket of two consecutive exact partial sums.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::cert::ratio_bounded;
use super::direct::{quad_abs_upper, quad_log2_upper, DEFAULT_WINDOW};
use super::term::{TermGen, TermSpec};
use super::{SeriesError, SumMethod, SumResult, TailMode, Tolerance};
use crate::arith::{BallReal, QuadExt, Radicand, Rational};

/// Largest Euler transform order attempted.
const EULER_BUDGET: u64 = 60_000;

/// Alternating tail `Σ_{k≥0} (-1)^k b_k` past the onset.
struct Tail {
    /// Exact sum of the terms before the onset.
    head: QuadExt,
    /// Number of terms in `head`.
    head_len: u64,
    /// Sign of the first tail term.
    sign: i32,
    /// `b_0, b_1, …` (magnitudes).
    mags: Vec<QuadExt>,
}

impl Tail {
    fn prepare(spec: &TermSpec, count: usize, max_terms: u64) -> Result<Self, SeriesError> {
        if !spec.is_effectively_alternating() {
            return Err(SeriesError::NotAlternating);
        }
        let rho = spec.rho().cmp_value(&QuadExt::one())?;
        if rho.is_gt() || (rho.is_eq() && spec.decay_twice() <= 0) {
            return Err(SeriesError::Divergent);
        }
        let onset = onset(spec)?;
        let head_len = onset - spec.start();
        if head_len + count as u64 > max_terms {
            return Err(SeriesError::MaxTermsExceeded(max_terms));
        }
        let mut gen = TermGen::new(spec);
        let mut head = QuadExt::zero();
        for _ in 0..head_len {
            head = head.add(&gen.next().expect("infinite").1)?;
        }
        let terms = gen.take_terms(count);
        let sign = terms[0].signum();
        let mut mags = Vec::with_capacity(count);
        for (k, t) in terms.into_iter().enumerate() {
            let expected = if k % 2 == 0 { sign } else { -sign };
            if t.signum() != expected {
                return Err(SeriesError::NotAlternating);
            }
            mags.push(t.abs());
        }
        Ok(Tail { head, head_len, sign, mags })
    }

    /// `head + sign·τ`.
    fn total(&self, tau: &QuadExt) -> Result<QuadExt, SeriesError> {
        Ok(self.head.add(&tau.scale(&Rational::from(self.sign as i64)))?)
    }

    /// Exact partial sums of the tail with `n` and `n + 1` terms, as a ball.
    fn bracket(&self, n: usize, prec: u32) -> Result<BallReal, SeriesError> {
        let mut p = QuadExt::zero();
        for (k, b) in self.mags[..n].iter().enumerate() {
            p = if k % 2 == 0 { p.add(b)? } else { p.sub(b)? };
        }
        let q = if n % 2 == 0 { p.add(&self.mags[n])? } else { p.sub(&self.mags[n])? };
        let lo = BallReal::from_quad(&self.total(&p)?, prec);
        let hi = BallReal::from_quad(&self.total(&q)?, prec);
        Ok(lo.hull(&hi))
    }
}

/// First index past the last exact violation of `|a_{n+1}| < |a_n|` within
/// the scan window, certified to be monotone from there on.
fn onset(spec: &TermSpec) -> Result<u64, SeriesError> {
    let start = spec.start();
    let mags: Vec<QuadExt> = TermGen::new(spec)
        .take(DEFAULT_WINDOW as usize + 2)
        .map(|(_, t)| t.abs())
        .collect();
    let mut first = start;
    for k in 0..mags.len() - 1 {
        if mags[k + 1].cmp_value(&mags[k])?.is_ge() {
            first = start + k as u64 + 1;
        }
    }
    let one = QuadExt::one();
    for from in [first, first + DEFAULT_WINDOW, first + 4 * DEFAULT_WINDOW] {
        if ratio_bounded(spec, from, DEFAULT_WINDOW, &one, true) {
            return Ok(from);
        }
    }
    Err(SeriesError::NoCertifiableTail)
}

/// Number of CVZ terms for `digits` decimal digits: `⌈1.31·digits⌉ + 10`.
pub fn cvz_terms(digits: u64) -> usize {
    ((131 * digits).div_ceil(100) + 10) as usize
}

/// Cohen–Villegas–Zagier acceleration of an alternating series.
///
/// The textbook radius `8·b_0·(3+√8)^-n` needs a totally monotone tail,
/// which polynomially weighted terms such as `m³/C(2m,m)` violate. The
/// radius therefore also carries twice the distance to a higher-order run.
pub fn sum_cvz(spec: &TermSpec, tol: Tolerance, max_terms: u64) -> Result<SumResult, SeriesError> {
    let n = cvz_terms(tol.decimal_digits());
    let check = n + n / 4 + 4;
    let prec = tol.precision();
    let tail = Tail::prepare(spec, check + 1, max_terms)?;
    let tau = cvz_core(&tail.mags[..n])?;
    let tau_check = cvz_core(&tail.mags[..check])?;
    // 3+√8 > 1457/250.
    let shrink = Rational::frac(250, 1457).pow(n as i64)?;
    let bound = quad_abs_upper(&tail.mags[0], prec) * Rational::from(8) * shrink;
    let drift = quad_abs_upper(&tau.sub(&tau_check)?, prec) * Rational::from(2);
    let value = BallReal::from_quad(&tail.total(&tau)?, prec).add_error(&(bound + drift));
    if !value.overlaps(&tail.bracket(n, prec)?) {
        return Err(SeriesError::GuardFailure);
    }
    Ok(SumResult {
        value,
        terms_used: tail.head_len + check as u64,
        method: SumMethod::Cvz,
        tail_mode: TailMode::Alternating,
    })
}

/// `Σ_{k<n} (-1)^k b_k` accelerated with the `n`-th Chebyshev weights.
fn cvz_core(mags: &[QuadExt]) -> Result<QuadExt, SeriesError> {
    let n = mags.len();
    // d = ((3+√8)^n + (3−√8)^n)/2 via u_{k+1} = 6u_k − u_{k−1}.
    let (mut u0, mut u1) = (BigInt::from(2), BigInt::from(6));
    for _ in 0..n {
        let next = &u1 * 6 - &u0;
        u0 = u1;
        u1 = next;
    }
    let d = Rational::from_int(u0 / 2);
    let mut b = Rational::from(-1);
    let mut c = -d.clone();
    let mut s = QuadExt::zero();
    for (k, mag) in mags.iter().enumerate() {
        c = &b - &c;
        s = s.add(&mag.scale(&c))?;
        let (ki, ni) = (k as i64, n as i64);
        b = b * Rational::frac(2 * (ki + ni) * (ki - ni), (2 * ki + 1) * (ki + 1));
    }
    Ok(s.scale(&d.recip()?))
}

/// Euler transform `Σ_j Δ^j b_0 / 2^{j+1}` of the alternating tail.
///
/// Polynomially weighted tails have differences of varying sign, so the
/// radius `|Δ^J b_0|/2^J` is widened by twice the distance to a run of
/// order `J' = J + J/4 + 4`, as for CVZ.
pub fn sum_euler(spec: &TermSpec, tol: Tolerance, max_terms: u64) -> Result<SumResult, SeriesError> {
    let prec = tol.precision();
    // Size of b_0 decides the order; read it off a short preparation.
    let probe = Tail::prepare(spec, 1, max_terms)?;
    let b0_log = quad_log2_upper(&probe.mags[0]).unwrap_or(0).max(0) as u64;
    let order = tol.get_bits() + b0_log + 4;
    if order > EULER_BUDGET {
        return Err(SeriesError::SlowConvergence);
    }
    let j_max = order as usize;
    let j_check = j_max + j_max / 4 + 4;
    let tail = Tail::prepare(spec, j_check + 2, max_terms)?;
    let field = tail.mags.iter().find_map(QuadExt::radicand);

    // Integer numerators over one common denominator.
    let mut den = BigInt::one();
    for m in &tail.mags[..=j_check] {
        den = den.lcm(m.a().denom()).lcm(m.b().denom());
    }
    let scaled = |r: &Rational| r.numer() * (&den / r.denom());
    let mut row_a: Vec<BigInt> = tail.mags[..=j_check].iter().map(|m| scaled(m.a())).collect();
    let mut row_b: Vec<BigInt> = match field {
        Some(_) => tail.mags[..=j_check].iter().map(|m| scaled(m.b())).collect(),
        None => Vec::new(),
    };
    let mut acc_a = BigInt::zero();
    let mut acc_b = BigInt::zero();
    let mut at_order = None;
    for j in 0..j_check {
        if j == j_max {
            at_order = Some((acc_a.clone(), acc_b.clone(), quad_from(&row_a[0], row_b.first(), &den, field)?));
        }
        acc_a = (acc_a << 1usize) + &row_a[0];
        if !row_b.is_empty() {
            acc_b = (acc_b << 1usize) + &row_b[0];
        }
        difference(&mut row_a);
        if !row_b.is_empty() {
            difference(&mut row_b);
        }
    }
    let has_b = !row_b.is_empty();
    let (a_j, b_j, _) = at_order.expect("j_check > j_max");
    let tau_j = quad_from(&a_j, has_b.then_some(&b_j), &(&den << j_max), field)?;
    let tau = quad_from(&acc_a, has_b.then_some(&acc_b), &(&den << j_check), field)?;
    let last = quad_from(&row_a[0], row_b.first(), &den, field)?;
    let drift = quad_abs_upper(&tau.sub(&tau_j)?, prec) * Rational::from(2);
    let err = quad_abs_upper(&last, prec).mul_pow2(-(j_check as i64)) + drift;
    let value = BallReal::from_quad(&tail.total(&tau)?, prec).add_error(&err);
    if !value.overlaps(&tail.bracket(j_check, prec)?) {
        return Err(SeriesError::GuardFailure);
    }
    Ok(SumResult {
        value,
        terms_used: tail.head_len + j_check as u64 + 1,
        method: SumMethod::Euler,
        tail_mode: TailMode::Alternating,
    })
}

fn difference(row: &mut Vec<BigInt>) {
    for i in 0..row.len() - 1 {
        let next = row[i + 1].clone();
        row[i] -= next;
    }
    row.pop();
}

fn quad_from(a: &BigInt, b: Option<&BigInt>, den: &BigInt, field: Option<Radicand>) -> Result<QuadExt, SeriesError> {
    let a = Rational::new(a.clone(), den.clone())?;
    Ok(match (b, field) {
        (Some(b), Some(d)) => QuadExt::new(a, Rational::new(b.clone(), den.clone())?, d),
        _ => QuadExt::rational(a),
    })
}
