//! Tails of non-alternating series with `ρ = 1` (`cb_power = 1`,
//! `|base| = 1/4`), where terms decay only like a power of `n`.
//!
//! With `R(n) = a_{n+1}/a_n = num(n)/den(n)` the tail is written as
//! `Σ_{n≥N} a_n = a_N·G(N) − Σ_{n≥N} a_n·ε(n)`, where
//! `G(n) = Σ_{k≤K} g_k n^{1-k}` solves `den·G(n) − num·G(n+1) = den` up to
//! the residual `ε(n)·den(n)`. The coefficients `g_k` come from a triangular
//! system, and `|ε(n)|` is bounded by an explicit power of `n`. The remaining
//! sum uses `C(2n,n)/4^n ≤ 1/√(πn)` together with an integral bound.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Zero};

use super::poly::{gen_binomial, shifted_power, Poly};
use super::term::{TermGen, TermSpec};
use super::{SeriesError, SumMethod, SumResult, TailMode, Tolerance};
use crate::arith::{BallReal, QuadExt, Rational};

/// Attempts per truncation point before moving to a larger one.
const K_ATTEMPTS: usize = 3;

pub(crate) fn sum_power_law(spec: &TermSpec, tol: Tolerance, max_terms: u64) -> Result<SumResult, SeriesError> {
    let (num, den) = spec.ratio_polys();
    // R(n) = |base|·num/den with |base| = 1/4.
    let den = den.scale(&BigInt::from(4));
    let mut solver = Expansion::new(num, den)?;
    let bits = tol.get_bits();
    let target = tol.target();
    let prec = tol.precision();

    let mut n_trunc = 64u64.max(bits.next_power_of_two());
    if n_trunc > max_terms {
        n_trunc = max_terms.max(8);
    }
    loop {
        if n_trunc > max_terms {
            return Err(SeriesError::MaxTermsExceeded(max_terms));
        }
        let log2n = n_trunc.ilog2() as f64;
        if let Some(mut k) = solver.choose_order(log2n, bits as f64 + 8.0)? {
            for _ in 0..K_ATTEMPTS {
                if let Some(err) = solver.remainder_bound(spec, n_trunc, k)? {
                    if err <= target {
                        return finish(spec, &solver, n_trunc, k, &err, prec);
                    }
                }
                k += k / 4 + 2;
            }
        }
        if n_trunc >= max_terms {
            return Err(SeriesError::MaxTermsExceeded(max_terms));
        }
        n_trunc = (n_trunc * 4).min(max_terms);
    }
}

fn finish(
    spec: &TermSpec,
    solver: &Expansion,
    n_trunc: u64,
    k: usize,
    err: &Rational,
    prec: u32,
) -> Result<SumResult, SeriesError> {
    let mut head = QuadExt::zero();
    let mut gen = TermGen::new(spec);
    let mut a_n = QuadExt::zero();
    for (n, t) in &mut gen {
        if n == n_trunc {
            a_n = t;
            break;
        }
        head = head.add(&t)?;
    }
    let nr = Rational::from(n_trunc as i64);
    let mut g_at = Rational::zero();
    for (i, g) in solver.g[..=k].iter().enumerate() {
        g_at = g_at + g * &nr.pow(1 - i as i64)?;
    }
    let total = head.add(&a_n.scale(&g_at))?;
    let value = BallReal::from_quad(&total, prec).add_error(err);
    Ok(SumResult {
        value,
        terms_used: n_trunc - spec.start(),
        method: SumMethod::Direct,
        tail_mode: TailMode::PowerLaw,
    })
}

struct Expansion {
    num: Poly,
    den: Poly,
    d: usize,
    g: Vec<Rational>,
}

impl Expansion {
    fn new(num: Poly, den: Poly) -> Result<Self, SeriesError> {
        let d = den.degree();
        if num.degree() != d || num.leading() != den.leading() || d == 0 {
            return Err(SeriesError::NoCertifiableTail);
        }
        Ok(Expansion { num, den, d, g: Vec::new() })
    }

    /// Coefficient of `n^e` in `den(n)·n^{1-k} − num(n)·(n+1)^{1-k}`.
    fn level(&self, k: usize, e: i64, binom: &[BigInt]) -> BigInt {
        let d = self.d as i64;
        let base = e - 1 + k as i64;
        let mut acc = if (0..=d).contains(&base) { self.den.coeff(base as usize) } else { BigInt::zero() };
        for i in base.max(0)..=d {
            let j = (i - base) as usize;
            acc -= self.num.coeff(i as usize) * &binom[j];
        }
        acc
    }

    /// Extends `g` to `g_0..=g_k`.
    fn solve(&mut self, k: usize) -> Result<(), SeriesError> {
        if self.g.len() > k {
            return Ok(());
        }
        let d = self.d as i64;
        // binoms[kk][j] = C(1 - kk, j) for j ≤ k + 1.
        let binoms: Vec<Vec<BigInt>> = (0..=k)
            .map(|kk| {
                let top = 1 - kk as i64;
                let mut row = Vec::with_capacity(k + 2);
                let mut c = BigInt::one();
                for j in 0..=(k as i64 + 1) {
                    row.push(c.clone());
                    c = c * BigInt::from(top - j) / BigInt::from(j + 1);
                }
                row
            })
            .collect();
        debug_assert_eq!(binoms.last().map(|r| r[2].clone()), Some(gen_binomial(1 - k as i64, 2)));
        for m in self.g.len()..=k {
            let e = d - m as i64;
            let mut rhs = Rational::from_int(if e >= 0 { self.den.coeff(e as usize) } else { BigInt::zero() });
            for (kk, g) in self.g.iter().enumerate() {
                let l = self.level(kk, e, &binoms[kk]);
                if !l.is_zero() {
                    rhs = rhs - g * &Rational::from_int(l);
                }
            }
            let pivot = self.level(m, e, &binoms[m]);
            if pivot.is_zero() {
                return Err(SeriesError::NoCertifiableTail);
            }
            self.g.push(rhs.checked_div(&Rational::from_int(pivot))?);
        }
        Ok(())
    }

    /// Smallest order whose leading neglected coefficient looks small
    /// enough: `log2|g_k| − k·log2 N ≤ −bits`. `None` if the estimates start
    /// growing first.
    fn choose_order(&mut self, log2n: f64, bits: f64) -> Result<Option<usize>, SeriesError> {
        let mut best = f64::INFINITY;
        let mut k = 2;
        loop {
            self.solve(k)?;
            let est = match self.g[k].log2_estimate() {
                Some(l) => l as f64 - k as f64 * log2n,
                None => f64::NEG_INFINITY,
            };
            if est <= -bits {
                return Ok(Some(k.max(2)));
            }
            if est > best + 8.0 && k > 16 {
                return Ok(None);
            }
            best = best.min(est);
            k += 1 + k / 8;
        }
    }

    /// Rigorous bound on `|Σ_{n≥N} a_n ε(n)|` for the order-`k` expansion;
    /// `None` when the estimate cannot be made at this `N`.
    fn remainder_bound(&mut self, spec: &TermSpec, n_trunc: u64, k: usize) -> Result<Option<Rational>, SeriesError> {
        self.solve(k)?;
        let scale = self.g[..=k].iter().fold(BigInt::one(), |l, g| l.lcm(g.denom()));
        // P1(n) = scale·Σ g_i n^{k-i}
        let mut p1 = vec![BigInt::zero(); k + 1];
        for (i, g) in self.g[..=k].iter().enumerate() {
            p1[k - i] = g.numer() * (&scale / g.denom());
        }
        let p1 = Poly::new(p1);
        let nk = Poly::new({
            let mut v = vec![BigInt::zero(); k];
            v[k - 1] = BigInt::one();
            v
        });
        let n1k = shifted_power(k as u32 - 1);
        let w = self
            .den
            .mul(&p1)
            .mul(&n1k)
            .sub(&self.num.mul(&p1.shift(&BigInt::one())).mul(&nk))
            .sub(&self.den.mul(&nk).mul(&n1k).scale(&scale));
        if w.is_zero() {
            return Ok(Some(Rational::zero()));
        }
        let decay_eps = self.d as i64 + 2 * k as i64 - 2 - w.degree() as i64;
        let p = spec.numerator();
        let q = spec.denominator();
        let m = decay_eps + q.degree() as i64 - p.degree() as i64;
        if m < 1 {
            return Ok(None);
        }
        let den_low = self.den.abs_ratio_lower(n_trunc);
        let q_low = q.abs_ratio_lower(n_trunc);
        if den_low.signum() <= 0 || q_low.signum() <= 0 {
            return Ok(None);
        }
        // |ε(n)| ≤ eps·n^{-decay_eps}
        let eps = w.abs_ratio_upper(n_trunc) / &(den_low * Rational::from_int(scale));
        // |a_n| ≤ amp·n^{dp-dq-1/2}/√π
        let amp = p.abs_ratio_upper(n_trunc) / &q_low;
        let nr = Rational::from(n_trunc as i64);
        let isqrt = Rational::from(n_trunc.sqrt() as i64);
        let inv_sqrt_pi = Rational::frac(100, 177);
        let integral = Rational::one() + Rational::frac(2 * n_trunc as i64, 2 * m - 1);
        let bound = amp * eps * inv_sqrt_pi * nr.pow(-m)? * integral;
        Ok(Some(bound.checked_div(&isqrt)?.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ball_digits;
    use crate::series::sum_direct;

    fn eq7_quarter() -> TermSpec {
        TermSpec::builder()
            .base(QuadExt::rational(Rational::frac(1, 4)))
            .denominator(&[0, 1, 1])
            .cb_power(1)
            .build()
            .unwrap()
    }

    #[test]
    fn expansion_leading_coefficients() {
        let spec = eq7_quarter();
        let (num, den) = spec.ratio_polys();
        let mut e = Expansion::new(num, den.scale(&BigInt::from(4))).unwrap();
        e.solve(4).unwrap();
        let want = [Rational::frac(2, 3), Rational::frac(4, 5), Rational::frac(4, 35), Rational::frac(-4, 105)];
        assert_eq!(&e.g[..4], &want);
    }

    #[test]
    fn ln4_minus_one_at_50_digits() {
        let r = sum_direct(&eq7_quarter(), Tolerance::digits(50), 100_000).unwrap();
        assert_eq!(r.tail_mode, TailMode::PowerLaw);
        assert!(ball_digits(&r.value) >= 50);
        // ln 4 − 1
        let s = r.value.to_decimal(40);
        assert_eq!(&s[..22], "0.38629436111989061883");
    }
}
