use super::accel::{sum_cvz, sum_euler};
use super::direct::sum_direct;
use super::term::TermSpec;
use super::{SeriesError, SumResult, Tolerance};
use crate::arith::QuadExt;

/// Summation strategy requested by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SumPolicy {
    #[default]
    Auto,
    Direct,
    Cvz,
    Euler,
}

/// Picks a method from `ρ = |base|·4^cb_power`: direct below 1; CVZ
/// cross-checked by Euler for alternating series at 1; the power-law tail
/// for non-alternating series at 1 decaying faster than `1/n`.
pub fn sum_auto(spec: &TermSpec, tol: Tolerance, max_terms: u64) -> Result<SumResult, SeriesError> {
    let rho = spec.rho().cmp_value(&QuadExt::one())?;
    if rho.is_lt() {
        return sum_direct(spec, tol, max_terms);
    }
    if rho.is_gt() {
        return Err(SeriesError::Divergent);
    }
    if spec.is_effectively_alternating() {
        if spec.decay_twice() <= 0 {
            return Err(SeriesError::Divergent);
        }
        let a = sum_cvz(spec, tol, max_terms)?;
        let b = sum_euler(spec, tol, max_terms)?;
        let value = a.value.intersect(&b.value).ok_or(SeriesError::MethodDisagreement)?;
        return Ok(SumResult { value, terms_used: a.terms_used.max(b.terms_used), ..a });
    }
    if spec.decay_twice() <= 2 {
        return Err(SeriesError::Divergent);
    }
    sum_direct(spec, tol, max_terms)
}

pub fn sum_with(spec: &TermSpec, policy: SumPolicy, tol: Tolerance, max_terms: u64) -> Result<SumResult, SeriesError> {
    match policy {
        SumPolicy::Auto => sum_auto(spec, tol, max_terms),
        SumPolicy::Direct => sum_direct(spec, tol, max_terms),
        SumPolicy::Cvz => sum_cvz(spec, tol, max_terms),
        SumPolicy::Euler => sum_euler(spec, tol, max_terms),
    }
}
