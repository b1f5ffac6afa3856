use alloc::collections::BTreeMap;
use alloc::string::String;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::compile::compile_sum;
use super::VerifyError;
use crate::arith::{ArithError, BallReal, Rational};
use crate::constants::{const_arcsin, const_ln, const_pi, const_sigma, const_zeta3, ln_ball, trigamma_rat};
use crate::lang::{exact_sqrt, serialize, try_exact, Exponent, Expr};
use crate::series::{sum_with, SumMethod, SumPolicy, Tolerance};

/// Extra bits carried through closed-form arithmetic.
const GUARD_BITS: u32 = 32;
const MAX_PARAM_DEPTH: usize = 32;

/// Starting precision for a decimal target: `ceil(3.33·digits) + 64` bits.
pub fn start_precision(digits: u64) -> u32 {
    u32::try_from((digits * 333).div_ceil(100) + 64).unwrap_or(u32::MAX)
}

/// Evaluation settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    /// Working precision in bits; sums are certified to `2^-precision`.
    pub precision: u32,
    pub policy: SumPolicy,
    pub max_terms: u64,
}

impl EvalOptions {
    pub fn for_digits(digits: u64) -> Self {
        EvalOptions { precision: start_precision(digits), policy: SumPolicy::Auto, max_terms: DEFAULT_MAX_TERMS }
    }
}

/// Default term budget for a single sum.
pub const DEFAULT_MAX_TERMS: u64 = 1_000_000;

/// Summation details of an evaluation containing a sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SumInfo {
    pub method: SumMethod,
    pub terms_used: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Evaluation {
    pub value: BallReal,
    pub sum: Option<SumInfo>,
}

/// Certified value of `expr` at the starting precision for `digits`.
pub fn evaluate(expr: &Expr, params: &BTreeMap<String, Expr>, digits: u64) -> Result<BallReal, VerifyError> {
    Ok(evaluate_with(expr, params, &EvalOptions::for_digits(digits))?.value)
}

pub fn evaluate_with(expr: &Expr, params: &BTreeMap<String, Expr>, opts: &EvalOptions) -> Result<Evaluation, VerifyError> {
    let mut ev = Evaluator { params, opts, work: opts.precision + GUARD_BITS, sum: None };
    let value = ev.eval(expr, 0)?.with_prec(opts.precision);
    Ok(Evaluation { value, sum: ev.sum })
}

struct Evaluator<'a> {
    params: &'a BTreeMap<String, Expr>,
    opts: &'a EvalOptions,
    work: u32,
    sum: Option<SumInfo>,
}

impl Evaluator<'_> {
    fn eval(&mut self, e: &Expr, depth: usize) -> Result<BallReal, VerifyError> {
        if let Some(q) = self.exact(e) {
            return Ok(BallReal::from_quad(&q, self.work));
        }
        let w = self.work;
        Ok(match e {
            Expr::Pi => const_pi(w),
            Expr::Zeta3 => const_zeta3(w)?,
            Expr::Sigma => const_sigma(w),
            Expr::Trigamma(p, q) => {
                let x = Rational::new(BigInt::from(p.clone()), BigInt::from(q.clone()))?;
                trigamma_rat(&x, w)?
            }
            Expr::Param(name) => {
                if depth >= MAX_PARAM_DEPTH {
                    return Err(VerifyError::Unsupported(alloc::format!("parameter '{name}' nests too deeply")));
                }
                let def = self.params.get(name).ok_or_else(|| VerifyError::UnboundParam(name.clone()))?;
                self.eval(def, depth + 1)?
            }
            Expr::Add(a, b) => self.eval(a, depth)?.add(&self.eval(b, depth)?),
            Expr::Sub(a, b) => self.eval(a, depth)?.sub(&self.eval(b, depth)?),
            Expr::Mul(a, b) => self.eval(a, depth)?.mul(&self.eval(b, depth)?),
            Expr::Div(a, b) => self.eval(a, depth)?.div(&self.eval(b, depth)?)?,
            Expr::Neg(a) => self.eval(a, depth)?.neg(),
            Expr::Pow(a, Exponent::Int(k)) => self.eval(a, depth)?.powi(*k)?,
            Expr::Pow(a, Exponent::Rat(r)) => {
                let x = self.eval(a, depth)?;
                let q = r.denom().to_u32().ok_or(ArithError::Domain("exponent denominator too large"))?;
                let p = r.numer().to_i64().ok_or(ArithError::Domain("exponent too large"))?;
                nth_root(&x, q, w)?.powi(p)?
            }
            Expr::Pow(_, Exponent::Linear { .. }) | Expr::Index(_) | Expr::CBinom(_) => {
                return Err(VerifyError::Unsupported(alloc::format!("'{}' outside a sum", serialize(e))));
            }
            Expr::Ln(a) => match self.exact(a) {
                Some(q) => const_ln(&q, w)?,
                None => ln_ball(&self.eval(a, depth)?, w)?,
            },
            Expr::Sqrt(a) => self.eval(a, depth)?.sqrt()?,
            Expr::Arcsin(a) => const_arcsin(&self.eval(a, depth)?, w)?,
            Expr::Sum(index, body) => self.sum(index, body, depth)?,
            Expr::Int(_) | Expr::Rat(..) | Expr::Surd(_) => {
                return Err(ArithError::ZeroDenominator.into());
            }
        })
    }

    fn exact(&self, e: &Expr) -> Option<crate::arith::QuadExt> {
        match e {
            Expr::Sqrt(a) => exact_sqrt(try_exact(a, self.params)?.as_rational()?),
            _ => try_exact(e, self.params),
        }
    }

    fn sum(&mut self, index: &str, body: &Expr, depth: usize) -> Result<BallReal, VerifyError> {
        let c = compile_sum(body, index, self.params)?;
        let tol = Tolerance::bits(u64::from(self.opts.precision) + 8);
        let r = sum_with(&c.spec, self.opts.policy, tol, self.opts.max_terms)?;
        self.sum = Some(SumInfo { method: r.method, terms_used: r.terms_used });
        let mut v = r.value.with_prec(self.work);
        if c.scale != crate::arith::QuadExt::one() {
            v = v.mul(&BallReal::from_quad(&c.scale, self.work));
        }
        for (f, s) in &c.extra {
            let x = self.eval(f, depth)?;
            v = if *s > 0 { v.mul(&x) } else { v.div(&x)? };
        }
        Ok(v)
    }
}

/// `x^(1/q)` for `x ≥ 0` via integer `q`-th roots of the endpoints.
fn nth_root(x: &BallReal, q: u32, prec: u32) -> Result<BallReal, ArithError> {
    let lo = x.lower_rational();
    let hi = x.upper_rational();
    if lo.signum() < 0 {
        return Err(ArithError::Domain("fractional power of a negative number"));
    }
    if q == 1 {
        return Ok(x.clone());
    }
    let s = i64::from(prec) + 8;
    let shift = s * i64::from(q);
    let lo_s = lo.mul_pow2(shift);
    let hi_s = hi.mul_pow2(shift);
    let l = lo_s.numer() / lo_s.denom();
    let h = Integer::div_ceil(hi_s.numer(), hi_s.denom());
    let r_lo = l.nth_root(q);
    let mut r_hi = h.nth_root(q);
    if r_hi.pow(q) < h {
        r_hi += 1;
    }
    let two = Rational::one().mul_pow2(-s);
    let a = Rational::from(r_lo) * &two;
    let b = Rational::from(r_hi) * &two;
    let mid = (&a + &b).mul_pow2(-1);
    let half = (&b - &a).mul_pow2(-1);
    Ok(BallReal::from_rational(&mid, prec).add_error(&half))
}
