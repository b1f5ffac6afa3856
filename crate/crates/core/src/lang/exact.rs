use alloc::collections::BTreeMap;
use alloc::string::String;

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};

use super::ast::{Exponent, Expr};
use super::parser::MAX_INT_EXPONENT;
use crate::arith::{QuadExt, Radicand, Rational};

const MAX_PARAM_DEPTH: usize = 32;

/// Evaluates `e` exactly in ℚ or ℚ(√d), or `None` when it is transcendental,
/// mixes radicands, or divides by zero.
pub fn try_exact(e: &Expr, params: &BTreeMap<String, Expr>) -> Option<QuadExt> {
    eval(e, params, 0)
}

/// `√r` when it lies in ℚ or ℚ(√d) for `d ∈ {2, 3, 5}`.
pub fn exact_sqrt(r: &Rational) -> Option<QuadExt> {
    if r.signum() < 0 {
        return None;
    }
    let q = r.denom();
    let n = r.numer() * q;
    let s = n.sqrt();
    if &s * &s == n {
        return Rational::new(s, q.clone()).ok().map(QuadExt::rational);
    }
    for d in [Radicand::Two, Radicand::Three, Radicand::Five] {
        let dv = BigInt::from(d.value());
        if (&n % &dv).is_zero() {
            let m = &n / &dv;
            let t = m.sqrt();
            if &t * &t == m {
                let b = Rational::new(t, q.clone()).ok()?;
                return Some(QuadExt::new(Rational::zero(), b, d));
            }
        }
    }
    None
}

fn eval(e: &Expr, params: &BTreeMap<String, Expr>, depth: usize) -> Option<QuadExt> {
    let go = |x: &Expr| eval(x, params, depth);
    match e {
        Expr::Int(n) => Some(QuadExt::rational(Rational::from_int(BigInt::from_biguint(Sign::Plus, n.clone())))),
        Expr::Rat(p, q) => Rational::new(BigInt::from(p.clone()), BigInt::from(q.clone())).ok().map(QuadExt::rational),
        Expr::Surd(d) => Some(QuadExt::surd(*d)),
        Expr::Param(name) => {
            if depth >= MAX_PARAM_DEPTH {
                return None;
            }
            eval(params.get(name)?, params, depth + 1)
        }
        Expr::Add(a, b) => go(a)?.add(&go(b)?).ok(),
        Expr::Sub(a, b) => go(a)?.sub(&go(b)?).ok(),
        Expr::Mul(a, b) => go(a)?.mul(&go(b)?).ok(),
        Expr::Div(a, b) => go(a)?.div(&go(b)?).ok(),
        Expr::Neg(a) => Some(go(a)?.neg()),
        Expr::Pow(a, Exponent::Int(k)) if k.abs() <= MAX_INT_EXPONENT => go(a)?.pow(*k).ok(),
        Expr::Pow(a, Exponent::Rat(r)) if *r.denom() == BigInt::from(2) => {
            let base = go(a)?;
            let root = exact_sqrt(base.as_rational()?)?;
            root.pow(r.numer().to_i64()?).ok()
        }
        Expr::Sqrt(a) => exact_sqrt(go(a)?.as_rational()?),
        _ => None,
    }
}
