use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::VerifyError;
use crate::arith::{QuadExt, Rational};
use crate::lang::{serialize, try_exact, Exponent, Expr};
use crate::series::{Poly, RatPoly, TermSign, TermSpec};

/// A sum split into an exact term family and index-free multipliers.
#[derive(Debug, Clone)]
pub struct CompiledSum {
    pub spec: TermSpec,
    /// Exact multiplier outside ℚ.
    pub scale: QuadExt,
    /// Transcendental multipliers: `(factor, power)` with power `±1`.
    pub extra: Vec<(Expr, i32)>,
}

/// Compiles a summand with only rational constant factors into a [`TermSpec`].
pub fn compile_term(body: &Expr, index: &str) -> Result<TermSpec, VerifyError> {
    let c = compile_sum(body, index, &BTreeMap::new())?;
    if !c.extra.is_empty() || c.scale != QuadExt::one() {
        return Err(VerifyError::UnsupportedTermShape(String::from("irrational constant factor")));
    }
    Ok(c.spec)
}

/// Compiles a summand, resolving parameters through `params`.
pub fn compile_sum(body: &Expr, index: &str, params: &BTreeMap<String, Expr>) -> Result<CompiledSum, VerifyError> {
    let mut acc = Acc {
        index,
        params,
        alt: None,
        negate: false,
        base: QuadExt::one(),
        rat: Rational::one(),
        scale: QuadExt::one(),
        extra: Vec::new(),
        p: RatPoly::new(alloc::vec![Rational::one()]),
        q: RatPoly::new(alloc::vec![Rational::one()]),
        cb: 0,
    };
    acc.factor(body, 1)?;

    let (p, pd) = clear_denominators(&acc.p);
    let (q, qd) = clear_denominators(&acc.q);
    // p/q = (P/pd)/(Q/qd); the rational constant absorbs qd/pd.
    let mut rat = acc.rat * Rational::from(qd) / &Rational::from(pd);
    // Absorb an overall minus into the alternation phase.
    if let (true, Some(odd)) = (acc.negate, acc.alt) {
        acc.alt = Some(!odd);
        acc.negate = false;
    }
    if acc.negate {
        rat = -rat;
    }
    let sign = match acc.alt {
        None => TermSign::Plus,
        Some(false) => TermSign::AltMinus,
        Some(true) => TermSign::AltPlus,
    };
    let p = p.scale(rat.numer());
    let q = q.scale(rat.denom());
    let cb = i8::try_from(acc.cb)
        .ok()
        .filter(|c| (-1..=1).contains(c))
        .ok_or_else(|| VerifyError::UnsupportedTermShape(String::from("cbinom power outside -1..1")))?;
    let spec = TermSpec::builder()
        .sign(sign)
        .base(acc.base)
        .numerator_poly(p)
        .denominator_poly(q)
        .cb_power(cb)
        .start(1)
        .build()
        .map_err(|e| VerifyError::UnsupportedTermShape(alloc::format!("{e}")))?;
    Ok(CompiledSum { spec, scale: acc.scale, extra: acc.extra })
}

struct Acc<'a> {
    index: &'a str,
    params: &'a BTreeMap<String, Expr>,
    /// `Some(odd)`: factor `(-1)^(n + odd)`.
    alt: Option<bool>,
    negate: bool,
    base: QuadExt,
    rat: Rational,
    scale: QuadExt,
    extra: Vec<(Expr, i32)>,
    p: RatPoly,
    q: RatPoly,
    cb: i64,
}

impl Acc<'_> {
    fn unsupported(&self, e: &Expr) -> VerifyError {
        VerifyError::UnsupportedTermShape(serialize(e))
    }

    fn mentions_index(&self, e: &Expr) -> bool {
        let mut hit = false;
        e.visit(&mut |x| {
            if matches!(x, Expr::Index(i) | Expr::CBinom(i) if i == self.index)
                || matches!(x, Expr::Pow(_, Exponent::Linear { .. }))
            {
                hit = true;
            }
        });
        hit
    }

    fn factor(&mut self, e: &Expr, s: i32) -> Result<(), VerifyError> {
        match e {
            Expr::Mul(a, b) => {
                self.factor(a, s)?;
                self.factor(b, s)
            }
            Expr::Div(a, b) => {
                self.factor(a, s)?;
                self.factor(b, -s)
            }
            Expr::Neg(a) => {
                self.negate = !self.negate;
                self.factor(a, s)
            }
            Expr::CBinom(i) if i == self.index => {
                self.cb += s as i64;
                Ok(())
            }
            Expr::Pow(b, Exponent::Linear { index, coeff, offset }) if index == self.index => {
                self.geometric(e, b, *coeff, *offset, s)
            }
            Expr::Pow(b, Exponent::Int(k)) if self.mentions_index(b) => {
                if let Expr::CBinom(i) = &**b {
                    if i == self.index {
                        self.cb += s as i64 * k;
                        return Ok(());
                    }
                }
                let p = self.poly(b).ok_or_else(|| self.unsupported(e))?;
                let k32 = u32::try_from(k.unsigned_abs()).ok().filter(|k| *k <= 8).ok_or_else(|| self.unsupported(e))?;
                let pk = (0..k32).fold(RatPoly::new(alloc::vec![Rational::one()]), |acc, _| acc.mul(&p));
                self.poly_factor(pk, if *k < 0 { -s } else { s });
                Ok(())
            }
            _ if !self.mentions_index(e) => {
                match try_exact(e, self.params) {
                    Some(v) if v.is_zero() => return Err(self.unsupported(e)),
                    Some(v) => match v.as_rational() {
                        Some(r) => self.rat = &self.rat * &r.pow(s as i64).map_err(|_| self.unsupported(e))?,
                        None => {
                            let f = v.pow(s as i64).map_err(|_| self.unsupported(e))?;
                            self.scale = self.scale.mul(&f).map_err(|_| self.unsupported(e))?;
                        }
                    },
                    None => self.extra.push((e.clone(), s)),
                }
                Ok(())
            }
            _ => {
                let p = self.poly(e).ok_or_else(|| self.unsupported(e))?;
                self.poly_factor(p, s);
                Ok(())
            }
        }
    }

    fn poly_factor(&mut self, p: RatPoly, s: i32) {
        if s > 0 {
            self.p = self.p.mul(&p);
        } else {
            self.q = self.q.mul(&p);
        }
    }

    /// `b^(c·n + k)` with an index-free exact base.
    fn geometric(&mut self, e: &Expr, b: &Expr, c: i64, k: i64, s: i32) -> Result<(), VerifyError> {
        if self.mentions_index(b) {
            return Err(self.unsupported(e));
        }
        let v = try_exact(b, self.params).ok_or_else(|| self.unsupported(e))?;
        if v.is_zero() {
            return Err(self.unsupported(e));
        }
        if v == QuadExt::int(-1) {
            if c.is_odd() {
                let odd = k.is_odd();
                match self.alt {
                    None => self.alt = Some(odd),
                    Some(prev) => {
                        // (-1)^(n+a)·(-1)^(n+b) = (-1)^(a+b)
                        self.alt = None;
                        if prev ^ odd {
                            self.negate = !self.negate;
                        }
                    }
                }
            } else if k.is_odd() {
                self.negate = !self.negate;
            }
            return Ok(());
        }
        let step = v.pow(c * s as i64).map_err(|_| self.unsupported(e))?;
        self.base = self.base.mul(&step).map_err(|_| self.unsupported(e))?;
        let konst = v.pow(k * s as i64).map_err(|_| self.unsupported(e))?;
        match konst.as_rational() {
            Some(r) => self.rat = &self.rat * r,
            None => self.scale = self.scale.mul(&konst).map_err(|_| self.unsupported(e))?,
        }
        Ok(())
    }

    /// Polynomial in the index with rational coefficients.
    fn poly(&self, e: &Expr) -> Option<RatPoly> {
        let one = || RatPoly::new(alloc::vec![Rational::one()]);
        match e {
            Expr::Index(i) if i == self.index => Some(RatPoly::monomial(1)),
            Expr::Add(a, b) => Some(self.poly(a)?.add(&self.poly(b)?)),
            Expr::Sub(a, b) => Some(self.poly(a)?.sub(&self.poly(b)?)),
            Expr::Mul(a, b) => Some(self.poly(a)?.mul(&self.poly(b)?)),
            Expr::Neg(a) => Some(RatPoly::default().sub(&self.poly(a)?)),
            Expr::Div(a, b) if !self.mentions_index(b) => {
                let d = try_exact(b, self.params)?.as_rational()?.recip().ok()?;
                Some(self.poly(a)?.mul(&RatPoly::new(alloc::vec![d])))
            }
            Expr::Pow(a, Exponent::Int(k)) if (0..=8).contains(k) => {
                let p = self.poly(a)?;
                Some((0..*k).fold(one(), |acc, _| acc.mul(&p)))
            }
            _ if !self.mentions_index(e) => {
                let r = try_exact(e, self.params)?.as_rational()?.clone();
                Some(RatPoly::new(alloc::vec![r]))
            }
            _ => None,
        }
    }
}

/// `p = P / d` with `P` integral and `d > 0`.
fn clear_denominators(p: &RatPoly) -> (Poly, BigInt) {
    let d = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let coeffs = p.coeffs().iter().map(|c| c.numer() * &d / c.denom()).collect();
    (Poly::new(coeffs), d)
}
