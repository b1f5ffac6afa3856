mod common;

use binomv_core::arith::ball_digits;
use binomv_core::constants::{const_arcsin, const_ln, const_pi, const_sigma, const_zeta3, trigamma_rat};
use binomv_core::{BallReal, QuadExt, Radicand, Rational};
use proptest::prelude::*;

#[derive(Debug, Clone)]
enum R {
    Lit(i64, i64),
    Add(Box<R>, Box<R>),
    Sub(Box<R>, Box<R>),
    Mul(Box<R>, Box<R>),
    Div(Box<R>, Box<R>),
    Pow(Box<R>, i64),
    /// `sqrt(x·x) = |x|`.
    RootOfSquare(Box<R>),
}

fn exact(e: &R) -> Option<Rational> {
    Some(match e {
        R::Lit(p, q) => Rational::frac(*p, *q),
        R::Add(a, b) => exact(a)? + exact(b)?,
        R::Sub(a, b) => exact(a)? - exact(b)?,
        R::Mul(a, b) => exact(a)? * exact(b)?,
        R::Div(a, b) => exact(a)?.checked_div(&exact(b)?).ok()?,
        R::Pow(a, k) => exact(a)?.pow(*k).ok()?,
        R::RootOfSquare(a) => exact(a)?.abs(),
    })
}

fn ball(e: &R, prec: u32) -> Option<BallReal> {
    Some(match e {
        R::Lit(p, q) => BallReal::from_rational(&Rational::frac(*p, *q), prec),
        R::Add(a, b) => ball(a, prec)?.add(&ball(b, prec)?),
        R::Sub(a, b) => ball(a, prec)?.sub(&ball(b, prec)?),
        R::Mul(a, b) => ball(a, prec)?.mul(&ball(b, prec)?),
        R::Div(a, b) => ball(a, prec)?.div(&ball(b, prec)?).ok()?,
        R::Pow(a, k) => ball(a, prec)?.powi(*k).ok()?,
        R::RootOfSquare(a) => {
            let x = ball(a, prec)?;
            x.mul(&x).sqrt().ok()?
        }
    })
}

fn rexpr() -> impl Strategy<Value = R> {
    let leaf = (-1000i64..1000, 1i64..1000).prop_map(|(p, q)| R::Lit(p, q));
    leaf.prop_recursive(5, 32, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| R::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| R::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| R::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| R::Div(Box::new(a), Box::new(b))),
            (inner.clone(), -4i64..5).prop_map(|(a, k)| R::Pow(Box::new(a), k)),
            inner.prop_map(|a| R::RootOfSquare(Box::new(a))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn ball_contains_exact_result(e in rexpr(), prec in 16u32..300) {
        let Some(x) = exact(&e) else { return Ok(()) };
        let Some(b) = ball(&e, prec) else { return Ok(()) };
        prop_assert!(b.contains_rational(&x), "{:?} at {} bits", e, prec);
    }
}

fn quad() -> impl Strategy<Value = (Rational, Rational)> {
    (-50i64..50, 1i64..50, -50i64..50, 1i64..50).prop_map(|(a, b, c, d)| (Rational::frac(a, b), Rational::frac(c, d)))
}

fn radicand() -> impl Strategy<Value = Radicand> {
    prop_oneof![Just(Radicand::Two), Just(Radicand::Three), Just(Radicand::Five)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn quad_ops_agree_with_numeric((a, b) in quad(), (c, e) in quad(), d in radicand(), prec in 64u32..256) {
        let x = QuadExt::new(a, b, d);
        let y = QuadExt::new(c, e, d);
        let nx = BallReal::from_quad(&x, prec);
        let ny = BallReal::from_quad(&y, prec);
        // |x|, |y| < 400, so products stay below 2^18.
        let tol = Rational::one().mul_pow2(-(prec as i64) + 4 + 18);
        let mut cases = vec![(x.add(&y).unwrap(), nx.add(&ny)), (x.sub(&y).unwrap(), nx.sub(&ny)), (x.mul(&y).unwrap(), nx.mul(&ny))];
        if !y.is_zero() {
            if let Ok(q) = nx.div(&ny) {
                cases.push((x.div(&y).unwrap(), q));
            }
        }
        for (exact, num) in cases {
            let reference = BallReal::from_quad(&exact, prec + 64);
            let diff = (num.mid_rational() - reference.mid_rational()).abs();
            prop_assert!(num.overlaps(&reference));
            if exact.abs().cmp_value(&QuadExt::int(1 << 18)).unwrap().is_lt() && !ny.contains_zero() {
                prop_assert!(diff <= tol || diff <= num.rad_rational() + reference.rad_rational());
            }
        }
    }
}

type Constant = fn(u32) -> BallReal;

fn closed_forms() -> Vec<(&'static str, Constant)> {
    vec![
        ("pi", |p| const_pi(p)),
        ("zeta3", |p| const_zeta3(p).unwrap()),
        ("sigma", |p| const_sigma(p)),
        ("ln phi", |p| const_ln(&QuadExt::new(Rational::frac(1, 2), Rational::frac(1, 2), Radicand::Five), p).unwrap()),
        ("ln 2", |p| const_ln(&QuadExt::int(2), p).unwrap()),
        ("arcsin tau", |p| {
            let tau = QuadExt::new(Rational::frac(-1, 2), Rational::frac(1, 2), Radicand::Three);
            const_arcsin(&BallReal::from_quad(&tau, p + 16), p).unwrap()
        }),
        ("trigamma 1/3", |p| trigamma_rat(&Rational::frac(1, 3), p).unwrap()),
        ("trigamma 2/3", |p| trigamma_rat(&Rational::frac(2, 3), p).unwrap()),
        ("L5 rhs", |p| {
            let t = trigamma_rat(&Rational::frac(1, 3), p).unwrap().sub(&trigamma_rat(&Rational::frac(2, 3), p).unwrap());
            let r3 = BallReal::from_int(3, p).sqrt().unwrap();
            const_zeta3(p).unwrap().mul_rational(&Rational::frac(-4, 3)).add(&const_pi(p).mul(&r3).mul(&t).div_rational(&Rational::from(18)).unwrap())
        }),
    ]
}

#[test]
fn constants_refine_consistently() {
    for (name, f) in closed_forms() {
        for p in [64u32, 128, 256, 512] {
            let a = f(p);
            let b = f(2 * p);
            assert!(a.overlaps(&b), "{name} at {p}");
            // Radius monotonicity: at most a factor 2 worse.
            assert!(b.rad_rational() <= a.rad_rational() * Rational::from(2), "{name} at {p}");
        }
    }
}

// Minimal exp and sin for round-trip checks.

fn taylor(x: &BallReal, prec: u32, odd: bool, alternating: bool) -> BallReal {
    let mut term = if odd { x.clone() } else { BallReal::from_int(1, prec) };
    let mut sum = term.clone();
    let mut k: i64 = if odd { 1 } else { 0 };
    let x2 = x.mul(x);
    loop {
        let step = if odd { x2.clone() } else { x.clone() };
        let den = if odd { (k + 1) * (k + 2) } else { k + 1 };
        term = term.mul(&step).div_rational(&Rational::from(den)).unwrap();
        if alternating {
            term = term.neg();
        }
        k += if odd { 2 } else { 1 };
        let small = term.log2_upper().map_or(true, |l| l < -(prec as i64) - 8);
        if small {
            // |x| ≤ 1: the remainder is below twice the first omitted term.
            let bound = term.abs().mul_pow2(1);
            return sum.add_error(&bound.upper_rational());
        }
        sum = sum.add(&term);
    }
}

fn exp(x: &BallReal, prec: u32) -> BallReal {
    taylor(x, prec, false, false)
}

fn sin(x: &BallReal, prec: u32) -> BallReal {
    taylor(x, prec, true, true)
}

#[test]
fn exp_ln_round_trip() {
    let p = 200;
    for x in [
        QuadExt::int(2),
        QuadExt::new(Rational::frac(1, 2), Rational::frac(1, 2), Radicand::Two),
        QuadExt::new(Rational::frac(1, 2), Rational::frac(1, 2), Radicand::Five),
    ] {
        let back = exp(&const_ln(&x, p).unwrap(), p);
        assert!(back.overlaps(&BallReal::from_quad(&x, p)), "{x:?}");
        assert!(ball_digits(&back) >= 50);
    }
}

#[test]
fn sin_arcsin_round_trip() {
    let p = 200;
    for t in [
        QuadExt::zero(),
        QuadExt::rational(Rational::frac(1, 2)),
        QuadExt::new(Rational::frac(-1, 2), Rational::frac(1, 2), Radicand::Three),
    ] {
        let tb = BallReal::from_quad(&t, p);
        let back = sin(&const_arcsin(&tb, p).unwrap(), p);
        assert!(back.overlaps(&tb), "{t:?}");
    }
}

#[test]
fn trigamma_reflection() {
    let p = 200;
    let pi = const_pi(p);
    for (x, sin2) in [(Rational::frac(1, 4), None), (Rational::frac(1, 3), None), (Rational::frac(1, 2), Some(1))] {
        let s = sin(&pi.mul_rational(&x), p);
        let s2 = s.mul(&s);
        if let Some(v) = sin2 {
            assert!(s2.contains_rational(&Rational::from(v)) || s2.overlaps(&BallReal::from_int(v, p)));
        }
        let one_minus = Rational::one() - x.clone();
        let lhs = trigamma_rat(&x, p).unwrap().add(&trigamma_rat(&one_minus, p).unwrap());
        let diff = lhs.sub(&pi.mul(&pi).div(&s2).unwrap());
        assert!(diff.contains_zero(), "{x:?}");
        assert!(ball_digits(&diff) >= 40, "{x:?}: {}", ball_digits(&diff));
    }
}
