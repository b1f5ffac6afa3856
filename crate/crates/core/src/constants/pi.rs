use num_bigint::BigInt;
use num_traits::One;

use crate::arith::{BallReal, Rational};

struct Split {
    p: BigInt,
    q: BigInt,
    b: BigInt,
    t: BigInt,
}

/// Binary splitting of `Σ_{a ≤ j < b} (-1)^j / ((2j+1)·k^(2j))`.
fn split(k2: &BigInt, a: u64, b: u64) -> Split {
    if b - a == 1 {
        let (p, q) = if a == 0 { (BigInt::one(), BigInt::one()) } else { (BigInt::from(-1), k2.clone()) };
        return Split { t: p.clone(), p, q, b: BigInt::from(2 * a + 1) };
    }
    let m = a + (b - a) / 2;
    let l = split(k2, a, m);
    let r = split(k2, m, b);
    Split {
        t: &r.b * &r.q * &l.t + &l.b * &l.p * &r.t,
        p: l.p * r.p,
        q: l.q * r.q,
        b: l.b * r.b,
    }
}

/// Exact partial sum of the arctan(1/k) series over `terms` terms, with
/// the alternating truncation bound `1/((2J+1)·k^(2J+1))`.
pub fn arctan_recip_exact(k: u64, terms: u64) -> (Rational, Rational) {
    assert!(k >= 2 && terms >= 1);
    let kb = BigInt::from(k);
    let s = split(&(&kb * &kb), 0, terms);
    let sum = Rational::new(s.t, s.b * s.q * &kb).expect("nonzero");
    let err = Rational::new(1, BigInt::from(2 * terms + 1) * kb.pow(2 * terms as u32 + 1)).expect("nonzero");
    (sum, err)
}

fn terms_for(k: u64, prec: u32) -> u64 {
    let log2k = (64 - k.leading_zeros() - 1) as u64;
    (prec as u64 + 12) / (2 * log2k) + 1
}

/// `arctan(1/k)` as a ball.
pub fn arctan_recip(k: u64, prec: u32) -> BallReal {
    let (s, e) = arctan_recip_exact(k, terms_for(k, prec));
    BallReal::from_rational(&s, prec + 8).add_error(&e).with_prec(prec)
}

/// π = 16·arctan(1/5) − 4·arctan(1/239).
pub fn const_pi(prec: u32) -> BallReal {
    let work = prec + 8;
    let (a, ea) = arctan_recip_exact(5, terms_for(5, work));
    let (b, eb) = arctan_recip_exact(239, terms_for(239, work));
    let sum = &a * &Rational::from(16) - &b * &Rational::from(4);
    let err = &ea * &Rational::from(16) + &eb * &Rational::from(4);
    BallReal::from_rational(&sum, work).add_error(&err).with_prec(prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits_and_radius() {
        for prec in [32u32, 64, 200, 700] {
            let pi = const_pi(prec);
            assert!(pi.rad_log2().unwrap() <= 4 - prec as i64, "prec {prec}");
        }
        let pi = const_pi(200);
        assert!(pi.to_decimal(20).starts_with("3.14159265358979323846"));
    }

    #[test]
    fn arctan_truncation_bound_holds() {
        // arctan(1/2) with few and many terms must nest.
        let (s3, e3) = arctan_recip_exact(2, 3);
        let (s40, e40) = arctan_recip_exact(2, 40);
        assert!((&s3 - &s40).abs() <= &e3 + &e40);
    }
}
