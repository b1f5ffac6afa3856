use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::arith::Rational;

/// Bernoulli numbers `B_0, B_1, …` (with `B_1 = -1/2`) from the
/// convolution recurrence `Σ_{j=0}^{m} C(m+1, j)·B_j = 0`.
#[derive(Debug, Clone)]
pub struct Bernoulli {
    values: Vec<Rational>,
}

impl Default for Bernoulli {
    fn default() -> Self {
        Self::new()
    }
}

impl Bernoulli {
    pub fn new() -> Self {
        Bernoulli { values: vec![Rational::one()] }
    }

    pub fn get(&mut self, k: usize) -> &Rational {
        while self.values.len() <= k {
            let m = self.values.len();
            let next = if m > 1 && m % 2 == 1 {
                Rational::zero()
            } else {
                // binomials C(m+1, j) for j = 0..m, built incrementally
                let mut binom = BigInt::from(1);
                let mut acc = Rational::zero();
                for (j, b) in self.values.iter().enumerate() {
                    if !b.is_zero() {
                        acc = acc + &(b * &Rational::from_int(binom.clone()));
                    }
                    binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
                }
                -(&acc / &Rational::from((m + 1) as i64))
            };
            self.values.push(next);
        }
        &self.values[k]
    }
}

/// `B_k`; zero for odd `k > 1`.
pub fn bernoulli(k: usize) -> Rational {
    Bernoulli::new().get(k).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Tangent numbers T_1..T_n (1, 2, 16, 272, …) by the in-place
    /// boustrophedon recurrence, an independent route to B_2n:
    /// B_2n = (-1)^(n-1)·2n·T_n / (4^n·(4^n − 1)).
    fn tangent_numbers(n: usize) -> Vec<BigInt> {
        let mut t = vec![BigInt::from(0); n + 1];
        t[1] = BigInt::from(1);
        for k in 2..=n {
            t[k] = &t[k - 1] * BigInt::from(k - 1);
        }
        for k in 2..=n {
            for j in k..=n {
                t[j] = &t[j - 1] * BigInt::from(j - k) + &t[j] * BigInt::from(j - k + 2);
            }
        }
        t
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), Rational::one());
        assert_eq!(bernoulli(1), Rational::frac(-1, 2));
        assert_eq!(bernoulli(2), Rational::frac(1, 6));
        assert_eq!(bernoulli(4), Rational::frac(-1, 30));
        assert_eq!(bernoulli(3), Rational::zero());
        assert_eq!(bernoulli(12), Rational::frac(-691, 2730));
    }

    #[test]
    fn agrees_with_tangent_numbers_up_to_60() {
        let t = tangent_numbers(30);
        assert_eq!(t[4], BigInt::from(272));
        let mut table = Bernoulli::new();
        for (n, tn) in t.iter().enumerate().take(31).skip(1) {
            let four_n = BigInt::from(4).pow(n as u32);
            let num = BigInt::from(2 * n) * tn;
            let den = &four_n * (&four_n - 1);
            let mut expected = Rational::new(num, den).unwrap();
            if n % 2 == 0 {
                expected = -expected;
            }
            assert_eq!(*table.get(2 * n), expected, "B_{}", 2 * n);
            assert!(table.get(2 * n + 1).is_zero());
        }
    }
}
