use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

/// `C(2n, n)` by the recurrence `C(2n+2, n+1) = C(2n, n)·2(2n+1)/(n+1)`.
pub fn central_binomial(n: u64) -> BigUint {
    let mut c = BigUint::from(1u32);
    for k in 0..n {
        c = c * (2 * (2 * k + 1)) / (k + 1);
    }
    c
}

/// Memo of central binomial coefficients for one summation run.
///
/// Terms are requested in index order, so each new entry costs one
/// multiplication and one exact division.
#[derive(Debug, Clone)]
pub struct CentralBinomials {
    values: Vec<BigUint>,
}

impl Default for CentralBinomials {
    fn default() -> Self {
        Self::new()
    }
}

impl CentralBinomials {
    pub fn new() -> Self {
        CentralBinomials { values: vec![BigUint::from(1u32)] }
    }

    pub fn get(&mut self, n: u64) -> &BigUint {
        while (self.values.len() as u64) <= n {
            let k = self.values.len() as u64 - 1;
            let next = self.values[k as usize].clone() * (2 * (2 * k + 1)) / (k + 1);
            self.values.push(next);
        }
        &self.values[n as usize]
    }
}
