//! Exact binomial coefficients and float Pascal tables.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Exact `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Parity of `C(n, k)` from the exact value.
pub fn binomial_is_odd(n: usize, k: usize) -> bool {
    binomial(n, k).bit(0)
}

pub fn binomial_f64(n: usize, k: usize) -> f64 {
    binomial(n, k).to_f64().unwrap_or(f64::INFINITY)
}

/// Rows `0..=n` of Pascal's triangle as floats; `row[k] == 0` never indexed past `n`.
#[derive(Debug, Clone)]
pub struct Pascal {
    rows: Vec<Vec<f64>>,
}

impl Pascal {
    pub fn new(n: usize) -> Self {
        let rows = (0..=n)
            .map(|m| (0..=m).map(|k| binomial_f64(m, k)).collect())
            .collect();
        Pascal { rows }
    }

    #[inline]
    pub fn get(&self, n: usize, k: usize) -> f64 {
        if k > n {
            0.0
        } else {
            self.rows[n][k]
        }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }
}
