//! Exact binomial and multinomial coefficients.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

/// Factorials `0!..=n!` as exact integers.
#[derive(Debug, Clone)]
pub struct FactorialTable {
    table: Vec<BigUint>,
}

impl FactorialTable {
    pub fn new(n: usize) -> Self {
        let mut table = Vec::with_capacity(n + 1);
        table.push(BigUint::one());
        for i in 1..=n {
            let next = &table[i - 1] * BigUint::from(i);
            table.push(next);
        }
        FactorialTable { table }
    }

    pub fn max(&self) -> usize {
        self.table.len() - 1
    }

    /// `(sum parts)! / prod(part!)`, exact.
    pub fn multinomial(&self, parts: &[usize]) -> BigUint {
        let total: usize = parts.iter().sum();
        assert!(total <= self.max(), "factorial table too small for {total}");
        let denom = parts
            .iter()
            .fold(BigUint::one(), |acc, &k| acc * &self.table[k]);
        &self.table[total] / denom
    }
}

pub fn to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// Binomial coefficient as a real; zero when `k > n`.
pub fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= BigUint::from(n - i);
        acc /= BigUint::from(i + 1);
    }
    to_f64(&acc)
}

/// Row-by-row binomial table `c[n][k]` for `n <= max`, as reals.
pub fn binomial_rows(max: usize) -> Vec<Vec<f64>> {
    (0..=max)
        .map(|n| (0..=n).map(|k| binomial_f64(n, k)).collect())
        .collect()
}
