use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

static CACHE: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

/// Exact Bernoulli number `B_n` (convention `B_1 = -1/2`).
///
/// Computed by the defining recurrence and cached; used by the dilogarithm
/// log-series and the Euler-Maclaurin tail of the Hurwitz zeta.
pub fn bernoulli(n: usize) -> BigRational {
    let mut cache = CACHE.lock().unwrap();
    if cache.is_empty() {
        cache.push(BigRational::one());
    }
    while cache.len() <= n {
        let m = cache.len();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (j, b) in cache.iter().enumerate() {
            acc += b * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        let div = BigRational::from_integer(BigInt::from(m + 1));
        cache.push(-acc / div);
    }
    cache[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn known_values() {
        assert_eq!(bernoulli(0), q(1, 1));
        assert_eq!(bernoulli(1), q(-1, 2));
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(3), q(0, 1));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(10), q(5, 66));
        assert_eq!(bernoulli(12), q(-691, 2730));
    }
}
