/// Simple sieve of Eratosthenes; returns all primes `< limit`.
pub fn primes_below(limit: usize) -> Vec<u64> {
    if limit <= 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit];
    let mut out = Vec::new();
    for n in 2..limit {
        if composite[n] {
            continue;
        }
        out.push(n as u64);
        let mut m = n * n;
        while m < limit {
            composite[m] = true;
            m += n;
        }
    }
    out
}

/// Deterministic Miller–Rabin, valid for all n < 3.3 * 10^24.
pub fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    // m < 2^85 in our use; split to avoid overflow
    if let (Some(prod), true) = (a.checked_mul(b), m > 0) {
        return prod % m;
    }
    let mut result = 0u128;
    let mut a = a % m;
    let mut b = b;
    while b > 0 {
        if b & 1 == 1 {
            result = (result + a) % m;
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    result
}

fn pow_mod_u128(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod_u128(acc, b, m);
        }
        b = mul_mod_u128(b, b, m);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primes() {
        assert_eq!(primes_below(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(primes_below(2), Vec::<u64>::new());
    }

    #[test]
    fn miller_rabin() {
        assert!(is_prime_u128(2));
        assert!(is_prime_u128(1_000_003));
        assert!(!is_prime_u128(1_000_001)); // 101 * 9901
        assert!(is_prime_u128(2u128.pow(61) - 1));
        assert!(!is_prime_u128(3_215_031_751)); // strong pseudoprime to 2,3,5,7
    }
}
