//! Primality testing.
//!
//! Below 2^64 the Miller-Rabin test with the first twelve prime bases is
//! deterministic. Above 2^64 we run Miller-Rabin with the first forty prime
//! bases; the base set is fixed so repeated runs give identical answers.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Witness set that makes Miller-Rabin deterministic for n < 2^64.
const BASES_U64: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// First forty primes, the fixed base set for inputs beyond 64 bits.
const BASES_BIG: [u64; 40] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173,
];

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &BASES_U64 {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for &a in &BASES_U64 {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn miller_rabin_big(n: &BigUint, base: u64) -> bool {
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().expect("n > 1");
    let d = &n_minus_1 >> s;
    let mut x = BigUint::from(base).modpow(&d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

/// Primality test for arbitrary-precision nonnegative integers.
///
/// Deterministic for n < 2^64; for larger n, Miller-Rabin with the fixed
/// forty-prime base set above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(n64) = n.to_u64_digits().first().copied().filter(|_| n.bits() <= 64) {
        return is_prime_u64(n64);
    }
    if n.is_zero() || n.is_one() {
        return false;
    }
    if n.is_even() {
        return false;
    }
    for &p in &BASES_BIG {
        if (n % BigUint::from(p)).is_zero() {
            return n == &BigUint::from(p);
        }
    }
    BASES_BIG.iter().all(|&a| miller_rabin_big(n, a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use std::str::FromStr;

    /// Trial-division oracle, independent of the Miller-Rabin path.
    fn is_prime_trial(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        let mut d = 2u64;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[test]
    fn unit_is_not_prime() {
        assert!(!is_prime_u64(1));
        assert!(!is_prime(&BigUint::from(1u32)));
        assert!(!is_prime(&BigUint::from(0u32)));
    }

    #[test]
    fn matches_trial_division_oracle() {
        assert!(is_prime_u64(2003));
        assert!(is_prime_trial(2003));
        assert!(!is_prime_u64(2001)); // 3 * 23 * 29
        assert!(!is_prime_trial(2001));
        for n in 0..2000 {
            assert_eq!(is_prime_u64(n), is_prime_trial(n), "n = {n}");
        }
    }

    #[test]
    fn known_large_values() {
        // Mersenne prime 2^61 - 1 and its neighbors.
        assert!(is_prime_u64((1u64 << 61) - 1));
        assert!(!is_prime_u64((1u64 << 61) + 1));
        // Carmichael numbers must be rejected.
        for c in [561u64, 1105, 1729, 2465, 2821, 6601, 8911] {
            assert!(!is_prime_u64(c), "carmichael {c}");
        }
    }

    #[test]
    fn big_inputs() {
        // 2^89 - 1 is a Mersenne prime; 2^89 + 1 is composite.
        let m89 = (BigUint::one() << 89u32) - BigUint::one();
        assert!(is_prime(&m89));
        let m89p2 = (BigUint::one() << 89u32) + BigUint::one();
        assert!(!is_prime(&m89p2));
        // 10^30 + 57 is prime (smallest prime above 10^30).
        let p = BigUint::from_str("1000000000000000000000000000057").unwrap();
        assert!(is_prime(&p));
        assert!(!is_prime(&(p + BigUint::from(2u32))));
    }
}
