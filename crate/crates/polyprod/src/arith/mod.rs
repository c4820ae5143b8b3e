//! Integer-level primitives: primality, prime enumeration, quadratic symbols,
//! factorization, squarefree kernels, perfect-power tests.

mod factor;
mod primality;
mod sieve;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use primality::{is_prime, is_prime_u64};
pub use sieve::{primes_in, primes_up_to};

/// Signed multiset of prime factors: sign * prod p^e reconstructs the
/// factored integer exactly. Primes are kept strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorMap {
    entries: Vec<(BigUint, u32)>,
    sign: i8,
}

impl FactorMap {
    /// The factorization of 1 (or -1 when `sign` is negative).
    pub fn unit(sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        FactorMap {
            entries: Vec::new(),
            sign,
        }
    }

    pub(crate) fn from_map(sign: i8, map: BTreeMap<BigUint, u32>) -> Self {
        FactorMap {
            entries: map.into_iter().collect(),
            sign,
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// (prime, exponent) pairs, primes strictly increasing.
    pub fn entries(&self) -> &[(BigUint, u32)] {
        &self.entries
    }

    /// Reconstruct the factored integer sign * prod p^e.
    pub fn value(&self) -> BigInt {
        let mag = self
            .entries
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e));
        let sign = if self.sign < 0 { Sign::Minus } else { Sign::Plus };
        BigInt::from_biguint(sign, mag)
    }

    /// The signed squarefree part d: the factored integer equals d * t^2
    /// with t^2 a positive perfect square.
    pub fn squarefree_kernel(&self) -> BigInt {
        let mag = self
            .entries
            .iter()
            .filter(|(_, e)| e % 2 == 1)
            .fold(BigUint::one(), |acc, (p, _)| acc * p);
        let sign = if self.sign < 0 { Sign::Minus } else { Sign::Plus };
        BigInt::from_biguint(sign, mag)
    }

    /// When every exponent is divisible by k (and the sign admits a k-th
    /// root), the factorization of m with m^k reconstructing this value.
    pub fn kth_root(&self, k: u32) -> Option<FactorMap> {
        if self.entries.iter().any(|(_, e)| e % k != 0) {
            return None;
        }
        let sign = if self.sign < 0 {
            if k % 2 == 0 {
                return None;
            }
            -1
        } else {
            1
        };
        Some(FactorMap {
            entries: self
                .entries
                .iter()
                .map(|(p, e)| (p.clone(), e / k))
                .collect(),
            sign,
        })
    }

    /// Largest prime in the multiset, if any.
    pub fn largest_prime(&self) -> Option<&BigUint> {
        self.entries.last().map(|(p, _)| p)
    }
}

impl fmt::Display for FactorMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        if self.entries.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Complete factorization of a nonzero integer.
pub fn factorize(n: &BigInt) -> Result<FactorMap> {
    if n.is_zero() {
        return Err(Error::ZeroFactorization);
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let entries = factor::factor_magnitude(n.magnitude())?;
    Ok(FactorMap::from_map(sign, entries))
}

/// Signed squarefree kernel of a factored integer.
pub fn squarefree_kernel(f: &FactorMap) -> BigInt {
    f.squarefree_kernel()
}

fn jacobi_u64(mut a: u64, mut n: u64) -> i32 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut t = 1i32;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

fn jacobi_big(a: &BigUint, n: &BigUint) -> i32 {
    let mut a = a % n;
    let mut n = n.clone();
    let mut t = 1i32;
    let three = BigUint::from(3u32);
    let five = BigUint::from(5u32);
    while !a.is_zero() {
        let tz = a.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            a >>= tz;
            if tz % 2 == 1 {
                let n8 = &n % 8u32;
                if n8 == three || n8 == five {
                    t = -t;
                }
            }
        }
        std::mem::swap(&mut a, &mut n);
        if (&a % 4u32) == three && (&n % 4u32) == three {
            t = -t;
        }
        a %= &n;
    }
    if n.is_one() {
        t
    } else {
        0
    }
}

/// Jacobi symbol (a/n) for odd positive n; equals the Legendre symbol when
/// n is prime. Multiplicative in the modulus: (a/lp) = (a/l)(a/p).
pub fn jacobi(a: &BigInt, n: &BigInt) -> Result<i32> {
    if !n.is_positive() || n.is_even() {
        return Err(Error::EvenModulus);
    }
    let a_red = a.mod_floor(n).to_biguint().expect("reduced value is nonnegative");
    let n_mag = n.magnitude();
    if n_mag.bits() <= 63 {
        let n64 = n_mag.iter_u64_digits().next().unwrap_or(1);
        let a64 = a_red.iter_u64_digits().next().unwrap_or(0);
        Ok(jacobi_u64(a64, n64))
    } else {
        Ok(jacobi_big(&a_red, n_mag))
    }
}

/// Jacobi symbol for machine-sized operands; n must be odd and positive.
pub fn jacobi_i64(a: i64, n: u64) -> Result<i32> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::EvenModulus);
    }
    let a = a.rem_euclid(n as i64) as u64;
    Ok(jacobi_u64(a, n))
}

/// Exact integer k-th root: Some(m) with m^k = a when it exists.
pub fn is_perfect_kth_power(a: &BigInt, k: u32) -> Result<Option<BigInt>> {
    if k < 2 {
        return Err(Error::BadExponent(k as i64));
    }
    if a.is_zero() {
        return Ok(Some(BigInt::zero()));
    }
    if a.is_negative() && k % 2 == 0 {
        return Ok(None);
    }
    let root = a.nth_root(k);
    if root.pow(k) == *a {
        Ok(Some(root))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn fm(n: i64) -> FactorMap {
        factorize(&BigInt::from(n)).unwrap()
    }

    #[test]
    fn factorize_small_values() {
        let f = fm(100);
        assert_eq!(f.sign(), 1);
        assert_eq!(
            f.entries(),
            &[(BigUint::from(2u32), 2), (BigUint::from(5u32), 2)]
        );
        let f = fm(-108);
        assert_eq!(f.sign(), -1);
        assert_eq!(
            f.entries(),
            &[(BigUint::from(2u32), 2), (BigUint::from(3u32), 3)]
        );
        let f = fm(10_001);
        assert_eq!(
            f.entries(),
            &[(BigUint::from(73u32), 1), (BigUint::from(137u32), 1)]
        );
        assert!(matches!(
            factorize(&BigInt::zero()),
            Err(Error::ZeroFactorization)
        ));
    }

    #[test]
    fn factorize_reassembles_random_values() {
        // 10^4 random n in [2, 10^12], fixed seed.
        let mut rng = ChaCha12Rng::seed_from_u64(0x5eed);
        for _ in 0..10_000 {
            let n = rng.random_range(2i64..=1_000_000_000_000);
            let f = factorize(&BigInt::from(n)).unwrap();
            assert_eq!(f.value(), BigInt::from(n), "n = {n}");
        }
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(fm(100).squarefree_kernel(), BigInt::from(1));
        assert_eq!(fm(2).squarefree_kernel(), BigInt::from(2));
        // -72 = -2 * 6^2
        assert_eq!(fm(-72).squarefree_kernel(), BigInt::from(-2));
    }

    #[test]
    fn kernel_complement_is_square_and_kernel_squarefree() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.random_range(2i64..=10_000_000) * if rng.random_bool(0.5) { -1 } else { 1 };
            let f = factorize(&BigInt::from(n)).unwrap();
            let d = f.squarefree_kernel();
            let quotient = BigInt::from(n) / &d;
            // n / d is a positive perfect square
            assert!(quotient.is_positive(), "n = {n}");
            let r = is_perfect_kth_power(&quotient, 2).unwrap();
            assert!(r.is_some(), "n = {n}, d = {d}");
            // and |d| is squarefree by re-factorization
            let fd = factorize(&d).unwrap();
            assert!(fd.entries().iter().all(|(_, e)| *e == 1));
        }
    }

    #[test]
    fn jacobi_examples() {
        let j = |a: i64, n: i64| jacobi(&BigInt::from(a), &BigInt::from(n)).unwrap();
        for p in [3i64, 5, 7, 11, 101] {
            assert_eq!(j(1, p), 1);
        }
        assert_eq!(j(2, 7), 1); // 3^2 = 2 mod 7
        assert_eq!(j(3, 5), -1); // squares mod 5 are {1, 4}
        assert_eq!(j(0, 9), 0);
        assert_eq!(j(-1, 5), 1);
        assert_eq!(j(-1, 7), -1);
        assert!(jacobi(&BigInt::from(3), &BigInt::from(10)).is_err());
    }

    #[test]
    fn jacobi_matches_qr_tables_small_primes() {
        // Brute-force quadratic-residue oracle for all odd primes p < 200.
        for p in primes_in(3, 199) {
            let mut squares = vec![false; p as usize];
            for x in 1..p {
                squares[((x * x) % p) as usize] = true;
            }
            for a in 0..p {
                let expected = if a == 0 {
                    0
                } else if squares[a as usize] {
                    1
                } else {
                    -1
                };
                assert_eq!(jacobi_i64(a as i64, p).unwrap(), expected, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn jacobi_multiplicative_in_modulus() {
        let mut rng = ChaCha12Rng::seed_from_u64(99);
        let primes = primes_in(3, 1000);
        for _ in 0..500 {
            let l = primes[rng.random_range(0..primes.len())];
            let p = primes[rng.random_range(0..primes.len())];
            if l == p {
                continue;
            }
            let a = rng.random_range(-1000i64..1000);
            let lhs = jacobi(&BigInt::from(a), &BigInt::from(l * p)).unwrap();
            let rhs = jacobi_i64(a, l).unwrap() * jacobi_i64(a, p).unwrap();
            assert_eq!(lhs, rhs, "a={a} l={l} p={p}");
        }
    }

    #[test]
    fn jacobi_big_modulus_agrees_with_native() {
        // Cross-check the BigUint path against the u64 path on the same inputs.
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.random_range(3u64..1_000_000) | 1;
            let a = rng.random_range(0u64..n);
            let native = jacobi_u64(a, n);
            let big = jacobi_big(&BigUint::from(a), &BigUint::from(n));
            assert_eq!(native, big, "a={a} n={n}");
        }
    }

    #[test]
    fn perfect_power_examples() {
        let pk = |a: i64, k: u32| is_perfect_kth_power(&BigInt::from(a), k).unwrap();
        assert_eq!(pk(100, 2), Some(BigInt::from(10)));
        assert_eq!(pk(-8, 3), Some(BigInt::from(-2)));
        assert_eq!(pk(2, 5), None);
        assert_eq!(pk(-4, 2), None);
        assert_eq!(pk(0, 4), Some(BigInt::zero()));
        assert!(is_perfect_kth_power(&BigInt::from(4), 1).is_err());
    }

    #[test]
    fn kth_root_of_factor_map() {
        let f = fm(1700); // 2^2 * 5^2 * 17
        assert!(f.kth_root(2).is_none());
        let f = fm(100);
        let m = f.kth_root(2).unwrap();
        assert_eq!(m.value(), BigInt::from(10));
        let f = fm(-27);
        assert_eq!(f.kth_root(3).unwrap().value(), BigInt::from(-3));
        assert!(fm(-4).kth_root(2).is_none());
    }

    proptest::proptest! {
        #[test]
        fn factorization_reassembles_and_kernel_is_squarefree(n in 2i64..=1_000_000_000) {
            let v = BigInt::from(n);
            let f = factorize(&v).unwrap();
            proptest::prop_assert_eq!(f.value(), v.clone());
            let d = f.squarefree_kernel();
            let q = &v / &d;
            proptest::prop_assert!(is_perfect_kth_power(&q, 2).unwrap().is_some());
            let fd = factorize(&d).unwrap();
            proptest::prop_assert!(fd.entries().iter().all(|(_, e)| *e == 1));
        }

        #[test]
        fn jacobi_multiplicativity(a in -10_000i64..10_000, li in 0usize..150, pi in 0usize..150) {
            let primes = primes_in(3, 1000);
            let l = primes[li % primes.len()];
            let p = primes[pi % primes.len()];
            if l != p {
                let lhs = jacobi(&BigInt::from(a), &BigInt::from(l * p)).unwrap();
                let rhs = jacobi_i64(a, l).unwrap() * jacobi_i64(a, p).unwrap();
                proptest::prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
