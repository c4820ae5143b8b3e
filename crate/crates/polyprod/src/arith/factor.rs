//! Integer factorization: trial division then Brent's variant of Pollard rho.
//!
//! Rho restarts walk the fixed polynomial offsets c = 1, 2, 3, ... so a given
//! input always factors the same way. Kernel extraction depends on complete
//! factorizations, so a cofactor that survives 20 restarts is reported as an
//! error instead of being returned composite.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::primality::{is_prime, is_prime_u64};
use super::sieve::small_primes;
use crate::error::{Error, Result};

const RHO_RESTARTS: u32 = 20;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Brent's cycle-finding rho with iteration x -> x^2 + c, started at x = 2.
/// Returns a nontrivial factor of composite odd n, or None for this c.
fn brent_rho_u64(n: u64, c: u64) -> Option<u64> {
    let f = |x: u64| (mulmod(x, x, n) + c) % n;
    let mut y = 2u64;
    let mut r = 1u64;
    let mut q = 1u64;
    let mut g = 1u64;
    let mut x = 0u64;
    let mut ys = 0u64;
    const BATCH: u64 = 128;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0u64;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mulmod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == n {
        // Backtrack one step at a time from the last checkpoint.
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// Same iteration over arbitrary-precision integers; used only for cofactors
/// beyond 64 bits that trial division could not finish.
fn brent_rho_big(n: &BigUint, c: u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = BigUint::zero();
    let mut ys = BigUint::zero();
    const BATCH: u64 = 64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0u64;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..BATCH.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += BATCH;
        }
        r *= 2;
        if r > 1 << 24 {
            return None;
        }
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

fn push_prime(entries: &mut BTreeMap<BigUint, u32>, p: BigUint, e: u32) {
    *entries.entry(p).or_insert(0) += e;
}

fn factor_u64_into(mut n: u64, entries: &mut BTreeMap<BigUint, u32>) -> Result<()> {
    for &p in small_primes() {
        if p * p > n {
            break;
        }
        while n % p == 0 {
            n /= p;
            push_prime(entries, BigUint::from(p), 1);
        }
    }
    if n == 1 {
        return Ok(());
    }
    if is_prime_u64(n) {
        push_prime(entries, BigUint::from(n), 1);
        return Ok(());
    }
    // Composite with all prime factors above the trial bound: split with rho.
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if is_prime_u64(m) {
            push_prime(entries, BigUint::from(m), 1);
            continue;
        }
        let mut split = None;
        for c in 1..=RHO_RESTARTS as u64 {
            if let Some(d) = brent_rho_u64(m, c) {
                split = Some(d);
                break;
            }
        }
        match split {
            Some(d) => {
                stack.push(d);
                stack.push(m / d);
            }
            None => {
                return Err(Error::PartialFactorization {
                    cofactor: m.to_string(),
                    restarts: RHO_RESTARTS,
                })
            }
        }
    }
    Ok(())
}

fn factor_big_into(mut m: BigUint, entries: &mut BTreeMap<BigUint, u32>) -> Result<()> {
    if m.bits() <= 64 {
        let small = m.iter_u64_digits().next().unwrap_or(0);
        return factor_u64_into(small, entries);
    }
    for &p in small_primes() {
        let pb = BigUint::from(p);
        while (&m % &pb).is_zero() {
            m /= &pb;
            push_prime(entries, pb.clone(), 1);
        }
        if m.bits() <= 64 {
            let small = m.iter_u64_digits().next().unwrap_or(0);
            return factor_u64_into(small, entries);
        }
    }
    if m.is_one() {
        return Ok(());
    }
    if is_prime(&m) {
        push_prime(entries, m, 1);
        return Ok(());
    }
    let mut stack = vec![m];
    while let Some(m) = stack.pop() {
        if m.bits() <= 64 {
            factor_u64_into(m.iter_u64_digits().next().unwrap_or(0), entries)?;
            continue;
        }
        if is_prime(&m) {
            push_prime(entries, m, 1);
            continue;
        }
        let mut split = None;
        for c in 1..=RHO_RESTARTS as u64 {
            if let Some(d) = brent_rho_big(&m, c) {
                split = Some(d);
                break;
            }
        }
        match split {
            Some(d) => {
                let q = &m / &d;
                stack.push(d);
                stack.push(q);
            }
            None => {
                return Err(Error::PartialFactorization {
                    cofactor: m.to_string(),
                    restarts: RHO_RESTARTS,
                })
            }
        }
    }
    Ok(())
}

/// Complete factorization of a nonzero magnitude into (prime, exponent) pairs.
pub(crate) fn factor_magnitude(m: &BigUint) -> Result<BTreeMap<BigUint, u32>> {
    let mut entries = BTreeMap::new();
    if m.is_one() {
        return Ok(entries);
    }
    factor_big_into(m.clone(), &mut entries)?;
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reassemble(entries: &BTreeMap<BigUint, u32>) -> BigUint {
        entries
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    #[test]
    fn semiprimes_beyond_trial_bound() {
        // 1000003 * 1000033, both prime, both above the trial bound.
        let n = BigUint::from(1_000_003u64) * BigUint::from(1_000_033u64);
        let f = factor_magnitude(&n).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(reassemble(&f), n);
        assert!(f.keys().all(is_prime));
    }

    #[test]
    fn big_path_reassembles() {
        // 2^5 * 3 * (10^30 + 57), the last factor prime and above 64 bits.
        let big_prime: BigUint = "1000000000000000000000000000057".parse().unwrap();
        let n = BigUint::from(96u32) * &big_prime;
        let f = factor_magnitude(&n).unwrap();
        assert_eq!(f[&BigUint::from(2u32)], 5);
        assert_eq!(f[&BigUint::from(3u32)], 1);
        assert_eq!(f[&big_prime], 1);
        assert_eq!(reassemble(&f), n);
    }

    #[test]
    fn rho_splits_64_bit_semiprime() {
        let p = 2_147_483_647u64; // 2^31 - 1
        let q = 2_147_483_629u64;
        let n = BigUint::from(p) * BigUint::from(q);
        let f = factor_magnitude(&n).unwrap();
        assert_eq!(f[&BigUint::from(p)], 1);
        assert_eq!(f[&BigUint::from(q)], 1);
    }
}
