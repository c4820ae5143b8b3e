//! Irreducibility of binomials x^d - a over the rationals.
//!
//! x^d - a is irreducible iff a is not a p-th power for any prime p | d,
//! and additionally a is not of the form -4b^4 when 4 | d. For integer a
//! both conditions reduce to integer perfect-power tests.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::is_perfect_kth_power;
use crate::error::{Error, Result};

fn prime_divisors(mut d: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2u64;
    while q * q <= d {
        if d % q == 0 {
            out.push(q);
            while d % q == 0 {
                d /= q;
            }
        }
        q += 1;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

/// Whether x^d - a is irreducible over the rationals (d >= 2, a nonzero).
pub fn binomial_irreducible_over_q(d: u64, a: &BigInt) -> Result<bool> {
    if d < 2 {
        return Err(Error::precondition(format!("degree must be >= 2, got {d}")));
    }
    if a.is_zero() {
        return Err(Error::precondition("binomial constant must be nonzero"));
    }
    for q in prime_divisors(d) {
        if is_perfect_kth_power(a, q as u32)?.is_some() {
            return Ok(false);
        }
    }
    if d % 4 == 0 {
        // a in -4 Q^4 forces a = -4 b^4 with b an integer.
        let four = BigInt::from(4);
        if a.is_negative() && (a % &four).is_zero() {
            let quarter = -(a / &four);
            if is_perfect_kth_power(&quarter, 4)?.is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn irred(d: u64, a: i64) -> bool {
        binomial_irreducible_over_q(d, &BigInt::from(a)).unwrap()
    }

    #[test]
    fn examples() {
        assert!(irred(3, 2)); // 2 is not a cube
        assert!(!irred(2, 4)); // x^2 - 4 factors
        assert!(!irred(4, -4)); // x^4 + 4 = (x^2-2x+2)(x^2+2x+2)
        assert!(irred(2, -1)); // x^2 + 1
        assert!(irred(4, -1)); // x^4 + 1
        assert!(!irred(3, -1)); // x^3 + 1 = (x+1)(x^2-x+1)
        assert!(irred(2, 2));
        assert!(irred(5, 2));
        assert!(!irred(4, -64)); // -64 = -4 * 2^4
        assert!(!irred(6, 64)); // 64 = 2^6 is a square and a cube
        assert!(binomial_irreducible_over_q(1, &BigInt::from(2)).is_err());
        assert!(binomial_irreducible_over_q(3, &BigInt::zero()).is_err());
    }

    #[test]
    fn agrees_with_root_search_for_prime_degrees() {
        // For prime d, reducibility is equivalent to a being a d-th power.
        for d in [2u64, 3, 5, 7] {
            for a in -50i64..=50 {
                if a == 0 {
                    continue;
                }
                let has_root = (-4i64..=4).any(|m| m.pow(d as u32) == a)
                    || (5..=50i64).any(|m| m.checked_pow(d as u32) == Some(a))
                    || (-50i64..=-5).any(|m| m.checked_pow(d as u32) == Some(a));
                assert_eq!(irred(d, a), !has_root, "d={d} a={a}");
            }
        }
    }
}
