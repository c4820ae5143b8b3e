//! Dense polynomials over the prime field Z/pZ.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::int_poly::IntPoly;
use crate::error::{Error, Result};

/// Polynomial with coefficients reduced into [0, p), ascending degree,
/// trailing zeros stripped. The modulus must be prime; operations that
/// additionally need p odd check for it themselves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModPoly {
    modulus: u64,
    coeffs: Vec<u64>,
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime, via Fermat.
pub(crate) fn invmod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powmod(a, p - 2, p)
}

impl ModPoly {
    /// Build from arbitrary u64 coefficients, reducing and normalizing.
    pub fn new(modulus: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % modulus).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { modulus, coeffs }
    }

    /// Reduce an integer polynomial mod p.
    pub fn reduce(f: &IntPoly, modulus: u64) -> Self {
        let p = BigInt::from(modulus);
        let coeffs = f
            .coeffs()
            .iter()
            .map(|c| {
                let r = c % &p;
                let r = if r.sign() == num_bigint::Sign::Minus {
                    r + &p
                } else {
                    r
                };
                r.to_u64().expect("residue fits u64")
            })
            .collect();
        ModPoly::new(modulus, coeffs)
    }

    pub fn zero(modulus: u64) -> Self {
        ModPoly {
            modulus,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(modulus: u64, c: u64) -> Self {
        ModPoly::new(modulus, vec![c])
    }

    /// The monomial x mod p.
    pub fn x(modulus: u64) -> Self {
        ModPoly::new(modulus, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn leading_coeff(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn evaluate(&self, x: u64) -> u64 {
        let p = self.modulus;
        let x = x % p;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mulmod(acc, x, p) + c) % p;
        }
        acc
    }

    pub fn add(&self, rhs: &ModPoly) -> ModPoly {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let p = self.modulus;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] = c;
        }
        for (i, &c) in rhs.coeffs.iter().enumerate() {
            out[i] = (out[i] + c) % p;
        }
        ModPoly::new(p, out)
    }

    pub fn sub(&self, rhs: &ModPoly) -> ModPoly {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let p = self.modulus;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![0u64; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i] = c;
        }
        for (i, &c) in rhs.coeffs.iter().enumerate() {
            out[i] = (out[i] + p - c) % p;
        }
        ModPoly::new(p, out)
    }

    pub fn mul(&self, rhs: &ModPoly) -> ModPoly {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let p = self.modulus;
        if self.is_zero() || rhs.is_zero() {
            return ModPoly::zero(p);
        }
        let mut out = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] as u128 + a as u128 * b as u128)
                    .rem_euclid(p as u128) as u64;
            }
        }
        ModPoly::new(p, out)
    }

    pub fn scale(&self, c: u64) -> ModPoly {
        let p = self.modulus;
        ModPoly::new(p, self.coeffs.iter().map(|&a| mulmod(a, c, p)).collect())
    }

    pub fn derivative(&self) -> ModPoly {
        let p = self.modulus;
        if self.coeffs.len() <= 1 {
            return ModPoly::zero(p);
        }
        ModPoly::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| mulmod(c, (k as u64) % p, p))
                .collect(),
        )
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn divmod(&self, divisor: &ModPoly) -> (ModPoly, ModPoly) {
        debug_assert_eq!(self.modulus, divisor.modulus);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let p = self.modulus;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() < divisor.coeffs.len() {
            return (ModPoly::zero(p), self.clone());
        }
        let inv_lead = invmod(divisor.leading_coeff(), p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = mulmod(rem[k], inv_lead, p);
            if c == 0 {
                continue;
            }
            quot[k - dd] = c;
            for (i, &dc) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                rem[idx] = (rem[idx] + p - mulmod(c, dc, p)) % p;
            }
        }
        (ModPoly::new(p, quot), ModPoly::new(p, rem))
    }

    pub fn rem(&self, divisor: &ModPoly) -> ModPoly {
        self.divmod(divisor).1
    }

    /// Exact quotient; panics in debug builds if the division has remainder.
    pub fn div_exact(&self, divisor: &ModPoly) -> ModPoly {
        let (q, r) = self.divmod(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic scalar multiple (zero stays zero).
    pub fn monic(&self) -> ModPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(invmod(self.leading_coeff(), self.modulus))
    }

    /// Monic gcd.
    pub fn gcd(&self, rhs: &ModPoly) -> ModPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// g^e modulo self, by square and multiply.
    pub fn powmod_poly(&self, g: &ModPoly, mut e: u64) -> ModPoly {
        let p = self.modulus;
        let mut acc = ModPoly::constant(p, 1).rem(self);
        let mut base = g.rem(self);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(self);
            }
            base = base.mul(&base).rem(self);
            e >>= 1;
        }
        acc
    }

    /// x^e modulo self.
    pub fn pow_x_mod(&self, e: u64) -> ModPoly {
        self.powmod_poly(&ModPoly::x(self.modulus), e)
    }

    /// Fails unless the modulus is odd; mod-2 work is restricted to
    /// resultant arithmetic.
    pub(crate) fn require_odd_modulus(&self) -> Result<()> {
        if self.modulus % 2 == 0 {
            return Err(Error::ModulusNotOddPrime(self.modulus));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mp(p: u64, coeffs: &[u64]) -> ModPoly {
        ModPoly::new(p, coeffs.to_vec())
    }

    #[test]
    fn reduce_and_evaluate() {
        let f = IntPoly::from_i64(&[1, 0, 1]);
        let g = ModPoly::reduce(&f, 7);
        assert_eq!(g.evaluate(5), 5); // 26 mod 7
        let h = ModPoly::reduce(&IntPoly::from_i64(&[-1, 0, 1]), 5);
        assert_eq!(h.coeffs(), &[4, 0, 1]);
    }

    #[test]
    fn divmod_roundtrip() {
        let p = 13;
        let f = mp(p, &[3, 1, 4, 1, 5]);
        let g = mp(p, &[2, 7, 1]);
        let (q, r) = f.divmod(&g);
        let back = q.mul(&g).add(&r);
        assert_eq!(back, f);
        assert!(r.degree() < g.degree());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let p = 11;
        let a = mp(p, &[10, 1]); // x - 1
        let b = mp(p, &[9, 1]); // x - 2
        let c = mp(p, &[8, 1]); // x - 3
        let f = a.mul(&b);
        let g = a.mul(&c);
        assert_eq!(f.gcd(&g), a.monic());
        // coprime inputs give gcd 1
        assert_eq!(b.gcd(&c).degree(), Some(0));
    }

    #[test]
    fn pow_x_mod_fermat() {
        // x^p = x mod (x^p - x); check via small f: x^5 mod (x^2+1) over F_5.
        let f = mp(5, &[1, 0, 1]);
        let xp = f.pow_x_mod(5);
        // x^2 = -1, so x^5 = x(x^2)^2 = x.
        assert_eq!(xp, mp(5, &[0, 1]));
    }

    #[test]
    fn mod2_arithmetic_works() {
        // Plain ring operations stay valid at p = 2.
        let f = mp(2, &[1, 1, 1]);
        let g = mp(2, &[1, 1]);
        let (q, r) = f.divmod(&g);
        assert_eq!(q.mul(&g).add(&r), f);
        assert!(f.require_odd_modulus().is_err());
    }
}
