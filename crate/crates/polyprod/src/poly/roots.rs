//! Roots of polynomials over prime fields.
//!
//! The distinct-root count is deg gcd(x^p - x, f), with x^p computed by
//! repeated squaring modulo f. Root extraction scans all residues below a
//! threshold and switches to equal-degree splitting above it; the splitting
//! shifts walk a = 0, 1, 2, ... so results are reproducible.

use super::mod_poly::ModPoly;
use crate::error::{Error, Result};

/// Below this modulus a direct scan of all residues is used.
pub const ROOTS_BRUTE_THRESHOLD: u64 = 100_000;

/// The product of (x - r) over distinct roots r of f in the prime field:
/// gcd(x^p - x, f), monic.
fn linear_factor_part(f: &ModPoly) -> ModPoly {
    let p = f.modulus();
    let xp = f.pow_x_mod(p);
    let h = xp.sub(&ModPoly::x(p).rem(f));
    if h.is_zero() {
        // f divides x^p - x: f is squarefree with all roots in the field.
        return f.monic();
    }
    h.gcd(f)
}

/// Number of distinct roots of f modulo its prime modulus.
pub fn count_roots_mod(f: &ModPoly) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Ok(0);
    }
    Ok(linear_factor_part(f).degree().unwrap_or(0))
}

fn brute_roots(f: &ModPoly) -> Vec<u64> {
    (0..f.modulus()).filter(|&x| f.evaluate(x) == 0).collect()
}

/// Split a monic product of distinct linear factors into its roots.
fn split_linear(g: &ModPoly, out: &mut Vec<u64>) {
    let p = g.modulus();
    match g.degree() {
        None | Some(0) => {}
        Some(1) => {
            // monic x + c0: root is -c0
            let c0 = g.coeff(0);
            out.push((p - c0) % p);
        }
        Some(_) => {
            // (x + a)^((p-1)/2) - 1 splits off the roots r with r + a a
            // nonzero square; walk a deterministically until it separates.
            let e = (p - 1) / 2;
            for a in 0.. {
                let base = ModPoly::new(p, vec![a, 1]);
                let pow = g.powmod_poly(&base, e);
                let h = pow.sub(&ModPoly::constant(p, 1));
                let w = h.gcd(g);
                if let Some(dw) = w.degree() {
                    if dw > 0 && dw < g.degree().unwrap() {
                        let rest = g.div_exact(&w);
                        split_linear(&w, out);
                        split_linear(&rest, out);
                        return;
                    }
                }
            }
        }
    }
}

/// All distinct roots of f in [0, p), sorted ascending.
pub fn roots_mod(f: &ModPoly) -> Result<Vec<u64>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let p = f.modulus();
    if p < ROOTS_BRUTE_THRESHOLD {
        return Ok(brute_roots(f));
    }
    let g = linear_factor_part(f);
    let mut out = Vec::new();
    split_linear(&g, &mut out);
    out.sort_unstable();
    Ok(out)
}

/// Smallest root in the index range [1, p], with residue 0 represented by p.
pub fn smallest_root_as_index(f: &ModPoly) -> Result<Option<u64>> {
    let roots = roots_mod(f)?;
    if roots.is_empty() {
        return Ok(None);
    }
    let p = f.modulus();
    Ok(roots
        .iter()
        .map(|&r| if r == 0 { p } else { r })
        .min())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_in;
    use crate::poly::IntPoly;

    fn reduce(coeffs: &[i64], p: u64) -> ModPoly {
        ModPoly::reduce(&IntPoly::from_i64(coeffs), p)
    }

    #[test]
    fn examples() {
        let f = reduce(&[1, 0, 1], 5); // x^2 + 1 mod 5
        assert_eq!(count_roots_mod(&f).unwrap(), 2);
        assert_eq!(roots_mod(&f).unwrap(), vec![2, 3]);

        let f = reduce(&[1, 0, 1], 7);
        assert_eq!(count_roots_mod(&f).unwrap(), 0);
        assert_eq!(roots_mod(&f).unwrap(), Vec::<u64>::new());

        let f = reduce(&[0, 0, 1], 7); // x^2: one distinct root
        assert_eq!(count_roots_mod(&f).unwrap(), 1);
        assert_eq!(roots_mod(&f).unwrap(), vec![0]);

        let f = reduce(&[1, 0, 1], 3);
        assert_eq!(roots_mod(&f).unwrap(), Vec::<u64>::new());

        assert!(count_roots_mod(&ModPoly::zero(5)).is_err());
    }

    #[test]
    fn count_matches_brute_scan_all_small_primes() {
        // Every prime p < 500, a spread of polynomials.
        let polys: Vec<IntPoly> = vec![
            IntPoly::from_i64(&[1, 0, 1]),
            IntPoly::from_i64(&[-2, 0, 0, 1]),
            IntPoly::from_i64(&[1, 1, 1]),
            IntPoly::from_i64(&[3, -1, 0, 2, 1]),
            IntPoly::from_i64(&[0, 6, 0, 1]),
        ];
        for p in primes_in(2, 499) {
            for f in &polys {
                let fm = ModPoly::reduce(f, p);
                if fm.is_zero() {
                    continue;
                }
                let brute: Vec<u64> = (0..p).filter(|&x| fm.evaluate(x) == 0).collect();
                if fm.degree() == Some(0) {
                    assert!(brute.is_empty());
                    continue;
                }
                assert_eq!(count_roots_mod(&fm).unwrap(), brute.len(), "p={p} f={f}");
                assert_eq!(roots_mod(&fm).unwrap(), brute, "p={p} f={f}");
            }
        }
    }

    #[test]
    fn equal_degree_splitting_above_threshold() {
        // p = 100003 is prime and above the brute threshold; build a
        // polynomial with known roots and recover them algebraically.
        let p = 100_003u64;
        assert!(crate::arith::is_prime_u64(p));
        let roots = [17u64, 299, 50_001, 99_990];
        let mut f = ModPoly::constant(p, 1);
        for &r in &roots {
            f = f.mul(&ModPoly::new(p, vec![(p - r) % p, 1]));
        }
        let mut expected = roots.to_vec();
        expected.sort_unstable();
        assert_eq!(roots_mod(&f).unwrap(), expected);
        assert_eq!(count_roots_mod(&f).unwrap(), 4);
        // And a rootless one stays rootless.
        let g = reduce(&[1, 0, 1], p); // p = 3 mod 4, so x^2+1 has no roots
        assert_eq!(p % 4, 3);
        assert_eq!(count_roots_mod(&g).unwrap(), 0);
        assert_eq!(roots_mod(&g).unwrap(), Vec::<u64>::new());
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (x-1)^2 (x-2) mod 11
        let p = 11;
        let f = ModPoly::new(p, vec![10, 1]);
        let g = f.mul(&f).mul(&ModPoly::new(p, vec![9, 1]));
        assert_eq!(count_roots_mod(&g).unwrap(), 2);
        assert_eq!(roots_mod(&g).unwrap(), vec![1, 2]);
    }
}
