//! Exact resultants and discriminants.
//!
//! Over the integers the resultant is computed with the subresultant
//! polynomial remainder sequence (fraction-free), so every intermediate
//! value stays an exact integer. Over a prime field a plain Euclidean
//! remainder sequence suffices.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::int_poly::IntPoly;
use super::mod_poly::{invmod, mulmod, powmod, ModPoly};
use crate::error::{Error, Result};

/// Pseudo-remainder: returns R with lc(B)^(deg A - deg B + 1) * A = Q*B + R.
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let d = b.leading_coeff();
    let deg_b = b.degree().expect("nonzero divisor");
    let e = a.degree().expect("nonzero dividend") - deg_b + 1;
    let mut r = a.clone();
    let mut steps = 0usize;
    while let Some(deg_r) = r.degree() {
        if deg_r < deg_b {
            break;
        }
        // r <- d*r - lc(r) * x^(deg_r - deg_b) * b
        let lead = r.leading_coeff();
        let mut shifted = vec![BigInt::zero(); deg_r - deg_b];
        shifted.extend(b.coeffs().iter().map(|c| c * &lead));
        let scaled: Vec<BigInt> = r.coeffs().iter().map(|c| c * &d).collect();
        let mut next = vec![BigInt::zero(); deg_r + 1];
        for (i, c) in scaled.into_iter().enumerate() {
            next[i] = c;
        }
        for (i, c) in shifted.into_iter().enumerate() {
            next[i] -= c;
        }
        r = IntPoly::new(next);
        steps += 1;
    }
    // Top up the multiplier so the identity holds with exponent e.
    if steps < e {
        let factor = d.pow((e - steps) as u32);
        r = IntPoly::new(r.coeffs().iter().map(|c| c * &factor).collect());
    }
    r
}

fn exact_div(n: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!((n % d).is_zero(), "inexact division in subresultant PRS");
    n / d
}

/// Resultant of two integer polynomials via the subresultant PRS.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    if f.is_zero() || g.is_zero() {
        return BigInt::zero();
    }
    let mut a = f.clone();
    let mut b = g.clone();
    let mut s = BigInt::one();
    if a.degree() < b.degree() {
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            s = -s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if b.degree() == Some(0) {
        return s * b.leading_coeff().pow(a.degree().unwrap() as u32);
    }
    let mut g_acc = BigInt::one();
    let mut h_acc = BigInt::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = (da - db) as u32;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        let divisor = &g_acc * h_acc.pow(delta);
        b = IntPoly::new(r.coeffs().iter().map(|c| exact_div(c, &divisor)).collect());
        g_acc = a.leading_coeff();
        // h <- h^(1-delta) * g^delta, kept exact in both directions
        h_acc = if delta == 0 {
            h_acc
        } else {
            exact_div(&g_acc.pow(delta), &h_acc.pow(delta - 1))
        };
        if b.is_zero() {
            return BigInt::zero();
        }
        if b.degree() == Some(0) {
            let da = a.degree().unwrap() as u32;
            // h <- h^(1-da) * lc(B)^da
            let num = b.leading_coeff().pow(da);
            let res = if da == 0 {
                h_acc.clone()
            } else {
                exact_div(&num, &h_acc.pow(da - 1))
            };
            return s * res;
        }
    }
}

/// Discriminant of an integer polynomial of positive degree:
/// (-1)^(d(d-1)/2) * Res(f, f') / lc(f).
pub fn discriminant(f: &IntPoly) -> Result<BigInt> {
    let d = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(BigInt::one());
    }
    let res = resultant(f, &f.derivative());
    let signed = if (d * (d - 1) / 2) % 2 == 1 { -res } else { res };
    Ok(exact_div(&signed, &f.leading_coeff()))
}

/// Resultant over the prime field of the two operands' shared modulus.
pub fn resultant_mod(f: &ModPoly, g: &ModPoly) -> u64 {
    assert_eq!(f.modulus(), g.modulus());
    let p = f.modulus();
    if f.is_zero() || g.is_zero() {
        return 0;
    }
    let mut a = f.clone();
    let mut b = g.clone();
    let mut sign_flip = false;
    if a.degree() < b.degree() {
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            sign_flip = !sign_flip;
        }
        std::mem::swap(&mut a, &mut b);
    }
    let mut acc = 1u64;
    while b.degree() > Some(0) {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let r = a.rem(&b);
        if r.is_zero() {
            return 0;
        }
        let dr = r.degree().unwrap();
        if da % 2 == 1 && db % 2 == 1 {
            sign_flip = !sign_flip;
        }
        acc = mulmod(acc, powmod(b.leading_coeff(), (da - dr) as u64, p), p);
        a = b;
        b = r;
    }
    // b is now a nonzero constant
    acc = mulmod(acc, powmod(b.leading_coeff(), a.degree().unwrap() as u64, p), p);
    if sign_flip {
        acc = (p - acc) % p;
    }
    acc
}

/// Discriminant over a prime field (lc inverted instead of divided).
pub fn discriminant_mod(f: &ModPoly) -> Result<u64> {
    let p = f.modulus();
    let d = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(d) => d,
    };
    if d == 1 {
        return Ok(1 % p);
    }
    let res = resultant_mod(f, &f.derivative());
    let res = mulmod(res, invmod(f.leading_coeff(), p), p);
    if (d * (d - 1) / 2) % 2 == 1 {
        Ok((p - res) % p)
    } else {
        Ok(res)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn p(coeffs: &[i64]) -> IntPoly {
        IntPoly::from_i64(coeffs)
    }

    /// Independent oracle: Sylvester matrix determinant via Bareiss
    /// fraction-free elimination.
    fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
        let m = f.degree().unwrap();
        let n = g.degree().unwrap();
        if m + n == 0 {
            return BigInt::one();
        }
        let size = m + n;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for row in 0..n {
            for (j, c) in f.coeffs().iter().rev().enumerate() {
                mat[row][row + j] = c.clone();
            }
        }
        for row in 0..m {
            for (j, c) in g.coeffs().iter().rev().enumerate() {
                mat[n + row][row + j] = c.clone();
            }
        }
        // Bareiss
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..size - 1 {
            if mat[k][k].is_zero() {
                let swap = (k + 1..size).find(|&i| !mat[i][k].is_zero());
                match swap {
                    Some(i) => {
                        mat.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..size {
                for j in k + 1..size {
                    let num = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                    mat[i][j] = &num / &prev;
                }
                mat[i][k] = BigInt::zero();
            }
            prev = mat[k][k].clone();
        }
        sign * mat[size - 1][size - 1].clone()
    }

    #[test]
    fn matches_sylvester_oracle() {
        let cases = [
            (p(&[1, 0, 1]), p(&[2, 1])),
            (p(&[-2, 0, 0, 1]), p(&[0, 0, 3])),
            (p(&[3, 1, 4, 1, 5]), p(&[2, 7, 1, 8])),
            (p(&[1, 2, 3]), p(&[-1, 5])),
            (p(&[5, 0, -2, 0, 1]), p(&[1, 1, 1])),
            (p(&[2, 0, 0, 0, 0, 1]), p(&[-3, 1, 0, 0, 2])),
        ];
        for (f, g) in &cases {
            assert_eq!(resultant(f, g), sylvester_resultant(f, g), "f={f} g={g}");
            assert_eq!(resultant(g, f), sylvester_resultant(g, f), "g={g} f={f}");
        }
    }

    #[test]
    fn random_cases_match_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(42);
        for _ in 0..200 {
            let df = rng.random_range(1..=6);
            let dg = rng.random_range(1..=6);
            let f: Vec<i64> = (0..=df).map(|_| rng.random_range(-9..=9)).collect();
            let g: Vec<i64> = (0..=dg).map(|_| rng.random_range(-9..=9)).collect();
            let f = p(&f);
            let g = p(&g);
            if f.degree().unwrap_or(0) == 0 || g.degree().unwrap_or(0) == 0 {
                continue;
            }
            assert_eq!(resultant(&f, &g), sylvester_resultant(&f, &g), "f={f} g={g}");
        }
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&p(&[1, 0, 1])).unwrap(), BigInt::from(-4));
        assert_eq!(discriminant(&p(&[-2, 0, 0, 1])).unwrap(), BigInt::from(-108));
        assert_eq!(discriminant(&p(&[-1, 0, 1])).unwrap(), BigInt::from(4));
        // quadratic ax^2+bx+c has disc b^2-4ac
        assert_eq!(discriminant(&p(&[3, 5, 2])).unwrap(), BigInt::from(1));
        assert!(discriminant(&p(&[7])).is_err());
    }

    #[test]
    fn mod_resultant_agrees_with_integer_reduction() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(5);
        for &q in &[2u64, 3, 5, 13, 101] {
            for _ in 0..60 {
                let df = rng.random_range(1..=5);
                let dg = rng.random_range(1..=5);
                let fc: Vec<i64> = (0..=df).map(|_| rng.random_range(-9..=9)).collect();
                let gc: Vec<i64> = (0..=dg).map(|_| rng.random_range(-9..=9)).collect();
                let f = p(&fc);
                let g = p(&gc);
                let fm = ModPoly::reduce(&f, q);
                let gm = ModPoly::reduce(&g, q);
                if fm.degree() != f.degree() || gm.degree() != g.degree() {
                    continue; // degree dropped mod q; reductions differ by lc powers
                }
                let int_res = resultant(&f, &g);
                let expected = {
                    let r = &int_res % BigInt::from(q);
                    let r = if r < BigInt::zero() { r + BigInt::from(q) } else { r };
                    u64::try_from(r).unwrap()
                };
                assert_eq!(resultant_mod(&fm, &gm), expected, "q={q} f={f} g={g}");
            }
        }
    }
}
