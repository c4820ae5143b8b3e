//! Squarefree decomposition over prime fields and perfect-square detection.
//!
//! Characteristic p needs care beyond Yun's loop: factors whose multiplicity
//! is divisible by p vanish from the derivative and are recovered through a
//! p-th root (coefficientwise, since a^p = a in the prime field).

use super::mod_poly::ModPoly;
use crate::arith::jacobi_i64;
use crate::error::{Error, Result};

/// f = unit * prod factor_i^multiplicity_i with monic squarefree pairwise
/// coprime factors.
#[derive(Clone, Debug)]
pub struct SquarefreeDecomposition {
    pub unit: u64,
    pub factors: Vec<(ModPoly, u32)>,
}

impl SquarefreeDecomposition {
    /// Rebuild the original polynomial (used by tests).
    pub fn reassemble(&self, p: u64) -> ModPoly {
        let mut acc = ModPoly::constant(p, self.unit);
        for (f, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(f);
            }
        }
        acc
    }
}

/// p-th root of a polynomial whose derivative vanishes: g(x)^p = f(x).
/// In F_p[x] such f has nonzero coefficients only at indices divisible by p,
/// and the root keeps those coefficients unchanged.
fn pth_root(f: &ModPoly) -> ModPoly {
    let p = f.modulus();
    let step = p as usize;
    let coeffs: Vec<u64> = f.coeffs().iter().copied().step_by(step).collect();
    ModPoly::new(p, coeffs)
}

fn decompose_into(f: &ModPoly, outer: u32, out: &mut Vec<(ModPoly, u32)>) {
    let p = f.modulus();
    let f = f.monic();
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let deriv = f.derivative();
    if deriv.is_zero() {
        // Pure p-th power.
        decompose_into(&pth_root(&f), outer * p as u32, out);
        return;
    }
    let mut a = f.gcd(&deriv);
    let mut w = f.div_exact(&a);
    // Yun main loop: peel multiplicity-i parts for i not divisible by p.
    let mut i = 1u32;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&a);
        let z = w.div_exact(&y);
        if z.degree().unwrap_or(0) > 0 {
            out.push((z.monic(), i * outer));
        }
        i += 1;
        a = a.div_exact(&y);
        w = y;
    }
    // What remains of a is a p-th power part.
    if a.degree().unwrap_or(0) > 0 {
        decompose_into(&pth_root(&a), outer * p as u32, out);
    }
}

/// Squarefree decomposition of a nonzero polynomial over its prime field.
pub fn squarefree_decomposition(f: &ModPoly) -> Result<SquarefreeDecomposition> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut factors = Vec::new();
    decompose_into(f, 1, &mut factors);
    factors.sort_by(|x, y| {
        x.1.cmp(&y.1)
            .then_with(|| x.0.degree().cmp(&y.0.degree()))
            .then_with(|| x.0.coeffs().cmp(y.0.coeffs()))
    });
    Ok(SquarefreeDecomposition {
        unit: f.leading_coeff(),
        factors,
    })
}

/// Whether f equals g^2 for some polynomial g over the (odd) prime field:
/// every squarefree multiplicity even and the leading coefficient a
/// quadratic residue.
pub fn is_square_poly_mod(f: &ModPoly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    f.require_odd_modulus()?;
    let p = f.modulus();
    let lc = f.leading_coeff();
    if jacobi_i64(lc as i64, p).expect("odd modulus") != 1 {
        return Ok(false);
    }
    if f.degree() == Some(0) {
        return Ok(true);
    }
    let decomp = squarefree_decomposition(f)?;
    Ok(decomp.factors.iter().all(|(_, m)| m % 2 == 0))
}
