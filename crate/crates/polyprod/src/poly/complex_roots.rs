//! Numeric root localization by simultaneous iteration (Durand-Kerner).

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::int_poly::IntPoly;
use super::resultant::discriminant;
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_ITERATIONS: usize = 1000;

fn eval_complex(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// All complex roots of a squarefree polynomial, each with residual
/// |f(root)| < tol * max|coeff|. Roots are sorted by real then imaginary
/// part so outputs are reproducible.
///
/// Squarefreeness is checked exactly (discriminant nonzero) before any
/// floating-point work. Initial guesses sit on the circle of radius
/// 1 + max|c_i / c_d| (the Cauchy bound).
pub fn complex_roots(f: &IntPoly, tol: f64) -> Result<Vec<Complex64>> {
    let d = match f.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::ConstantPolynomial),
        Some(d) => d,
    };
    if discriminant(f)? == num_bigint::BigInt::from(0) {
        return Err(Error::RepeatedRoots);
    }
    let coeffs: Vec<f64> = f
        .coeffs()
        .iter()
        .map(|c| c.to_f64().expect("coefficient in f64 range"))
        .collect();
    let lead = coeffs[d];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let max_abs_coeff = coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
    let threshold = tol * max_abs_coeff;

    let cauchy = 1.0
        + monic[..d]
            .iter()
            .fold(0.0f64, |m, c| m.max(c.abs()));
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / d as f64 + 0.5;
            Complex64::from_polar(cauchy, theta)
        })
        .collect();

    let mut best_residual = f64::INFINITY;
    let mut best_iterate = z.clone();
    for _ in 0..MAX_ITERATIONS {
        let mut max_step = 0.0f64;
        for k in 0..d {
            let fk = eval_complex(&monic, z[k]);
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                // coincident iterates: nudge apart deterministically
                denom = Complex64::new(f64::EPSILON, f64::EPSILON);
            }
            let step = fk / denom;
            z[k] -= step;
            max_step = max_step.max(step.norm());
        }
        let residual = z
            .iter()
            .map(|&zk| eval_complex(&coeffs, zk).norm())
            .fold(0.0f64, f64::max);
        if residual < best_residual {
            best_residual = residual;
            best_iterate = z.clone();
        }
        if residual < threshold {
            z.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            return Ok(z);
        }
        if max_step == 0.0 {
            break;
        }
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
        residual: best_residual,
        best: best_iterate.iter().map(|c| (c.re, c.im)).collect(),
    })
}
