//! The product objects themselves: orbits of F_P(n) = P(1)...P(n) modulo a
//! prime, shifted products, and exact factored data about F_P(n).
//!
//! Two shift conventions coexist on purpose and differ by one:
//! `shifted_product` multiplies P(x+1)..P(x+h), while
//! `shifted_product_minus_one` multiplies P(x)..P(x+n-1) and then drops
//! one. The collision identity F(t0+n-1) = F(t0-1) depends on the second
//! convention starting at offset zero.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::arith::{factorize, FactorMap};
use crate::error::{Error, Result};
use crate::poly::{IntPoly, ModPoly};

/// Residues F_P(1..p) mod p, computed by one linear scan.
#[derive(Clone, Debug)]
pub struct ProductOrbit {
    poly: IntPoly,
    modulus: u64,
    values: Vec<u64>,
}

impl ProductOrbit {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// values()[n-1] = F_P(n) mod p for n = 1..p.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// F_P(n) mod p for 0 <= n <= p, with F_P(0) the empty product 1.
    pub fn value_at(&self, n: u64) -> u64 {
        if n == 0 {
            1 % self.modulus
        } else {
            self.values[(n - 1) as usize]
        }
    }
}

/// The p residues F_P(1..p) mod p. Errors when p divides every coefficient.
pub fn orbit_mod(poly: &IntPoly, p: u64) -> Result<ProductOrbit> {
    let reduced = ModPoly::reduce(poly, p);
    if reduced.is_zero() {
        return Err(Error::DegenerateReduction { p });
    }
    let mut values = Vec::with_capacity(p as usize);
    let mut acc = 1u64 % p;
    for n in 1..=p {
        acc = ((acc as u128 * reduced.evaluate(n % p) as u128) % p as u128) as u64;
        values.push(acc);
    }
    Ok(ProductOrbit {
        poly: poly.clone(),
        modulus: p,
        values,
    })
}

/// F_h(x) = P(x+1) P(x+2) ... P(x+h), expanded exactly.
pub fn shifted_product(poly: &IntPoly, h: u64) -> IntPoly {
    let mut acc = IntPoly::constant(BigInt::from(1));
    for n in 1..=h {
        acc = &acc * &poly.shift(&BigInt::from(n));
    }
    acc
}

/// f_n(x) = P(x) P(x+1) ... P(x+n-1) - 1. Shifts start at zero here.
pub fn shifted_product_minus_one(poly: &IntPoly, n: u64) -> IntPoly {
    let mut acc = IntPoly::constant(BigInt::from(1));
    for j in 0..n {
        acc = &acc * &poly.shift(&BigInt::from(j));
    }
    &acc - &IntPoly::constant(BigInt::from(1))
}

/// Whether kernels are taken of F_P(n) itself or of F_P(n)/F_P(M).
///
/// Absolute kernels answer membership in S_d; the relative mode skips
/// factoring P(1..M) when only pairwise distinctness over the window
/// matters.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelMode {
    Absolute,
    Relative,
}

/// Streamed squarefree kernels d(n) with F_P(n) = d(n) t^2 over a window,
/// together with the final parity accumulator.
#[derive(Clone, Debug)]
pub struct KernelTrace {
    poly: IntPoly,
    window_start: u64,
    upper: u64,
    mode: KernelMode,
    kernels: BTreeMap<u64, BigInt>,
    parity: ParityAccumulator,
    largest_prime: Option<BigUint>,
}

/// Running exponent parities of every prime seen so far, plus the sign.
#[derive(Clone, Debug, Default)]
pub struct ParityAccumulator {
    odd_primes: std::collections::BTreeSet<BigUint>,
    negative: bool,
}

impl ParityAccumulator {
    fn absorb(&mut self, f: &FactorMap) {
        if f.sign() < 0 {
            self.negative = !self.negative;
        }
        for (p, e) in f.entries() {
            if e % 2 == 1 && !self.odd_primes.remove(p) {
                self.odd_primes.insert(p.clone());
            }
        }
    }

    /// The signed squarefree integer this parity state encodes.
    pub fn kernel(&self) -> BigInt {
        let mag = self
            .odd_primes
            .iter()
            .fold(BigUint::from(1u32), |acc, p| acc * p);
        let k = BigInt::from(mag);
        if self.negative {
            -k
        } else {
            k
        }
    }
}

impl KernelTrace {
    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn upper(&self) -> u64 {
        self.upper
    }

    pub fn mode(&self) -> KernelMode {
        self.mode
    }

    /// Kernel d(n) per index n in the window (M, M+N].
    pub fn kernels(&self) -> &BTreeMap<u64, BigInt> {
        &self.kernels
    }

    pub fn kernel_at(&self, n: u64) -> Option<&BigInt> {
        self.kernels.get(&n)
    }

    pub fn parity_state(&self) -> &ParityAccumulator {
        &self.parity
    }

    /// Largest prime factor seen across the factored range.
    pub fn largest_prime(&self) -> Option<&BigUint> {
        self.largest_prime.as_ref()
    }

    pub fn window_start(&self) -> u64 {
        self.window_start
    }
}

/// Kernels of F_P(n) for n in (M, M+N], streaming parity flips one P(i) at
/// a time; the full product is never formed.
pub fn kernel_trace_window(
    poly: &IntPoly,
    m: u64,
    n: u64,
    mode: KernelMode,
) -> Result<KernelTrace> {
    let mut parity = ParityAccumulator::default();
    let mut largest: Option<BigUint> = None;
    let start = match mode {
        KernelMode::Absolute => 1,
        KernelMode::Relative => m + 1,
    };
    let mut kernels = BTreeMap::new();
    for i in start..=m + n {
        let v = poly.evaluate(&BigInt::from(i));
        if v.is_zero() {
            return Err(Error::ZeroProductValue { i: i as i64 });
        }
        let f = factorize(&v)?;
        if let Some(p) = f.largest_prime() {
            if largest.as_ref().is_none_or(|cur| p > cur) {
                largest = Some(p.clone());
            }
        }
        parity.absorb(&f);
        if i > m {
            kernels.insert(i, parity.kernel());
        }
    }
    Ok(KernelTrace {
        poly: poly.clone(),
        window_start: m,
        upper: m + n,
        mode,
        kernels,
        parity,
        largest_prime: largest,
    })
}

/// Kernels of F_P(1..N).
pub fn kernel_trace(poly: &IntPoly, n: u64) -> Result<KernelTrace> {
    kernel_trace_window(poly, 0, n, KernelMode::Absolute)
}

/// Largest prime factor of F_P(n) = P(1)...P(n).
pub fn largest_prime_factor_of_f(poly: &IntPoly, n: u64) -> Result<BigUint> {
    let trace = kernel_trace(poly, n)?;
    trace
        .largest_prime()
        .cloned()
        .ok_or_else(|| Error::internal("empty product has no prime factors"))
}
