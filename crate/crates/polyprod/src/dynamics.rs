//! Per-prime statistics for the dynamical system n -> F_P(n) mod p:
//! good/bad classification, image size G_P(p), missing residues, collision
//! witnesses from roots of f_n, and the averaged missing-value diagnostic.

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::primes_up_to;
use crate::error::{Error, Result};
use crate::poly::{count_roots_mod, roots_mod, smallest_root_as_index, IntPoly, ModPoly};
use crate::products::{orbit_mod, shifted_product_minus_one, ProductOrbit};

/// Good means P has no root modulo p, so the orbit never reaches 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum PrimeClass {
    Good,
    /// n0 is the smallest index n in [1, p] with P(n) = 0 mod p; a root at
    /// residue 0 is represented by p since indices run 1..p.
    Bad { n0: u64 },
}

impl PrimeClass {
    pub fn is_good(&self) -> bool {
        matches!(self, PrimeClass::Good)
    }
}

/// Classify p as good or bad for P, with the smallest root index when bad.
pub fn classify_prime(poly: &IntPoly, p: u64) -> Result<PrimeClass> {
    let reduced = ModPoly::reduce(poly, p);
    if reduced.is_zero() {
        return Err(Error::DegenerateReduction { p });
    }
    if reduced.degree() == Some(0) {
        return Ok(PrimeClass::Good);
    }
    match smallest_root_as_index(&reduced)? {
        None => Ok(PrimeClass::Good),
        Some(n0) => Ok(PrimeClass::Bad { n0 }),
    }
}

/// Fixed-size residue bitset.
#[derive(Clone, Debug)]
struct ResidueSet {
    words: Vec<u64>,
    universe: u64,
}

impl ResidueSet {
    fn new(universe: u64) -> Self {
        ResidueSet {
            words: vec![0; universe.div_ceil(64) as usize],
            universe,
        }
    }

    fn insert(&mut self, r: u64) {
        self.words[(r / 64) as usize] |= 1 << (r % 64);
    }

    fn contains(&self, r: u64) -> bool {
        self.words[(r / 64) as usize] >> (r % 64) & 1 == 1
    }

    fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    fn missing(&self) -> Vec<u64> {
        (0..self.universe).filter(|&r| !self.contains(r)).collect()
    }
}

/// Image statistics of the orbit F_P(1..p) mod p.
#[derive(Clone, Debug)]
pub struct ImageStats {
    p: u64,
    class: PrimeClass,
    image_size: u64,
    attained: ResidueSet,
    lower_bound: f64,
    bound_ok: bool,
}

impl ImageStats {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn class(&self) -> PrimeClass {
        self.class
    }

    pub fn is_good(&self) -> bool {
        self.class.is_good()
    }

    pub fn n0(&self) -> Option<u64> {
        match self.class {
            PrimeClass::Good => None,
            PrimeClass::Bad { n0 } => Some(n0),
        }
    }

    /// G_P(p): number of distinct residues among F_P(1..p).
    pub fn image_size(&self) -> u64 {
        self.image_size
    }

    pub fn missing_count(&self) -> u64 {
        self.p - self.image_size
    }

    /// The unattained residues, ascending. Materializes the bitset.
    pub fn missing_residues(&self) -> Vec<u64> {
        self.attained.missing()
    }

    pub fn contains(&self, residue: u64) -> bool {
        self.attained.contains(residue)
    }

    /// sqrt(p / deg P), the square-root lower bound for good primes.
    pub fn lower_bound(&self) -> f64 {
        self.lower_bound
    }

    /// Good: G >= sqrt(p / deg P), checked exactly as G^2 deg >= p.
    /// Bad: G <= n0.
    pub fn bound_ok(&self) -> bool {
        self.bound_ok
    }
}

/// Compute image statistics for one prime.
pub fn image_stats(poly: &IntPoly, p: u64) -> Result<ImageStats> {
    let class = classify_prime(poly, p)?;
    let orbit = orbit_mod(poly, p)?;
    let mut attained = ResidueSet::new(p);
    for &v in orbit.values() {
        attained.insert(v);
    }
    let image_size = attained.count();
    let deg = poly.degree().unwrap_or(0).max(1) as u64;
    let lower_bound = ((p as f64) / deg as f64).sqrt();
    let bound_ok = match class {
        PrimeClass::Good => (image_size as u128).pow(2) * deg as u128 >= p as u128,
        PrimeClass::Bad { n0 } => image_size <= n0,
    };
    Ok(ImageStats {
        p,
        class,
        image_size,
        attained,
        lower_bound,
        bound_ok,
    })
}

/// A verified orbit collision F_P(t0+n-1) = F_P(t0-1) mod p coming from a
/// root t0 of f_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CollisionWitness {
    pub n: u64,
    pub t0: u64,
    pub lhs_index: u64,
    pub rhs_index: u64,
}

impl CollisionWitness {
    /// Package a root as a witness, re-checking both congruences against
    /// the orbit. F_P(0) is the empty product 1.
    fn checked(n: u64, t0: u64, orbit: &ProductOrbit) -> Result<Self> {
        let w = CollisionWitness {
            n,
            t0,
            lhs_index: t0 + n - 1,
            rhs_index: t0 - 1,
        };
        let p = orbit.modulus();
        let fn_at = shifted_product_minus_one(orbit.poly(), n);
        let fn_mod = ModPoly::reduce(&fn_at, p);
        let root_ok = fn_mod.is_zero() || fn_mod.evaluate(t0 % p) == 0;
        if !root_ok {
            return Err(Error::internal(format!(
                "witness root check failed: f_{n}({t0}) != 0 mod {p}"
            )));
        }
        if orbit.value_at(w.lhs_index) != orbit.value_at(w.rhs_index) {
            return Err(Error::internal(format!(
                "witness orbit check failed at p = {p}, n = {n}, t0 = {t0}"
            )));
        }
        Ok(w)
    }
}

/// Roots of f_n mod p for n = 1..N, kept when 1 <= t0 <= p - n so both
/// orbit indices stay within [0, p]. Every witness is verified before
/// being returned.
pub fn collision_witnesses(poly: &IntPoly, p: u64, n_max: u64) -> Result<Vec<CollisionWitness>> {
    let class = classify_prime(poly, p)?;
    if !class.is_good() {
        return Err(Error::precondition(format!(
            "collision witnesses require a good prime, but {p} is bad for {poly}"
        )));
    }
    if n_max >= p {
        return Err(Error::precondition(format!(
            "shift budget N = {n_max} must be smaller than p = {p}"
        )));
    }
    let orbit = orbit_mod(poly, p)?;
    let mut out = Vec::new();
    for n in 1..=n_max {
        let f_n = shifted_product_minus_one(poly, n);
        let reduced = ModPoly::reduce(&f_n, p);
        let roots: Vec<u64> = if reduced.is_zero() {
            // f_n vanished identically: every residue is a root.
            (0..p).collect()
        } else if reduced.degree() == Some(0) {
            Vec::new()
        } else {
            roots_mod(&reduced)?
        };
        for t0 in roots {
            if t0 >= 1 && t0 <= p - n {
                out.push(CollisionWitness::checked(n, t0, &orbit)?);
            }
        }
    }
    Ok(out)
}

/// One shift length's contribution to the right-hand side of the
/// missing-value inequality.
#[derive(Clone, Debug, Serialize)]
pub struct RhoContribution {
    pub n: u64,
    /// Sum of rho_n(p) over good primes p <= x.
    pub root_total: u64,
    /// The same sum divided by pi(x).
    pub normalized: f64,
}

/// Both sides of the averaged missing-value inequality at finite x, N,
/// reported without asserting either direction.
#[derive(Clone, Debug, Serialize)]
pub struct MissingAverageReport {
    pub x: u64,
    pub n_max: u64,
    pub pi_x: u64,
    pub good_count: u64,
    pub bad_count: u64,
    /// Primes dividing every coefficient of P; skipped entirely.
    pub degenerate_count: u64,
    /// (1/pi(x)) * sum over good p <= x of (p - G_P(p)).
    pub lhs: f64,
    /// Exact numerator of the left side.
    pub lhs_total: u64,
    /// sum over n <= N of (1/pi(x)) * sum over good p of rho_n(p).
    pub rhs: f64,
    pub rhs_per_n: Vec<RhoContribution>,
    /// lhs / rhs when rhs > 0.
    pub ratio: Option<f64>,
    /// True when the finite-x data violates lhs >= rhs; reported, not
    /// asserted, since root counts across different n may force the same
    /// repeated orbit value.
    pub violated: bool,
    /// Mean of (p - G_P(p)) over bad primes, as a separate diagnostic.
    pub bad_mean_missing: Option<f64>,
    /// Mean of G_P(p)/p over good primes (speculative constant watch).
    pub good_mean_image_fraction: Option<f64>,
}

/// Number of distinct roots of f_n modulo p, with the convention that an
/// identically-zero reduction has every residue as a root.
fn rho_n(f_n: &IntPoly, p: u64) -> Result<u64> {
    let reduced = ModPoly::reduce(f_n, p);
    if reduced.is_zero() {
        return Ok(p);
    }
    if reduced.degree() == Some(0) {
        return Ok(0);
    }
    Ok(count_roots_mod(&reduced)? as u64)
}

/// Evaluate both sides of the missing-value inequality at finite x and N.
/// Sums run over odd primes (the mod-2 dynamics is degenerate); the
/// normalization pi(x) counts all primes up to x.
pub fn missing_average(poly: &IntPoly, x: u64, n_max: u64) -> Result<MissingAverageReport> {
    let all_primes = primes_up_to(x);
    let pi_x = all_primes.len() as u64;
    let primes: Vec<u64> = all_primes.into_iter().filter(|&p| p > 2).collect();
    let f_ns: Vec<IntPoly> = (1..=n_max)
        .map(|n| shifted_product_minus_one(poly, n))
        .collect();

    struct PerPrime {
        good: bool,
        degenerate: bool,
        missing: u64,
        image: u64,
        p: u64,
        rho: Vec<u64>,
    }

    let rows: Vec<PerPrime> = primes
        .par_iter()
        .map(|&p| -> Result<PerPrime> {
            match image_stats(poly, p) {
                Err(Error::DegenerateReduction { .. }) => Ok(PerPrime {
                    good: false,
                    degenerate: true,
                    missing: 0,
                    image: 0,
                    p,
                    rho: Vec::new(),
                }),
                Err(e) => Err(e),
                Ok(stats) => {
                    let good = stats.is_good();
                    let rho = if good {
                        f_ns.iter()
                            .map(|f_n| rho_n(f_n, p))
                            .collect::<Result<Vec<u64>>>()?
                    } else {
                        Vec::new()
                    };
                    Ok(PerPrime {
                        good,
                        degenerate: false,
                        missing: stats.missing_count(),
                        image: stats.image_size(),
                        p,
                        rho,
                    })
                }
            }
        })
        .collect::<Result<Vec<_>>>()?;

    let mut lhs_total = 0u64;
    let mut good_count = 0u64;
    let mut bad_count = 0u64;
    let mut degenerate_count = 0u64;
    let mut bad_missing_total = 0u64;
    let mut good_fraction_total = 0.0f64;
    let mut per_n_totals = vec![0u64; n_max as usize];
    for row in &rows {
        if row.degenerate {
            degenerate_count += 1;
        } else if row.good {
            good_count += 1;
            lhs_total += row.missing;
            good_fraction_total += row.image as f64 / row.p as f64;
            for (i, &r) in row.rho.iter().enumerate() {
                per_n_totals[i] += r;
            }
        } else {
            bad_count += 1;
            bad_missing_total += row.missing;
        }
    }

    let denom = pi_x.max(1) as f64;
    let rhs_per_n: Vec<RhoContribution> = per_n_totals
        .iter()
        .enumerate()
        .map(|(i, &total)| RhoContribution {
            n: i as u64 + 1,
            root_total: total,
            normalized: total as f64 / denom,
        })
        .collect();
    let lhs = lhs_total as f64 / denom;
    let rhs = rhs_per_n.iter().map(|c| c.normalized).sum::<f64>();
    Ok(MissingAverageReport {
        x,
        n_max,
        pi_x,
        good_count,
        bad_count,
        degenerate_count,
        lhs,
        lhs_total,
        rhs,
        rhs_per_n,
        ratio: (rhs > 0.0).then(|| lhs / rhs),
        violated: lhs < rhs,
        bad_mean_missing: (bad_count > 0).then(|| bad_missing_total as f64 / bad_count as f64),
        good_mean_image_fraction: (good_count > 0).then(|| good_fraction_total / good_count as f64),
    })
}
