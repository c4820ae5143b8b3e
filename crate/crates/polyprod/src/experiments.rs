//! Runnable experiments: perfect-power searches, kernel censuses and the
//! distinct-field count, the square-sieve pipeline, Weil-bound diagnostics,
//! Chebotarev densities, exceptional-prime censuses, the random permutation
//! model, and binomial shift checks.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factorize, is_prime_u64, jacobi, primes_in, primes_up_to, FactorMap};
use crate::error::{Error, Result};
use crate::poly::{count_roots_mod, is_square_poly_mod, IntPoly, ModPoly};
use crate::products::{kernel_trace_window, shifted_product, KernelMode};
use crate::report::big_to_json;

/// One solution of F_P(n) = m^k with m kept in factored form.
#[derive(Clone, Debug, Serialize)]
pub struct PowerSolution {
    pub n: u64,
    /// Factored root m; its plain value can be astronomically large.
    pub m_factored: String,
    pub m_sign: i8,
    pub m_factors: Vec<(String, u32)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerSolutionsReport {
    pub poly: String,
    pub k: u32,
    pub n_max: u64,
    pub solutions: Vec<PowerSolution>,
}

/// All n <= N with F_P(n) a perfect k-th power, by streaming exponent
/// accumulation; the products themselves are never formed.
pub fn find_power_solutions(poly: &IntPoly, k: u32, n_max: u64) -> Result<PowerSolutionsReport> {
    if k < 2 {
        return Err(Error::BadExponent(k as i64));
    }
    let mut exponents: BTreeMap<BigUint, u64> = BTreeMap::new();
    let mut negative = false;
    let mut solutions = Vec::new();
    for n in 1..=n_max {
        let v = poly.evaluate(&BigInt::from(n));
        if v.is_zero() {
            return Err(Error::ZeroProductValue { i: n as i64 });
        }
        let f = factorize(&v)?;
        if f.sign() < 0 {
            negative = !negative;
        }
        for (p, e) in f.entries() {
            *exponents.entry(p.clone()).or_insert(0) += *e as u64;
        }
        let sign_ok = if k % 2 == 0 { !negative } else { true };
        if sign_ok && exponents.values().all(|e| e % k as u64 == 0) {
            let root = FactorMap::from_map(
                if negative { -1 } else { 1 },
                exponents
                    .iter()
                    .filter(|(_, &e)| e > 0)
                    .map(|(p, &e)| (p.clone(), (e / k as u64) as u32))
                    .collect(),
            );
            solutions.push(PowerSolution {
                n,
                m_factored: root.to_string(),
                m_sign: root.sign(),
                m_factors: root
                    .entries()
                    .iter()
                    .map(|(p, e)| (p.to_string(), *e))
                    .collect(),
            });
        }
    }
    Ok(PowerSolutionsReport {
        poly: poly.to_string(),
        k,
        n_max,
        solutions,
    })
}

/// One kernel class: the set S_d of indices sharing squarefree kernel d.
#[derive(Clone, Debug, Serialize)]
pub struct KernelClass {
    pub d: serde_json::Value,
    pub members: Vec<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SdCensusReport {
    pub poly: String,
    pub m: u64,
    pub n: u64,
    pub distinct_fields: u64,
    pub max_class_size: u64,
    pub max_class_d: serde_json::Value,
    /// N^(7/8) (log N)^(1/4), the comparison scale for max |S_d|.
    pub bound_value: f64,
    /// max |S_d| / bound, reported only (None when the bound is zero).
    pub ratio: Option<f64>,
    pub classes: Vec<KernelClass>,
}

impl SdCensusReport {
    /// Members of S_d for a particular kernel (exact BigInt lookup).
    pub fn class_members(&self, d: &BigInt) -> Option<&[u64]> {
        let key = big_to_json(d);
        self.classes
            .iter()
            .find(|c| c.d == key)
            .map(|c| c.members.as_slice())
    }
}

/// Group the window (M, M+N] by absolute squarefree kernel of F_P(n).
/// Distinct kernels are in bijection with distinct quadratic fields
/// Q(sqrt(F_P(n))).
pub fn s_d_census(poly: &IntPoly, m: u64, n: u64) -> Result<SdCensusReport> {
    let trace = kernel_trace_window(poly, m, n, KernelMode::Absolute)?;
    let mut classes: BTreeMap<BigInt, Vec<u64>> = BTreeMap::new();
    for (&idx, d) in trace.kernels() {
        classes.entry(d.clone()).or_default().push(idx);
    }
    let (max_d, max_size) = classes
        .iter()
        .map(|(d, v)| (d, v.len() as u64))
        .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(a.0)))
        .map(|(d, s)| (d.clone(), s))
        .unwrap_or((BigInt::one(), 0));
    let bound_value = (n as f64).powf(7.0 / 8.0) * (n as f64).ln().max(0.0).powf(0.25);
    Ok(SdCensusReport {
        poly: poly.to_string(),
        m,
        n,
        distinct_fields: classes.len() as u64,
        max_class_size: max_size,
        max_class_d: big_to_json(&max_d),
        bound_value,
        ratio: (bound_value > 0.0).then(|| max_size as f64 / bound_value),
        classes: classes
            .into_iter()
            .map(|(d, members)| KernelClass {
                d: big_to_json(&d),
                members,
            })
            .collect(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SieveReport {
    pub poly: String,
    pub d: serde_json::Value,
    pub m: u64,
    pub n: u64,
    pub h: u64,
    pub z: u64,
    pub s1_count: u64,
    pub s2_count: u64,
    pub curly_l_size: u64,
    pub curly_p_size: u64,
    /// The full solution set S_d(M, N) from the kernel census.
    pub solutions: Vec<u64>,
    /// For every n in S_2, the character sum over the sieve primes came out
    /// equal to |P_z| for its gap partner h.
    pub s2_full_sum_verified: bool,
    /// N^(7/8) (log N)^(1/4).
    pub bound_value: f64,
}

/// Default sieve parameters: z = sqrt(N), H = N^(1/8) / (log N)^(1/4),
/// both rounded and clamped to at least 1.
pub fn sieve_defaults(n: u64) -> (u64, u64) {
    let nf = n as f64;
    let z = nf.sqrt().round().max(1.0) as u64;
    let h = (nf.powf(1.0 / 8.0) / nf.ln().max(1.0).powf(0.25))
        .round()
        .max(1.0) as u64;
    (h, z)
}

/// The square-sieve pipeline run as an instrumented computation: the kernel
/// census supplies S_d as ground truth, the gap parameter H splits it into
/// isolated and clustered parts, and the clustered part is checked against
/// the full-sum identity over the sieve prime set P_z.
pub fn square_sieve(
    poly: &IntPoly,
    d: &BigInt,
    m: u64,
    n: u64,
    h_opt: Option<u64>,
    z_opt: Option<u64>,
) -> Result<SieveReport> {
    if n < 16 {
        return Err(Error::precondition(format!(
            "sieve window must satisfy N >= 16, got {n}"
        )));
    }
    if d.is_zero() {
        return Err(Error::precondition("kernel d must be nonzero"));
    }
    let fd = factorize(d)?;
    if fd.entries().iter().any(|(_, e)| *e > 1) {
        return Err(Error::precondition(format!("kernel d = {d} is not squarefree")));
    }
    let (h_default, z_default) = sieve_defaults(n);
    let h = h_opt.unwrap_or(h_default).max(1);
    let z = z_opt.unwrap_or(z_default).max(2);

    // (i) ground truth: S_d by kernel census
    let census = s_d_census(poly, m, n)?;
    let s_d: Vec<u64> = census.class_members(d).map(<[u64]>::to_vec).unwrap_or_default();

    // (ii) split by gaps: S_1 holds members with no later member within H
    let mut s1 = Vec::new();
    let mut s2 = Vec::new();
    for (i, &x) in s_d.iter().enumerate() {
        // members are ascending, so the nearest later member decides
        let clustered = s_d.get(i + 1).is_some_and(|&y| y - x <= h);
        if clustered {
            s2.push(x);
        } else {
            s1.push(x);
        }
    }

    // (iii) rootless primes in [z, 2z], then drop any l where some F_h is a
    // square mod l
    let shifted: Vec<IntPoly> = (1..=h).map(|j| shifted_product(poly, j)).collect();
    let curly_l: Vec<u64> = primes_in(z, 2 * z)
        .into_iter()
        .filter(|&l| l % 2 == 1)
        .filter(|&l| {
            let reduced = ModPoly::reduce(poly, l);
            !reduced.is_zero()
                && reduced.degree() != Some(0)
                && count_roots_mod(&reduced).map(|c| c == 0).unwrap_or(false)
        })
        .collect();
    let curly_p: Vec<u64> = curly_l
        .iter()
        .copied()
        .filter(|&l| {
            shifted.iter().all(|fh| {
                let reduced = ModPoly::reduce(fh, l);
                !is_square_poly_mod(&reduced).unwrap_or(true)
            })
        })
        .collect();
    if curly_p.is_empty() {
        return Err(Error::EmptySievePrimeSet { z });
    }

    // (iv) full-sum identity on the clustered part
    let mut all_verified = true;
    for &x in &s2 {
        let partner = s_d
            .iter()
            .find(|&&y| y > x && y - x <= h)
            .copied()
            .expect("clustered member has a partner");
        let gap = partner - x;
        // F_gap(x) as an exact integer product
        let value = (1..=gap).fold(BigInt::one(), |acc, j| {
            acc * poly.evaluate(&BigInt::from(x + j))
        });
        let sum: i64 = curly_p
            .iter()
            .map(|&l| jacobi(&value, &BigInt::from(l)).expect("odd prime modulus") as i64)
            .sum();
        if sum != curly_p.len() as i64 {
            all_verified = false;
        }
    }

    Ok(SieveReport {
        poly: poly.to_string(),
        d: big_to_json(d),
        m,
        n,
        h,
        z,
        s1_count: s1.len() as u64,
        s2_count: s2.len() as u64,
        curly_l_size: curly_l.len() as u64,
        curly_p_size: curly_p.len() as u64,
        solutions: s_d,
        s2_full_sum_verified: all_verified,
        bound_value: (n as f64).powf(7.0 / 8.0) * (n as f64).ln().powf(0.25),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct WeilReport {
    pub poly: String,
    pub l: u64,
    pub p: u64,
    pub m: u64,
    pub n: u64,
    /// Exact character sum of (P(n) / lp) over the window.
    pub sum: i64,
    /// D^2 (N/lp + 1) sqrt(lp) log(lp), implied constant taken as 1.
    pub bound: f64,
    pub ratio: f64,
}

/// Exact Jacobi-symbol sum against the Weil-style bound.
pub fn weil_ratio(poly: &IntPoly, l: u64, p: u64, m: u64, n: u64) -> Result<WeilReport> {
    if l == p {
        return Err(Error::precondition("moduli l and p must be distinct"));
    }
    for q in [l, p] {
        if q % 2 == 0 || !is_prime_u64(q) {
            return Err(Error::ModulusNotOddPrime(q));
        }
        let reduced = ModPoly::reduce(poly, q);
        if reduced.is_zero() || is_square_poly_mod(&reduced)? {
            return Err(Error::precondition(format!(
                "{poly} is a perfect square modulo {q}"
            )));
        }
    }
    let lp = BigInt::from(l) * BigInt::from(p);
    let mut sum = 0i64;
    for i in m + 1..=m + n {
        let v = poly.evaluate(&BigInt::from(i));
        sum += jacobi(&v, &lp)? as i64;
    }
    let deg = poly.degree().unwrap_or(0) as f64;
    let lp_f = (l as f64) * (p as f64);
    let bound = deg * deg * ((n as f64) / lp_f + 1.0) * lp_f.sqrt() * lp_f.ln();
    Ok(WeilReport {
        poly: poly.to_string(),
        l,
        p,
        m,
        n,
        sum,
        bound,
        ratio: (sum.unsigned_abs() as f64) / bound,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DensityReport {
    pub poly: String,
    pub z: u64,
    pub primes_total: u64,
    pub rootless: u64,
    pub rootless_fraction: f64,
    /// primes_total / rootless, the empirical reciprocal density.
    pub kappa_hat: Option<f64>,
    /// D! / (D - 1), the stated upper bound for kappa (degree >= 2).
    pub kappa_bound: Option<f64>,
}

/// Count primes in [z, 2z] where P has no root, estimating the reciprocal
/// density kappa.
pub fn chebotarev_census(poly: &IntPoly, z: u64) -> Result<DensityReport> {
    let primes = primes_in(z, 2 * z);
    if primes.is_empty() {
        return Err(Error::EmptyPrimeRange { lo: z, hi: 2 * z });
    }
    let rootless = primes
        .par_iter()
        .filter(|&&p| {
            let reduced = ModPoly::reduce(poly, p);
            !reduced.is_zero()
                && (reduced.degree() == Some(0)
                    || count_roots_mod(&reduced).map(|c| c == 0).unwrap_or(false))
        })
        .count() as u64;
    let total = primes.len() as u64;
    let deg = poly.degree().unwrap_or(0);
    let kappa_bound = (deg >= 2).then(|| {
        let fact: f64 = (1..=deg as u64).map(|k| k as f64).product();
        fact / (deg as f64 - 1.0)
    });
    Ok(DensityReport {
        poly: poly.to_string(),
        z,
        primes_total: total,
        rootless,
        rootless_fraction: rootless as f64 / total as f64,
        kappa_hat: (rootless > 0).then(|| total as f64 / rootless as f64),
        kappa_bound,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExceptionalReport {
    pub poly: String,
    pub h_max: u64,
    pub x: u64,
    /// (p, h) pairs where F_h reduces to a square polynomial mod p.
    pub pairs: Vec<(u64, u64)>,
    /// Number of distinct offending primes.
    pub prime_count: u64,
    /// H log H / log log H, meaningful for H >= 3.
    pub comparison_value: Option<f64>,
}

/// Scan odd primes p <= x for shifts h <= H making F_h a square mod p.
pub fn exceptional_prime_census(poly: &IntPoly, h_max: u64, x: u64) -> Result<ExceptionalReport> {
    let shifted: Vec<IntPoly> = (1..=h_max).map(|j| shifted_product(poly, j)).collect();
    let primes: Vec<u64> = primes_up_to(x).into_iter().filter(|&p| p > 2).collect();
    let pairs: Vec<(u64, u64)> = primes
        .par_iter()
        .flat_map_iter(|&p| {
            shifted
                .iter()
                .enumerate()
                .filter_map(move |(i, fh)| {
                    let reduced = ModPoly::reduce(fh, p);
                    let square = if reduced.is_zero() {
                        true // the zero polynomial is 0^2
                    } else {
                        is_square_poly_mod(&reduced).expect("odd prime modulus")
                    };
                    square.then_some((p, i as u64 + 1))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let mut offending: Vec<u64> = pairs.iter().map(|&(p, _)| p).collect();
    offending.dedup();
    let hf = h_max as f64;
    Ok(ExceptionalReport {
        poly: poly.to_string(),
        h_max,
        x,
        pairs,
        prime_count: offending.len() as u64,
        comparison_value: (h_max >= 3).then(|| hf * hf.ln() / hf.ln().ln()),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RandomModelReport {
    pub p: u64,
    pub trials: u64,
    pub seed: u64,
    /// Mean over trials of |{partial products}| / (p - 1).
    pub mean_image_fraction: f64,
    /// Population standard deviation over trials.
    pub stddev: f64,
}

fn random_model_trial(p: u64, seed: u64, trial: u64) -> f64 {
    // ChaCha12, seeded from the 64-bit seed, one independent stream per
    // trial index.
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    let len = (p - 1) as usize;
    let mut units: Vec<u64> = (1..p).collect();
    // Fisher-Yates
    for i in (1..len).rev() {
        let j = rng.random_range(0..=i);
        units.swap(i, j);
    }
    let mut seen = vec![false; p as usize];
    let mut distinct = 0u64;
    let mut acc = 1u64;
    for &u in &units {
        acc = ((acc as u128 * u as u128) % p as u128) as u64;
        if !seen[acc as usize] {
            seen[acc as usize] = true;
            distinct += 1;
        }
    }
    distinct as f64 / len as f64
}

/// The heuristic model: replace P(1..n) by a random permutation of the
/// units mod p and measure the distinct partial products. The predicted
/// limiting image fraction is 1 - 1/e.
pub fn random_permutation_model(p: u64, trials: u64, seed: u64) -> Result<RandomModelReport> {
    if p < 5 || !is_prime_u64(p) {
        return Err(Error::precondition(format!("p = {p} must be a prime >= 5")));
    }
    if trials < 1 {
        return Err(Error::precondition("at least one trial required"));
    }
    let fractions: Vec<f64> = (0..trials)
        .into_par_iter()
        .map(|t| random_model_trial(p, seed, t))
        .collect();
    let mean = fractions.iter().sum::<f64>() / trials as f64;
    let var = fractions.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / trials as f64;
    Ok(RandomModelReport {
        p,
        trials,
        seed,
        mean_image_fraction: mean,
        stddev: var.sqrt(),
    })
}

/// Outcome of one shift length k in the binomial check.
#[derive(Clone, Debug, Serialize)]
pub struct ShiftCheck {
    pub k: u64,
    /// None when accepted; otherwise why the k was rejected.
    pub rejected: Option<String>,
    pub kq: Option<u64>,
    /// Res(f_kq, f_kq') in the q-element field.
    pub resultant_mod_q: Option<u64>,
    pub disc_mod_q: Option<u64>,
    pub nonzero: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BinomialShiftReport {
    pub d: u64,
    pub a: i64,
    pub q: u64,
    pub irreducible_over_q: bool,
    pub checks: Vec<ShiftCheck>,
    /// Every accepted k produced a nonzero discriminant mod q.
    pub all_nonzero: bool,
}

/// For P = x^d - a with a squarefree and coprime to d, verify that
/// disc(f_kq) stays nonzero modulo q (the smallest prime factor of a) for
/// each admissible k.
pub fn binomial_shift_check(d: u64, a: i64, k_list: &[u64]) -> Result<BinomialShiftReport> {
    if d < 2 {
        return Err(Error::precondition(format!("degree must be >= 2, got {d}")));
    }
    if a == 0 || a == 1 || a == -1 {
        return Err(Error::precondition(format!(
            "constant a = {a} must be squarefree and different from 0 and +-1"
        )));
    }
    let a_big = BigInt::from(a);
    let fa = factorize(&a_big)?;
    if fa.entries().iter().any(|(_, e)| *e > 1) {
        return Err(Error::precondition(format!("a = {a} is not squarefree")));
    }
    let q = fa
        .entries()
        .first()
        .map(|(p, _)| p.to_u64().expect("small prime"))
        .expect("a has a prime factor");
    let d_big = BigUint::from(d);
    if num_integer::Integer::gcd(&d_big, &BigUint::from(a.unsigned_abs())) != BigUint::one() {
        return Err(Error::precondition(format!(
            "d = {d} and a = {a} must be coprime"
        )));
    }
    let p_poly = IntPoly::binomial(d as usize, &a_big);
    let mut checks = Vec::new();
    let mut all_nonzero = true;
    for &k in k_list {
        if k == 0 {
            checks.push(ShiftCheck {
                k,
                rejected: Some("k must be positive".into()),
                kq: None,
                resultant_mod_q: None,
                disc_mod_q: None,
                nonzero: None,
            });
            continue;
        }
        let dk = d.checked_mul(k).expect("dk fits u64");
        if num_integer::Integer::gcd(&dk, &q) != 1 {
            checks.push(ShiftCheck {
                k,
                rejected: Some(format!("gcd(dk, q) = gcd({dk}, {q}) != 1")),
                kq: None,
                resultant_mod_q: None,
                disc_mod_q: None,
                nonzero: None,
            });
            continue;
        }
        let kq = k * q;
        let f_kq = crate::products::shifted_product_minus_one(&p_poly, kq);
        let reduced = ModPoly::reduce(&f_kq, q);
        let res = crate::poly::resultant_mod(&reduced, &reduced.derivative());
        let disc = crate::poly::discriminant_mod(&reduced)?;
        let nonzero = res != 0;
        if !nonzero {
            all_nonzero = false;
        }
        checks.push(ShiftCheck {
            k,
            rejected: None,
            kq: Some(kq),
            resultant_mod_q: Some(res),
            disc_mod_q: Some(disc),
            nonzero: Some(nonzero),
        });
    }
    Ok(BinomialShiftReport {
        d,
        a,
        q,
        irreducible_over_q: crate::poly::binomial_irreducible_over_q(d, &a_big)?,
        checks,
        all_nonzero,
    })
}
