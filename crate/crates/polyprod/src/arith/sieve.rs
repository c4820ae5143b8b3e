//! Prime enumeration: simple and segmented sieves.

use std::sync::OnceLock;

/// Trial-division bound used by `factorize`.
pub(crate) const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

const SEGMENT_SIZE: u64 = 1 << 20;

/// Primes up to `limit` via a plain sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

/// Shared table of primes below the trial-division bound, built on first use.
pub(crate) fn small_primes() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| primes_up_to(TRIAL_DIVISION_BOUND))
}

/// All primes p with lo <= p <= hi, ascending. Empty when lo > hi.
///
/// Segmented, so ranges with hi up to 10^9 stay within a few MB of
/// per-call scratch.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let lo = lo.max(2);
    let root = hi.isqrt();
    let base = primes_up_to(root);
    let mut out = Vec::new();
    let mut seg_lo = lo;
    while seg_lo <= hi {
        let seg_hi = seg_lo.saturating_add(SEGMENT_SIZE - 1).min(hi);
        let len = (seg_hi - seg_lo + 1) as usize;
        let mut composite = vec![false; len];
        for &p in &base {
            if p * p > seg_hi {
                break;
            }
            let start = (p * p).max(seg_lo.div_ceil(p) * p);
            let mut q = start;
            while q <= seg_hi {
                composite[(q - seg_lo) as usize] = true;
                q += p;
            }
        }
        for (i, &c) in composite.iter().enumerate() {
            let n = seg_lo + i as u64;
            if !c && n >= 2 {
                out.push(n);
            }
        }
        seg_lo = match seg_hi.checked_add(1) {
            Some(v) => v,
            None => break,
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranges() {
        assert_eq!(primes_in(2, 10), vec![2, 3, 5, 7]);
        assert_eq!(primes_in(10, 20), vec![11, 13, 17, 19]);
        assert_eq!(primes_in(20, 10), Vec::<u64>::new());
        assert_eq!(primes_in(0, 1), Vec::<u64>::new());
        assert_eq!(primes_in(23, 23), vec![23]);
    }

    #[test]
    fn count_in_interval_matches_plain_sieve() {
        // pi(2*10^5) - pi(10^5) = 17984 - 9592.
        let count = primes_in(100_000, 200_000).len();
        assert_eq!(count, 8392);
        let oracle = primes_up_to(200_000)
            .into_iter()
            .filter(|&p| p >= 100_000)
            .count();
        assert_eq!(count, oracle);
    }

    #[test]
    fn segment_boundaries() {
        // Range straddling a segment edge agrees with the plain sieve.
        let lo = SEGMENT_SIZE - 100;
        let hi = SEGMENT_SIZE + 100;
        let seg = primes_in(lo, hi);
        let plain: Vec<u64> = primes_up_to(hi).into_iter().filter(|&p| p >= lo).collect();
        assert_eq!(seg, plain);
    }

    #[test]
    fn deep_range_matches_primality_test() {
        let lo = 1_000_000_000u64;
        let hi = 1_000_000_200u64;
        let seg = primes_in(lo, hi);
        let direct: Vec<u64> = (lo..=hi)
            .filter(|&n| crate::arith::is_prime_u64(n))
            .collect();
        assert_eq!(seg, direct);
        assert_eq!(seg.first(), Some(&1_000_000_007));
    }
}
