//! Exhaustive search for high-quality abc triples.

use std::cmp::Ordering;

use num_integer::Integer as _;
use rayon::prelude::*;

use super::{compare_quality, AbcTriple};
use crate::error::{domain, Error, Result};
use crate::exact::Integer;

/// Largest `c_max` accepted; the scan visits about `c_max² / 4` pairs.
pub const SCAN_CMAX_CAP: u64 = 1_000_000;

/// Float margin for discarding candidates before the exact ordering.
const FILTER_MARGIN: f64 = 1e-9;

/// Number of consecutive `c` values handed to one task.
const BLOCK: u64 = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct ScanEntry {
    pub triple: AbcTriple,
    pub m: Integer,
    pub r: Integer,
    /// `log M / log R` for display; ordering uses [`compare_quality`].
    pub quality: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub c_max: u64,
    pub top_k: usize,
    /// Coprime pairs `1 ≤ a ≤ b` with `a + b ≤ c_max` that were scored.
    pub considered: u64,
    pub top: Vec<ScanEntry>,
    /// Triples with float quality ≥ 2, kept for inspection.
    pub flagged: Vec<ScanEntry>,
}

fn radical_sieve(n: u64) -> Vec<u32> {
    let mut rad = vec![1u32; n as usize + 1];
    for p in 2..=n as usize {
        if rad[p] == 1 {
            for m in (p..=n as usize).step_by(p) {
                rad[m] *= p as u32;
            }
        }
    }
    rad
}

#[derive(Debug, Clone, Copy)]
struct Cand {
    q: f64,
    c: u64,
    a: u64,
    r: u128,
}

/// Drops candidates that cannot reach the top `k` (keeps float near-ties).
fn prune(cands: &mut Vec<Cand>, k: usize) {
    if cands.len() <= k {
        return;
    }
    let mut qs: Vec<f64> = cands.iter().map(|c| c.q).collect();
    qs.sort_by(|a, b| b.total_cmp(a));
    let cut = qs[k - 1] - FILTER_MARGIN;
    cands.retain(|c| c.q >= cut);
}

fn scan_block(lo: u64, hi: u64, rad: &[u32], ln_rad: &[f64], k: usize) -> (Vec<Cand>, Vec<Cand>, u64) {
    let mut cands = Vec::new();
    let mut flagged = Vec::new();
    let mut considered = 0u64;
    for c in lo..=hi {
        let ln_c = (c as f64).ln();
        for a in 1..=c / 2 {
            if a.gcd(&c) != 1 {
                continue;
            }
            let b = c - a;
            considered += 1;
            let r = rad[a as usize] as u128 * rad[b as usize] as u128 * rad[c as usize] as u128;
            assert!(r >= 2, "abc triple with radical 1: {a} + {b} = {c}");
            let q = ln_c / (ln_rad[a as usize] + ln_rad[b as usize] + ln_rad[c as usize]);
            let cand = Cand { q, c, a, r };
            if q >= 2.0 {
                flagged.push(cand);
            }
            cands.push(cand);
            if cands.len() > 4 * k + 256 {
                prune(&mut cands, k);
            }
        }
    }
    prune(&mut cands, k);
    (cands, flagged, considered)
}

fn entry(c: &Cand) -> ScanEntry {
    ScanEntry {
        triple: AbcTriple::new(c.a.into(), (c.c - c.a).into()).expect("coprime"),
        m: c.c.into(),
        r: c.r.into(),
        quality: c.q,
    }
}

/// Exact ranking: quality descending, then `(c, a)` ascending.
fn rank(x: &ScanEntry, y: &ScanEntry) -> Ordering {
    compare_quality(&y.m, &y.r, &x.m, &x.r)
        .then_with(|| x.triple.c.cmp(&y.triple.c))
        .then_with(|| x.triple.a.cmp(&y.triple.a))
}

/// All coprime `1 ≤ a ≤ b` with `c = a + b ≤ c_max`, ranked by quality.
///
/// Work is split into blocks of `c`; the result does not depend on `jobs`.
pub fn scan_triples(c_max: u64, top_k: usize, jobs: usize) -> Result<ScanResult> {
    if c_max < 2 {
        return domain(format!("c_max must be ≥ 2, got {c_max}"));
    }
    if c_max > SCAN_CMAX_CAP {
        return Err(Error::Resource(format!("c_max above {SCAN_CMAX_CAP}")));
    }
    if jobs == 0 {
        return domain("jobs must be ≥ 1");
    }
    let rad = radical_sieve(c_max);
    let ln_rad: Vec<f64> = rad.iter().map(|&r| (r as f64).ln()).collect();
    let k = top_k.max(1);
    let blocks: Vec<(u64, u64)> = (2..=c_max)
        .step_by(BLOCK as usize)
        .map(|lo| (lo, (lo + BLOCK - 1).min(c_max)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Resource(format!("thread pool: {e}")))?;
    let parts: Vec<(Vec<Cand>, Vec<Cand>, u64)> = pool.install(|| {
        blocks
            .par_iter()
            .map(|&(lo, hi)| scan_block(lo, hi, &rad, &ln_rad, k))
            .collect()
    });
    let mut cands = Vec::new();
    let mut flagged = Vec::new();
    let mut considered = 0;
    for (c, f, n) in parts {
        cands.extend(c);
        flagged.extend(f);
        considered += n;
    }
    prune(&mut cands, k);
    let mut top: Vec<ScanEntry> = cands.iter().map(entry).collect();
    top.sort_by(rank);
    top.truncate(top_k);
    let mut flagged: Vec<ScanEntry> = flagged.iter().map(entry).collect();
    flagged.sort_by(rank);
    Ok(ScanResult {
        c_max,
        top_k,
        considered,
        top,
        flagged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    fn abc(e: &ScanEntry) -> (Integer, Integer, Integer) {
        (e.triple.a.clone(), e.triple.b.clone(), e.triple.c.clone())
    }

    #[test]
    fn scan_examples() {
        let s = scan_triples(10, 1, 1).unwrap();
        assert_eq!(abc(&s.top[0]), (int(1), int(8), int(9)));
        assert!((s.top[0].quality - 1.2263).abs() < 1e-4);

        let s = scan_triples(2, 5, 1).unwrap();
        assert_eq!(s.top.len(), 1);
        assert_eq!(abc(&s.top[0]), (int(1), int(1), int(2)));
        assert_eq!(s.top[0].quality, 1.0);

        let s = scan_triples(130, 1, 2).unwrap();
        assert_eq!(abc(&s.top[0]), (int(3), int(125), int(128)));
        assert_eq!((s.top[0].m.clone(), s.top[0].r.clone()), (int(128), int(30)));
        assert!((s.top[0].quality - 1.4266).abs() < 1e-4);
    }

    #[test]
    fn job_count_does_not_change_output() {
        let a = scan_triples(2000, 10, 1).unwrap();
        let b = scan_triples(2000, 10, 4).unwrap();
        assert_eq!(a, b);
        assert!(a.flagged.is_empty());
    }

    #[test]
    fn radical_sieve_matches_definition() {
        let rad = radical_sieve(1000);
        for n in 1..=1000u64 {
            let r: u64 = crate::exact::factor_u64(n).iter().map(|(p, _)| p).product();
            assert_eq!(rad[n as usize] as u64, r);
        }
    }

    #[test]
    fn considered_counts_grow() {
        // Σ_{c ≤ 10} #{a ≤ c/2 : gcd(a, c) = 1}
        assert_eq!(scan_triples(10, 1, 1).unwrap().considered, 1 + 1 + 1 + 2 + 1 + 3 + 2 + 3 + 2);
        assert!(scan_triples(50, 3, 1).unwrap().considered > scan_triples(49, 3, 1).unwrap().considered);
    }

    #[test]
    fn rejects_bad_bounds() {
        assert!(matches!(scan_triples(1, 1, 1), Err(Error::Domain(_))));
        assert!(matches!(scan_triples(SCAN_CMAX_CAP + 1, 1, 1), Err(Error::Resource(_))));
    }
}
