//! Batch verification suites over the matrix families and shifted sets,
//! with counterexample reporting and plot-ready statistics series.
//!
//! Each suite checks a finite range exhaustively and reports either
//! "verified" for that range or a concrete, re-verified counterexample.
//! Ranges partition across rayon workers; merges are order-deterministic
//! (`find_first`, integer sums), so reports are identical no matter how
//! many threads run them.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;

use crate::diff_matrix::{self, MasterSequence};
use crate::error::{Error, Result};
use crate::primality::PrimalityTable;
use crate::report::{ClaimReport, ClaimStatus, Family, StatRow, StatSeries};
use crate::sum_matrix::{self, CharSequence};

fn report(
    claim: &str,
    range: String,
    status: ClaimStatus,
    witnesses: Vec<serde_json::Value>,
    counterexample: Option<serde_json::Value>,
    started: Instant,
) -> ClaimReport {
    ClaimReport {
        claim: claim.into(),
        range,
        status,
        witnesses,
        counterexample,
        elapsed_ms: started.elapsed().as_millis() as u64,
    }
}

/// Smallest-p partition of an even number into two odd primes.
fn smallest_partition(table: &PrimalityTable, even: u64) -> Option<(u64, u64)> {
    let mut p = 3;
    while p <= even / 2 {
        if table.bit(p) && table.bit(even - p) {
            return Some((p, even - p));
        }
        p += 2;
    }
    None
}

/// Deterministic two-odd-prime witness for one even number: the smallest-p
/// pair, or absent if none exists (which would be a counterexample worth
/// publishing).
pub fn goldbach_witness(table: &PrimalityTable, even: u64) -> Result<Option<(u64, u64)>> {
    if !even.is_multiple_of(2) || even < 6 {
        return Err(Error::Usage(format!(
            "witness target must be an even number >= 6, got {even}"
        )));
    }
    if even - 3 > table.limit() {
        return Err(Error::BeyondLimit {
            value: even - 3,
            limit: table.limit(),
        });
    }
    Ok(smallest_partition(table, even))
}

/// Check that every even number in 6..=max_even splits into two odd primes.
pub fn verify_goldbach(table: &PrimalityTable, max_even: u64) -> Result<ClaimReport> {
    if !max_even.is_multiple_of(2) || max_even < 6 {
        return Err(Error::Usage(format!(
            "range end must be an even number >= 6, got {max_even}"
        )));
    }
    if max_even > table.limit() {
        return Err(Error::BeyondLimit {
            value: max_even,
            limit: table.limit(),
        });
    }
    let started = Instant::now();
    let count = ((max_even - 6) / 2 + 1) as usize;
    let failure = (0..count)
        .into_par_iter()
        .with_min_len(1024)
        .map(|idx| 6 + 2 * idx as u64)
        .find_first(|&even| smallest_partition(table, even).is_none());

    let range = format!("evens 6..={max_even}");
    Ok(match failure {
        None => {
            let (p, q) = smallest_partition(table, max_even).expect("just verified");
            report(
                "goldbach",
                range,
                ClaimStatus::Verified,
                vec![json!({"even": max_even, "p": p, "q": q})],
                None,
                started,
            )
        }
        Some(even) => {
            assert!(smallest_partition(table, even).is_none());
            report(
                "goldbach",
                range,
                ClaimStatus::Counterexample,
                vec![],
                Some(json!({"even": even})),
                started,
            )
        }
    })
}

/// First two prime pairs at the given gap with larger member <= hi,
/// reported in difference form (larger, smaller).
fn two_pairs_for_gap(table: &PrimalityTable, gap: u64, hi: u64) -> (u64, Vec<(u64, u64)>) {
    let mut pairs = Vec::with_capacity(2);
    let mut q = 3;
    while q + gap <= hi {
        if table.bit(q) && table.bit(q + gap) {
            pairs.push((q + gap, q));
            if pairs.len() == 2 {
                return (2, pairs);
            }
        }
        q += 2;
    }
    (pairs.len() as u64, pairs)
}

/// Check that every even gap 2m for m in 1..=m_max is realized by at least
/// two prime pairs whose larger member stays below 8m+2.
pub fn verify_diff_pairs(table: &PrimalityTable, m_max: u64) -> Result<ClaimReport> {
    if m_max < 1 {
        return Err(Error::Usage("need m_max >= 1".into()));
    }
    if 8 * m_max + 1 > table.limit() {
        return Err(Error::BeyondLimit {
            value: 8 * m_max + 1,
            limit: table.limit(),
        });
    }
    let started = Instant::now();
    let failure = (1..m_max as usize + 1)
        .into_par_iter()
        .with_min_len(64)
        .map(|m| m as u64)
        .find_first(|&m| two_pairs_for_gap(table, 2 * m, 8 * m + 1).0 < 2);

    let range = format!("gaps 2m for m in 1..={m_max}");
    Ok(match failure {
        None => {
            let (_, pairs) = two_pairs_for_gap(table, 2 * m_max, 8 * m_max + 1);
            let pairs: Vec<[u64; 2]> = pairs.iter().map(|&(a, b)| [a, b]).collect();
            report(
                "diffpairs",
                range,
                ClaimStatus::Verified,
                vec![json!({"m": m_max, "gap": 2 * m_max, "pairs": pairs})],
                None,
                started,
            )
        }
        Some(m) => {
            let (found, pairs) = two_pairs_for_gap(table, 2 * m, 8 * m + 1);
            assert!(found < 2);
            let pairs: Vec<[u64; 2]> = pairs.iter().map(|&(a, b)| [a, b]).collect();
            report(
                "diffpairs",
                range,
                ClaimStatus::Counterexample,
                vec![],
                Some(json!({"m": m, "gap": 2 * m, "found": found, "pairs": pairs})),
                started,
            )
        }
    })
}

/// Census of prime pairs (p, p + gap) with p + gap <= limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapCensus {
    pub gap: u64,
    pub limit: u64,
    pub count: u64,
    /// Ascending pairs, present when requested.
    pub pairs: Option<Vec<(u64, u64)>>,
}

/// Count (and optionally list) all prime pairs at a fixed even gap within
/// the stated bound. A finite census only; it says nothing about infinitude.
pub fn polignac_census(
    table: &PrimalityTable,
    gap: u64,
    limit: u64,
    with_pairs: bool,
) -> Result<GapCensus> {
    diff_matrix::check_gap_args(table, gap, limit)?;
    let mut count = 0;
    let mut pairs = with_pairs.then(Vec::new);
    let mut p = 3;
    while p + gap <= limit {
        if table.bit(p) && table.bit(p + gap) {
            count += 1;
            if let Some(v) = pairs.as_mut() {
                v.push((p, p + gap));
            }
        }
        p += 2;
    }
    Ok(GapCensus {
        gap,
        limit,
        count,
        pairs,
    })
}

/// Twin pair strictly above p with both members at most 2p.
fn twin_above(table: &PrimalityTable, p: u64) -> Option<(u64, u64)> {
    let mut q = p + 2;
    while q + 2 <= 2 * p {
        if table.bit(q) && table.bit(q + 2) {
            return Some((q, q + 2));
        }
        q += 2;
    }
    None
}

/// Check that every prime p with 7 < p <= p_max has a twin pair (q, q+2)
/// with p < q and q+2 <= 2p.
///
/// The report also records how many outcomes would differ under the strict
/// upper bound q+2 < 2p; parity makes q+2 = 2p impossible, so the recorded
/// number is a computed zero rather than an assumption.
pub fn verify_twins_between_p_and_2p(table: &PrimalityTable, p_max: u64) -> Result<ClaimReport> {
    if 2 * p_max > table.limit() {
        return Err(Error::BeyondLimit {
            value: 2 * p_max,
            limit: table.limit(),
        });
    }
    let started = Instant::now();
    let primes: Vec<u64> = (11..=p_max).filter(|&p| table.bit(p)).collect();
    let range = format!("primes 7 < p <= {p_max}");

    let failure = primes
        .par_iter()
        .with_min_len(256)
        .find_first(|&&p| twin_above(table, p).is_none());

    Ok(match failure {
        None => {
            let strict_changes: u64 = primes
                .par_iter()
                .with_min_len(256)
                .map(|&p| {
                    let (_, hi) = twin_above(table, p).expect("just verified");
                    (hi == 2 * p) as u64
                })
                .sum();
            let witnesses = match primes.last() {
                Some(&p) => {
                    let (lo, hi) = twin_above(table, p).expect("just verified");
                    vec![
                        json!({"p": p, "twin": [lo, hi]}),
                        json!({"strict_upper_changes": strict_changes}),
                    ]
                }
                None => vec![],
            };
            report("prop2", range, ClaimStatus::Verified, witnesses, None, started)
        }
        Some(&p) => {
            assert!(twin_above(table, p).is_none());
            report(
                "prop2",
                range,
                ClaimStatus::Counterexample,
                vec![],
                Some(json!({"p": p})),
                started,
            )
        }
    })
}

/// Statistics series sampled at n = step, 2*step, ..., n_max, built by
/// extending one sequence incrementally across the whole sweep.
///
/// Sum rows carry the zero census of the lower-right column part; diff rows
/// carry the small-value census of f(2..n). Values are reported for
/// inspection; no convergence judgement is made. For the diff family the
/// census is undefined at order 1, so a step-1 sweep starts reporting at 2.
pub fn mu_nu_series(
    table: &PrimalityTable,
    family: Family,
    n_max: usize,
    step: usize,
) -> Result<StatSeries> {
    if step < 1 {
        return Err(Error::Usage("step must be at least 1".into()));
    }
    if n_max < 1 {
        return Err(Error::Usage("n_max must be at least 1".into()));
    }
    let top = 2 * n_max as u64 + 1;
    if top > table.limit() {
        return Err(Error::BeyondLimit {
            value: top,
            limit: table.limit(),
        });
    }

    let mut rows = Vec::new();
    let mut walker = SequenceWalker::start(table, family);
    for n in 2..=n_max {
        walker.advance(table, n);
        if n % step == 0 {
            rows.push(walker.stat_row(n)?);
        }
    }
    if step == 1 && n_max >= 1 && family == Family::Sum {
        // order 1 sample, only meaningful for the sum family
        let first = StatRow {
            n: 1,
            count: 0,
            first: None,
            mu: 0.0,
            nu: None,
        };
        rows.insert(0, first);
    }
    Ok(StatSeries { family, rows })
}

/// Incremental sweep state shared by the series and recurrence suites.
struct SequenceWalker {
    sum: Option<CharSequence>,
    diff: Option<MasterSequence>,
    /// Ascending prime indices i < current order with 2i+1 prime.
    indices: Vec<usize>,
}

impl SequenceWalker {
    fn start(table: &PrimalityTable, family: Family) -> Self {
        let view_indicator = table.odd_indicator(1).expect("limit >= 3");
        let mut walker = Self {
            sum: None,
            diff: None,
            indices: view_indicator.prime_indices().collect(),
        };
        match family {
            Family::Sum => {
                walker.sum = Some(sum_matrix::char_sequence_fast(&view_indicator));
            }
            Family::Diff => {
                walker.diff = Some(diff_matrix::master_sequence_fast(&view_indicator));
            }
        }
        walker
    }

    /// Extend from order n-1 to order n. `n` must follow the previous call.
    fn advance(&mut self, table: &PrimalityTable, n: usize) {
        let new_prime = table.bit(2 * n as u64 + 1);
        if let Some(seq) = self.sum.as_mut() {
            debug_assert_eq!(seq.order() + 1, n);
            seq.extend_with_indices(new_prime, &self.indices);
        }
        if let Some(seq) = self.diff.as_mut() {
            debug_assert_eq!(seq.order() + 1, n);
            seq.extend_with_indices(new_prime, &self.indices);
        }
        if new_prime {
            self.indices.push(n);
        }
    }

    fn stat_row(&self, n: usize) -> Result<StatRow> {
        if let Some(seq) = &self.sum {
            let zs = seq.zero_stats();
            return Ok(StatRow {
                n,
                count: zs.m0 as u64,
                first: zs.k0,
                mu: zs.m0_ratio,
                nu: zs.k0_ratio,
            });
        }
        let seq = self.diff.as_ref().expect("one family is always active");
        let st = seq.almost_stats()?;
        Ok(StatRow {
            n,
            count: st.alpha as u64,
            first: st.t,
            mu: st.mu,
            nu: st.nu,
        })
    }
}

/// Compare the chained incremental sequences against from-scratch
/// recomputation at every order up to n_max, and confirm each step's
/// deltas stay inside the recurrence branch sets: {0, 2} per mid-range
/// position plus a {0,2}/{0,1} tail for the sum family, {0, 1} per position
/// for the diff family, all zero when 2n+1 is composite.
pub fn recurrence_consistency(
    table: &PrimalityTable,
    family: Family,
    n_max: usize,
) -> Result<ClaimReport> {
    if n_max < 2 {
        return Err(Error::Usage("need n_max >= 2".into()));
    }
    let top = 2 * n_max as u64 + 1;
    if top > table.limit() {
        return Err(Error::BeyondLimit {
            value: top,
            limit: table.limit(),
        });
    }
    let started = Instant::now();
    let claim = match family {
        Family::Sum => "recurrence-sum",
        Family::Diff => "recurrence-diff",
    };
    let range = format!("orders 2..={n_max}");

    let mut walker = SequenceWalker::start(table, family);
    for n in 2..=n_max {
        let prev_sum = walker.sum.clone();
        let prev_diff = walker.diff.clone();
        let scratch_indices: Vec<usize> = walker.indices.clone();
        walker.advance(table, n);
        let new_prime = table.bit(2 * n as u64 + 1);

        let bad = match family {
            Family::Sum => check_sum_step(
                prev_sum.as_ref().unwrap(),
                walker.sum.as_ref().unwrap(),
                &scratch_indices,
                n,
                new_prime,
            ),
            Family::Diff => check_diff_step(
                prev_diff.as_ref().unwrap(),
                walker.diff.as_ref().unwrap(),
                &scratch_indices,
                n,
                new_prime,
            ),
        };
        if let Some(payload) = bad {
            return Ok(report(
                claim,
                range,
                ClaimStatus::Counterexample,
                vec![],
                Some(payload),
                started,
            ));
        }
    }
    Ok(report(claim, range, ClaimStatus::Verified, vec![], None, started))
}

fn check_sum_step(
    prev: &CharSequence,
    next: &CharSequence,
    indices_below: &[usize],
    n: usize,
    new_prime: bool,
) -> Option<serde_json::Value> {
    // scratch route: recount from the indicator, independent of the deltas
    let mut scratch_indices = indices_below.to_vec();
    if new_prime {
        scratch_indices.push(n);
    }
    let scratch = sum_matrix::char_sequence_from_indices(&scratch_indices, n);
    if *next != scratch {
        let k = (1..=2 * n - 1)
            .find(|&k| next.get(k) != scratch.get(k))
            .unwrap();
        return Some(json!({
            "n": n, "k": k, "incremental": next.get(k), "scratch": scratch.get(k),
        }));
    }
    for j in 1..=2 * n - 1 {
        let value = next.get(j);
        // a decrease would already violate the recurrence, so report it
        let delta = if j <= 2 * n - 3 {
            match value.checked_sub(prev.get(j)) {
                Some(d) => d,
                None => {
                    return Some(json!({
                        "n": n, "k": j, "decreased_from": prev.get(j), "to": value,
                    }))
                }
            }
        } else {
            value
        };
        let allowed = if j < n {
            delta == 0
        } else if j <= 2 * n - 3 {
            delta == 0 || delta == 2
        } else if j == 2 * n - 2 {
            value == 0 || value == 2
        } else {
            value == 0 || value == 1
        };
        let composite_ok = new_prime || delta == 0;
        if !allowed || !composite_ok {
            return Some(json!({
                "n": n, "k": j, "delta": delta, "new_prime": new_prime,
            }));
        }
    }
    None
}

fn check_diff_step(
    prev: &MasterSequence,
    next: &MasterSequence,
    indices_below: &[usize],
    n: usize,
    new_prime: bool,
) -> Option<serde_json::Value> {
    let mut scratch_indices = indices_below.to_vec();
    if new_prime {
        scratch_indices.push(n);
    }
    let scratch = diff_matrix::master_sequence_from_indices(&scratch_indices, n);
    if *next != scratch {
        let k = (1..=n).find(|&k| next.get(k) != scratch.get(k)).unwrap();
        return Some(json!({
            "n": n, "k": k, "incremental": next.get(k), "scratch": scratch.get(k),
        }));
    }
    if next.get(1) != 0 {
        return Some(json!({"n": n, "k": 1, "value": next.get(1)}));
    }
    for k in 2..=n {
        let delta = if k < n {
            match next.get(k).checked_sub(prev.get(k)) {
                Some(d) => d,
                None => {
                    return Some(json!({
                        "n": n, "k": k, "decreased_from": prev.get(k), "to": next.get(k),
                    }))
                }
            }
        } else {
            next.get(k)
        };
        if delta > 1 || (!new_prime && delta != 0) {
            return Some(json!({
                "n": n, "k": k, "delta": delta, "new_prime": new_prime,
            }));
        }
    }
    None
}

/// Run every suite at the ranges a single sieve limit supports: evens to
/// the limit, gaps to (limit-1)/8, window primes to limit/2, and recurrence
/// orders to (limit-1)/2 capped at 5000 (the scratch recheck is quadratic).
pub fn verify_all(table: &PrimalityTable, limit: u64) -> Result<Vec<ClaimReport>> {
    if limit > table.limit() {
        return Err(Error::BeyondLimit {
            value: limit,
            limit: table.limit(),
        });
    }
    if limit < 100 {
        return Err(Error::Usage(format!(
            "verify-all needs a limit of at least 100, got {limit}"
        )));
    }
    let recurrence_max = (((limit - 1) / 2) as usize).min(5000);
    Ok(vec![
        verify_goldbach(table, limit & !1)?,
        verify_diff_pairs(table, (limit - 1) / 8)?,
        verify_twins_between_p_and_2p(table, limit / 2)?,
        recurrence_consistency(table, Family::Sum, recurrence_max)?,
        recurrence_consistency(table, Family::Diff, recurrence_max)?,
    ])
}
