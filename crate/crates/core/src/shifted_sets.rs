//! Shifted prime sets S_a = {k >= 1 : 2k+a prime} for odd offsets a, their
//! intersections, and bounded witness searches.
//!
//! Every search here carries an explicit bound and returns "absent" rather
//! than looping: the underlying infinitude claims are open, so absence below
//! a limit is the strongest honest answer.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::primality::PrimalityTable;
use crate::report::{ClaimReport, ClaimStatus};

/// Members of one shifted prime set up to a bound on k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedPrimeSet {
    a: u64,
    limit: u64,
    members: Vec<u64>,
}

impl ShiftedPrimeSet {
    pub fn offset(&self) -> u64 {
        self.a
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Strictly increasing k with 2k + a prime.
    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn contains(&self, k: u64) -> bool {
        self.members.binary_search(&k).is_ok()
    }
}

fn check_offset(a: u64) -> Result<()> {
    if a == 0 || a.is_multiple_of(2) {
        return Err(Error::Usage(format!("offset must be odd, got {a}")));
    }
    Ok(())
}

fn check_scan_bound(table: &PrimalityTable, a: u64, limit: u64) -> Result<()> {
    let top = 2 * limit + a;
    if top > table.limit() {
        return Err(Error::BeyondLimit {
            value: top,
            limit: table.limit(),
        });
    }
    Ok(())
}

/// Enumerate S_a up to `limit` (bound on k, not on 2k+a).
pub fn members(table: &PrimalityTable, a: u64, limit: u64) -> Result<ShiftedPrimeSet> {
    check_offset(a)?;
    check_scan_bound(table, a, limit)?;
    let members = (1..=limit).filter(|&k| table.bit(2 * k + a)).collect();
    Ok(ShiftedPrimeSet { a, limit, members })
}

/// Check both directions of the index-shift identity between S_{a+2} and
/// S_a: membership comes from the table, while the shifted partner is
/// re-proved by trial division. The identity 2(k+1)+a = 2k+(a+2) makes a
/// healthy table pass trivially; a corrupted bit shows up as the first
/// violating k.
pub fn check_shift_lemma(table: &PrimalityTable, a: u64, limit: u64) -> Result<ClaimReport> {
    check_offset(a)?;
    check_scan_bound(table, a + 2, limit)?;
    let started = Instant::now();

    let mut violation = None;
    for k in 1..=limit {
        if table.bit(2 * k + a + 2) && !trial_division(2 * (k + 1) + a) {
            violation = Some((k, "forward", 2 * (k + 1) + a));
            break;
        }
        if k >= 2 && table.bit(2 * k + a) && !trial_division(2 * (k - 1) + (a + 2)) {
            violation = Some((k, "backward", 2 * (k - 1) + a + 2));
            break;
        }
    }

    let range = format!("a={a}, k in 1..={limit}");
    let elapsed_ms = started.elapsed().as_millis() as u64;
    Ok(match violation {
        None => ClaimReport {
            claim: "shift-lemma".into(),
            range,
            status: ClaimStatus::Verified,
            witnesses: vec![],
            counterexample: None,
            elapsed_ms,
        },
        Some((k, direction, value)) => ClaimReport {
            claim: "shift-lemma".into(),
            range,
            status: ClaimStatus::Counterexample,
            witnesses: vec![],
            counterexample: Some(serde_json::json!({
                "k": k,
                "direction": direction,
                "claimed_prime": value,
            })),
            elapsed_ms,
        },
    })
}

fn trial_division(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Sorted k <= limit with both 2k+a and 2k+b prime.
pub fn intersect(table: &PrimalityTable, a: u64, b: u64, limit: u64) -> Result<Vec<u64>> {
    check_offset(a)?;
    check_offset(b)?;
    check_scan_bound(table, a.max(b), limit)?;
    Ok((1..=limit)
        .filter(|&k| table.bit(2 * k + a) && table.bit(2 * k + b))
        .collect())
}

/// Least k > threshold in the intersection of S_a and S_b, or absent below
/// `limit`.
pub fn first_witness_above(
    table: &PrimalityTable,
    a: u64,
    b: u64,
    threshold: u64,
    limit: u64,
) -> Result<Option<u64>> {
    check_offset(a)?;
    check_offset(b)?;
    check_scan_bound(table, a.max(b), limit)?;
    Ok((threshold + 1..=limit).find(|&k| table.bit(2 * k + a) && table.bit(2 * k + b)))
}

/// Witnesses that the base offset 3 and its shift by 2m share an index:
/// every returned k gives the prime pair (2k+3, 2k+2m+3) at gap 2m.
pub fn gap_witnesses(table: &PrimalityTable, m: u64, limit: u64) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::Usage("gap half-width must be positive".into()));
    }
    intersect(table, 3, 2 * m + 3, limit)
}

/// Least k > 0 translating the prime pair (p, q) to another prime pair
/// (p+2k, q+2k), or absent when no translate exists with k <= limit and
/// both members inside the table.
pub fn lift_pair(table: &PrimalityTable, p: u64, q: u64, limit: u64) -> Result<Option<u64>> {
    for v in [p, q] {
        if !table.is_prime(v)? {
            return Err(Error::Usage(format!("{v} is not prime")));
        }
        if v == 2 {
            return Err(Error::Usage("pair members must be odd primes".into()));
        }
    }
    let hi = p.max(q);
    let k_cap = limit.min((table.limit() - hi) / 2);
    Ok((1..=k_cap).find(|&k| table.bit(p + 2 * k) && table.bit(q + 2 * k)))
}
