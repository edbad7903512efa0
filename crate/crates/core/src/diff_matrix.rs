//! The difference-gated matrix family and its master characteristic
//! sequence.
//!
//! Entry (i, j) carries 2|i-j| when both 2i+1 and 2j+1 are prime, so the
//! k-th superdiagonal collects the prime pairs with gap 2(k-1). The master
//! sequence f(1..n) counts the positive entries per superdiagonal; f(1) is
//! always 0 because the diagonal itself is all zeros.

use crate::error::{Error, Result};
use crate::primality::{OddIndicator, PrimalityTable};
use crate::sum_matrix::RENDER_CAP;

/// Implicit symmetric matrix with entries 2|i-j| gated on primality.
#[derive(Clone, Debug)]
pub struct DiffMatrixView {
    indicator: OddIndicator,
}

impl DiffMatrixView {
    pub fn new(indicator: OddIndicator) -> Self {
        Self { indicator }
    }

    pub fn from_table(table: &PrimalityTable, n: usize) -> Result<Self> {
        Ok(Self::new(table.odd_indicator(n)?))
    }

    pub fn order(&self) -> usize {
        self.indicator.order()
    }

    pub fn indicator(&self) -> &OddIndicator {
        &self.indicator
    }

    /// 2|i-j| when both index positions are prime, 0 otherwise. 1-based.
    pub fn entry(&self, i: usize, j: usize) -> Result<u64> {
        let n = self.order();
        for idx in [i, j] {
            if idx < 1 || idx > n {
                return Err(Error::IndexOutOfRange { index: idx, order: n });
            }
        }
        Ok(if self.indicator.get(i) && self.indicator.get(j) {
            2 * i.abs_diff(j) as u64
        } else {
            0
        })
    }

    pub fn render(&self) -> Result<Vec<Vec<u64>>> {
        self.render_capped(RENDER_CAP)
    }

    pub fn render_capped(&self, cap: usize) -> Result<Vec<Vec<u64>>> {
        let n = self.order();
        if n > cap {
            return Err(Error::Usage(format!(
                "render of order {n} exceeds the cap {cap}"
            )));
        }
        Ok((1..=n)
            .map(|i| (1..=n).map(|j| self.entry(i, j).unwrap()).collect())
            .collect())
    }
}

/// Master characteristic sequence f(1..n): positive-entry counts per
/// superdiagonal, equivalently prime-pair counts at fixed gaps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MasterSequence {
    values: Vec<u64>,
}

impl MasterSequence {
    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// f(k), 1-based.
    pub fn get(&self, k: usize) -> u64 {
        self.values[k - 1]
    }

    /// Census of the values <= 1 in the subsequence f(2..n): how many, and
    /// the offset of the first one within that subsequence (so k = 2 is
    /// position 1). Ratios are reported, never judged.
    pub fn almost_stats(&self) -> Result<AlmostStats> {
        let n = self.order();
        if n < 2 {
            return Err(Error::Usage(format!(
                "almost stats need order >= 2, got {n}"
            )));
        }
        let sub = &self.values[1..];
        let alpha = sub.iter().filter(|&&v| v <= 1).count();
        let t = sub.iter().position(|&v| v <= 1).map(|p| p + 1);
        Ok(AlmostStats {
            alpha,
            t,
            mu: alpha as f64 / (n - 1) as f64,
            nu: t.map(|t| t as f64 / (n - 1) as f64),
        })
    }

    /// Grow the sequence from order n-1 to order n in place.
    ///
    /// When 2n+1 is composite the new row and column are all zero: nothing
    /// changes except the fresh f(n) = 0. When 2n+1 is prime, f(k) gains 1
    /// exactly when the partner index n-k+1 is prime, and f(n) picks up the
    /// corner cell gated on chi[1].
    pub fn extend_one(&mut self, table: &PrimalityTable) -> Result<()> {
        let n = self.order() + 1;
        let top = 2 * n as u64 + 1;
        if top > table.limit() {
            return Err(Error::BeyondLimit {
                value: top,
                limit: table.limit(),
            });
        }
        if table.bit(top) {
            let indices: Vec<usize> =
                (1..n).filter(|&i| table.bit(2 * i as u64 + 1)).collect();
            self.extend_with_indices(true, &indices);
        } else {
            self.extend_with_indices(false, &[]);
        }
        Ok(())
    }

    /// Same step with the prime indices below n already known. `indices`
    /// must be the ascending i in 1..n with 2i+1 prime.
    pub(crate) fn extend_with_indices(&mut self, new_prime: bool, indices: &[usize]) {
        let n = self.order() + 1;
        if !new_prime {
            self.values.push(0);
            return;
        }
        for &i in indices {
            if i >= 2 {
                // prime pair (2i+1, 2n+1) sits on superdiagonal n-i+1
                self.values[n - i] += 1;
            }
        }
        let has_first = indices.first() == Some(&1);
        self.values.push(has_first as u64);
    }
}

/// Definitional route: walk every superdiagonal cell. O(n²).
pub fn master_sequence_scan(view: &DiffMatrixView) -> MasterSequence {
    let n = view.order();
    let ind = view.indicator();
    let mut values = vec![0u64; n];
    for k in 2..=n {
        let mut count = 0u64;
        for i in 1..=n - k + 1 {
            if ind.get(i) && ind.get(i + k - 1) {
                count += 1;
            }
        }
        values[k - 1] = count;
    }
    MasterSequence { values }
}

/// Pair-enumeration route over prime indices only; contract-identical to
/// [`master_sequence_scan`] and o(n²) for prime-density indicators.
pub fn master_sequence_fast(indicator: &OddIndicator) -> MasterSequence {
    let indices: Vec<usize> = indicator.prime_indices().collect();
    master_sequence_from_indices(&indices, indicator.order())
}

/// Fast route when the prime indices are already at hand.
pub(crate) fn master_sequence_from_indices(indices: &[usize], n: usize) -> MasterSequence {
    let mut values = vec![0u64; n];
    for (a, &i) in indices.iter().enumerate() {
        for &j in &indices[a + 1..] {
            values[j - i] += 1;
        }
    }
    MasterSequence { values }
}

/// One recurrence step: the sequence for order n from the sequence for n-1.
pub fn master_sequence_incremental(
    prev: &MasterSequence,
    table: &PrimalityTable,
) -> Result<MasterSequence> {
    let mut next = prev.clone();
    next.extend_one(table)?;
    Ok(next)
}

/// Census of small values in f(2..n).
#[derive(Clone, Debug, PartialEq)]
pub struct AlmostStats {
    /// Count of values <= 1 among f(2..n).
    pub alpha: usize,
    /// Position of the first such value within f(2..n), 1-based; absent
    /// when every value is >= 2.
    pub t: Option<usize>,
    pub mu: f64,
    pub nu: Option<f64>,
}

/// Prime pairs (q, q + gap) with both members prime and q + gap <= limit.
pub fn gap_pair_count(table: &PrimalityTable, gap: u64, limit: u64) -> Result<u64> {
    check_gap_args(table, gap, limit)?;
    if limit < gap + 3 {
        return Ok(0);
    }
    let mut count = 0;
    let mut q = 3;
    while q + gap <= limit {
        if table.bit(q) && table.bit(q + gap) {
            count += 1;
        }
        q += 2;
    }
    Ok(count)
}

pub(crate) fn check_gap_args(table: &PrimalityTable, gap: u64, limit: u64) -> Result<()> {
    if gap == 0 || !gap.is_multiple_of(2) {
        return Err(Error::Usage(format!(
            "gap must be a positive even number, got {gap}"
        )));
    }
    if limit > table.limit() {
        return Err(Error::BeyondLimit {
            value: limit,
            limit: table.limit(),
        });
    }
    Ok(())
}
