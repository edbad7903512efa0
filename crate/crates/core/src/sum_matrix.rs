//! The sum-gated matrix family and its anti-diagonal characteristic column.
//!
//! For order n, entry (i, j) carries 2(i+j+1) when both 2i+1 and 2j+1 are
//! prime and 0 otherwise, so every anti-diagonal collects the ordered
//! two-odd-prime partitions of one even number: anti-diagonal k holds sums
//! equal to 2(k+2). The characteristic column L(1..2n-1) counts the nonzero
//! entries per anti-diagonal. Matrices are kept implicit behind the
//! indicator vector; rendering a full grid is capped because the O(n²)
//! materialization is exactly what the view exists to avoid.

use crate::error::{Error, Result};
use crate::primality::{OddIndicator, PrimalityTable};

/// Largest order `render` will materialize.
pub const RENDER_CAP: usize = 64;

/// Implicit symmetric matrix with entries 2(i+j+1) gated on the primality of
/// 2i+1 and 2j+1.
#[derive(Clone, Debug)]
pub struct SumMatrixView {
    indicator: OddIndicator,
}

impl SumMatrixView {
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

    /// 2(i+j+1) when both index positions are prime, 0 otherwise. 1-based.
    pub fn entry(&self, i: usize, j: usize) -> Result<u64> {
        let n = self.order();
        for idx in [i, j] {
            if idx < 1 || idx > n {
                return Err(Error::IndexOutOfRange { index: idx, order: n });
            }
        }
        Ok(if self.indicator.get(i) && self.indicator.get(j) {
            2 * (i + j + 1) as u64
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

/// The characteristic column L(1..2n-1): nonzero-entry counts per
/// anti-diagonal, equivalently restricted ordered partition counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharSequence {
    values: Vec<u64>,
}

impl CharSequence {
    pub fn order(&self) -> usize {
        self.values.len().div_ceil(2)
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// L(k), 1-based.
    pub fn get(&self, k: usize) -> u64 {
        self.values[k - 1]
    }

    /// Split at the main anti-diagonal: L(1..n) and L(n+1..2n-1).
    pub fn corner_split(&self) -> CornerSplit {
        let n = self.order();
        CornerSplit {
            upper_left: self.values[..n].to_vec(),
            lower_right: self.values[n..].to_vec(),
        }
    }

    /// Zero census over the lower-right part L(n+1..2n-1).
    pub fn zero_stats(&self) -> ZeroStats {
        let n = self.order();
        let lower = &self.values[n..];
        let m0 = lower.iter().filter(|&&v| v == 0).count();
        let k0 = lower.iter().position(|&v| v == 0).map(|p| n + p + 1);
        ZeroStats {
            m0,
            k0,
            m0_ratio: m0 as f64 / n as f64,
            k0_ratio: k0.map(|k| k as f64 / (2 * n - 1) as f64),
        }
    }

    /// Grow the column from order n-1 to order n in place.
    ///
    /// Only the new matrix row and column can contribute: positions
    /// n..=2n-3 gain 2 exactly when both 2n+1 and the partner odd number
    /// are prime, position 2n-2 is fresh and holds 0 or 2, position 2n-1 is
    /// the single corner cell. The prefix is untouched.
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

    /// Same step with the prime indices below n already known; used by the
    /// chained builders so prime steps cost O(pi(n)) instead of O(n).
    /// `indices` must be the ascending i in 1..n with 2i+1 prime.
    pub(crate) fn extend_with_indices(&mut self, new_prime: bool, indices: &[usize]) {
        let n = self.order() + 1;
        if !new_prime {
            self.values.push(0);
            self.values.push(0);
            return;
        }
        for &i in indices {
            if i <= n - 2 {
                self.values[n + i - 2] += 2;
            }
        }
        let has_prev = indices.last() == Some(&(n - 1));
        self.values.push(if has_prev { 2 } else { 0 });
        self.values.push(1);
    }
}

/// Definitional route: walk every anti-diagonal cell of the view. O(n²).
pub fn char_sequence_scan(view: &SumMatrixView) -> CharSequence {
    let n = view.order();
    let ind = view.indicator();
    let mut values = Vec::with_capacity(2 * n - 1);
    for k in 1..=2 * n - 1 {
        let lo = 1.max(k + 1 - n.min(k));
        let hi = k.min(n);
        let mut count = 0u64;
        for i in lo..=hi {
            let j = k + 1 - i;
            if ind.get(i) && ind.get(j) {
                count += 1;
            }
        }
        values.push(count);
    }
    CharSequence { values }
}

/// Autocorrelation route: every ordered pair of prime indices lands on one
/// anti-diagonal. o(n²) for prime-density indicators; contract-identical to
/// [`char_sequence_scan`].
pub fn char_sequence_fast(indicator: &OddIndicator) -> CharSequence {
    let indices: Vec<usize> = indicator.prime_indices().collect();
    char_sequence_from_indices(&indices, indicator.order())
}

/// Fast route when the prime indices are already at hand.
pub(crate) fn char_sequence_from_indices(indices: &[usize], n: usize) -> CharSequence {
    let mut values = vec![0u64; 2 * n - 1];
    for &i in indices {
        for &j in indices {
            values[i + j - 2] += 1;
        }
    }
    CharSequence { values }
}

/// One recurrence step: the column for order n from the column for n-1.
pub fn char_sequence_incremental(
    prev: &CharSequence,
    table: &PrimalityTable,
) -> Result<CharSequence> {
    let mut next = prev.clone();
    next.extend_one(table)?;
    Ok(next)
}

/// L(1..n) and L(n+1..2n-1) of one column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerSplit {
    pub upper_left: Vec<u64>,
    pub lower_right: Vec<u64>,
}

/// Zero census of the lower-right part: how many, and where the first one
/// sits. Ratios are reported as-is; nothing here decides "close to 0/1".
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroStats {
    pub m0: usize,
    /// Overall 1-based index of the first zero, absent when there is none.
    pub k0: Option<usize>,
    pub m0_ratio: f64,
    pub k0_ratio: Option<f64>,
}

/// Ordered pairs (p, q) of odd primes with p + q = even.
pub fn ordered_partition_count(table: &PrimalityTable, even: u64) -> Result<u64> {
    check_partition_args(table, even)?;
    let mut count = 0;
    let mut p = 3;
    while p <= even - 3 {
        if table.bit(p) && table.bit(even - p) {
            count += 1;
        }
        p += 2;
    }
    Ok(count)
}

/// The pairs behind [`ordered_partition_count`], ascending in p.
pub fn ordered_partitions(table: &PrimalityTable, even: u64) -> Result<Vec<(u64, u64)>> {
    check_partition_args(table, even)?;
    let mut pairs = Vec::new();
    let mut p = 3;
    while p <= even - 3 {
        if table.bit(p) && table.bit(even - p) {
            pairs.push((p, even - p));
        }
        p += 2;
    }
    Ok(pairs)
}

fn check_partition_args(table: &PrimalityTable, even: u64) -> Result<()> {
    if !even.is_multiple_of(2) || even < 6 {
        return Err(Error::Usage(format!(
            "partition target must be an even number >= 6, got {even}"
        )));
    }
    if even - 3 > table.limit() {
        return Err(Error::BeyondLimit {
            value: even - 3,
            limit: table.limit(),
        });
    }
    Ok(())
}
