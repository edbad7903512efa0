//! Bit-packed primality tables and the odd-prime indicator vectors that both
//! matrix families are built from.
//!
//! A [`PrimalityTable`] stores one bit per integer in `0..=limit` (1 = prime)
//! and is immutable after construction, so it can be shared freely across
//! parallel readers. Construction switches to a segmented sieve above
//! [`SEGMENT_THRESHOLD`] to stay cache-resident; both strategies produce
//! identical bit content.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Limits above this are sieved segment by segment.
pub const SEGMENT_THRESHOLD: u64 = 1 << 27;

/// Integers per segment in the segmented sieve (multiple of 8 so segments
/// align to byte boundaries).
const SEGMENT_SPAN: u64 = 1 << 22;

/// Hard cap on table storage. `build` refuses limits whose bit array would
/// not fit instead of thrashing.
pub const MEMORY_BUDGET_BYTES: u64 = 1 << 30;

const MAGIC: &[u8; 4] = b"PMLB";
const FORMAT_VERSION: u16 = 1;

#[inline]
fn get_bit(bits: &[u8], n: u64) -> bool {
    bits[(n >> 3) as usize] & (1 << (n & 7)) != 0
}

#[inline]
fn clear_bit(bits: &mut [u8], n: u64) {
    bits[(n >> 3) as usize] &= !(1 << (n & 7));
}

fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).is_none_or(|sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

fn byte_len(limit: u64) -> u64 {
    limit / 8 + 1
}

/// Clear the padding bits above `limit` in the final byte so the packed
/// array is byte-stable regardless of how it was produced.
fn mask_tail(bits: &mut [u8], limit: u64) {
    let last = (limit >> 3) as usize;
    let keep = (limit & 7) as u32;
    bits[last] &= 0xFFu8 >> (7 - keep);
}

fn sieve_plain(limit: u64) -> Vec<u8> {
    let mut bits = vec![0xFFu8; byte_len(limit) as usize];
    mask_tail(&mut bits, limit);
    clear_bit(&mut bits, 0);
    clear_bit(&mut bits, 1);
    for p in 2..=isqrt(limit) {
        if get_bit(&bits, p) {
            let mut m = p * p;
            while m <= limit {
                clear_bit(&mut bits, m);
                m += p;
            }
        }
    }
    bits
}

fn sieve_segmented(limit: u64) -> Vec<u8> {
    let root = isqrt(limit);
    let base = sieve_plain(root.max(2));
    let base_primes: Vec<u64> = (2..=root).filter(|&p| get_bit(&base, p)).collect();

    let mut bits = vec![0xFFu8; byte_len(limit) as usize];
    mask_tail(&mut bits, limit);
    clear_bit(&mut bits, 0);
    clear_bit(&mut bits, 1);

    let mut lo = 0u64;
    while lo <= limit {
        let hi = (lo + SEGMENT_SPAN - 1).min(limit);
        for &p in &base_primes {
            // Composites below p*p were already struck via a smaller factor.
            if p * p > hi {
                break;
            }
            let first = (lo.div_ceil(p) * p).max(p * p);
            let mut m = first;
            while m <= hi {
                clear_bit(&mut bits, m);
                m += p;
            }
        }
        lo = hi + 1;
    }
    bits
}

/// Packed primality oracle for `0..=limit`.
///
/// Out-of-range queries are hard errors, never a silent `false`, so a stale
/// table cannot masquerade as a disproof.
#[derive(Clone, PartialEq, Eq)]
pub struct PrimalityTable {
    limit: u64,
    bits: Vec<u8>,
}

impl std::fmt::Debug for PrimalityTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PrimalityTable")
            .field("limit", &self.limit)
            .finish_non_exhaustive()
    }
}

impl PrimalityTable {
    /// Sieve everything up to `limit` (inclusive).
    pub fn build(limit: u64) -> Result<Self> {
        if limit < 2 {
            return Err(Error::Usage(format!(
                "table limit must be at least 2, got {limit}"
            )));
        }
        let needed = byte_len(limit);
        if needed > MEMORY_BUDGET_BYTES {
            return Err(Error::MemoryBudget {
                limit,
                needed,
                budget: MEMORY_BUDGET_BYTES,
            });
        }
        let bits = if limit > SEGMENT_THRESHOLD {
            sieve_segmented(limit)
        } else {
            sieve_plain(limit)
        };
        Ok(Self { limit, bits })
    }

    /// Inclusive upper bound of the sieved range.
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn is_prime(&self, n: u64) -> Result<bool> {
        if n > self.limit {
            return Err(Error::BeyondLimit {
                value: n,
                limit: self.limit,
            });
        }
        Ok(get_bit(&self.bits, n))
    }

    /// Unchecked bit read for hot loops whose bounds were validated up front.
    #[inline]
    pub(crate) fn bit(&self, n: u64) -> bool {
        debug_assert!(n <= self.limit);
        get_bit(&self.bits, n)
    }

    pub fn prime_count(&self) -> u64 {
        self.bits.iter().map(|b| b.count_ones() as u64).sum()
    }

    /// Ascending primes in `2..=limit`.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (2..=self.limit).filter(move |&n| self.bit(n))
    }

    /// Indicator over the odd numbers 3, 5, ..., 2n+1: position i is set
    /// iff 2i+1 is prime.
    pub fn odd_indicator(&self, n: usize) -> Result<OddIndicator> {
        if n == 0 {
            return Err(Error::Usage("matrix order must be at least 1".into()));
        }
        let top = 2 * n as u64 + 1;
        if top > self.limit {
            return Err(Error::BeyondLimit {
                value: top,
                limit: self.limit,
            });
        }
        let chi = (1..=n).map(|i| self.bit(2 * i as u64 + 1) as u8).collect();
        Ok(OddIndicator { chi })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read_from(&mut BufReader::new(File::open(path)?))
    }

    pub fn write_to<W: Write>(&self, w: &mut W) -> Result<()> {
        w.write_all(MAGIC)?;
        w.write_all(&FORMAT_VERSION.to_le_bytes())?;
        w.write_all(&0u16.to_le_bytes())?;
        w.write_all(&self.limit.to_le_bytes())?;
        w.write_all(&self.bits)?;
        Ok(())
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        fn read_exact(r: &mut impl Read, buf: &mut [u8], what: &str) -> Result<()> {
            r.read_exact(buf).map_err(|e| {
                if e.kind() == std::io::ErrorKind::UnexpectedEof {
                    Error::Format(format!("truncated while reading {what}"))
                } else {
                    Error::Io(e)
                }
            })
        }

        let mut magic = [0u8; 4];
        read_exact(r, &mut magic, "magic")?;
        if &magic != MAGIC {
            return Err(Error::Format(format!("bad magic {magic:02x?}")));
        }
        let mut u16buf = [0u8; 2];
        read_exact(r, &mut u16buf, "version")?;
        let version = u16::from_le_bytes(u16buf);
        if version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        read_exact(r, &mut u16buf, "reserved field")?;
        if u16::from_le_bytes(u16buf) != 0 {
            return Err(Error::Format("nonzero reserved field".into()));
        }
        let mut u64buf = [0u8; 8];
        read_exact(r, &mut u64buf, "limit")?;
        let limit = u64::from_le_bytes(u64buf);
        if limit < 2 {
            return Err(Error::Format(format!("limit {limit} below 2")));
        }
        if byte_len(limit) > MEMORY_BUDGET_BYTES {
            return Err(Error::Format(format!("limit {limit} over memory budget")));
        }
        let mut bits = vec![0u8; byte_len(limit) as usize];
        read_exact(r, &mut bits, "bit payload")?;
        let mut probe = [0u8; 1];
        if r.read(&mut probe)? != 0 {
            return Err(Error::Format("trailing bytes after payload".into()));
        }
        let pad_mask = !(0xFFu8 >> (7 - (limit & 7) as u32));
        if bits[bits.len() - 1] & pad_mask != 0 {
            return Err(Error::Format("nonzero padding bits".into()));
        }
        Ok(Self { limit, bits })
    }
}

/// The condition vector of a prime-gated matrix: `chi[i] = 1` iff 2i+1 is
/// prime, for 1-based i up to the matrix order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddIndicator {
    chi: Vec<u8>,
}

impl OddIndicator {
    pub fn order(&self) -> usize {
        self.chi.len()
    }

    /// 1-based lookup. Panics outside 1..=order.
    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.chi[i - 1] != 0
    }

    /// chi as 0/1 values, position 0 holding chi[1].
    pub fn values(&self) -> &[u8] {
        &self.chi
    }

    /// Number of prime positions.
    pub fn count_ones(&self) -> u64 {
        self.chi.iter().map(|&b| b as u64).sum()
    }

    /// Ascending 1-based indices i with chi[i] = 1.
    pub fn prime_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.chi
            .iter()
            .enumerate()
            .filter(|(_, &b)| b != 0)
            .map(|(i, _)| i + 1)
    }
}
