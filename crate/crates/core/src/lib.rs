//! Prime-indexed matrix families, their characteristic sequences, and
//! desk-scale verification suites for additive prime-number claims.
//!
//! The library builds bit-packed primality tables, exposes two implicit
//! matrix families over them (sum-gated anti-diagonals counting Goldbach
//! partitions, difference-gated superdiagonals counting fixed-gap prime
//! pairs), tracks shifted prime sets S_a = {k : 2k+a prime}, and bundles
//! batch checkers that verify the associated claims exhaustively over
//! explicit finite ranges.

pub mod diff_matrix;
pub mod error;
pub mod harness;
pub mod primality;
pub mod report;
pub mod shifted_sets;
pub mod sum_matrix;

pub use error::{Error, Result};
pub use primality::{OddIndicator, PrimalityTable};
pub use report::{ClaimReport, ClaimStatus, Family, StatRow, StatSeries};
