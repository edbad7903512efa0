//! Claim reports and statistics series shared by the verification suites.

use serde::Serialize;

/// Which matrix family a sequence or statistic belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Sum,
    Diff,
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::Sum => "sum",
            Family::Diff => "diff",
        })
    }
}

/// Outcome of one verification suite. Suites over open conjectures always
/// carry an explicit range: they can report "verified" for that range or a
/// concrete counterexample, never an unbounded claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClaimStatus {
    #[serde(rename = "verified")]
    Verified,
    #[serde(rename = "counterexample")]
    Counterexample,
    #[serde(rename = "witness-not-found-below-limit")]
    WitnessNotFoundBelowLimit,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub claim: String,
    pub range: String,
    pub status: ClaimStatus,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<serde_json::Value>,
    pub elapsed_ms: u64,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.status == ClaimStatus::Verified
    }

    /// Compact single-line JSON; field order is fixed by the struct.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

/// One sampled order in a statistics series: the small-value count, the
/// position of the first small value, and their normalized ratios.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StatRow {
    pub n: usize,
    pub count: u64,
    pub first: Option<usize>,
    pub mu: f64,
    pub nu: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StatSeries {
    pub family: Family,
    pub rows: Vec<StatRow>,
}
