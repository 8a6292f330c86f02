//! Verification report entries.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A hypothesis of the checked statement does not hold.
    Skipped,
    /// The statement is an implication whose premise is false.
    Vacuous,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::Vacuous => "vacuous",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub check: String,
    pub inputs: String,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub gap: Option<String>,
    /// Comparisons are exact; recorded so consumers need not assume it.
    pub tolerance: String,
    pub status: Status,
    pub witness: Option<String>,
}

impl ReportEntry {
    pub fn new(check: &str, inputs: impl Into<String>, status: Status) -> Self {
        Self {
            check: check.to_string(),
            inputs: inputs.into(),
            lhs: None,
            rhs: None,
            gap: None,
            tolerance: "0".to_string(),
            status,
            witness: None,
        }
    }

    pub fn values(mut self, lhs: impl ToString, rhs: impl ToString) -> Self {
        self.lhs = Some(lhs.to_string());
        self.rhs = Some(rhs.to_string());
        self
    }

    pub fn gap(mut self, gap: impl ToString) -> Self {
        self.gap = Some(gap.to_string());
        self
    }

    pub fn witness(mut self, w: impl Into<String>) -> Self {
        self.witness = Some(w.into());
        self
    }

    pub fn passed(&self) -> bool {
        matches!(self.status, Status::Pass | Status::Vacuous)
    }
}

/// Pass/fail summary: `Fail` dominates `Skipped`, which dominates success.
pub fn overall(entries: &[ReportEntry]) -> Status {
    if entries.iter().any(|e| e.status == Status::Fail) {
        Status::Fail
    } else if entries.iter().any(|e| e.status == Status::Skipped) {
        Status::Skipped
    } else {
        Status::Pass
    }
}

/// Deterministic order: by check name, then inputs.
pub fn sort_entries(entries: &mut [ReportEntry]) {
    entries.sort_by(|a, b| (a.check.as_str(), a.inputs.as_str()).cmp(&(b.check.as_str(), b.inputs.as_str())));
}
