//! Law run reports.

use serde::{Deserialize, Serialize};

/// Outcome of running one law.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub law: String,
    pub seed: u64,
    /// Number of cases evaluated (up to and including a failing one).
    pub cases: u64,
    pub status: LawStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LawStatus {
    Pass,
    Fail,
}

/// A failing case, replayable standalone: rerunning the law with the
/// same seed and `case` index regenerates exactly this input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub case: u64,
    pub detail: String,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.status == LawStatus::Pass
    }
}
