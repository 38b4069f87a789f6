use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Confirmed,
    Refuted,
    Corrected,
    /// Not evaluated, e.g. a cell beyond the brute-force guard.
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Confirmed => "confirmed",
            Status::Refuted => "refuted",
            Status::Corrected => "corrected",
            Status::Skipped => "skipped",
        })
    }
}

/// One checked claim: what was computed, what was printed, and evidence
/// whenever the two differ.
///
/// `core` marks the claims that decide the exit status; typo-class
/// corrections are never core.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub status: Status,
    pub core: bool,
    pub computed_value: String,
    pub paper_value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl VerificationReport {
    pub fn confirmed(
        id: impl Into<String>,
        computed: impl Into<String>,
        printed: impl Into<String>,
    ) -> Self {
        Self {
            claim_id: id.into(),
            status: Status::Confirmed,
            core: false,
            computed_value: computed.into(),
            paper_value: printed.into(),
            witness: None,
        }
    }

    pub fn refuted(
        id: impl Into<String>,
        computed: impl Into<String>,
        printed: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        Self {
            status: Status::Refuted,
            witness: Some(witness.into()),
            ..Self::confirmed(id, computed, printed)
        }
    }

    pub fn corrected(
        id: impl Into<String>,
        computed: impl Into<String>,
        printed: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        Self {
            status: Status::Corrected,
            witness: Some(witness.into()),
            ..Self::confirmed(id, computed, printed)
        }
    }

    pub fn skipped(id: impl Into<String>, reason: impl Into<String>) -> Self {
        Self {
            status: Status::Skipped,
            witness: Some(reason.into()),
            ..Self::confirmed(id, "-", "-")
        }
    }

    /// Confirmed when `ok`, otherwise refuted with `witness`.
    pub fn check(
        id: impl Into<String>,
        ok: bool,
        computed: impl Into<String>,
        printed: impl Into<String>,
        witness: impl FnOnce() -> String,
    ) -> Self {
        if ok {
            Self::confirmed(id, computed, printed)
        } else {
            Self::refuted(id, computed, printed, witness())
        }
    }

    pub fn core(mut self) -> Self {
        self.core = true;
        self
    }
}

/// Sorts by claim id so that output order never depends on evaluation order.
pub fn sort_reports(reports: &mut [VerificationReport]) {
    reports.sort_by(|a, b| a.claim_id.cmp(&b.claim_id));
}
