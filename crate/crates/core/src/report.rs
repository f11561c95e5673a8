//! Outcomes of identity checks and the JSON report format.

use serde::{Deserialize, Serialize};

/// Result of a single exact check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub holds: bool,
    /// Highest degree on which the identity was asserted, when it is windowed.
    pub window: Option<usize>,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass() -> Self {
        Check {
            holds: true,
            window: None,
            witness: None,
        }
    }

    pub fn pass_on(window: usize) -> Self {
        Check {
            holds: true,
            window: Some(window),
            witness: None,
        }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        Check {
            holds: false,
            window: None,
            witness: Some(witness.into()),
        }
    }

    pub fn from_witness(witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(),
            Some(w) => Self::fail(w),
        }
    }

    pub fn with_window(mut self, window: usize) -> Self {
        self.window = Some(window);
        self
    }

    /// Both must hold; the first failure wins.
    pub fn and(self, other: Check) -> Check {
        if !self.holds {
            self
        } else if !other.holds {
            other
        } else {
            Check {
                holds: true,
                window: match (self.window, other.window) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                },
                witness: None,
            }
        }
    }

    pub fn all(checks: impl IntoIterator<Item = Check>) -> Check {
        checks.into_iter().fold(Check::pass(), Check::and)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    HoldsUpToWindow,
    Fails,
}

/// Invariants decide the exit status; findings are reported only.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Invariant,
    Finding,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ReportEntry {
    pub suite: String,
    pub family: String,
    pub identity_id: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub window: Option<usize>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
    pub kind: Kind,
}

impl ReportEntry {
    pub fn new(
        suite: &str,
        family: &str,
        identity_id: &str,
        n: usize,
        kind: Kind,
        check: Check,
    ) -> Self {
        let status = match (check.holds, check.window) {
            (false, _) => Status::Fails,
            (true, Some(w)) if w < n => Status::HoldsUpToWindow,
            (true, _) => Status::Holds,
        };
        ReportEntry {
            suite: suite.into(),
            family: family.into(),
            identity_id: identity_id.into(),
            n,
            window: check.window,
            status,
            witness: check.witness,
            kind,
        }
    }

    /// False only for a failing invariant.
    pub fn acceptable(&self) -> bool {
        self.kind == Kind::Finding || self.status != Status::Fails
    }

    pub fn text_line(&self) -> String {
        let status = match self.status {
            Status::Holds => "holds".to_string(),
            Status::HoldsUpToWindow => format!("holds up to degree {}", self.window.unwrap_or(0)),
            Status::Fails => "FAILS".to_string(),
        };
        let kind = match self.kind {
            Kind::Invariant => "",
            Kind::Finding => " [finding]",
        };
        let mut line = format!(
            "{:<12} {:<28} {:<40} {status}{kind}",
            self.suite, self.family, self.identity_id
        );
        if let Some(w) = &self.witness {
            line.push_str(&format!(" ({w})"));
        }
        line
    }
}

/// Sorted by suite, family and identity, as emitted by every front end.
pub fn sort_entries(entries: &mut [ReportEntry]) {
    entries.sort_by(|a, b| {
        (&a.suite, &a.family, &a.identity_id).cmp(&(&b.suite, &b.family, &b.identity_id))
    });
}

pub fn all_acceptable(entries: &[ReportEntry]) -> bool {
    entries.iter().all(ReportEntry::acceptable)
}
