//! Check outcomes and suite reports.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Version of the JSON report layout.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

/// One verified statement.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// The identity being checked, in words.
    pub anchor: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trial: Option<usize>,
    pub detail: String,
    /// Set when the check could not run because the parameters hit a pole.
    #[serde(skip)]
    pub degenerate: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, anchor: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            trial: None,
            detail: detail.into(),
            degenerate: false,
        }
    }

    pub fn skip(name: impl Into<String>, anchor: impl Into<String>, reason: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            anchor: anchor.into(),
            status: Status::Skip,
            trial: None,
            detail: reason.into(),
            degenerate: false,
        }
    }

    /// A check that could not run because an operation returned an error.
    pub fn error(name: impl Into<String>, anchor: impl Into<String>, err: impl std::fmt::Display) -> Self {
        let detail = err.to_string();
        let degenerate = detail.starts_with("parameter pole") || detail == "division by zero";
        Check { degenerate, ..Check::new(name, anchor, false, format!("error: {detail}")) }
    }

    pub fn with_trial(mut self, trial: usize) -> Self {
        self.trial = Some(trial);
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: String,
    pub artifact_version: String,
    pub suite: String,
    pub parameters: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

impl Report {
    /// Assembles a report in canonical order: by check name, then trial.
    pub fn new(suite: &str, parameters: BTreeMap<String, String>, mut checks: Vec<Check>, elapsed_ms: u128) -> Self {
        checks.sort_by(|a, b| (&a.name, a.trial).cmp(&(&b.name, b.trial)));
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skip => summary.skip += 1,
            }
        }
        Report {
            schema_version: SCHEMA_VERSION.into(),
            artifact_version: env!("CARGO_PKG_VERSION").into(),
            suite: suite.into(),
            parameters,
            checks,
            summary,
            elapsed_ms,
        }
    }

    /// True when no check failed.
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }
}

/// Folds many checks with the same name into one, keeping the first failure's detail.
pub fn all_of(name: &str, anchor: &str, checks: impl IntoIterator<Item = Check>) -> Check {
    let mut count = 0;
    for c in checks {
        count += 1;
        if c.status == Status::Fail {
            return Check::new(name, anchor, false, format!("{}: {}", c.name, c.detail));
        }
    }
    Check::new(name, anchor, true, format!("{count} cases"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_and_summary() {
        let checks = vec![
            Check::new("b", "x", true, "").with_trial(1),
            Check::new("b", "x", false, "").with_trial(0),
            Check::skip("a", "x", "n/a"),
        ];
        let r = Report::new("s", BTreeMap::new(), checks, 0);
        let order: Vec<_> = r.checks.iter().map(|c| (c.name.as_str(), c.trial)).collect();
        assert_eq!(order, vec![("a", None), ("b", Some(0)), ("b", Some(1))]);
        assert_eq!(r.summary, Summary { pass: 1, fail: 1, skip: 1 });
        assert!(!r.passed());
    }

    #[test]
    fn folding() {
        let ok = all_of("n", "a", (0..3).map(|i| Check::new(format!("c{i}"), "a", true, "")));
        assert_eq!(ok.status, Status::Pass);
        let bad = all_of("n", "a", [Check::new("c0", "a", true, ""), Check::new("c1", "a", false, "boom")]);
        assert_eq!(bad.status, Status::Fail);
        assert_eq!(bad.detail, "c1: boom");
    }
}
