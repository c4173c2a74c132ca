//! Deterministic verification reports.
//!
//! A report is a named suite of pass/fail checks. Serialization is stable:
//! checks are sorted by name and `elapsed_ms` is the only field allowed to
//! differ between identical runs.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub algebra: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(suite: impl Into<String>, algebra: impl Into<String>, seed: u64) -> Self {
        Report {
            suite: suite.into(),
            algebra: algebra.into(),
            seed,
            checks: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, witness: Option<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            witness: if passed { None } else { witness },
        });
    }

    /// Record a check that must be exactly zero; the display of the residual
    /// becomes the witness on failure.
    pub fn check_zero<T: std::fmt::Display>(&mut self, name: impl Into<String>, residual: T, is_zero: bool) {
        let witness = if is_zero {
            None
        } else {
            Some(format!("residual = {residual}"))
        };
        self.push(name, is_zero, witness);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Sort checks by name for deterministic output and merging.
    pub fn finalize(mut self) -> Self {
        self.checks.sort_by(|a, b| a.name.cmp(&b.name));
        self
    }

    pub fn merge(mut self, other: Report) -> Report {
        self.checks.extend(other.checks);
        self.finalize()
    }
}
