use std::fmt::Write as _;

use courantlab::report::{Check, Report};
use serde::Serialize;

/// The resolved settings of a run, echoed into its report.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ctx: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
}

impl RunConfig {
    pub fn named(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            input: None,
            ctx: None,
            samples: None,
            seed: None,
            h: None,
            tol: None,
        }
    }
}

/// Machine-readable outcome of one command. `passed` is the conjunction of
/// the check records.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl RunReport {
    pub fn new(config: RunConfig, report: Report) -> Self {
        let passed = report.passed();
        Self {
            config,
            checks: report.checks,
            passed,
            data: None,
        }
    }

    pub fn with_data(mut self, data: serde_json::Value) -> Self {
        self.data = Some(data);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let width = self.checks.iter().map(|c| c.name.chars().count()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            let pad = width - c.name.chars().count();
            let _ = write!(s, "{status}  {}{}", c.name, " ".repeat(pad));
            if let Some(r) = c.residual {
                let _ = write!(s, "  {r:.3e}");
            }
            if let Some(d) = &c.detail {
                let _ = write!(s, "  {d}");
            }
            s.push('\n');
        }
        let failed = self.failures().count();
        let _ = writeln!(
            s,
            "{}: {} checks, {} failed",
            if self.passed { "PASS" } else { "FAIL" },
            self.checks.len(),
            failed
        );
        s
    }
}
