//! Machine-readable verification reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

const CONTROL_SUFFIX: &str = " (control, must fail)";

/// Whether `max_residual` must stay below `tolerance` or exceed it (witness cases).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    Upper,
    Lower,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub name: String,
    /// The identity or statement the case checks.
    pub anchor: String,
    pub max_residual: f64,
    pub tolerance: f64,
    pub bound: Bound,
    pub pass: bool,
}

impl Case {
    /// Passes when `residual ≤ tolerance` (NaN fails).
    pub fn at_most(
        name: impl Into<String>,
        anchor: impl Into<String>,
        residual: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            max_residual: residual,
            tolerance,
            bound: Bound::Upper,
            pass: residual <= tolerance,
        }
    }

    /// Passes when `value > threshold`; used for counterexample witnesses.
    pub fn exceeds(
        name: impl Into<String>,
        anchor: impl Into<String>,
        value: f64,
        threshold: f64,
    ) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            max_residual: value,
            tolerance: threshold,
            bound: Bound::Lower,
            pass: value > threshold,
        }
    }

    /// Boolean outcome recorded as residual 0 (holds) or 1 (fails) against tolerance 0.
    pub fn holds(name: impl Into<String>, anchor: impl Into<String>, ok: bool) -> Self {
        Self::at_most(name, anchor, if ok { 0.0 } else { 1.0 }, 0.0)
    }

    pub fn prefixed(mut self, prefix: &str) -> Self {
        self.name = format!("{prefix}{}", self.name);
        self
    }

    /// The same case with the verdict inverted, for negative controls.
    pub fn expect_failure(mut self) -> Self {
        self.name = format!("{}{CONTROL_SUFFIX}", self.name);
        self.pass = !self.pass;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub n: usize,
    pub beta_id: String,
    #[serde(default)]
    pub config: serde_json::Value,
    pub cases: Vec<Case>,
    #[serde(default)]
    pub notes: Vec<String>,
    /// Suite-specific payload such as a cohomology table.
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub data: serde_json::Value,
    pub pass: bool,
}

impl Report {
    pub fn new(suite: impl Into<String>, n: usize, beta_id: impl Into<String>) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            suite: suite.into(),
            n,
            beta_id: beta_id.into(),
            config: serde_json::Value::Null,
            cases: Vec::new(),
            notes: Vec::new(),
            data: serde_json::Value::Null,
            pass: true,
        }
    }

    pub fn push(&mut self, case: Case) {
        self.pass &= case.pass;
        self.cases.push(case);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Appends every case and note of `other`, prefixing case names.
    pub fn absorb(&mut self, other: Report, prefix: &str) {
        for case in other.cases {
            self.push(case.prefixed(prefix));
        }
        self.notes
            .extend(other.notes.into_iter().map(|n| format!("{prefix}{n}")));
    }

    /// Re-judges every upper-bound case whose name contains `pattern` against
    /// `tolerance`. Negative controls are left alone.
    pub fn retune(&mut self, pattern: &str, tolerance: f64) {
        for c in &mut self.cases {
            if c.bound == Bound::Upper
                && c.name.contains(pattern)
                && !c.name.ends_with(CONTROL_SUFFIX)
            {
                c.tolerance = tolerance;
                c.pass = c.max_residual <= tolerance;
            }
        }
        self.pass = self.cases.iter().all(|c| c.pass);
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed-width human-readable table.
    pub fn to_text(&self) -> String {
        let width = self
            .cases
            .iter()
            .map(|c| c.name.chars().count())
            .max()
            .unwrap_or(4)
            .max(4);
        let mut out = String::new();
        let _ = writeln!(
            out,
            "suite {}  n={}  beta={}",
            self.suite, self.n, self.beta_id
        );
        for c in &self.cases {
            let op = match c.bound {
                Bound::Upper => "<=",
                Bound::Lower => "> ",
            };
            let _ = writeln!(
                out,
                "  [{}] {:<width$}  {:>11.3e} {op} {:<9.1e}",
                if c.pass { "PASS" } else { "FAIL" },
                c.name,
                c.max_residual,
                c.tolerance,
            );
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        let _ = writeln!(out, "overall: {}", if self.pass { "PASS" } else { "FAIL" });
        out
    }
}
