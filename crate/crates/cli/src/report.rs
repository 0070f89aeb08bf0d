use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Bumped whenever the JSON layout changes; matches `schemas/report.schema.json`.
pub const REPORT_VERSION: &str = "1.0";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Verified in a downgraded form; see the evidence `note`.
    Partial,
    /// The rewrite system did not stabilize at the configured degree cap.
    CapLimited,
}

impl Status {
    pub fn glyph(self) -> &'static str {
        match self {
            Status::Pass => "✓",
            Status::Fail => "✗",
            Status::Partial => "~",
            Status::CapLimited => "?",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Partial => "partial",
            Status::CapLimited => "cap-limited",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub degree_cap: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            degree_cap: azp_core::freealg::DEFAULT_DEGREE_CAP,
            trials: 20,
            seed: 7,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub status: Status,
    pub evidence: Value,
    /// Wall time; only filled with `--timings` so reports stay reproducible.
    pub millis: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub config: Config,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    /// Exit-code contract: success iff nothing failed. With `strict`,
    /// partial and cap-limited results count as failures too.
    pub fn succeeded(&self, strict: bool) -> bool {
        self.checks.iter().all(|c| match c.status {
            Status::Pass => true,
            Status::Fail => false,
            Status::Partial | Status::CapLimited => !strict,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let _ = write!(out, "{} {:<width$}  {:<11}", c.status.glyph(), c.id, c.status.name());
            if let Some(ms) = c.millis {
                let _ = write!(out, " {ms:>6} ms");
            }
            if let Some(note) = c.evidence.get("note").and_then(Value::as_str) {
                let _ = write!(out, "  {note}");
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{} checks: {} pass, {} fail, {} partial, {} cap-limited (cap {}, trials {}, seed {})",
            self.checks.len(),
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Partial),
            self.count(Status::CapLimited),
            self.config.degree_cap,
            self.config.trials,
            self.config.seed
        );
        out
    }
}
