//! Verification runner, expression parser and file formats behind the
//! `azp` binary.

pub mod checks;
pub mod parse;
pub mod report;
pub mod session;

use std::time::Instant;

use rayon::prelude::*;
use thiserror::Error;

pub use checks::{registry, CheckDescriptor, Outcome};
pub use report::{CheckResult, Config, Report, Status, REPORT_VERSION};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("no check matches `{0}`")]
    UnknownCheck(String),
    #[error("bad pattern `{pattern}`: {msg}")]
    Pattern { pattern: String, msg: String },
    #[error("worker pool: {0}")]
    Pool(String),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Record wall time per check (makes reports non-reproducible).
    pub timings: bool,
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
}

/// Checks whose id matches any of the glob patterns; `all` selects every
/// check. Every pattern has to match something.
pub fn select(checks: Vec<CheckDescriptor>, patterns: &[String]) -> Result<Vec<CheckDescriptor>, RunError> {
    if patterns.is_empty() || patterns.iter().any(|p| p == "all") {
        return Ok(checks);
    }
    let globs = patterns
        .iter()
        .map(|p| {
            glob::Pattern::new(p).map_err(|e| RunError::Pattern {
                pattern: p.clone(),
                msg: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    for (p, g) in patterns.iter().zip(&globs) {
        if !checks.iter().any(|c| g.matches(&c.id)) {
            return Err(RunError::UnknownCheck(p.clone()));
        }
    }
    Ok(checks.into_iter().filter(|c| globs.iter().any(|g| g.matches(&c.id))).collect())
}

/// Runs the checks in a worker pool and assembles a report sorted by id.
pub fn run_checks(checks: &[CheckDescriptor], config: &Config, opts: RunOptions) -> Result<Report, RunError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads)
        .build()
        .map_err(|e| RunError::Pool(e.to_string()))?;
    let mut results: Vec<CheckResult> = pool.install(|| {
        checks
            .par_iter()
            .map(|d| {
                let start = Instant::now();
                let o = checks::run_one(d, config);
                CheckResult {
                    id: d.id.clone(),
                    status: o.status,
                    evidence: o.evidence,
                    millis: opts.timings.then(|| start.elapsed().as_millis() as u64),
                }
            })
            .collect()
    });
    results.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(Report {
        version: REPORT_VERSION.to_string(),
        config: config.clone(),
        checks: results,
    })
}

/// Selection plus run over the full registry.
pub fn run_verification(patterns: &[String], config: &Config, opts: RunOptions) -> Result<Report, RunError> {
    let selected = select(registry(), patterns)?;
    run_checks(&selected, config, opts)
}
