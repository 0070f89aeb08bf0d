//! One line per acceptance criterion: status, wall time against its bound,
//! and the check ids behind it. Exits non-zero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use azp_cli::{run_verification, Config, Report, RunOptions, Status};

struct Criterion {
    name: &'static str,
    patterns: &'static [&'static str],
    /// Ids allowed (and required) to come back `partial`.
    partial: &'static [&'static str],
    bound: Duration,
    min_checks: usize,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        name: "toric reproduction",
        patterns: &["toric.*"],
        partial: &[],
        bound: secs(1),
        min_checks: 3,
    },
    Criterion {
        name: "conifold kernel with 100-point audit",
        patterns: &["groebner.conifold-kernel"],
        partial: &[],
        bound: secs(5),
        min_checks: 1,
    },
    Criterion {
        name: "determinant factorization",
        patterns: &["probe.det-factorization"],
        partial: &[],
        bound: secs(1),
        min_checks: 1,
    },
    Criterion {
        name: "section identity",
        patterns: &["lemma-2.5.section"],
        partial: &[],
        bound: secs(2),
        min_checks: 1,
    },
    Criterion {
        name: "fiber dimensions and components",
        patterns: &["lemma-2.6.*"],
        partial: &["lemma-2.6.irreducibility"],
        bound: secs(60),
        min_checks: 5,
    },
    Criterion {
        name: "upper-triangular template ideal",
        patterns: &["resolution.wut-derivation"],
        partial: &[],
        bound: secs(1),
        min_checks: 1,
    },
    Criterion {
        name: "charts, liftings and gluing",
        patterns: &["lemma-3.1.chart.*", "lemma-3.1.lift.*", "lemma-3.1.glue.*"],
        partial: &[],
        bound: secs(30),
        min_checks: 22,
    },
    Criterion {
        name: "central images and their relation",
        patterns: &["lemma-3.3.centrality", "lemma-3.3.relation"],
        partial: &[],
        bound: secs(10),
        min_checks: 2,
    },
    Criterion {
        name: "tangent dimensions and canonical forms",
        patterns: &["prop-3.4.tangent", "prop-3.4.forms"],
        partial: &[],
        bound: secs(10),
        min_checks: 2,
    },
    Criterion {
        name: "scalar composite",
        patterns: &["ncres.rho-tau"],
        partial: &[],
        bound: secs(2),
        min_checks: 1,
    },
    Criterion {
        name: "torus action, stability and GIT charts",
        patterns: &["ncres.torus-action", "ncres.stability", "ncres.git.*"],
        partial: &[],
        bound: secs(5),
        min_checks: 4,
    },
    Criterion {
        name: "engine health",
        patterns: &["groebner.audit", "freealg.normal-form-laws", "freealg.commutative-cross-check"],
        partial: &[],
        bound: secs(30),
        min_checks: 3,
    },
];

fn judge(c: &Criterion, report: &Report) -> Result<(), String> {
    if report.checks.len() < c.min_checks {
        return Err(format!("expected at least {} checks, got {}", c.min_checks, report.checks.len()));
    }
    for r in &report.checks {
        let want = if c.partial.contains(&r.id.as_str()) { Status::Partial } else { Status::Pass };
        if r.status != want {
            return Err(format!("{} is {}, expected {}", r.id, r.status.name(), want.name()));
        }
    }
    Ok(())
}

fn line(n: usize, name: &str, ok: bool, took: Duration, bound: Duration, detail: &str) {
    println!(
        "[{}] {n:>2}. {name:<42} {:>8.3}s (bound {:>3}s){}{detail}",
        if ok { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        bound.as_secs(),
        if detail.is_empty() { "" } else { "  " },
    );
}

fn determinism() -> Result<(), String> {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_azp"))
            .args(["verify", "all", "--seed", "7", "--format", "json"])
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run()?;
    let b = run()?;
    if !a.status.success() {
        return Err(format!("exit status {}", a.status));
    }
    if a.stdout != b.stdout {
        return Err("reports differ between runs".into());
    }
    Ok(())
}

fn main() -> ExitCode {
    let config = Config::default();
    let mut failures = 0;
    for (k, c) in CRITERIA.iter().enumerate() {
        let patterns: Vec<String> = c.patterns.iter().map(|s| s.to_string()).collect();
        let start = Instant::now();
        let verdict = run_verification(&patterns, &config, RunOptions { timings: false, threads: 1 })
            .map_err(|e| e.to_string())
            .and_then(|r| judge(c, &r).map(|()| r.checks.len()));
        let took = start.elapsed();
        let (ok, detail) = match verdict {
            Ok(n) if took <= c.bound => (true, format!("{n} checks")),
            Ok(_) => (false, "over time bound".to_string()),
            Err(e) => (false, e),
        };
        failures += usize::from(!ok);
        line(k + 1, c.name, ok, took, c.bound, &detail);
    }
    let start = Instant::now();
    let verdict = determinism();
    let took = start.elapsed();
    let bound = secs(300);
    let ok = verdict.is_ok() && took <= bound;
    failures += usize::from(!ok);
    line(13, "determinism of verify all --seed 7", ok, took, bound, verdict.err().as_deref().unwrap_or("two runs, identical"));
    println!("{} of 13 criteria pass", 13 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
