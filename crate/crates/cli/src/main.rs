use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use azp_cli::parse::{
    parse_bindings, parse_free, parse_polynomial, parse_polynomials_auto, parse_rational_list, parse_rational_matrix,
};
use azp_cli::session::{ConeJson, Session};
use azp_cli::{run_verification, Config, RunOptions};
use azp_core::groebner::{Ideal, RingHom, RingPresentation};
use azp_core::ncres::{self, canonical_form, check_representation, git_chart_check, tangent_dimension, FormTag, LambdaRep};
use azp_core::probe::{classify_fiber, verify_section};
use azp_core::resolution::{explicit_chart, verify_gluable, Case};
use azp_core::symcore::rational::fmt_rational;
use azp_core::symcore::{QMatrix, Rational, VariableContext};
use azp_core::toric::{dual_cone, hilbert_basis};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser, Debug)]
#[command(name = "azp", version, about = "Exact checks for Azumaya probes on the conifold")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Word-length cap for noncommutative rewriting.
    #[arg(long, global = true, env = "AZP_DEGREE_CAP", default_value_t = azp_core::freealg::DEFAULT_DEGREE_CAP)]
    degree_cap: usize,
    /// Random samples per sampled check.
    #[arg(long, global = true, default_value_t = 20)]
    trials: usize,
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Treat partial and cap-limited results as failures.
    #[arg(long, global = true)]
    strict: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run named checks; ids accept glob patterns, `all` runs everything.
    Verify {
        #[arg(default_value = "all")]
        patterns: Vec<String>,
        /// Write the report here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Record per-check wall time (reports are then not reproducible).
        #[arg(long)]
        timings: bool,
        /// List the selected check ids without running them.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 0)]
        threads: usize,
    },
    /// Kernel of a ring map, inline or from a session file.
    Kernel {
        /// Session JSON with a `homs` entry.
        #[arg(long, requires = "hom")]
        session: Option<PathBuf>,
        #[arg(long)]
        hom: Option<String>,
        /// Source variables, comma separated.
        #[arg(long, conflicts_with = "session")]
        source: Option<String>,
        /// Target variables, comma separated.
        #[arg(long, conflicts_with = "session")]
        target: Option<String>,
        /// `var=expression` images, one per source variable.
        #[arg(long = "image", conflicts_with = "session")]
        images: Vec<String>,
    },
    /// Eliminate variables: keep only the listed ones.
    Eliminate {
        #[arg(long, required = true)]
        keep: String,
        #[arg(required = true)]
        generators: Vec<String>,
    },
    /// Krull dimension of `V(generators)`.
    Dim {
        /// Ambient variables; defaults to those mentioned.
        #[arg(long)]
        vars: Option<String>,
        #[arg(required = true)]
        generators: Vec<String>,
    },
    /// Dual cone of a JSON cone `{"rank": n, "rays": [...]}`.
    Dualize {
        /// Path to the cone JSON, or `-` for stdin.
        cone: PathBuf,
        /// Also print the Hilbert basis of the dual.
        #[arg(long)]
        hilbert: bool,
    },
    #[command(subcommand)]
    Probe(ProbeCmd),
    #[command(subcommand)]
    Resolve(ResolveCmd),
    #[command(subcommand)]
    Nc(NcCmd),
}

#[derive(Subcommand, Debug)]
enum ProbeCmd {
    /// Classify the fiber of the descent map over `c = c1,c2,c3,c4`.
    Fiber {
        #[arg(long, allow_hyphen_values = true)]
        c: String,
    },
    /// Check that `s_t` is a section for `t = t11,t12,t21,t22`.
    Section {
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
}

#[derive(Subcommand, Debug)]
enum ResolveCmd {
    /// Chart presentations and structure maps.
    Charts {
        #[arg(long)]
        case: Case,
    },
    /// Gluability of two charts at random overlap points.
    Glue {
        #[arg(long)]
        case: Case,
        /// `i,j`
        #[arg(long)]
        pair: String,
    },
}

#[derive(Args, Debug)]
struct Rep {
    #[arg(long, allow_hyphen_values = true)]
    xi1: String,
    #[arg(long, allow_hyphen_values = true)]
    xi2: String,
    #[arg(long, allow_hyphen_values = true)]
    xi3: String,
}

impl Rep {
    fn parse(&self) -> Result<LambdaRep> {
        let m = |s: &str| parse_rational_matrix(s).with_context(|| format!("matrix `{s}`"));
        Ok(LambdaRep([m(&self.xi1)?, m(&self.xi2)?, m(&self.xi3)?]))
    }
}

#[derive(Subcommand, Debug)]
enum NcCmd {
    /// Form (1), (2) or (3) of a two-dimensional representation.
    Canonical(Rep),
    /// Tangent dimension of the representation scheme at a point.
    Tangent(Rep),
    /// Chart consistency of the stable quotients.
    Git {
        #[arg(long)]
        theta: ncres::Theta,
    },
    /// Normal form of an element of the conifold algebra.
    Reduce { expression: String },
}

fn emit(format: Format, text: String, value: serde_json::Value) {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
    }
}

fn rats(v: &[Rational]) -> Vec<String> {
    v.iter().map(fmt_rational).collect()
}

fn matrix_rows(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| rats(m.row(i))).collect()
}

fn vars(list: &str) -> Vec<String> {
    list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn run(cli: Cli) -> Result<bool> {
    let g = &cli.global;
    let config = Config {
        degree_cap: g.degree_cap,
        trials: g.trials,
        seed: g.seed,
    };
    match cli.command {
        Command::Verify {
            patterns,
            output,
            timings,
            list,
            threads,
        } => {
            if list {
                for c in azp_cli::select(azp_cli::registry(), &patterns)? {
                    println!("{}", c.id);
                }
                return Ok(true);
            }
            let report = run_verification(&patterns, &config, RunOptions { timings, threads })?;
            let out = match g.format {
                Format::Text => report.to_text(),
                Format::Json => report.to_json(),
            };
            match output {
                Some(path) => fs::write(&path, out).with_context(|| format!("writing {}", path.display()))?,
                None => print!("{out}"),
            }
            Ok(report.succeeded(g.strict))
        }
        Command::Kernel {
            session,
            hom,
            source,
            target,
            images,
        } => {
            let h = if let Some(path) = session {
                let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                let s = Session::from_json(&text)?;
                let name = hom.expect("clap requires --hom");
                s.homs.get(&name).cloned().with_context(|| format!("no hom `{name}` in session"))?
            } else {
                let (Some(src), Some(tgt)) = (source, target) else {
                    bail!("give --session and --hom, or --source, --target and --image");
                };
                let sctx = VariableContext::new(vars(&src))?;
                let tctx = VariableContext::new(vars(&tgt))?;
                let map = parse_bindings(&images, &tctx)?;
                RingHom::from_map(RingPresentation::free(&sctx), RingPresentation::free(&tctx), &map)?
            };
            let k = h.kernel()?;
            let gb = k.grevlex_basis();
            let gens: Vec<String> = gb.basis().iter().map(ToString::to_string).collect();
            emit(g.format, format!("{gb}\n"), json!({ "kernel": gens }));
            Ok(true)
        }
        Command::Eliminate { keep, generators } => {
            let texts: Vec<&str> = generators.iter().map(String::as_str).collect();
            let (ctx, ps) = parse_polynomials_auto(&texts)?;
            let keep = vars(&keep);
            let keep_refs: Vec<&str> = keep.iter().map(String::as_str).collect();
            let e = Ideal::new(&ctx, ps)?.eliminate_to(&keep_refs)?;
            let gb = e.grevlex_basis();
            let gens: Vec<String> = gb.basis().iter().map(ToString::to_string).collect();
            emit(g.format, format!("{gb}\n"), json!({ "ideal": gens }));
            Ok(true)
        }
        Command::Dim { vars: names, generators } => {
            let texts: Vec<&str> = generators.iter().map(String::as_str).collect();
            let (ctx, ps) = match names {
                Some(n) => {
                    let ctx = VariableContext::new(vars(&n))?;
                    let ps = texts.iter().map(|t| parse_polynomial(t, &ctx)).collect::<Result<Vec<_>, _>>()?;
                    (ctx, ps)
                }
                None => parse_polynomials_auto(&texts)?,
            };
            let d = Ideal::new(&ctx, ps)?.krull_dimension()?;
            emit(g.format, format!("{d}\n"), json!({ "dimension": d, "variables": ctx.names() }));
            Ok(true)
        }
        Command::Dualize { cone, hilbert } => {
            let text = if cone.as_os_str() == "-" {
                std::io::read_to_string(std::io::stdin())?
            } else {
                fs::read_to_string(&cone).with_context(|| format!("reading {}", cone.display()))?
            };
            let c: ConeJson = serde_json::from_str(&text).context("cone JSON")?;
            let dual = dual_cone(&c.to_cone()?);
            let dj = ConeJson::from_cone(&dual).context("dual ray does not fit in i64")?;
            let mut value = serde_json::to_value(&dj)?;
            let mut text = format!("{}\n", serde_json::to_string(&dj)?);
            if hilbert {
                let hb = hilbert_basis(&dual)?;
                let gens: Vec<Vec<i64>> = hb.generators.iter().filter_map(|v| v.to_i64()).collect();
                text.push_str(&format!("hilbert basis: {hb}\n"));
                value["hilbert_basis"] = json!(gens);
            }
            emit(g.format, text, value);
            Ok(true)
        }
        Command::Probe(ProbeCmd::Fiber { c }) => {
            let v = parse_rational_list(&c)?;
            let c: [Rational; 4] = v.try_into().map_err(|_| anyhow::anyhow!("--c needs four values"))?;
            let rep = classify_fiber(&c)?;
            let checks: Vec<_> = rep.checks.iter().map(|k| json!({ "name": k.name, "passed": k.passed })).collect();
            let mut text = format!("rank {}, dimension {}\n", rep.rank, rep.dim);
            for k in &rep.checks {
                text.push_str(&format!("{} {}\n", if k.passed { "✓" } else { "✗" }, k.name));
            }
            emit(
                g.format,
                text,
                json!({ "c": rats(&rep.c), "rank": rep.rank, "dim": rep.dim, "checks": checks }),
            );
            Ok(rep.passed())
        }
        Command::Probe(ProbeCmd::Section { t }) => {
            let v = parse_rational_list(&t)?;
            if v.len() != 4 {
                bail!("--t needs four values");
            }
            let t = QMatrix::two_by_two(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone());
            let ok = verify_section(&t)?;
            emit(g.format, format!("section identity: {ok}\n"), json!({ "t": matrix_rows(&t), "identity": ok }));
            Ok(ok)
        }
        Command::Resolve(ResolveCmd::Charts { case }) => {
            let mut text = String::new();
            let mut charts = Vec::new();
            for &i in case.generators() {
                let ch = explicit_chart(case, i)?;
                let imgs: Vec<String> = ch.structure_map().images().iter().map(ToString::to_string).collect();
                text.push_str(&format!("U{i}: {}  [z1..z4 -> {}]\n", ch.presentation().relations(), imgs.join(", ")));
                charts.push(json!({
                    "index": i,
                    "variables": ch.ctx().names(),
                    "relation": ch.relation().to_string(),
                    "structure_map": imgs,
                }));
            }
            emit(g.format, text, json!({ "case": case.name(), "charts": charts }));
            Ok(true)
        }
        Command::Resolve(ResolveCmd::Glue { case, pair }) => {
            let idx: Vec<usize> = pair.split(',').map(|s| s.trim().parse()).collect::<Result<_, _>>()?;
            let [i, j] = idx[..] else { bail!("--pair needs `i,j`") };
            let rep = verify_gluable(case, i, j, g.trials, g.seed)?;
            let certs: Vec<_> = rep
                .certificates
                .iter()
                .map(|c| {
                    json!({
                        "point_i": rats(&c.point_i),
                        "point_j": rats(&c.point_j),
                        "exceptional": c.exceptional,
                        "g": c.g.as_ref().map(matrix_rows),
                    })
                })
                .collect();
            let text = format!(
                "{case} {i}-{j}: {} of {} overlap points glued\n",
                rep.certificates.iter().filter(|c| c.g.is_some()).count(),
                rep.certificates.len()
            );
            emit(g.format, text, json!({ "case": case.name(), "pair": [i, j], "passed": rep.passed(), "certificates": certs }));
            Ok(rep.passed())
        }
        Command::Nc(NcCmd::Canonical(rep)) => {
            let rho = rep.parse()?;
            if !check_representation(&rho)? {
                bail!("not a representation: the relations do not vanish");
            }
            let cf = canonical_form(&rho)?;
            let (tag, params) = match &cf.tag {
                FormTag::Form1 => ("form1", None),
                FormTag::Form2 => ("form2", None),
                FormTag::Form3(p) => ("form3", Some(rats(&p.0))),
            };
            let mut text = format!("{tag}");
            if let Some(p) = &params {
                text.push_str(&format!(" (a1,b1,a2,b2) = ({})", p.join(", ")));
            }
            text.push_str(&format!("\ng = {}\n", cf.g));
            emit(g.format, text, json!({ "form": tag, "parameters": params, "g": matrix_rows(&cf.g) }));
            Ok(true)
        }
        Command::Nc(NcCmd::Tangent(rep)) => {
            let rho = rep.parse()?;
            if !check_representation(&rho)? {
                bail!("not a representation: the relations do not vanish");
            }
            let d = tangent_dimension(&rho)?;
            emit(g.format, format!("{d}\n"), json!({ "tangent_dimension": d }));
            Ok(true)
        }
        Command::Nc(NcCmd::Git { theta }) => {
            let rep = git_chart_check(theta, g.trials, g.seed)?;
            let samples: Vec<_> = rep
                .samples
                .iter()
                .map(|s| json!({ "point": rats(&s.point.0), "chart": s.chart, "chart_point": rats(&s.chart_point), "passed": s.passed() }))
                .collect();
            let text = format!(
                "theta {theta}: {} of {} samples consistent\n",
                rep.samples.iter().filter(|s| s.passed()).count(),
                rep.samples.len()
            );
            emit(g.format, text, json!({ "theta": theta.name(), "passed": rep.passed(), "samples": samples }));
            Ok(rep.passed())
        }
        Command::Nc(NcCmd::Reduce { expression }) => {
            let p = ncres::lambda_c(g.degree_cap)?;
            let f = parse_free(&expression, p.ctx())?;
            let nf = p.normal_form(&f)?;
            let mut text = format!("{}\n", nf.value);
            if nf.cap_limited {
                text.push_str("(cap-limited)\n");
            }
            emit(g.format, text, json!({ "normal_form": nf.value.to_string(), "cap_limited": nf.cap_limited }));
            Ok(!nf.cap_limited || !g.strict)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
