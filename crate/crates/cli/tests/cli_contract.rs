use std::process::{Command, Output};

use azp_cli::checks::{kernel_matches, rng_for};
use azp_cli::parse::parse_polynomial;
use azp_cli::session::Session;
use azp_cli::{run_verification, Config, Report, RunOptions, Status};
use azp_core::groebner::Ideal;

fn azp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_azp")).args(args).output().expect("azp runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn verify_all_is_byte_identical_across_runs() {
    let a = azp(&["verify", "all", "--seed", "7", "--format", "json"]);
    let b = azp(&["verify", "all", "--seed", "7", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_code_tracks_failures_and_strictness() {
    // partial checks are allowed by default and rejected with --strict
    assert_eq!(azp(&["verify", "lemma-2.6.*"]).status.code(), Some(0));
    assert_eq!(azp(&["verify", "--strict", "lemma-2.6.*"]).status.code(), Some(1));
    assert_eq!(azp(&["verify", "--strict", "toric.*"]).status.code(), Some(0));
    let unknown = azp(&["verify", "no.such.check"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("no.such.check"));
}

#[test]
fn toric_checks_all_pass() {
    let r = run_verification(&["toric.*".into()], &Config::default(), RunOptions::default()).unwrap();
    assert_eq!(r.checks.len(), 3);
    assert!(r.checks.iter().all(|c| c.status == Status::Pass));
}

#[test]
fn irreducibility_is_reported_partial() {
    let r = run_verification(&["lemma-2.6.*".into()], &Config::default(), RunOptions::default()).unwrap();
    let irr = r.checks.iter().find(|c| c.id == "lemma-2.6.irreducibility").unwrap();
    assert_eq!(irr.status, Status::Partial);
    assert!(irr.evidence["note"].is_string());
    assert!(r.checks.iter().filter(|c| c.id != irr.id).all(|c| c.status == Status::Pass));
}

#[test]
fn unknown_ids_are_errors() {
    let e = run_verification(&["toric.nope".into()], &Config::default(), RunOptions::default());
    assert!(e.is_err());
}

#[test]
fn list_prints_selected_ids() {
    let o = azp(&["verify", "--list", "ncres.git.*"]);
    assert_eq!(stdout(&o), "ncres.git.minus\nncres.git.plus\n");
}

#[test]
fn json_report_round_trips_and_omits_timings() {
    let o = azp(&["verify", "groebner.*", "--format", "json"]);
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.config, Config::default());
    assert!(r.checks.iter().all(|c| c.millis.is_none()));
    let t = azp(&["verify", "groebner.*", "--format", "json", "--timings"]);
    let r: Report = serde_json::from_str(&stdout(&t)).unwrap();
    assert!(r.checks.iter().all(|c| c.millis.is_some()));
}

#[test]
fn report_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = azp(&["verify", "toric.*", "--format", "json", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let r: Report = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(r.checks.len(), 3);
}

#[test]
fn degree_cap_env_var_is_the_default() {
    let o = Command::new(env!("CARGO_BIN_EXE_azp"))
        .env("AZP_DEGREE_CAP", "11")
        .args(["verify", "toric.dual-cone", "--format", "json"])
        .output()
        .unwrap();
    let r: Report = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.config.degree_cap, 11);
}

#[test]
fn broken_relation_yields_counterexample() {
    let text = std::fs::read_to_string(fixture("broken_relation.json")).unwrap();
    let s = Session::from_json(&text).unwrap();
    let hom = &s.homs["toric"];
    let z = s.rings["Z"].ctx().clone();
    // z1*z2 - z3*z4 is the true kernel; z1*z3 - z2*z4 is not in it
    let wrong = Ideal::new(&z, vec![parse_polynomial("z1*z3 - z2*z4", &z).unwrap()]).unwrap();
    let mut rng = rng_for(&Config::default(), "fixture");
    let out = kernel_matches(hom, &wrong, &mut rng, 20).unwrap();
    assert_eq!(out.status, Status::Fail);
    let ce = &out.evidence["counterexample"];
    assert_eq!(ce["not_in_kernel"], "z1*z3 - z2*z4");
    assert_eq!(ce["not_expected"], "z1*z2 - z3*z4");
    assert!(ce["nonvanishing"]["target_point"].is_array());
}

#[test]
fn kernel_from_session_and_inline_agree() {
    let a = azp(&["kernel", "--session", &fixture("broken_relation.json"), "--hom", "toric"]);
    let b = azp(&[
        "kernel",
        "--source",
        "z1,z2,z3,z4",
        "--target",
        "x1,x2,x3,x4",
        "--image",
        "z1=x1*x2",
        "--image",
        "z2=x3*x4",
        "--image",
        "z3=x1*x3",
        "--image",
        "z4=x2*x4",
    ]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).contains("z1*z2 - z3*z4"));
}

#[test]
fn algebra_subcommands() {
    let d = azp(&["dim", "x*y - z*w"]);
    assert_eq!(stdout(&d).trim(), "3");
    let e = azp(&["eliminate", "--keep", "x,y", "x - t^2", "y - t^3"]);
    assert!(stdout(&e).contains("x^3 - y^2") || stdout(&e).contains("-x^3 + y^2"), "{}", stdout(&e));
    let dir = tempfile::tempdir().unwrap();
    let cone = dir.path().join("c.json");
    std::fs::write(&cone, r#"{"rank":2,"rays":[[1,0],[1,2]]}"#).unwrap();
    let o = azp(&["dualize", cone.to_str().unwrap(), "--hilbert", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["hilbert_basis"].as_array().unwrap().len(), 3);
}

#[test]
fn probe_resolve_and_nc_subcommands() {
    assert!(azp(&["probe", "fiber", "--c", "1,1,0,0"]).status.success());
    assert!(azp(&["probe", "section", "--t", "1,1,0,1"]).status.success());
    assert!(azp(&["resolve", "charts", "--case", "tilde"]).status.success());
    let g = azp(&["resolve", "glue", "--case", "plus", "--pair", "1,3", "--trials", "5", "--seed", "3"]);
    assert!(g.status.success(), "{}", stdout(&g));
    let c = azp(&["nc", "canonical", "--xi1", "[[0,1],[0,0]]", "--xi2", "[[0,0],[0,0]]", "--xi3", "[[1,0],[0,-1]]"]);
    assert!(c.status.success(), "{}", String::from_utf8_lossy(&c.stderr));
    assert!(azp(&["nc", "git", "--theta", "minus", "--trials", "5"]).status.success());
    let r = azp(&["nc", "reduce", "xi3*xi3*xi1"]);
    assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
}

#[test]
fn parse_errors_are_positioned() {
    let o = azp(&["dim", "--vars", "x,y", "x +\n  w"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("2:3") && err.contains("`w`"), "{err}");
}
