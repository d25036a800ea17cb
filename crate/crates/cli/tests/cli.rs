//! End-to-end checks of the `skewring` binary: exit codes, documented
//! example outputs, and byte-determinism of JSON reports.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_skewring"))
}

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn theorem1_pass_on_z4() {
    let f = corpus("z4_trivial.ring");
    let out = run(&["verify", "theorem1", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("S (via Theorem 1) = {0, 2g1}"), "{text}");
    assert!(text.contains("verdict: PASS"), "{text}");
}

#[test]
fn skew_mul_xt_squared() {
    let f = corpus("tdual.ring");
    let out = run(&[
        "skew",
        "mul",
        f.to_str().unwrap(),
        "x^1*(g2)",
        "x^1*(g2)",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "x^1*(g2)"); // (xt)^2 = xt
}

#[test]
fn qinv_of_idempotent_is_not_found() {
    let f = corpus("tdual.ring");
    let out = run(&["skew", "qinv", f.to_str().unwrap(), "x^1*(g2)"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("no quasi-inverse up to degree 8"));
}

#[test]
fn corollary_reports_quasi_regular_witness_honestly() {
    // x*a for nilpotent a with D(a)a = 0 is quasi-regular even though
    // J(M_2(F_2)[x;D]) = 0, so the all-NotFound certificate fails by design.
    let f = corpus("m2f2_inner.ring");
    let out = run(&["verify", "corollary", f.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("S = {0} ok"), "{text}");
    assert!(text.contains("first quasi-regular witness"), "{text}");
}

#[test]
fn centre_check_passes_on_semiprime_rings() {
    for name in ["m2f2_inner.ring", "z2xm2f2.ring"] {
        let out = run(&["verify", "centre", corpus(name).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        assert!(stdout(&out).contains("0 violation(s)"));
    }
}

#[test]
fn identity_check_standard_and_literal() {
    let f = corpus("m2f2_inner.ring");
    let out = run(&["identity", "check", f.to_str().unwrap(), "--standard", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let out = run(&["identity", "check", f.to_str().unwrap(), "x1*x2 - x2*x1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("witness"));
}

#[test]
fn corpus_run_emits_in_input_order() {
    let files: Vec<PathBuf> = ["tdual.ring", "z4_trivial.ring", "t2f2_inner.ring"]
        .iter()
        .map(|n| corpus(n))
        .collect();
    let mut args = vec!["corpus".to_string(), "run".to_string()];
    args.extend(files.iter().map(|f| f.to_str().unwrap().to_string()));
    let out = run(&args.iter().map(|s| s.as_str()).collect::<Vec<_>>());
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let pos: Vec<usize> = ["tdual", "z4_trivial", "t2f2_inner"]
        .iter()
        .map(|n| text.find(n).unwrap())
        .collect();
    assert!(pos[0] < pos[1] && pos[1] < pos[2], "{text}");
    assert!(text.contains("corpus verdict: PASS"));
}

#[test]
fn json_reports_are_schema_tagged_and_deterministic() {
    let f = corpus("z4_trivial.ring");
    let args = ["--format", "json", "radical", f.to_str().unwrap()];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["schema"], "skewring-report/1");
    assert_eq!(v["caps"]["max_degree"], 8);
}

#[test]
fn input_errors_exit_2() {
    let out = run(&["radical", "/no/such/file.ring"]);
    assert_eq!(out.status.code(), Some(2));

    let dir = std::env::temp_dir().join("skewring-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.ring");
    std::fs::write(&bad, "ring.kind = nonsense\n").unwrap();
    let out = run(&["radical", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
}
