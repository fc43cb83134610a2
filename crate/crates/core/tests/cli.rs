use std::process::{Command, Output};

use serde_json::Value;

fn taftyd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taftyd")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("bad JSON ({e}): {}", stdout(o)))
}

#[test]
fn classify_a2_point_is_finite() {
    let o = taftyd(&["--output", "json", "classify", "--n", "3", "--t", "1", "--i", "2", "--j", "2", "--lambda", "0"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["finite"], Value::Bool(true));
    let tags = v["tags"].to_string();
    assert!(tags.contains('2') && tags.contains('1'), "{tags}");
}

#[test]
fn classify_infinite_reasons() {
    let o = taftyd(&["--output", "json", "classify", "--n", "5", "--t", "0", "--i", "1", "--j", "1", "--lambda", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["reason"], "T_ZERO");

    let o = taftyd(&["--output", "json", "classify", "--n", "4", "--t", "1", "--i", "0", "--j", "0", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["reason"], "LAMBDA_NONZERO");
}

#[test]
fn classify_probe_attaches_graded_dims() {
    let o = taftyd(&["--output", "json", "classify", "--n", "3", "--t", "1", "--i", "2", "--j", "2", "--probe"]);
    assert_eq!(o.status.code(), Some(0));
    let probe = json(&o)["probe"].clone();
    let dims: Vec<String> = probe.as_array().unwrap().iter().map(|p| p[1].as_str().unwrap().to_string()).collect();
    assert_eq!(&dims[..6], ["1", "2", "3", "2", "1", "0"].map(String::from));
}

#[test]
fn usage_errors_exit_two() {
    let o = taftyd(&["classify", "--n", "3", "--t", "1", "--i", "2", "--j", "2", "--lambda", "two"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("error"));
    assert_eq!(taftyd(&["classify", "--n", "3"]).status.code(), Some(2));
    assert_eq!(taftyd(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(taftyd(&["classify", "--n", "3", "--t", "3", "--i", "0", "--j", "0"]).status.code(), Some(2));
    assert_eq!(taftyd(&["--budget", "0", "verify", "--n", "3", "--t", "1"]).status.code(), Some(2));
    assert_eq!(taftyd(&["verify", "--n", "3", "--t", "1", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(taftyd(&["--help"]).status.code(), Some(0));
}

#[test]
fn finite_module_dump() {
    let o = taftyd(&["module", "--n", "3", "--t", "1", "--i", "1", "--j", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("dim 3"), "{}", stdout(&o));

    let o = taftyd(&["--output", "json", "module", "--n", "3", "--t", "1", "--i", "1", "--j", "1"]);
    let v = json(&o);
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["module"]["dim"].to_string().trim_matches('"'), "3");
}

#[test]
fn infinite_window_dump() {
    let o = taftyd(&["--output", "json", "module", "--n", "4", "--t", "2", "--kind", "infinite", "--i", "1", "--j", "0", "--k", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v = json(&o);
    assert_eq!(v["passed"], Value::Bool(true));
    assert_eq!(v["module"]["dim"].to_string().trim_matches('"'), "9");
    assert_eq!(v["module"]["truncated"], Value::Bool(true));

    let o = taftyd(&["module", "--n", "4", "--t", "2", "--kind", "infinite", "--i", "2", "--j", "0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not in J"), "{}", stderr(&o));
}

fn sweep(dir: &std::path::Path, name: &str, args: &[&str]) -> Value {
    let path = dir.join(name);
    let mut full = vec!["sweep"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path.to_str().unwrap()]);
    let o = taftyd(&full);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn sweep_counts_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = sweep(dir.path(), "a.json", &["--n", "3", "--t", "1"]);
    assert_eq!(a["iso_classes"].as_array().unwrap().len(), 9);
    assert_eq!(a["entries"].as_array().unwrap().len(), 9);
    let b = sweep(dir.path(), "b.json", &["--n", "3", "--t", "1"]);
    assert_eq!(
        std::fs::read(dir.path().join("a.json")).unwrap(),
        std::fs::read(dir.path().join("b.json")).unwrap()
    );
    assert_eq!(a, b);
    let c = sweep(dir.path(), "c.json", &["--n", "2", "--t", "1"]);
    assert_eq!(c["iso_classes"].as_array().unwrap().len(), 4);
}

#[test]
fn sweep_lambda_strata_are_disjoint() {
    let dir = tempfile::tempdir().unwrap();
    let r = sweep(dir.path(), "s.json", &["--n", "5", "--t", "2", "--lambdas", "0,1"]);
    let entries = r["entries"].as_array().unwrap();
    for class in r["iso_classes"].as_array().unwrap() {
        let lambdas: std::collections::BTreeSet<String> = class["members"]
            .as_array()
            .unwrap()
            .iter()
            .map(|m| entries[m.as_str().unwrap().parse::<usize>().unwrap()]["lambda"].to_string())
            .collect();
        assert_eq!(lambdas.len(), 1, "{class}");
    }
    assert!(entries.iter().any(|e| e["lambda"] == "0"));
    assert!(entries.iter().any(|e| e["lambda"] == "1"));
}

#[test]
fn sweep_includes_infinite_windows() {
    let dir = tempfile::tempdir().unwrap();
    // gcd(2,4) = 2, so 𝒥 = {1, 3} mod 4
    let r = sweep(dir.path(), "w.json", &["--n", "4", "--t", "2", "--include-infinite"]);
    let windows: Vec<&Value> = r["entries"].as_array().unwrap().iter().filter(|e| e["kind"] == "infinite").collect();
    assert_eq!(windows.len(), 8);
    assert!(windows.iter().all(|e| ["1", "3"].contains(&e["i"].as_str().unwrap())));
    // gcd(2,5) = 1 leaves 𝒥 empty
    let r = sweep(dir.path(), "e.json", &["--n", "5", "--t", "2", "--include-infinite"]);
    assert!(r["entries"].as_array().unwrap().iter().all(|e| e["kind"] == "finite"));
}

#[test]
fn verify_suites_pass() {
    for (n, t, suite) in [("6", "2", "coeffs"), ("4", "1", "braiding"), ("3", "1", "all"), ("3", "0", "all")] {
        let o = taftyd(&["verify", "--n", n, "--t", t, "--suite", suite]);
        assert_eq!(o.status.code(), Some(0), "H({n},{t}) {suite}: {}", stdout(&o));
        assert!(stdout(&o).trim_end().ends_with("PASS"));
    }
}

#[test]
fn injected_faults_fail_with_witness() {
    for suite in ["hopf", "coeffs", "modules", "braiding", "nichols", "all"] {
        let o = taftyd(&["verify", "--n", "4", "--t", "1", "--suite", suite, "--inject-fault"]);
        assert_eq!(o.status.code(), Some(1), "{suite}: {}", stdout(&o));
        let out = stdout(&o);
        assert!(out.trim_end().ends_with("FAIL"), "{out}");
        assert!(out.lines().count() >= 2, "{out}");
    }
}

#[test]
fn nichols_graded_dims() {
    let o = taftyd(&["nichols", "--n", "3", "--t", "1", "--i", "2", "--j", "2", "--max-degree", "6"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("0:1 1:2 2:3 3:2 4:1 5:0 6:0"), "{}", stdout(&o));
}
