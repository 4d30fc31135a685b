use std::path::Path;

use pseudo_einstein_cli::report::REPORT_DIR_ENV;
use pseudo_einstein_cli::{run, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["pseudo-einstein".to_string()];
    argv.extend(args.iter().map(|s| s.to_string()));
    let mut out = Vec::new();
    let code = run(&argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

fn json_lines(text: &str) -> Vec<Value> {
    text.lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn quaternionic_scan() {
    let (code, out) = call(&["einstein", "--fibration", "piH", "--m", "1", "--s", "0", "--scan"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("t ∈ {1/5, 1}"), "{out}");
    let (_, out) = call(&["--json", "einstein", "--fibration", "piH", "--m", "1", "--s", "0", "--scan"]);
    let v = &json_lines(&out)[0];
    assert_eq!(v["scan"], serde_json::json!(["1/5", "1"]));
    assert_eq!(v["t_zero"], "1/5");
    assert_eq!(v["lambda_base"], "-12");
}

#[test]
fn residual_at_given_t() {
    let (code, out) = call(&["--json", "einstein", "--fibration", "piCB", "--m", "1", "--t", "1/2", "--t", "2"]);
    assert_eq!(code, EXIT_PASS);
    let recs = json_lines(&out);
    let einstein: Vec<bool> = recs.iter().filter_map(|r| r.get("einstein")).map(|e| e.as_bool().unwrap()).collect();
    assert_eq!(einstein, vec![true, false]);
}

#[test]
fn enumerate_counts() {
    let (code, out) = call(&["--json", "enumerate", "--space", "H:15:7"]);
    assert_eq!(code, EXIT_PASS);
    let v = &json_lines(&out)[0];
    assert_eq!(v["count"], 5);
    assert_eq!(v["theorem_count"], 5);
    assert_eq!(v["metrics"].as_array().unwrap().len(), 5);
}

#[test]
fn verify_action_rows() {
    let (code, out) = call(&["verify-action", "--table", "1", "--row", "7"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("PASS"), "{out}");
    let (code, out) = call(&["--json", "verify-action", "--table", "2"]);
    assert_eq!(code, EXIT_PASS);
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 7);
    assert!(recs.iter().all(|r| r["pass"] == true));
    let (code, out) = call(&["--json", "verify-action", "--controls"]);
    assert_eq!(code, EXIT_PASS, "{out}");
}

#[test]
fn dual_rows_and_groups() {
    let (code, out) = call(&["dual", "--row", "1"]);
    assert_eq!(code, EXIT_PASS);
    assert!(out.contains("S^2"), "{out}");
    let (code, out) = call(&["--json", "dual", "--group", "so(4,1)"]);
    assert_eq!(code, EXIT_PASS);
    let v = &json_lines(&out)[0];
    assert_eq!(v["compact"], true);
    assert_eq!(v["rank"], 2);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["enumerate", "--space", "Q:1:1"][..],
        &["bogus"],
        &["einstein", "--fibration", "piX"],
        &["einstein", "--fibration", "piO1", "--m", "1"],
        &["einstein", "--fibration", "piH", "--m", "1", "--s", "2"],
        &["verify-action", "--table", "1", "--row", "99"],
        &["dual", "--row", "25"],
        &["einstein", "--fibration", "piH", "--m", "1", "--s", "0", "--t", "x"],
    ] {
        assert_eq!(call(args).0, EXIT_USAGE, "{args:?}");
    }
    assert_ne!(EXIT_FAIL, EXIT_USAGE);
}

#[test]
fn json_output_is_deterministic() {
    let args = ["--json", "verify-action", "--table", "1"];
    let (_, a) = call(&args);
    let (_, b) = call(&args);
    assert_eq!(a, b);
    assert_eq!(json_lines(&a).len(), 20);
}

#[test]
fn catalog_lists_ten_fibrations() {
    let (code, out) = call(&["tables", "--catalog"]);
    assert_eq!(code, EXIT_PASS);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 10);
}

fn check_report_dir(dir: &Path, csv: bool) {
    for name in ["transitivity.json", "duality.json", "fibrations.json"] {
        let text = std::fs::read_to_string(dir.join(name)).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert!(!v.as_array().unwrap().is_empty(), "{name}");
    }
    assert_eq!(dir.join("tables.csv").exists(), csv);
}

#[test]
fn report_files() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("a");
    let (code, _) = call(&["report", "--out", out.to_str().unwrap(), "--csv"]);
    assert_eq!(code, EXIT_PASS);
    check_report_dir(&out, true);
    let csv = std::fs::read_to_string(out.join("tables.csv")).unwrap();
    let mut reader = csv::Reader::from_reader(csv.as_bytes());
    assert_eq!(reader.headers().unwrap().get(0), Some("table"));
    assert_eq!(reader.records().count(), 27);
    let first = std::fs::read(out.join("duality.json")).unwrap();

    // Only this test touches the variable.
    let env_dir = tmp.path().join("b");
    std::env::set_var(REPORT_DIR_ENV, &env_dir);
    let (code, _) = call(&["report"]);
    std::env::remove_var(REPORT_DIR_ENV);
    assert_eq!(code, EXIT_PASS);
    check_report_dir(&env_dir, false);
    assert_eq!(std::fs::read(env_dir.join("duality.json")).unwrap(), first);
}
