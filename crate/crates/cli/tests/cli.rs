use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn nhol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nhol")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn data_file() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/atlas_involutions.csv")
}

#[test]
fn group_info() {
    let out = nhol(&["group", "S5", "--info"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("S5: order 120"), "{text}");
    assert!(text.contains("almost simple: true"), "{text}");
}

#[test]
fn enumerate_writes_report_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("h1.json");
    let out = nhol(&["enumerate", "--set", "h1", "--group", "S3", "--json", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let report = v["report"].as_object().unwrap();
    let mut keys: Vec<&str> = report.keys().map(String::as_str).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["budget", "claims", "group", "timing_ms"]);
    for claim in report["claims"].as_array().unwrap() {
        assert_eq!(claim["pass"], Value::Bool(claim["expected"] == claim["computed"]));
    }
}

#[test]
fn verify_reports_json_with_schema_keys() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t2.json");
    let out = nhol(&["verify", "theorem2", "--group", "A5", "--json", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v.as_object().unwrap().len(), 4);
    assert_eq!(v["group"], "A5");
}

#[test]
fn count_fpf_methods() {
    let out = nhol(&["count-fpf", "--group", "S5", "--method", "both"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("S5 by Brute: 16"));
    let out = nhol(&["count-fpf", "--group", "C4", "--method", "brute"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("C4 by Brute: 2"));
}

#[test]
fn claim_violations_exit_with_1() {
    // S4 is not almost simple.
    assert_eq!(code(&nhol(&["verify", "theorem1", "--group", "S4"])), 1);
    assert_eq!(code(&nhol(&["count-fpf", "--group", "S4", "--method", "formula"])), 1);
}

#[test]
fn budget_exhaustion_exits_with_2() {
    let out = nhol(&["--budget", "100", "enumerate", "--set", "h2", "--group", "A5"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn usage_errors_exit_with_3() {
    assert_eq!(code(&nhol(&["frobnicate"])), 3);
    assert_eq!(code(&nhol(&["group", "Q8"])), 3);
    assert_eq!(code(&nhol(&["group", "PSL(2,4)"])), 3);
    assert_eq!(code(&nhol(&["enumerate", "--set", "h3", "--group", "S3"])), 3);
    assert_eq!(code(&nhol(&["table", "--data", "/nonexistent/file.csv"])), 3);
}

#[test]
fn help_exits_cleanly() {
    assert_eq!(code(&nhol(&["--help"])), 0);
}

#[test]
fn table_reproduces_all_rows() {
    let out = nhol(&["table", "--data", data_file().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("12/12 rows match"));
}

#[test]
fn table_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let dup = dir.path().join("dup.csv");
    std::fs::write(&dup, "group,element_order,count\nM12,2,891\nM12,2,891\n").unwrap();
    let out = nhol(&["table", "--data", dup.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "group,element_order,count\nM12,2,eight\n").unwrap();
    assert_eq!(code(&nhol(&["table", "--data", bad.to_str().unwrap()])), 3);

    // Missing rows are reported, not invented.
    let partial = dir.path().join("partial.csv");
    std::fs::write(&partial, "group,element_order,count\nM12,2,891\n").unwrap();
    let out = nhol(&["table", "--data", partial.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("1/12 rows match"));

    let wrong = dir.path().join("wrong.csv");
    std::fs::write(&wrong, "group,element_order,count\nM12,2,890\n").unwrap();
    assert_eq!(code(&nhol(&["table", "--data", wrong.to_str().unwrap()])), 1);
}
