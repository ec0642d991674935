use std::process::{Command, Output};

use serde_json::Value;

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kzb-period"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let o = bin(args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn curve_data_lists_p4() {
    let v = json(&["curve-data", "--max-k", "4"]);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["P"][3]["k"], 4);
    assert_eq!(v["P"][3]["value"], "x^2 - 6");
    assert_eq!(v["e"][4], "1/1");
    assert_eq!(v["e"][8], "3/7");
    assert!(v["conventions"].is_object());
}

#[test]
fn depth_two_period_map_has_no_b_and_no_mismatch() {
    let v = json(&["period-map", "--basepoint", "4,4", "--depth", "2", "--order", "8"]);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 2);
    for r in results {
        assert_eq!(r["B"], "0/1");
    }
    assert_eq!(v["diff"]["mismatches"], serde_json::json!([]));
}

#[test]
fn negative_basepoint_is_accepted() {
    let v = json(&["flat-section", "--basepoint", "4,-4", "--depth", "3", "--order", "6"]);
    assert!(!v["Gstar"].as_array().unwrap().is_empty());
}

#[test]
fn repeated_processes_are_byte_identical() {
    let args = ["period-map", "--tangential", "--depth", "3", "--order", "10"];
    let a = bin(&args);
    let b = bin(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_the_file() {
    let dir = std::env::temp_dir().join(format!("kzb-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("curve.json");
    let o = bin(&["curve-data", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "curve-data");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_reports_lines_and_summary() {
    let o = bin(&["verify", "--suite", "residue"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    let summary = lines.last().unwrap();
    assert_eq!(summary["failed"], 0);
    assert!(lines[..lines.len() - 1]
        .iter()
        .all(|l| l["pass"] == true && l["suite"] == "residue"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(bin(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(bin(&["period-map", "--depth", "3"]).status.code(), Some(2));
    assert_eq!(bin(&["period-map", "--basepoint", "1,1"]).status.code(), Some(2));
    assert_eq!(bin(&["curve-data", "--e4", "0", "--e6", "0"]).status.code(), Some(2));
    assert_eq!(
        bin(&["flat-section", "--tangential", "--depth", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(bin(&["no-such-command"]).status.code(), Some(2));
}
