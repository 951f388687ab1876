use std::process::Command;

use serde_json::Value;

fn kloosha(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_kloosha")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn sha_reports_four() {
    let (code, out) = kloosha(&["sha", "--p", "3", "--f", "1", "--gamma", "2", "--a", "1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["results"][0]["report"]["sha_order"], "4");
    assert_eq!(v["results"][0]["report"]["central_value"], "4/3");
}

#[test]
fn verify_passes_at_full_degree() {
    let (code, out) = kloosha(&["verify", "--p", "3", "--f", "1", "--gamma", "1", "--a", "1", "--n-max", "4"]);
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    let checks = v["results"][0]["checks"].as_array().unwrap();
    assert!(checks.iter().any(|c| c["id"] == "oracle-full-reconstruction" && c["passed"] == true));
    assert_eq!(v["results"][0]["report"]["oracle"], serde_json::json!(["0", "30", "0", "126"]));
}

#[test]
fn output_is_deterministic_across_worker_counts() {
    let base = ["sweep", "--p", "3", "--a", "1..3", "--gamma", "all", "--format", "csv"];
    let (c1, a) = kloosha(&[&base[..], &["--workers", "1"]].concat());
    let (c2, b) = kloosha(&[&base[..], &["--workers", "3"]].concat());
    let (_, c) = kloosha(&base);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert_eq!(a.lines().count(), 1 + 6);
}

#[test]
fn corrupted_coefficient_fails_with_a_named_check() {
    let (code, out) = kloosha(&["lpoly", "--p", "3", "--gamma", "1", "--inject-fault", "corrupt-coefficient"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    let names: Vec<&str> = v["failures"].as_array().unwrap().iter().map(|f| f["check"].as_str().unwrap()).collect();
    assert!(names.contains(&"functional-equation"), "{names:?}");
    let (code, _) = kloosha(&["verify", "--p", "3", "--gamma", "1", "--n-max", "4", "--inject-fault", "corrupt-coefficient"]);
    assert_eq!(code, 1);
}

#[test]
fn configuration_errors_exit_with_two() {
    assert_eq!(kloosha(&["sha", "--p", "9"]).0, 2);
    assert_eq!(kloosha(&["sha", "--p", "3", "--gamma", "0"]).0, 2);
    assert_eq!(kloosha(&["sha", "--p", "3", "--a", "0"]).0, 2);
    assert_eq!(kloosha(&["sha", "--p", "3", "--f", "2", "--modulus", "2,0,1"]).0, 2);
    assert_eq!(kloosha(&["sha", "--p", "3", "--f", "2", "--modulus", "1,0,1"]).0, 0);
    assert_eq!(kloosha(&["verify", "--p", "3", "--budget", "10"]).0, 2);
}

#[test]
fn angles_csv_has_one_row_per_place() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("angles.csv");
    let (code, _) = kloosha(&["angles", "--p", "3", "--gamma", "1", "--a", "2", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), ["q", "gamma", "a", "place", "deg", "theta"]);
    assert_eq!(rdr.records().count(), 5);
}

#[test]
fn gammas_as_coefficient_vectors() {
    let (code, out) = kloosha(&["invariants", "--p", "3", "--f", "2", "--gamma", "0:1,2", "--a", "1"]);
    assert_eq!(code, 0, "{out}");
    let v: Value = serde_json::from_str(&out).unwrap();
    let gammas: Vec<&str> = v["results"].as_array().unwrap().iter().map(|r| r["gamma"].as_str().unwrap()).collect();
    assert_eq!(gammas, ["0:1", "2:0"]);
}
