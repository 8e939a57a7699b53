use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn spectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectra"))
        .args(args)
        .output()
        .expect("spawn spectra")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Data lines of a CSV table: everything after the header and column rows.
fn data_rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(2).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn field(row: &[String], idx: usize) -> f64 {
    row[idx].parse().unwrap()
}

#[test]
fn alpha_table_as_csv() {
    let out = spectra(&["ALPHA", "--digits", "30"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "# table=ALPHA n= p=0 digits=30");
    assert_eq!(lines.next().unwrap(), "j,alpha,offset_from_half_odd_pi,residual");
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 3);
    for (row, expected) in rows.iter().zip([4.73004, 7.85320, 10.99561]) {
        assert!((field(row, 1) - expected).abs() < 1e-5);
        // scientific notation with the requested significant digits
        assert!(row[1].contains('e'));
        assert_eq!(row[1].split('e').next().unwrap().replace(['.', '-'], "").len(), 30);
    }
}

#[test]
fn e4_row_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e4.csv");
    let out = spectra(&["e4", "--n", "64", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("# table=E4 n=64 p=4 digits=50\n"));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][1], "9");
    assert!((field(&rows[0], 4) - 306.72).abs() < 0.5);
}

#[test]
fn delta_rows_as_json() {
    let out = spectra(&["DELTA", "--n", "32,64", "--format", "json", "--digits", "40"]);
    assert!(out.status.success());
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["meta"]["table_id"], "DELTA");
    assert_eq!(doc["meta"]["p"], 3);
    assert_eq!(doc["meta"]["precision_digits"], 40);
    assert_eq!(doc["meta"]["n_list"], serde_json::json!([32, 64]));
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[0]["n"], 32);
    assert_eq!(rows[1]["n"], 64);
    let scaled: f64 = rows[1]["scaled_error"].as_str().unwrap().parse().unwrap();
    assert!((scaled - 143.97).abs() < 0.5);
    assert_eq!(doc["failures"], serde_json::json!([]));
}

#[test]
fn omega_rows_follow_the_index_filter() {
    let out = spectra(&["OMEGA", "--n", "64", "--p", "1", "--j", "5..=60", "--digits", "30"]);
    assert!(out.status.success());
    let rows = data_rows(&stdout(&out));
    assert_eq!(rows.len(), 56);
    let js: Vec<usize> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert_eq!(js, (5..=60).collect::<Vec<_>>());
}

#[test]
fn counterexample_report_rows() {
    let out = spectra(&["COUNTEREXAMPLE", "--digits", "30"]);
    assert!(out.status.success());
    let rows = data_rows(&stdout(&out));
    let gap = rows.iter().find(|r| r[0] == "gap").unwrap();
    let gap = field(gap, 2);
    assert!(gap > 7.0 && gap < 8.0);
    let sizes: Vec<&str> = rows.iter().filter(|r| r[0] == "scaled_first").map(|r| r[1].as_str()).collect();
    assert_eq!(sizes, ["256", "1024", "4096"]);
}

#[test]
fn tridiagonal_conjecture_probe_is_exact() {
    let out = spectra(&["CONJECTURE", "--m", "1", "--n", "16,40", "--digits", "40"]);
    assert!(out.status.success());
    for row in data_rows(&stdout(&out)) {
        let n: usize = row[0].parse().unwrap();
        let lambda = 2.0 - 2.0 * (std::f64::consts::PI / (n + 1) as f64).cos();
        let expected = lambda * ((n + 2) as f64).powi(2);
        assert!((field(&row, 4) / expected - 1.0).abs() < 1e-12, "n={n}");
    }
}

#[test]
fn oversize_oracle_request_fails_with_code_two() {
    let out = spectra(&["CONJECTURE", "--m", "3", "--n", "5000", "--digits", "30"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row failed"));
    // the header is still written
    assert!(stdout(&out).starts_with("# table=CONJECTURE n=5000"));
}

#[test]
fn invalid_arguments_fail_with_code_two() {
    assert_eq!(spectra(&["E4", "--digits", "10"]).status.code(), Some(2));
    assert_eq!(spectra(&["E4", "--n", "16384", "--digits", "50"]).status.code(), Some(2));
    assert!(!spectra(&["NOPE"]).status.success());
}

#[test]
fn sequential_flag_gives_identical_output() {
    let parallel = spectra(&["EPS", "--n", "64", "--digits", "30"]);
    let sequential = spectra(&["EPS", "--n", "64", "--digits", "30", "--sequential"]);
    assert!(parallel.status.success() && sequential.status.success());
    assert_eq!(parallel.stdout, sequential.stdout);
}
