//! End-to-end tests of the binary: exit codes, scope filtering, dump
//! schemas, and byte-stable output.

use std::process::{Command, Output};

fn hecke(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn verify_passes_on_the_smallest_point() {
    let out = hecke(&["verify", "--r", "2", "--p", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["all_passed"], true);
    assert_eq!(report["schema"], 1);
}

#[test]
fn degenerate_q_is_rejected_with_a_witness() {
    let out = hecke(&["verify", "--r", "2", "--p", "2", "--n", "2", "--q", "1/1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("q-integer"), "stderr: {}", stderr(&out));
}

#[test]
fn vanishing_cross_factor_is_rejected_with_a_witness() {
    let out = hecke(&["verify", "--r", "2", "--p", "1", "--n", "2", "--Q", "3,6"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("Q_1"), "stderr: {}", stderr(&out));
}

#[test]
fn scope_filter_runs_exactly_two_checks() {
    let out = hecke(&["verify", "--r", "3", "--p", "3", "--n", "2", "--scope", "mainthm1,orth"]);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["checks"].as_array().unwrap().len(), 2);
}

#[test]
fn unknown_scope_name_is_a_usage_error() {
    let out = hecke(&["verify", "--r", "2", "--p", "2", "--n", "2", "--scope", "bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn injected_fault_yields_check_failure_exit_code() {
    let out = hecke(&[
        "verify", "--r", "2", "--p", "2", "--n", "2",
        "--inject-fault", "gamma-scale", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(1), "stderr: {}", stderr(&out));
    assert!(stdout(&out).contains("false"));
    assert!(stderr(&out).contains("check failed"));
}

#[test]
fn csv_report_has_a_line_per_check() {
    let out = hecke(&["verify", "--r", "2", "--p", "2", "--n", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let body = stdout(&out);
    assert!(body.starts_with("check,passed\n"));
    assert_eq!(body.lines().count(), 38); // header + 37 checks
}

#[test]
fn dims_dump_example() {
    let out = hecke(&["dump", "--what", "dims", "--r", "2", "--p", "2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["ambient_dim"], "48");
    assert_eq!(value["subalgebra_dim"], "24");
}

#[test]
fn gamma_dump_type_a() {
    let out = hecke(&["dump", "--what", "gamma", "--r", "1", "--p", "1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["shapes"].as_object().unwrap().len(), 2);
}

#[test]
fn twisted_center_dump_counts() {
    let out = hecke(&["dump", "--what", "twisted-center", "--r", "2", "--p", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let per_k = value["twisted_centers"].as_array().unwrap();
    assert_eq!(per_k[0]["count"], 5);
    assert_eq!(per_k[1]["count"], 1);
}

#[test]
fn unknown_dump_target_is_a_usage_error() {
    let out = hecke(&["dump", "--what", "everything", "--r", "2", "--p", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dumps_are_byte_identical_across_runs() {
    let args = ["dump", "--what", "basis", "--r", "2", "--p", "2", "--n", "2"];
    let first = hecke(&args);
    let second = hecke(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn params_check_passes_and_echoes() {
    let out = hecke(&["params", "--check", "--r", "4", "--p", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let body = stdout(&out);
    assert!(body.contains("r=4 p=2 d=2 n=2"));
    assert!(body.contains("semisimplicity check: pass"));
}

#[test]
fn desk_bound_rejection_reports_the_size() {
    let out = hecke(&["verify", "--r", "2", "--p", "2", "--n", "2", "--desk-bound", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("8"), "stderr: {}", stderr(&out));
}

#[test]
fn checks_listing_is_complete() {
    let out = hecke(&["checks"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 37);
}
