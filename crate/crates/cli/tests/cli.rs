//! End-to-end checks of the binary: exit-code contract and JSON output.

use std::process::{Command, Output};

use triop_cli::{EnumerateReport, IdentityReport, MomentReport, VerifyReport};

fn triop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_triop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn moment_of_a_power_word_cross_checks_three_methods() {
    let out = triop(&["moment", "--k", "1", "--n", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("phi = 2/3"), "{text}");
    assert!(
        text.contains("direct, recursive, integration -> agree"),
        "{text}"
    );
}

#[test]
fn moment_of_a_plain_word() {
    let out = triop(&["moment", "--word", "T T*"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("E = 1 - x"), "{text}");
    assert!(text.contains("phi = 1/2"), "{text}");

    let out = triop(&["moment", "--word", "T"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("E = 0"), "{text}");
    assert!(text.contains("phi = 0"), "{text}");
}

#[test]
fn malformed_word_is_a_usage_error() {
    let out = triop(&["moment", "--word", "T x T*"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn out_of_bound_power_is_a_usage_error_with_explanation() {
    let out = triop(&["moment", "--k", "5", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("--max-nk"), "{err}");

    let out = triop(&["moment", "--k", "5", "--n", "2", "--max-nk", "10"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unknown_flags_are_usage_errors() {
    let out = triop(&["moment", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_grid_passes_and_serializes() {
    let out = triop(&["verify", "--max-nk", "6", "--json", "--threads", "1"]);
    assert!(out.status.success());
    let report: VerifyReport = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert!(report.all_pass);
    assert_eq!(report.cases.len(), 14);
}

#[test]
fn identity_command_reports_equality() {
    let out = triop(&["identity", "--n", "4", "--k", "3", "--json"]);
    assert!(out.status.success());
    let report: IdentityReport = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report.lhs, "16777216");
    assert!(report.equal);
    assert_eq!(report.method, "displayed-sum");
}

#[test]
fn enumerate_lists_admissible_partitions() {
    let out = triop(&["enumerate", "--word", "T T T* T*"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("admissible: 1"), "{text}");
    assert!(text.contains("{(1,4),(2,3)}"), "{text}");
}

#[test]
fn json_output_round_trips_through_the_reports() {
    let out = triop(&["moment", "--word", "(T^1 T*^1)^2", "--json"]);
    let report: MomentReport = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(
        serde_json::from_str::<MomentReport>(&serde_json::to_string(&report).unwrap()).unwrap(),
        report
    );

    let out = triop(&["enumerate", "--word", "T T* T T*", "--json"]);
    let report: EnumerateReport = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report.admissible_count, 2);
}

#[test]
fn volume_composition_matches_the_formula() {
    let out = triop(&["volume", "--k", "2", "--n", "2"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("2/15"));
}

#[test]
fn a_statistical_miss_exits_with_code_one() {
    // Two samples under seed 0 both miss the polytope, so the estimate is 0
    // with zero standard error: a deterministic mismatch.
    let out = triop(&[
        "volume", "--k", "1", "--n", "2", "--method", "montecarlo", "--samples", "2", "--seed",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("MISMATCH"));
}

#[test]
fn an_empty_verify_grid_is_a_usage_error() {
    let out = triop(&["verify", "--max-nk", "4", "--k", "9"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn randmat_small_run_passes_its_envelope() {
    let out = triop(&[
        "randmat",
        "--word",
        "T T*",
        "--dim",
        "60",
        "--samples",
        "80",
        "--seed",
        "42",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = stdout(&out);
    assert!(text.contains("exact = 1/2"), "{text}");
}
