use std::fs;
use std::process::{Command, Output};

use serde_json::Value;
use umbral_core::poly::{Polynomial, SequenceTable};
use umbral_core::psi::{AdmissibleSequence, Family};
use umbral_core::scalar::int;
use umbral_core::sequences::{basic_sequence, sheffer_sequence};
use umbral_core::series::DeltaSeries;

fn umbral(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_umbral"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn classical_derivative_gives_monomials() {
    let o = umbral(&["sequence", "--operator", "D", "--degree", "4"]);
    assert!(o.status.success());
    let expected: String = (0..=4)
        .map(|n| format!("p_{n} = {}\n", Polynomial::monomial(n)))
        .collect();
    assert_eq!(stdout(&o), expected);
}

#[test]
fn sheffer_json_round_trips() {
    let o = umbral(&[
        "sequence", "--family", "q:2", "--s", "1,1", "--degree", "4", "--format", "json",
    ]);
    assert!(o.status.success());
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["N"], 4);
    assert_eq!(v["operator"], "psi_derivative");
    let family: Family = serde_json::from_value(v["family"].clone()).unwrap();
    assert_eq!(family, Family::q(int(2)));
    let entries: Vec<Polynomial> = serde_json::from_value(v["entries"].clone()).unwrap();
    let table = SequenceTable::new(entries).unwrap();

    let seq = AdmissibleSequence::new(family, 5).unwrap();
    let q = DeltaSeries::t(4).realize_psi(&seq, 4).unwrap();
    let basic = basic_sequence(&q, &seq).unwrap();
    let s = DeltaSeries::from_ints(&[1, 1], 4);
    assert_eq!(table, sheffer_sequence(&basic, &s).unwrap().table);
}

#[test]
fn output_is_stable_and_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let args = [
        "sequence",
        "--family",
        "fibonacci",
        "--degree",
        "5",
        "--format",
        "json",
    ];
    let first = umbral(&args);
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert!(umbral(&with_out).status.success());
    assert_eq!(fs::read(&path).unwrap(), first.stdout);
}

#[test]
fn degenerate_family_is_named() {
    let o = umbral(&["sequence", "--family", "q:1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("DegenerateFamily"));
}

#[test]
fn config_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(
        &path,
        "{\n  \"degree\": 4,\n  \"families\": [\"classical\",]\n}",
    )
    .unwrap();
    let o = umbral(&["sequence", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn config_file_selects_family_and_operator() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.json");
    fs::write(
        &path,
        r#"{"families": [{"family": "hyperbolic"}], "degree": 3, "operator": "hyperbolic_Q"}"#,
    )
    .unwrap();
    let o = umbral(&["detect", "--config", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("n_psi = 2, 12, 30\n"));
}

#[test]
fn verify_ghw_classical_passes() {
    let o = umbral(&["verify", "--suite", "ghw", "--family", "classical"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("ghw_relation"));
}

#[test]
fn verify_perturbed_sequence_fails_with_witness() {
    let o = umbral(&[
        "verify",
        "--suite",
        "binomial",
        "--family",
        "custom:1,3,2,5,-1,4,7,1/2,2,3",
        "--degree",
        "8",
        "--perturb",
        "3,2,1",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["invariants_hold"], false);
    let perturbed = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .find(|e| e["identity_id"] == "binomial_type_perturbed")
        .unwrap();
    assert_eq!(perturbed["status"], "fails");
    assert!(perturbed["witness"].as_str().is_some());
}

#[test]
fn findings_do_not_affect_exit_status() {
    let o = umbral(&[
        "verify",
        "--suite",
        "dual_pairs",
        "--family",
        "q:2",
        "--degree",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("FAILS [finding]"));
}

#[test]
fn detect_dxd_reports_squares() {
    let o = umbral(&["detect", "--operator", "DxD", "--degree", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("n_psi = 1, 4, 9, 16, 25\n"));
}

#[test]
fn detect_reports_violation() {
    // DxD with b_{3,2} changed from 0 to 1.
    let o = umbral(&[
        "detect",
        "--operator",
        "columns:0;1;4*x;9*x^2+x",
        "--degree",
        "3",
    ]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "not of psi-form: condition fails at (n, k) = (3, 2): b = 1, expected 0\n"
    );
}

#[test]
fn expand_identity() {
    let o = umbral(&["expand", "--target", "id", "--degree", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("q_0 = 1\n"));
}

#[test]
fn unknown_suite_is_rejected() {
    let o = umbral(&["verify", "--suite", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}
