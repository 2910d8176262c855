// SPDX-License-Identifier: Apache-2.0

use std::process::{Command, Output};

use exactq_cli::report::{ConstantsReport, GammaReport, PolyReport, VerifyReport};
use exactq_core::algorithms::base_table::reference_table;

fn exactq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exactq"))
        .args(args)
        .env_remove("EXACTQ_TOL")
        .output()
        .expect("binary runs")
}

fn json<T: serde::de::DeserializeOwned>(out: &Output) -> T {
    serde_json::from_slice(&out.stdout).expect("valid JSON report")
}

#[test]
fn verify_unbalance_two() {
    let out = exactq(&["verify", "--family", "unb", "--d", "2", "--n", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let r: VerifyReport = json(&out);
    assert!(r.exact);
    assert_eq!((r.worst_case_queries, r.claimed_bound), (4, 4));
    assert_eq!(r.tool_version, env!("CARGO_PKG_VERSION"));
    assert!(r.inputs.is_none());
}

#[test]
fn verify_exact_kl() {
    let out = exactq(&["verify", "--family", "exactkl", "--n", "5", "--k", "1", "--l", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let r: VerifyReport = json(&out);
    assert!(r.exact && r.worst_case_queries <= 3);
}

#[test]
fn invalid_parameters_exit_two() {
    for args in [
        &["verify", "--family", "unb", "--d", "0", "--n", "4"][..],
        &["verify", "--family", "unb", "--n", "4"],
        &["verify", "--family", "sym", "--a", "10000", "--g", "0"],
        &["verify", "--family", "nope", "--n", "4"],
        &["constants", "--n", "3", "--d", "3"],
        &["gamma", "--d", "4"],
        &["poly", "--family", "equality", "--n", "15"],
    ] {
        let out = exactq(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn pruning_everything_fails_verification() {
    let out = exactq(&["verify", "--family", "unb", "--d", "1", "--n", "5", "--branch-tol", "0.99"]);
    assert_eq!(out.status.code(), Some(1));
    let r: VerifyReport = json(&out);
    assert!(!r.exact);
    assert!(!r.counterexamples.is_empty());
}

#[test]
fn gamma_tables() {
    let r: GammaReport = json(&exactq(&["gamma", "--d", "1", "--n-max", "9"]));
    let row = r.rows.iter().find(|e| e.n == 5).unwrap();
    assert!((row.gamma - 0.007936507936507936).abs() < 1e-15);
    let r: GammaReport = json(&exactq(&["gamma", "--d", "3", "--k0", "1", "--n-max", "23"]));
    let last = r.rows.last().unwrap();
    assert_eq!(last.n, 23);
    assert!((last.gamma - 0.030).abs() < 1e-3 && last.within_inverse_n);
    let r: GammaReport = json(&exactq(&["gamma", "--d", "2", "--n-max", "4"]));
    assert!((r.rows.last().unwrap().gamma - 1.0 / 9.0).abs() < 1e-15);
}

#[test]
fn diverging_chain_exits_one() {
    let out = exactq(&["gamma", "--d", "3", "--k0", "0"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn gamma_csv_is_parseable() {
    let out = exactq(&["gamma", "--d", "2", "--n-max", "12", "--format", "csv"]);
    let mut rdr = csv::Reader::from_reader(&out.stdout[..]);
    assert_eq!(rdr.headers().unwrap(), vec!["n", "gamma", "within_inverse_n"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(&rows[5][0], "12");
}

#[test]
fn poly_dumps() {
    let r: PolyReport = json(&exactq(&["poly", "--family", "xor"]));
    assert_eq!(r.acceptance_degree, 2);
    assert_eq!(r.acceptance.len(), 2);
    assert_eq!(r.acceptance[1].monomial, "x1x2");
    let r: PolyReport = json(&exactq(&["poly", "--family", "constant", "--n", "3", "--k", "1"]));
    assert_eq!(r.acceptance.len(), 1);
    assert_eq!(r.acceptance[0].monomial, "1");
    let out = exactq(&["poly", "--family", "unb", "--n", "3", "--d", "1", "--verbose"]);
    assert_eq!(out.status.code(), Some(0));
    let r: PolyReport = json(&out);
    let q: Vec<i64> = r.q_values.iter().map(|v| v.round() as i64).collect();
    assert_eq!(q, [0, 1, 1, 0]);
    assert_eq!(r.audit_violations, 0);
    assert_eq!(r.leaves.unwrap().len(), r.audit_leaves);
}

#[test]
fn step_constants() {
    let out = exactq(&["constants", "--n", "3", "--d", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let r: ConstantsReport = json(&out);
    assert!((r.constants[0].value + 0.125).abs() < 1e-15);
    assert!(r.max_residual < 1e-12);
}

#[test]
fn table_constants() {
    let out = exactq(&["constants", "--appendix-a"]);
    assert_eq!(out.status.code(), Some(0));
    let r: ConstantsReport = json(&out);
    assert_eq!(r.constants.len(), 18);
    for (c, p) in r.constants.iter().zip(reference_table()) {
        assert_eq!(c.value.abs(), p.abs(), "{}", c.name);
    }
    assert_eq!(r.sign_adjusted, ["c12", "c18"]);
    assert!(r.max_residual < 1e-12);
}

#[test]
fn tolerance_precedence() {
    let bin = env!("CARGO_BIN_EXE_exactq");
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut cmd = Command::new(bin);
        cmd.args(["constants", "--n", "5", "--d", "1"]).args(extra).env_remove("EXACTQ_TOL");
        if let Some(v) = env {
            cmd.env("EXACTQ_TOL", v);
        }
        cmd.output().unwrap().status.code()
    };
    assert_eq!(run(None, &[]), Some(0));
    assert_eq!(run(Some("1e-30"), &[]), Some(1));
    assert_eq!(run(Some("1e-30"), &["--tol", "1e-9"]), Some(0));
}

#[test]
fn json_round_trips() {
    let out = exactq(&["verify", "--family", "sym", "--a", "0011000", "--g", "1", "--verbose"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let r: VerifyReport = serde_json::from_str(&text).unwrap();
    assert_eq!(r.inputs.as_ref().unwrap().len(), 64);
    let again = serde_json::to_string_pretty(&r).unwrap() + "\n";
    assert_eq!(again, text);
    assert_eq!(serde_json::from_str::<VerifyReport>(&again).unwrap(), r);
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let base = ["verify", "--family", "general", "--n", "8", "--k", "2"];
    let one = exactq(&[&base[..], &["--parallel", "1"]].concat());
    let four = exactq(&[&base[..], &["--parallel", "4"]].concat());
    let again = exactq(&[&base[..], &["--parallel", "4"]].concat());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(four.stdout, again.stdout);
}

#[test]
fn writes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = exactq(&["verify", "--family", "equality", "--n", "4", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    let rec = rdr.records().next().unwrap().unwrap();
    assert_eq!(&rec[0], "equality");
    assert_eq!(&rec[2], "true");
}

#[test]
fn text_format_mentions_verdict() {
    let out = exactq(&["verify", "--family", "xor", "--format", "text"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("xor (n=2): exact"));
}
