//! End-to-end tests of the charfield binary: suite runs, report formats,
//! determinism, and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn charfield(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charfield"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charfield"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn field_command_prints_value_conductor_field() {
    let out = charfield(&["field", "--expr", "z(8)+z(8)^7"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("conductor: 8"), "{text}");
    assert!(text.contains("Q(sqrt 2)"), "{text}");
}

#[test]
fn field_command_reports_parse_errors() {
    let out = charfield(&["field", "--expr", "z(8) + )"]);
    assert!(!out.status.success());
    let text = String::from_utf8(out.stderr).unwrap();
    assert!(text.contains("parse error"), "{text}");
}

#[test]
fn alt_command_scans_cleanly() {
    let out = charfield(&["alt", "--max-n", "16"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0 violations"), "{text}");
}

#[test]
fn gl_command_runs_all_checks() {
    let out = charfield(&["gl", "--n", "2", "--q", "3", "--epsilon", "+1", "--check", "all"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("8 classes"), "{text}");
    let out = charfield(&["gl", "--n", "2", "--q", "2", "--epsilon", "-1", "--check", "sum-squares"]);
    assert!(out.status.success());
}

#[test]
fn verify_suite_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = corpus_dir();
    let corpus = corpus.to_str().unwrap();
    let out1 = dir.path().join("r1.json");
    let out2 = dir.path().join("r2.json");
    for out in [&out1, &out2] {
        let o = charfield(&[
            "verify",
            "--suite",
            "divisor-bound",
            "--corpus",
            corpus,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let b1 = std::fs::read(&out1).unwrap();
    let b2 = std::fs::read(&out2).unwrap();
    assert_eq!(b1, b2, "identical config and corpus give byte-identical reports");
}

#[test]
fn verify_emits_csv_with_fixed_header() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = corpus_dir();
    let out = dir.path().join("report.csv");
    let o = charfield(&[
        "verify",
        "--suite",
        "pgroup",
        "--corpus",
        corpus.to_str().unwrap(),
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "group,charIndex,prime,a,conductor,index,degree,check,verdict"
    );
    assert!(lines.clone().count() > 50);
    assert!(lines.all(|l| l.ends_with(",pass") || l.ends_with(",fail")));
}

#[test]
fn verify_exit_code_ignores_expected_failures() {
    // divisor-bound includes the A5/A7/A8 cram failures, all expected
    let o = charfield(&[
        "verify",
        "--suite",
        "divisor-bound",
        "--corpus",
        corpus_dir().to_str().unwrap(),
    ]);
    assert!(o.status.success(), "expected failures must not trip the exit code");
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("6 expected failures"), "{text}");
}

#[test]
fn verify_all_suite_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("all.json");
    let o = charfield(&[
        "verify",
        "--suite",
        "all",
        "--corpus",
        corpus_dir().to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    assert_eq!(report["unexpectedFailures"], 0);
    assert_eq!(report["glSummaries"].as_array().unwrap().len(), 12);
    assert_eq!(report["wreathReports"].as_array().unwrap().len(), 3);
    for (check, key) in [
        ("conjecture-b", "fail"),
        ("divisor-bound", "fail"),
        ("pgroup", "fail"),
        ("alternating", "fail"),
        ("sum-squares", "fail"),
        ("wreath", "fail"),
    ] {
        assert_eq!(report["summaries"][check][key], 0, "{check}");
    }
    assert_eq!(report["summaries"]["cram-degree"]["expectedFail"], 6);
}

#[test]
fn verify_rejects_unknown_suite() {
    let o = charfield(&[
        "verify",
        "--suite",
        "nonsense",
        "--corpus",
        corpus_dir().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));
}

#[test]
fn verify_fails_cleanly_on_missing_corpus() {
    let o = charfield(&["verify", "--suite", "pgroup", "--corpus", "/nonexistent"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("/nonexistent"), "{err}");
}

#[test]
fn construct_wreath_from_table_file() {
    let table = corpus_dir().join("tables/C5.json");
    let o = charfield(&[
        "construct",
        "wreath",
        "--table",
        table.to_str().unwrap(),
        "--char",
        "1",
        "--fix",
        "4",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 2);
    assert_eq!(v["degree"], 2);
    assert_eq!(v["verdicts"]["degreeOK"], true);
    assert_eq!(v["verdicts"]["normOK"], true);
    assert_eq!(v["verdicts"]["fieldOK"], true);
    assert_eq!(v["normNumerator"], "1");
    assert_eq!(v["normDenominator"], "1");
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let config_path = dir.path().join("config.json");
    let corpus = corpus_dir();
    std::fs::write(
        &config_path,
        serde_json::to_vec_pretty(&serde_json::json!({
            "corpusDir": corpus.to_str().unwrap(),
            "primes": [2, 3],
            "maxAltN": 10,
            "glSet": [],
            "enumerationBound": 1000000,
        }))
        .unwrap(),
    )
    .unwrap();
    let o = run_in(
        dir.path(),
        &["verify", "--suite", "alternating", "--config", config_path.to_str().unwrap()],
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("\"maxAltN\": 10"), "config echoed: {text}");
}

#[test]
fn corpus_check_lists_tables() {
    let o = charfield(&["corpus", "check", "--dir", corpus_dir().to_str().unwrap()]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("tables indexed"), "{text}");
    assert!(text.contains("A5: |G| = 60"), "{text}");
}

#[test]
fn generated_corpus_round_trips_through_generate_and_ingest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("corpus");
    let o = charfield(&["corpus", "generate", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let o = charfield(&["verify", "--suite", "wreath", "--corpus", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    // the freshly generated corpus matches the committed one file-for-file
    let committed = corpus_dir();
    for sub in ["tables", "fusions"] {
        let mut names: Vec<_> = std::fs::read_dir(committed.join(sub))
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        names.sort();
        for name in names {
            let a = std::fs::read(committed.join(sub).join(&name)).unwrap();
            let b = std::fs::read(out.join(sub).join(&name)).unwrap();
            assert_eq!(a, b, "{sub}/{name:?} differs from the committed corpus");
        }
    }
}
