use std::fs;
use std::process::Command;

use lmcrt_cli::{run, ExperimentRecord};
use serde_json::{json, Value};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lmcrt").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn doc(args: &[&str]) -> Value {
    let (code, out, err) = call(args);
    assert_eq!(code, 0, "stdout: {out} stderr: {err}");
    serde_json::from_str(&out).unwrap()
}

const WORKED: [&str; 8] = ["--p", "11", "--q", "5", "--a0", "2", "--b0", "4"];

fn with(cmd: &'static str, extra: &[&'static str]) -> Vec<&'static str> {
    let mut v = vec![cmd];
    v.extend(WORKED);
    v.extend(extra);
    v
}

#[test]
fn reduce_worked_example() {
    let d = doc(&with("reduce", &[]));
    assert_eq!(
        d["master"],
        json!({"u": "1", "v": "12", "w": "28", "m": "55"})
    );
    assert_eq!(
        d["parts"],
        json!([
            {"u": "1", "v": "1", "w": "6", "m": "11"},
            {"u": "1", "v": "2", "w": "3", "m": "5"}
        ])
    );
    assert_eq!(d["q_a0"], "18");
    assert_eq!(d["q_b0"], "36");
}

#[test]
fn solve_worked_example() {
    assert_eq!(doc(&with("solve", &[])), json!({"n": "2"}));
}

#[test]
fn verify_worked_example() {
    let d = doc(&with("verify", &["--n", "2"]));
    for flag in [
        "lemma1_ok",
        "lemma2_corrected_ok",
        "eq19_corrected_ok",
        "recovered_n_ok",
    ] {
        assert_eq!(d[flag], true, "{flag}");
    }
    assert_eq!(d["lemma2_literal_ok"], false);
    assert_eq!(d["b1"], "28");
    assert_eq!(d["b1_literal"], "24");
    assert_eq!(d["beta"], "4");
    assert_eq!(d["k_b"], "4");
}

#[test]
fn q_defaults_from_p() {
    let (_, with_q, _) = call(&with("solve", &[]));
    let (_, without_q, _) = call(&["solve", "--p", "11", "--a0", "2", "--b0", "4"]);
    assert_eq!(with_q, without_q);
}

#[test]
fn other_subcommands() {
    assert_eq!(doc(&["gen", "--bits", "3", "--seed", "0"])["p"], "7");
    assert_eq!(doc(&["gen", "--bits", "5", "--seed", "0"])["p"], "23");
    let q = doc(&["quotient", "--p", "11", "--x", "4"]);
    assert_eq!(q["lerch"], "36");
    assert_eq!(q["digit"], "28");
    assert_eq!(q["digit_literal"], "24");
    // 2^7 = 128 = 7 + 1*121
    assert_eq!(
        doc(&["recover-p2", "--p", "11", "--a0", "2", "--X", "7"])["n"],
        "7"
    );
    let (code, text, _) = call(&with("explain", &[]));
    assert_eq!(code, 0);
    assert!(text.contains("master  1 beta + 12 n = 28 (mod 55)"));
    assert!(text.contains("index n = 2"));
}

#[test]
fn domain_errors_exit_one_with_document() {
    for args in [
        vec!["solve", "--p", "13", "--a0", "2", "--b0", "4"],
        vec!["solve", "--p", "11", "--q", "4", "--a0", "2", "--b0", "4"],
        vec!["verify", "--p", "11", "--a0", "2", "--b0", "4", "--n", "3"],
        vec!["quotient", "--p", "11", "--x", "5"],
        vec!["recover-p2", "--p", "11", "--a0", "3", "--X", "9"],
    ] {
        let (code, out, _) = call(&args);
        assert_eq!(code, 1, "{args:?}");
        let d: Value = serde_json::from_str(&out).unwrap();
        assert!(d["error"]["kind"].is_string(), "{out}");
        assert!(d["error"]["message"].is_string(), "{out}");
    }
    let (_, out, _) = call(&["quotient", "--p", "11", "--x", "5"]);
    let d: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(d["error"]["kind"], "not-a-unit");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["solve", "--p", "11"],
        vec!["solve", "--p", "-11", "--a0", "2", "--b0", "4"],
        vec!["frobnicate"],
        vec![],
    ] {
        let (code, out, err) = call(&args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty());
        assert!(!err.is_empty());
    }
    assert_eq!(call(&["--help"]).0, 0);
}

#[test]
fn experiment_is_deterministic_and_rechecks() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.jsonl");
    let b = dir.path().join("b.jsonl");
    let csv = dir.path().join("a.csv");
    let run_to = |path: &std::path::Path, extra: &[&str]| {
        let mut args = vec![
            "experiment",
            "--count",
            "60",
            "--qmin",
            "5",
            "--qmax",
            "200",
            "--seed",
            "9",
        ];
        args.extend(["--out", path.to_str().unwrap()]);
        args.extend(extra);
        doc(&args)
    };
    let summary = run_to(&a, &["--csv", csv.to_str().unwrap()]);
    run_to(&b, &[]);
    assert_eq!(summary["count"], 60);
    assert_eq!(summary["all_corrected_ok"], 60);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());

    let text = fs::read_to_string(&a).unwrap();
    let records: Vec<ExperimentRecord> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(records.len(), 60);
    for (i, r) in records.iter().enumerate() {
        assert_eq!(r.id, i as u64);
        assert!(r.all_corrected_ok());
        let inst = r.instance().unwrap();
        assert!(lmcrt::reduction::verify_instance(&inst)
            .unwrap()
            .all_corrected_ok());
    }
    let first: Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    for (key, value) in first.as_object().unwrap() {
        if key != "id" && !key.ends_with("_ok") {
            assert!(value.is_string(), "{key} should be a decimal string");
        }
    }

    let rows = fs::read_to_string(&csv).unwrap();
    assert_eq!(rows.lines().count(), 61);
    assert!(rows.starts_with("id,p,a0,b0,n,lemma1_ok"));

    assert_eq!(
        doc(&["recheck", "--in", a.to_str().unwrap()]),
        json!({"records": 60, "mismatches": 0})
    );

    let tampered = text.replacen("\"beta\":\"", "\"beta\":\"1", 1);
    fs::write(&b, tampered).unwrap();
    let (code, out, _) = call(&["recheck", "--in", b.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("inconsistent-inputs"));
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_lmcrt");
    let ok = Command::new(bin).args(with("solve", &[])).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&ok.stdout).trim(), r#"{"n":"2"}"#);
    let domain = Command::new(bin)
        .args(["solve", "--p", "13", "--a0", "2", "--b0", "4"])
        .output()
        .unwrap();
    assert_eq!(domain.status.code(), Some(1));
    let usage = Command::new(bin).args(["solve"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
