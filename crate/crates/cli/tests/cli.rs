use std::process::{Command, Output};

use probbern_cli::output::{parse_csv_cell, parse_json_value};
use probbern_core::exactnum::RingValue;
use probbern_core::stirling::{build_table, StirlingFamily};
use serde_json::{json, Value};

fn probbern(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_probbern"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn entry(table: &Value, n: u64, k: u64) -> &Value {
    let rows = table["rows"].as_array().unwrap();
    let row = rows.iter().find(|r| r["n"] == n && r["k"] == k).expect("entry present");
    &row["value"]
}

#[test]
fn exponential_diagonal_entry() {
    let t = json_of(&probbern(&[
        "stirling",
        "--kind",
        "2",
        "--variant",
        "prob",
        "--rv",
        "exponential:alpha=3/2",
        "--nmax",
        "4",
    ]));
    assert_eq!(entry(&t, 4, 4), "16/81");
}

#[test]
fn classical_first_kind_entry() {
    let t = json_of(&probbern(&[
        "stirling",
        "--kind",
        "1",
        "--variant",
        "classical",
        "--nmax",
        "3",
    ]));
    assert_eq!(entry(&t, 3, 1), "2");
}

#[test]
fn degenerate_entry_is_one_minus_lambda() {
    let t = json_of(&probbern(&[
        "stirling",
        "--kind",
        "2",
        "--variant",
        "degenerate",
        "--lambda",
        "symbolic",
        "--nmax",
        "2",
    ]));
    assert_eq!(entry(&t, 2, 1), &json!(["1", "-1"]));
}

#[test]
fn expansion_examples() {
    let e = json_of(&probbern(&[
        "expand",
        "--poly",
        "0,0,1",
        "--basis",
        "B",
        "--rv",
        "constant1",
    ]));
    assert_eq!(e["coeffs"], json!(["1/3", "1", "1"]));
    let e = json_of(&probbern(&[
        "expand",
        "--poly",
        "0,0,0,1",
        "--basis",
        "B",
        "--rv",
        "exponential:alpha=3/2",
    ]));
    assert_eq!(e["coeffs"][0], "2/3");
    let e = json_of(&probbern(&[
        "expand",
        "--poly",
        "5",
        "--basis",
        "B",
        "--rv",
        "poisson:alpha=3/2",
    ]));
    assert_eq!(e["coeffs"], json!(["15/2"]));
}

#[test]
fn degenerate_and_higher_order_expansions() {
    let e = json_of(&probbern(&[
        "expand",
        "--poly",
        "1,-2,3",
        "--basis",
        "beta",
        "--rv",
        "geometric:p=1/3",
        "--form",
        "2",
    ]));
    assert_eq!(e["method"], "thm33_form2");
    assert_eq!(e["basis"]["lambda"], "symbolic");
    let e = json_of(&probbern(&[
        "expand", "--poly", "1,-2,3", "--basis", "B", "--order", "3",
    ]));
    assert_eq!(e["method"], "thm41");
    assert_eq!(e["basis"]["order"], 3);
}

#[test]
fn verify_exit_codes() {
    assert_eq!(
        probbern(&["verify", "--suite", "lemma51", "--nmax", "12"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(probbern(&["verify", "--suite", "no-such"]).status.code(), Some(2));
    assert_eq!(
        probbern(&["verify", "--suite", "lemma51", "--format", "csv"])
            .status
            .code(),
        Some(2)
    );
    // the geometric gap is not monotone for n ≥ 4, which only --strict treats as fatal
    let lax = probbern(&["verify", "--suite", "section5-crosschecks", "--nmax", "4"]);
    assert_eq!(lax.status.code(), Some(0));
    let strict = probbern(&["verify", "--suite", "section5-crosschecks", "--nmax", "4", "--strict"]);
    assert_eq!(strict.status.code(), Some(1));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let cases: &[&[&str]] = &[
        &["stirling", "--kind", "3", "--variant", "classical", "--nmax", "3"],
        &["stirling", "--kind", "2", "--variant", "prob", "--nmax", "3"],
        &[
            "stirling",
            "--kind",
            "2",
            "--variant",
            "classical",
            "--rv",
            "constant1",
            "--nmax",
            "3",
        ],
        &[
            "stirling",
            "--kind",
            "2",
            "--variant",
            "prob",
            "--rv",
            "poisson:beta=2",
            "--nmax",
            "3",
        ],
        &[
            "stirling",
            "--kind",
            "2",
            "--variant",
            "prob",
            "--rv",
            "bernoulli:p=3/2",
            "--nmax",
            "3",
        ],
        &[
            "stirling",
            "--kind",
            "2",
            "--variant",
            "degenerate",
            "--lambda",
            "1/0",
            "--nmax",
            "3",
        ],
        &["expand", "--poly", "", "--basis", "B"],
        &["expand", "--poly", "1,x", "--basis", "B"],
        &["expand", "--poly", "1", "--basis", "B", "--lambda", "symbolic"],
        &["expand", "--poly", "1", "--basis", "B", "--order", "2", "--form", "1"],
        &["bernoulli", "--family", "frobenius-euler", "--u", "1", "--nmax", "3"],
        &["bernoulli", "--family", "bern-num", "--rv", "constant1", "--nmax", "3"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = probbern(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn serialized_tables_round_trip() {
    let lam = RingValue::lambda();
    let table = build_table(
        StirlingFamily::S1ProbDeg,
        Some(&"binomial:m=4,p=2/5".parse().unwrap()),
        Some(&lam),
        5,
    )
    .unwrap();
    let args = [
        "stirling",
        "--kind",
        "1",
        "--variant",
        "prob-degenerate",
        "--rv",
        "binomial:m=4,p=2/5",
        "--lambda",
        "symbolic",
        "--nmax",
        "5",
    ];
    let t = json_of(&probbern(&args));
    for row in t["rows"].as_array().unwrap() {
        let (n, k) = (row["n"].as_u64().unwrap() as usize, row["k"].as_u64().unwrap() as usize);
        assert_eq!(parse_json_value(&row["value"]), Some(table.get(n, k)));
    }
    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let out = probbern(&csv_args);
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let mut count = 0;
    for rec in reader.records() {
        let rec = rec.unwrap();
        let (n, k): (usize, usize) = (rec[0].parse().unwrap(), rec[1].parse().unwrap());
        assert_eq!(parse_csv_cell(&rec[2]), Some(table.get(n, k)));
        count += 1;
    }
    assert_eq!(count, 21);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let args = [
        "bernoulli",
        "--family",
        "prob-bern",
        "--rv",
        "gamma:alpha=5/2,beta=3",
        "--order",
        "2",
        "--nmax",
        "4",
    ];
    let stdout = probbern(&args).stdout;
    let mut with_out = args.to_vec();
    let p = path.to_str().unwrap();
    with_out.extend(["--out", p]);
    let out = probbern(&with_out);
    assert!(out.status.success() && out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), stdout);
}

#[test]
fn in_process_run_matches_the_binary() {
    let args = [
        "probbern",
        "stirling",
        "--kind",
        "2",
        "--variant",
        "classical",
        "--nmax",
        "5",
        "--format",
        "csv",
    ];
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(probbern_cli::run(args, &mut out, &mut err), 0);
    assert_eq!(out, probbern(&args[1..]).stdout);
    assert!(String::from_utf8(out).unwrap().starts_with("n,k,value\n0,0,1\n"));
}
