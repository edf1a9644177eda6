use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hankel")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn ex1(a: f64, q: f64) -> f64 {
    a / (a * a + q * q).powf(1.5)
}

#[test]
fn transform_matches_closed_form() {
    let out = run(&["transform", "--order", "0", "--func", "exp", "--a", "1", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let value = v["value"].as_f64().unwrap();
    assert!((value - ex1(1.0, 2.0)).abs() < 1e-12 * ex1(1.0, 2.0));
    assert_eq!(v["mode_used"], "Convergent");
    assert!(v.get("terms").is_none());
}

#[test]
fn transform_trace_lists_terms() {
    let out = run(&["transform", "--order", "2", "--func", "exp", "--a", "1", "--q", "3", "--trace"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let terms = v["terms"].as_array().unwrap();
    // leading term 2f(0)/q²
    assert!((terms[0].as_f64().unwrap() - 2.0 / 9.0).abs() < 1e-15);
    assert_eq!(terms.len(), v["terms_used"].as_u64().unwrap() as usize);
}

#[test]
fn exit_codes() {
    let outside = run(&["transform", "--order", "0", "--func", "exp", "--a", "1", "--q", "0.5", "--mode", "convergent"]);
    assert_eq!(outside.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&outside.stderr).contains("OutsideConvergenceDomain"));

    let parity = run(&["transform", "--order", "1", "--func", "bessel-product", "--a", "1", "--b", "1", "--q", "5"]);
    assert_eq!(parity.status.code(), Some(2));

    let budget = run(&["transform", "--order", "0", "--func", "exp", "--a", "1", "--q", "1.01", "--mode", "convergent", "--max-terms", "5"]);
    assert_eq!(budget.status.code(), Some(3));

    assert_eq!(run(&["transform", "--order", "0", "--func", "nope", "--a", "1", "--q", "2"]).status.code(), Some(1));
    assert_eq!(run(&["transform", "--order", "0", "--func", "exp", "--q", "2"]).status.code(), Some(1));
    assert_eq!(run(&["transform", "--order", "x"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn compare_ex1_and_ex4() {
    let out = run(&["compare", "--case", "Ex1", "--q", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["status"], "pass");
    assert!(v["rel_diff_series_oracle"].as_f64().unwrap() <= 1e-8);
    assert!(v["rel_diff_series_closed"].as_f64().unwrap() <= 1e-8);

    let v = json(&run(&["compare", "--case", "ex4", "--q", "20"]));
    assert_eq!(v["status"], "pass");
    assert_eq!(v["series_mode"], "AsymptoticTruncated");
}

#[test]
fn compare_ex3_at_f4_boundary_uses_elliptic_form() {
    let v = json(&run(&["compare", "--case", "Ex3", "--q", "3"]));
    let closed = v["closed_form_value"].as_f64().unwrap();
    let oracle = v["oracle_value"].as_f64().unwrap();
    assert!((closed - oracle).abs() < 1e-8 * closed.abs());
}

#[test]
fn compare_explicit_seed_has_no_closed_form() {
    let out = run(&["compare", "--order", "1", "--func", "exp", "--a", "2", "--q", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["closed_form_value"].is_null());
    assert_eq!(v["status"], "pass");
    assert_eq!(v["seed"], "exp");
}

#[test]
fn compare_cap_reports_accuracy_failure() {
    let out = run(&["compare", "--order", "0", "--func", "pole", "--a", "1", "--q", "20", "--max-panels", "2"]);
    assert_eq!(out.status.code(), Some(3));
    let v = json(&out);
    assert_eq!(v["status"], "fail");
    assert!(v["diagnostics"].as_array().unwrap().iter().any(|d| d.as_str().unwrap().contains("AccuracyNotReached")));
}

#[test]
fn csv_table_for_ex6() {
    let out = run(&["table", "--case", "Ex6", "--q-min", "2", "--q-max", "10", "--steps", "5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q,value,mode,error_estimate"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 5);
    let mut prev = f64::INFINITY;
    for r in rows {
        let (q, v): (f64, f64) = (r[0].parse().unwrap(), r[1].parse().unwrap());
        let exact = q / (1.0 + q * q).powf(1.5);
        assert!((v - exact).abs() < 1e-12 * exact);
        assert!(v < prev);
        prev = v;
        assert_eq!(r[2], "Convergent");
    }
}

#[test]
fn two_steps_gives_endpoints() {
    let out = run(&["table", "--order", "0", "--func", "exp", "--a", "1", "--q-min", "1.5", "--q-max", "7", "--steps", "2", "--log"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let qs: Vec<&str> = text.lines().skip(1).map(|l| l.split(',').next().unwrap()).collect();
    assert_eq!(qs, ["1.5", "7.0"]);
    assert_eq!(run(&["table", "--case", "Ex1", "--q-min", "2", "--q-max", "3", "--steps", "1"]).status.code(), Some(1));
}

#[test]
fn jsonl_rows_parse_and_flag_rejected_q() {
    let out = run(&[
        "table", "--order", "0", "--func", "exp", "--a", "1", "--q-min", "0.5", "--q-max", "4", "--steps", "8",
        "--format", "jsonl", "--mode", "convergent",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rows: Vec<Value> = String::from_utf8(out.stdout)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(rows.len(), 8);
    assert_eq!(rows[0]["error"], "OutsideConvergenceDomain");
    assert!(rows[0]["value"].is_null());
    assert!(rows[7]["value"].as_f64().is_some());
    let qs: Vec<f64> = rows.iter().map(|r| r["q"].as_f64().unwrap()).collect();
    assert!(qs.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn verify_corpus_selected_cases() {
    let out = run(&["verify-corpus", "--cases", "Ex4,Ex5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["all_pass"], true);
    let ids: Vec<&str> = v["cases"].as_array().unwrap().iter().map(|c| c["case"].as_str().unwrap()).collect();
    assert_eq!(ids, ["Ex4", "Ex5"]);
}

#[test]
fn verify_corpus_full_and_tight_tolerance() {
    let out = run(&["verify-corpus"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["cases"].as_array().unwrap().len(), 9);

    let out = run(&["verify-corpus", "--cases", "Ex4", "--target-err", "1e-16"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["cases"][0]["status"], "fail");

    assert_eq!(run(&["verify-corpus", "--cases", "Ex99"]).status.code(), Some(1));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = ["verify-corpus", "--cases", "Ex1,Ex3,Ex7"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["table", "--case", "Ex2", "--q-min", "3", "--q-max", "30", "--steps", "16", "--log", "--format", "jsonl"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
