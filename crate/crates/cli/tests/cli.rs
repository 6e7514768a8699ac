use std::process::{Command, Output};

use serde_json::Value;

fn valkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_valkit"))
        .args(args)
        .output()
        .expect("valkit runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).expect("json output")
}

fn num(v: &Value) -> f64 {
    v.as_f64().expect("number")
}

#[test]
fn golden_value() {
    let o = valkit(&["val", "--word", "[1,1]"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let re = num(&v["results"][0]["re_val"]);
    assert!((re - 706.3248135408).abs() < 1e-8, "{re}");
}

#[test]
fn surd_expands_to_its_period() {
    let o = valkit(&["val", "--surd", "(1+1*sqrt(3))/2", "--method", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["word"], serde_json::json!([1, 2]));
    let gap = num(&v["formula_oracle_gap"]);
    assert!(gap < 1e-8, "{gap}");
    assert!((num(&v["results"][0]["re_val"]) - 709.792359008).abs() < 1e-8);
}

#[test]
fn constant_function() {
    let o = valkit(&["val", "--word", "[3,1,4,1]", "--f", "one"]);
    let v = json(&o);
    assert!((num(&v["results"][0]["re_val"]) - 1.0).abs() < 1e-12);
}

#[test]
fn user_function_file() {
    let dir = std::env::temp_dir().join(format!("valkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let good = dir.join("two.json");
    std::fs::write(&good, r#"{"name": "two", "pole_order": 0, "coefficients": [2]}"#).unwrap();
    let o = valkit(&["val", "--word", "[1,2]", "--f", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!((num(&json(&o)["results"][0]["re_val"]) - 2.0).abs() < 1e-12);

    // -1 is negative on the arc
    let bad = dir.join("neg.json");
    std::fs::write(&bad, r#"{"name": "neg", "pole_order": 0, "coefficients": [-1]}"#).unwrap();
    assert_eq!(valkit(&["val", "--word", "[1,2]", "--f", bad.to_str().unwrap()]).status.code(), Some(2));

    let broken = dir.join("broken.json");
    std::fs::write(&broken, "{").unwrap();
    assert_eq!(valkit(&["val", "--word", "[1,2]", "--f", broken.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn tree_values_lie_between_the_boundary_words() {
    let o = valkit(&["tree", "--depth", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["nodes"], 15);
    assert_eq!(v["within_bounds"], true);
    let (lo, hi) = (num(&v["bounds"]["lower"]), num(&v["bounds"]["upper"]));
    assert!((lo - 706.3248135408).abs() < 1e-8 && (hi - 709.8928909199).abs() < 1e-8);
    fn walk(n: &Value, lo: f64, hi: f64, count: &mut usize) {
        let x = num(&n["re_val"]);
        assert!(x > lo && x < hi, "{x}");
        *count += 1;
        for c in n["children"].as_array().unwrap() {
            walk(c, lo, hi, count);
        }
    }
    let mut count = 0;
    walk(&v["tree"], lo, hi, &mut count);
    assert_eq!(count, 15);
}

#[test]
fn figure_two_is_symmetric() {
    let o = valkit(&["plot", "--figure", "2", "--points", "41"]);
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(r.headers().unwrap(), vec!["t", "weight", "symmetrized"]);
    let rows: Vec<Vec<f64>> = r
        .records()
        .map(|rec| rec.unwrap().iter().map(|c| c.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 41);
    for (a, b) in rows.iter().zip(rows.iter().rev()) {
        assert!((a[2] - b[2]).abs() < 1e-12);
    }
}

#[test]
fn every_figure_renders() {
    for n in 1..=11 {
        let o = valkit(&["plot", "--figure", &n.to_string(), "--points", "5"]);
        assert_eq!(o.status.code(), Some(0), "figure {n}");
        assert!(stdout(&o).lines().count() > 1);
    }
    assert_eq!(valkit(&["plot", "--kernels", "--points", "3"]).status.code(), Some(0));
    assert_eq!(valkit(&["plot", "--figure", "12"]).status.code(), Some(1));
}

#[test]
fn certify_all_passes() {
    let path = std::env::temp_dir().join(format!("valkit-cert-{}.json", std::process::id()));
    let o = valkit(&["certify", "--suite", "all", "--grid", "256", "--format", "csv", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let verdicts: Vec<String> = r.records().map(|rec| rec.unwrap()[1].to_string()).collect();
    assert!(!verdicts.is_empty());
    assert!(verdicts.iter().all(|v| v != "fail"));
    let full: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(full.as_array().unwrap().len(), verdicts.len());
}

#[test]
fn usage_errors() {
    for args in [
        &["val"][..],
        &["val", "--word", "[1,0]"],
        &["val", "--surd", "(1+1*sqrt(4))/2"],
        &["val", "--word", "[1,1]", "--precision", "quad"],
        &["certify", "--suite", "nope"],
        &["frobnicate"],
    ] {
        assert_eq!(valkit(args).status.code(), Some(1), "{args:?}");
    }
    assert_eq!(valkit(&["--help"]).status.code(), Some(0));
    let o = Command::new(env!("CARGO_BIN_EXE_valkit"))
        .args(["val", "--word", "[1,1]"])
        .env("VALKIT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn resource_limits_are_compute_failures() {
    assert_eq!(valkit(&["tree", "--depth", "40"]).status.code(), Some(2));
}

#[test]
fn csv_and_json_agree() {
    let args = ["val", "--word", "[2,2,1,1]", "--method", "both"];
    let j = json(&valkit(&args));
    let c = valkit(&[&args[..], &["--format", "csv"]].concat());
    let mut r = csv::Reader::from_reader(c.stdout.as_slice());
    let recs: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(recs.len(), 2);
    for (rec, res) in recs.iter().zip(j["results"].as_array().unwrap()) {
        let re: f64 = rec[3].parse().unwrap();
        assert_eq!(re, num(&res["re_val"]));
        let log_eps: f64 = rec[5].parse().unwrap();
        assert_eq!(log_eps, num(&res["log_epsilon"]));
        // 15 significant digits
        assert_eq!(rec[3].chars().filter(|c| c.is_ascii_digit()).count(), 15);
    }
}

#[test]
fn coefficients_are_exact_integers() {
    let o = valkit(&["coeffs", "--n", "24"]);
    let text = stdout(&o);
    // c_24 exceeds 2^64 and must appear verbatim
    let v = json(&o);
    let last = v["coefficients"].as_array().unwrap().last().unwrap();
    assert_eq!(last["n"], 24);
    let digits = last["c"].to_string();
    assert!(text.contains(&digits));
    assert!(!digits.contains(['e', '.']), "{digits}");
    assert_eq!(v["coefficients"][2]["c"].to_string(), "196884");
}

#[test]
fn threads_variable_is_accepted() {
    let o = Command::new(env!("CARGO_BIN_EXE_valkit"))
        .args(["tree", "--depth", "1", "--format", "csv"])
        .env("VALKIT_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
