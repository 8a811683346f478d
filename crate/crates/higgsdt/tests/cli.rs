use std::process::{Command, Output};

use serde_json::Value;

fn higgsdt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_higgsdt")).args(args).env_remove("HIGGSDT_THREADS").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = higgsdt(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn compute_genus_zero_rank_one() {
    let doc = json(&["compute", "--genus", "0", "--ell", "1", "--rmax", "1"]);
    assert_eq!(doc["schema"], "higgsdt/1");
    assert_eq!(doc["params"]["p"], 3);
    let row = &doc["results"][0];
    assert_eq!(row["r"], 1);
    assert_eq!(row["idt"], serde_json::json!([["1", -1]]));
    assert_eq!(row["omega"]["sign"], -1);
    assert_eq!(row["omega"]["half_exp"], 3);
    assert_eq!(row["omega"]["body"], serde_json::json!([["1", 1]]));
    assert_eq!(row["omega"]["degrees"], "all");
    assert_eq!(row["volume"], serde_json::json!([["q^2", 1]]));
}

#[test]
fn compute_canonical_genus_one() {
    let doc = json(&["compute", "--genus", "1", "--canonical", "--rmax", "1"]);
    let mut terms: Vec<(String, i64)> = doc["results"][0]["indecomposable"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t[0].as_str().unwrap().to_string(), t[1].as_i64().unwrap()))
        .collect();
    terms.sort();
    // (1 − α⁻¹)(q − α) = q − α − q α⁻¹ + 1
    let mut expected = vec![("1".into(), 1), ("a1^1".into(), -1), ("q^1".into(), 1), ("q^1 a1^-1".into(), -1)];
    expected.sort();
    assert_eq!(terms, expected);
}

#[test]
fn compute_empty_table() {
    let doc = json(&["compute", "--rmax", "0"]);
    assert_eq!(doc["results"], serde_json::json!([]));
}

#[test]
fn compute_is_byte_stable() {
    let args = ["compute", "--genus", "1", "--ell", "2", "--rmax", "3"];
    let a = higgsdt(&args);
    let b = higgsdt(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn csv_and_latex_render() {
    let out = higgsdt(&["compute", "--genus", "1", "--ell", "1", "--rmax", "2", "--format", "csv"]);
    assert!(out.status.success());
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), ["r", "idt", "idt_t1", "omega", "d", "volume"]);
    assert_eq!(rdr.records().count(), 2);

    let out = higgsdt(&["compute", "--genus", "1", "--ell", "1", "--rmax", "1", "--format", "latex"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\\begin{tabular}"));
    assert!(text.contains("\\alpha_{1}^{-1}"));
    assert!(text.contains("-q^{1/2}"));
}

#[test]
fn verify_examples_pass() {
    for args in [
        &["verify", "exp-log"][..],
        &["verify", "integrality", "--genus", "1", "--ell", "1", "--rmax", "3"],
        &["verify", "oracle", "--q", "2", "--ell", "1"],
    ] {
        let out = higgsdt(args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stdout));
        let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(doc["passed"], true);
    }
}

#[test]
fn verify_all_passes() {
    let out = higgsdt(&["verify", "all", "--format", "csv"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn verify_specialize_with_traces() {
    let doc = json(&["verify", "specialize", "--q0", "3", "--trace", "1,-2"]);
    assert_eq!(doc["passed"], true);
}

#[test]
fn unknown_suite_is_usage_error() {
    assert_eq!(code(&higgsdt(&["verify", "nonsense"])), 2);
}

#[test]
fn invalid_params_are_usage_errors() {
    assert_eq!(code(&higgsdt(&["compute", "--genus", "1", "--ell", "0"])), 2);
    assert_eq!(code(&higgsdt(&["compute", "--genus", "0", "--canonical"])), 2);
    assert_eq!(code(&higgsdt(&["specialize", "--q0", "6", "--trace", "1"])), 2);
    assert_eq!(code(&higgsdt(&["specialize", "--q0", "2", "--trace", "3"])), 2);
    assert_eq!(code(&higgsdt(&["oracle-p1", "--q", "6", "--rank", "1", "--deg", "0"])), 2);
}

#[test]
fn oracle_agrees() {
    let doc = json(&["oracle-p1", "--q", "3", "--ell", "2", "--rank", "2", "--deg", "1"]);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["results"][0]["oracle"], 13122);
    assert_eq!(doc["results"][0]["formula"], 13122);
    assert_eq!(doc["results"][0]["verdict"], "agree");
}

#[test]
fn oracle_even_degree_has_no_formula() {
    let doc = json(&["oracle-p1", "--q", "2", "--ell", "1", "--rank", "2", "--deg", "0"]);
    assert_eq!(doc["results"][0]["verdict"], "no-formula");
    assert!(doc["results"][0]["formula"].is_null());
}

#[test]
fn oracle_cap_exceeded_fails() {
    let out = higgsdt(&["oracle-p1", "--q", "3", "--ell", "2", "--rank", "2", "--deg", "1", "--cap", "10"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("exceeds the cap"));
}

#[test]
fn specialize_traces_and_weil_agree() {
    let a = json(&["specialize", "--q0", "5", "--trace", "2", "--rmax", "2"]);
    let b = json(&["specialize", "--q0", "5", "--weil", "1:2", "--rmax", "2"]);
    for r in 0..2 {
        assert_eq!(a["results"][r]["value"], b["results"][r]["value"]);
    }
    // −#E(F_5) for trace 2
    assert_eq!(a["results"][0]["value"], -4);
}

#[test]
fn thread_variable() {
    let run = |v: &str| {
        Command::new(env!("CARGO_BIN_EXE_higgsdt"))
            .args(["compute", "--rmax", "2"])
            .env("HIGGSDT_THREADS", v)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("1")), 0);
    assert_eq!(code(&run("zero")), 2);
}
