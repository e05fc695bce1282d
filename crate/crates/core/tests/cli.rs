use std::process::Command;

fn superosc(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_superosc")).args(args).env("SUPEROSC_THREADS", "2").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, serde_json::Value) {
    let mut a = vec!["--json"];
    a.extend_from_slice(args);
    let (code, out) = superosc(&a);
    (code, serde_json::from_str(&out).unwrap_or(serde_json::Value::Null))
}

#[test]
fn closure_of_klein_n2_passes() {
    let (code, v) = json(&["verify-closure", "--model", "klein-n2", "--beta", "sym"]);
    assert_eq!(code, 0);
    assert_eq!(v["algebra"], "D(2,1;alpha)");
    assert_eq!(v["pass"], true);
}

#[test]
fn dff_case_iv_offers_two_options() {
    let (code, v) = json(&["classify", "--model", "dff", "--g", "1/2"]);
    assert_eq!(code, 0);
    assert_eq!(v["case"], "iv");
    assert_eq!(v["options"].as_array().unwrap().len(), 2);
}

#[test]
fn nonklein_at_zero_is_inadmissible() {
    let (code, v) = json(&["spectrum", "--model", "nonklein-n2", "--nu", "0"]);
    assert_eq!(code, 1);
    assert_eq!(v["error"], "inadmissible");
    assert_eq!(v["classification"]["admissible"], false);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(superosc(&["spectrum", "--model", "nope", "--beta", "1"]).0, 2);
    assert_eq!(superosc(&["spectrum", "--model", "klein-n1", "--beta", "x/y"]).0, 2);
    assert_eq!(superosc(&["numcheck", "spectrum", "--model", "klein-n1", "--beta", "1/4", "--grid", "10,1"]).0, 2);
    assert_eq!(superosc(&["classify", "--model", "klein-n1", "--beta", "1/4", "--choice", "nope"]).0, 2);
    assert_eq!(superosc(&["--bogus"]).0, 2);
}

#[test]
fn n3_klein_candidate_fails_with_witness() {
    let (code, v) = json(&["solve-deformation", "--n", "3", "--candidate", "klein"]);
    assert_eq!(code, 1);
    assert!(v["multiplet"]["witness"]["bracket"].is_string());
}

#[test]
fn output_is_byte_deterministic() {
    let a = superosc(&["--json", "norms", "--model", "klein-n1", "--beta", "1/4"]);
    let b = superosc(&["--json", "norms", "--model", "klein-n1", "--beta", "1/4"]);
    assert_eq!(a, b);
}

#[test]
fn choice_is_recorded() {
    let (_, v) = json(&["classify", "--model", "klein-n1", "--beta", "1/4", "--choice", "iiia-fer"]);
    assert_eq!(v["chosen"], "iiia-fer");
    let (_, s) = json(&["spectrum", "--model", "klein-n1", "--beta", "1/4", "--choice", "iiia-fer", "--levels", "2"]);
    assert_eq!(s["hilbert_option"], "iiia-fer");
    assert_eq!(s["levels"][0]["energy"], "3/4");
}
