use std::process::{Command, Output};

use serde_json::Value;

fn schubert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_schubert")).args(args).output().expect("spawn schubert")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 stdout")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let o = schubert(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).expect("valid JSON")
}

#[test]
fn dim_of_top() {
    let o = schubert(&["dim", "--n", "4", "--s", "1", "--w", "4,0,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "12");
}

#[test]
fn tuple_input_matches_lengths() {
    let a = json(&["point", "--n", "3", "--s", "1", "--l", "1,2,0"]);
    let b = json(&["point", "--n", "3", "--s", "1", "--tuple", "5,7,8"]);
    assert_eq!(a["result"], b["result"]);
    assert_eq!(a["result"]["heads"], serde_json::json!([7, 5, 12]));
}

#[test]
fn classify_reports_singular_with_witnesses() {
    let v = json(&["classify", "--n", "4", "--s", "1", "--x", "3,1,0,0", "--w", "4,0,0,0"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["context"], serde_json::json!({ "n": 4, "s": 1, "d": 4 }));
    assert_eq!(v["query"]["command"], "classify");
    assert_eq!(v["result"]["status"], "SINGULAR");
    assert_eq!(v["result"]["method"], "TOP_EXACT");
    assert!(!v["result"]["witnesses"].as_array().expect("witness list").is_empty());
}

#[test]
fn leq_and_codim() {
    let v = json(&["leq", "--n", "4", "--s", "1", "--x", "3,1,0,0", "--w", "4,0,0,0"]);
    assert_eq!(v["result"]["leq"], true);
    let v = json(&["codim", "--n", "4", "--s", "1", "--x", "t:13,14,15,16", "--w", "4,0,0,0"]);
    assert_eq!(v["result"]["codim"], 12);
}

#[test]
fn one_string_locus() {
    let v = json(&["locus", "--n", "4", "--s", "1", "--w", "0,4,0,0"]);
    assert_eq!(v["result"]["method"], "ONE_STRING_EXACT");
    assert_eq!(v["result"]["exact"], true);
    assert_eq!(v["result"]["maximal_singular_points"][0]["lengths"], serde_json::json!([1, 3, 0, 0]));
}

#[test]
fn bad_input_exits_two() {
    let o = schubert(&["dim", "--n", "4", "--s", "1", "--w", "4,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    let o = schubert(&["dim", "--n", "4", "--s", "1", "--w", "4,x,0,0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = schubert(&["leq", "--n", "4", "--s", "1", "--x", "1,1,1,1", "--w", "3,1,0,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suite_passes() {
    let o = schubert(&["verify", "rationally-smooth", "--n-max", "5", "--s-max", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v = json(&["verify", "order-equivalence", "--n-max", "4", "--s-max", "2", "--jobs", "2"]);
    assert_eq!(v["result"]["failure_count"], 0);
    assert_eq!(v["result"]["contexts"].as_array().map(Vec::len), Some(6));
}

#[test]
fn unexplained_search_reports_findings() {
    let v = json(&["verify", "unexplained-singular", "--n-max", "4", "--s-max", "1"]);
    assert_eq!(v["result"]["failure_count"], 0);
    assert_eq!(v["result"]["findings"].as_array().map(Vec::len), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "tangent-matrix", "--n-max", "4", "--s-max", "2", "--samples", "50", "--seed", "7", "--json"];
    assert_eq!(stdout(&schubert(&args)), stdout(&schubert(&args)));
    let args = ["patterns", "--n", "5", "--s", "2", "--w", "3,0,2,4,1", "--json"];
    assert_eq!(stdout(&schubert(&args)), stdout(&schubert(&args)));
}

#[test]
fn out_file_holds_the_document() {
    let dir = std::env::temp_dir().join(format!("schubert-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    let path = dir.join("doc.json");
    let o =
        schubert(&["curves", "--n", "3", "--s", "1", "--x", "1,1,1", "--w", "3,0,0", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).expect("out file")).expect("valid JSON");
    assert_eq!(v["result"]["dim"], 6);
    assert!(v["result"]["count"].as_u64().unwrap() >= 6);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn verify_cache_survives_corruption() {
    let dir = std::env::temp_dir().join(format!("schubert-cache-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).expect("temp dir");
    std::fs::write(dir.join("interval-n3-s1.json"), "not json").expect("write");
    let args = ["verify", "deodhar", "--n-max", "3", "--s-max", "1", "--cache", dir.to_str().unwrap(), "--json"];
    let first = stdout(&schubert(&args));
    let second = stdout(&schubert(&args));
    assert_eq!(first, second);
    let cached = std::fs::read_to_string(dir.join("interval-n3-s1.json")).expect("rebuilt");
    assert!(cached.starts_with('{'));
    std::fs::remove_dir_all(&dir).ok();
}
