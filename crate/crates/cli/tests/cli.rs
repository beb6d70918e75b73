use std::fs;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parabolic")).args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_parabolic")).args(args).env(key, value).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn validator() -> jsonschema::JSONSchema {
    let text = include_str!("../schema/report.schema.json");
    let schema: Value = serde_json::from_str(text).unwrap();
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

fn assert_valid(v: &Value) {
    let compiled = validator();
    if let Err(errors) = compiled.validate(v) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations: {msgs:?}");
    };
}

fn positive_labels(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .filter(|r| {
            let n = r["nodes"].as_array().unwrap().len();
            r["verdict"] == "surjective" && n > 0 && r["dim_x"].as_u64().unwrap() > 0
        })
        .map(|r| r["label"].as_str().unwrap().to_string())
        .collect()
}

/// `W_I = A_d^m` read from a label, for labels of that shape.
fn uniform_a(label: &str) -> Option<(usize, usize)> {
    let rest = label.strip_prefix('A')?;
    let (d, m) = match rest.split_once('^') {
        Some((d, m)) => (d, m),
        None => (rest, "1"),
    };
    Some((d.parse().ok()?, m.parse().ok()?))
}

#[test]
fn f4_markdown_has_six_positive_rows() {
    let out = run(&["classify", "--type", "F4", "--format", "markdown"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows = text.lines().filter(|l| l.starts_with("| F4 |")).count();
    assert_eq!(rows, 6);
}

#[test]
fn a4_has_no_proper_positive_class() {
    let out = run(&["classify", "--type", "A4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_valid(&v);
    for r in v.as_array().unwrap() {
        let label = r["label"].as_str().unwrap();
        let proper = !r["nodes"].as_array().unwrap().is_empty() && r["dim_x"].as_u64().unwrap() > 0;
        // 5 = (d+1)m has no solution with d, m ≥ 1 and dm < 4
        let oracle = proper && uniform_a(label).is_some_and(|(d, m)| (d + 1) * m == 5);
        assert_eq!(proper && r["verdict"] == "surjective", oracle, "{label}");
    }
    assert!(positive_labels(&v).is_empty());
}

#[test]
fn i2_4_single_node_is_positive() {
    let v = json(&run(&["classify", "--type", "I2(4)"]));
    let mut p = positive_labels(&v);
    p.sort();
    assert_eq!(p, ["A1", "A1~"]);
    let single = v.as_array().unwrap().iter().find(|r| r["nodes"] == serde_json::json!([1])).unwrap();
    assert_eq!(single["exp_ax"], serde_json::json!([1]));
    assert_eq!(single["exp_acx"], serde_json::json!([1]));
}

#[test]
fn classify_output_matches_schema() {
    for t in ["E6", "I2(5)", "A1xA2", "G2"] {
        let v = json(&run(&["classify", "--type", t]));
        assert_valid(&v);
    }
}

#[test]
fn caps_give_undecided_exit_code() {
    let out = run(&["classify", "--type", "B4", "--poset-cap", "3"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&out);
    assert_valid(&v);
    assert!(v.as_array().unwrap().iter().any(|r| r["status"]["state"] == "undecided"));
}

#[test]
fn selector_restricts_output() {
    let v = json(&run(&["classify", "--type", "E7", "--parabolic", "(A1^3)'"]));
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 1);
    assert_eq!(arr[0]["verdict"], "surjective");
    assert_eq!(arr[0]["evidence"], "jacobian");
    let v = json(&run(&["classify", "--type", "E7", "--parabolic", "2,5,7"]));
    assert_eq!(v[0]["label"], "(A1^3)'");
}

#[test]
fn jacobian_certificates() {
    let v = json(&run(&["jacobian", "--type", "E7", "--parabolic", "(A1^3)'"]));
    assert_eq!(v["nonzero"], true);
    assert_eq!(v["degrees"], serde_json::json!([2, 6, 8, 12]));
    assert!(v["witness"].is_array());
    let v = json(&run(&["jacobian", "--type", "F4", "--parabolic", "A2~"]));
    assert_eq!(v["nonzero"], true);
    let v = json(&run(&["jacobian", "--type", "A2", "--parabolic", "S"]));
    assert_eq!(v["nonzero"], true);
    assert_eq!(v["degrees"], serde_json::json!([]));
}

#[test]
fn jacobian_dump_includes_invariants() {
    let v = json(&run(&["jacobian", "--type", "E6", "--parabolic", "A2^2", "--dump"]));
    assert_eq!(v["restricted_invariants"].as_array().unwrap().len(), 2);
}

#[test]
fn jacobian_needs_degrees_when_not_reflection() {
    let out = run(&["jacobian", "--type", "E7", "--parabolic", "A2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["jacobian", "--type", "E7", "--parabolic", "A2", "--degrees", "2,6,8,10,12"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn tables_two_and_three_have_no_diff() {
    let out = run(&["tables", "--which", "3"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    let types: Vec<&str> = v["table3"].as_array().unwrap().iter().map(|r| r["c_i"].as_str().unwrap()).collect();
    assert_eq!(types, ["G2", "F4", "G2", "G2", "G2", "G2"]);
    let out = run(&["tables", "--which", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn first_table_has_no_diff() {
    let out = run(&["tables", "--which", "1", "--max-rank", "8"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["table1"]["d_odd_mismatches"], 0);
}

#[test]
fn other_d_rule_is_reported_as_diff() {
    let out = run(&["tables", "--which", "1", "--max-rank", "6", "--d-rule", "m-odd"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("D"));
}

#[test]
fn normality_commands() {
    let v = json(&run(&["normality", "--type", "E8"]));
    let normal = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["verdict"] == "normal" && !e["nodes"].as_array().unwrap().is_empty())
        .filter(|e| e["nodes"].as_array().unwrap().len() < 8)
        .count();
    assert_eq!(normal, 8);

    let v = json(&run(&["normality", "--type", "A5"]));
    for e in v["entries"].as_array().unwrap() {
        let levi = e["levi"].as_str().unwrap();
        let proper = !e["nodes"].as_array().unwrap().is_empty() && e["nodes"].as_array().unwrap().len() < 5;
        if !proper {
            continue;
        }
        let expected = uniform_a(levi).is_some_and(|(d, m)| (d + 1) * m == 6);
        assert_eq!(e["verdict"] == "normal", expected, "{levi}");
    }

    let out = run(&["normality", "--type", "H3"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not a Weyl group"));
}

#[test]
fn e7_note_is_present() {
    let v = json(&run(&["normality", "--type", "E7"]));
    let e = v["entries"].as_array().unwrap().iter().find(|e| e["levi"] == "(A1^3)'").unwrap();
    assert_eq!(e["verdict"], "normal");
    assert!(e["note"].as_str().unwrap().contains("Broer"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(run(&["classify", "--type", "Q3"]).status.code(), Some(1));
    assert_eq!(run(&["classify"]).status.code(), Some(1));
    assert_eq!(run(&["classify", "--type", "B3", "--parabolic", "7"]).status.code(), Some(1));
    assert_eq!(run(&["tables", "--which", "4"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = run(&["classify", "--type", "D5", "--format", "tsv"]);
    let b = run(&["classify", "--type", "D5", "--format", "tsv"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["normality", "--type", "F4", "--format", "markdown"]);
    let b = run(&["normality", "--type", "F4", "--format", "markdown"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let fresh = run(&["classify", "--type", "F4", "--cache-dir", path]);
    let files: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(files.len(), 1);
    let cached = run(&["classify", "--type", "F4", "--cache-dir", path]);
    assert_eq!(fresh.stdout, cached.stdout);

    // a tampered entry is ignored and rewritten
    let file = files[0].as_ref().unwrap().path();
    let text = fs::read_to_string(&file).unwrap().replace("\"F4\"", "\"E6\"");
    fs::write(&file, text).unwrap();
    let again = run(&["classify", "--type", "F4", "--cache-dir", path]);
    assert_eq!(fresh.stdout, again.stdout);

    // the environment variable names the same directory
    let env = run_env(&["classify", "--type", "F4"], "PARABOLIC_CACHE_DIR", dir.path());
    assert_eq!(fresh.stdout, env.stdout);
}

#[test]
fn different_seed_uses_another_cache_entry() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    run(&["classify", "--type", "G2", "--cache-dir", path]);
    run(&["classify", "--type", "G2", "--cache-dir", path, "--seed", "7"]);
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);
}
