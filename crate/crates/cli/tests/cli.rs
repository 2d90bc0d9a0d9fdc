use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

struct Run {
    code: i32,
    stdout: String,
    report: Value,
    raw: String,
}

fn run_with(args: &[&str], env: &[(&str, &str)]) -> Run {
    let dir = tempfile::tempdir().unwrap();
    let out: PathBuf = dir.path().join("report.json");
    let output = Command::new(env!("CARGO_BIN_EXE_amalgsep"))
        .arg("--out")
        .arg(&out)
        .args(args)
        .envs(env.iter().copied())
        .output()
        .unwrap();
    let raw = std::fs::read_to_string(&out).unwrap_or_default();
    let report = serde_json::from_str(&raw).unwrap_or(Value::Null);
    Run { code: output.status.code().unwrap(), stdout: String::from_utf8(output.stdout).unwrap(), report, raw }
}

fn run(args: &[&str]) -> Run {
    run_with(args, &[])
}

/// Required and allowed top-level keys from the report schema.
fn check_against_schema(v: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas/job.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let obj = v.as_object().unwrap();
    for key in schema["required"].as_array().unwrap() {
        assert!(obj.contains_key(key.as_str().unwrap()), "missing {key}");
    }
    for key in obj.keys() {
        assert!(schema["properties"].get(key).is_some(), "unexpected {key}");
    }
}

/// The structure every report must have.
fn validate(r: &Run) {
    let v = &r.report;
    check_against_schema(v);
    assert_eq!(v["schema"], 1);
    assert!(v["job"]["command"].is_string());
    assert!(v["job"]["inputs"].is_array());
    assert!(v["job"]["parameters"].is_object());
    let status = v["status"].as_str().unwrap();
    let expected = match status {
        "success" => 0,
        "negative" => 1,
        "input_error" => 2,
        "bound_exhausted" => 3,
        other => panic!("unknown status {other}"),
    };
    assert_eq!(v["exit_code"], expected);
    assert_eq!(r.code, expected);
    assert_eq!(r.stdout.trim(), v["summary"].as_str().unwrap());
    assert!(v.get("result").is_some() || v.get("error").is_some());
}

#[test]
fn counterexample_case_passes() {
    let r = run(&["case", "sec3", "--p", "2", "--q", "3", "--n", "2"]);
    validate(&r);
    assert_eq!(r.code, 0);
    let assertions = r.report["result"]["assertions"].as_array().unwrap();
    assert_eq!(assertions.len(), 3);
    assert!(assertions.iter().all(|a| a["passed"] == true));
}

#[test]
fn membership_is_the_negative_outcome() {
    let r = run(&["amalgam", "member", &data("z4amalgam.json"), "A:a B:b A:a B:b", "A:a B:b"]);
    validate(&r);
    assert_eq!(r.code, 1);
    assert_eq!(r.report["result"]["k"], 2);
    let r = run(&["amalgam", "member", &data("z4amalgam.json"), "A:a", "A:a B:b"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.report["result"]["membership"], "non_member");
}

#[test]
fn non_associative_table_names_the_triple() {
    let r = run(&["group", "check", &data("bad.json")]);
    validate(&r);
    assert_eq!(r.code, 2);
    assert!(r.report["error"].as_str().unwrap().contains("(1*1)*2 != 1*(1*2)"));
}

#[test]
fn input_errors() {
    let r = run(&["amalgam", "build", &data("unknown_field.json")]);
    validate(&r);
    assert_eq!(r.code, 2);
    assert!(r.report["error"].as_str().unwrap().contains("unknown field"));
    assert_eq!(run(&["amalgam", "build", &data("missing.json")]).code, 2);
    assert_eq!(run(&["compat", "check", &data("z4amalgam.json"), "--p", "4"]).code, 2);
    assert_eq!(run(&["amalgam", "reduce", &data("z4amalgam.json"), "A:q"]).code, 2);
    // the word engine needs finite factors
    assert_eq!(run(&["isolate", &data("square.json"), "A:a B:b", "--p", "2"]).code, 2);
}

#[test]
fn compatibility_verdicts() {
    let r = run(&["compat", "check", &data("z4amalgam.json"), "--p", "2"]);
    validate(&r);
    assert_eq!(r.code, 0);
    let chain = &r.report["result"]["certificate"]["chain_a"]["links"];
    assert_eq!(chain.as_array().unwrap().len(), 3);
    assert_eq!(run(&["compat", "check", &data("z4amalgam.json"), "--p", "3"]).code, 1);
    let r = run(&["compat", "check", &data("z4amalgam.json"), "--s", "b^2"]);
    assert_eq!(r.code, 1);
    let r = run(&["compat", "enum", &data("z4amalgam.json")]);
    validate(&r);
    assert_eq!(r.report["result"]["pairs"].as_array().unwrap().len(), 5);
}

#[test]
fn isolation_reports_a_root() {
    let r = run(&["isolate", &data("z4amalgam.json"), "A:a B:b A:a B:b A:a B:b A:a^2", "--p", "2"]);
    validate(&r);
    assert_eq!(r.code, 1);
    assert_eq!(r.report["result"]["root"]["q"], 3);
    let r = run(&["isolate", &data("z4amalgam.json"), "A:a B:b", "--p", "2"]);
    assert_eq!(r.code, 0);
}

#[test]
fn witness_outcomes() {
    let g = "A:a B:b A:a B:b A:a B:b A:a^2";
    let r = run(&["witness", &data("square.json"), "A:a B:b^7", g, "--p", "2"]);
    validate(&r);
    assert_eq!(r.code, 0);
    let cert = &r.report["result"]["outcome"];
    assert_eq!(cert["kind"], "separated");
    assert_eq!(cert["verified"], true);
    assert!(cert["target_order"].as_u64().unwrap().is_power_of_two());

    let r = run(&["witness", &data("z4amalgam.json"), "A:a B:b A:a^2", g, "--p", "2"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.report["result"]["outcome"]["reason"], "not_isolated");

    let r = run(&["witness", &data("z4amalgam.json"), "A:a B:b A:a^2", "A:a B:b", "--max-order", "2"]);
    validate(&r);
    assert_eq!(r.code, 3);
}

#[test]
fn element_files_and_free_presentations() {
    let r = run(&["amalgam", "reduce", &data("square.json"), &data("element.json")]);
    validate(&r);
    assert_eq!(r.report["result"]["normal_form"], "A:a B:b");
    assert_eq!(r.report["result"]["order"], "infinite");
    let r = run(&["amalgam", "build", &data("square.json")]);
    assert_eq!(r.report["result"]["kind"], "free");
}

#[test]
fn reruns_are_byte_identical() {
    let args = ["witness", &data("z4amalgam.json"), "A:a B:b A:a^2", "A:a B:b"];
    let (first, second) = (run(&args), run(&args));
    assert!(!first.raw.is_empty());
    assert_eq!(first.raw, second.raw);
    let threaded = run_with(&args, &[("AMALGSEP_THREADS", "1")]);
    assert_eq!(first.raw, threaded.raw);
}

#[test]
fn bad_thread_count_is_an_input_error() {
    let r = run_with(&["case", "sec3"], &[("AMALGSEP_THREADS", "zero")]);
    assert_eq!(r.code, 2);
}

#[test]
fn help_documents_bounds_and_exit_codes() {
    let output = Command::new(env!("CARGO_BIN_EXE_amalgsep")).arg("--help").output().unwrap();
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("catalog order <= 48"));
    assert!(text.contains("order <= 256"));
    assert!(text.contains("3 bound exhausted"));
}
