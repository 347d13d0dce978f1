use std::path::PathBuf;

use constacode_cli::{run, EXIT_OK};
use jsonschema::{Draft, JSONSchema};
use serde_json::Value;

fn load(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn compile(name: &str) -> JSONSchema {
    let field_spec = load("field-spec.schema.json");
    let id = field_spec["$id"].as_str().unwrap().to_string();
    JSONSchema::options()
        .with_draft(Draft::Draft202012)
        .with_document(id, field_spec)
        .compile(&load(name))
        .unwrap()
}

fn report(args: &[&str]) -> Value {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = ["constacode"].into_iter().chain(args.iter().copied()).chain(["--format", "json"]);
    let status = run(argv, &mut out, &mut err);
    assert_eq!(status, EXIT_OK, "{}", String::from_utf8_lossy(&err));
    serde_json::from_slice(&out).unwrap()
}

fn assert_valid(schema: &JSONSchema, doc: &Value) {
    if let Err(errors) = schema.validate(doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{}", msgs.join("\n"));
    }
}

#[test]
fn every_command_matches_the_report_schema() {
    let schema = compile("report.schema.json");
    for args in [
        &["field-info", "-p", "2", "-m", "2", "-l", "5"][..],
        &["field-info", "-p", "7", "-l", "5"],
        &["classify", "-p", "31", "-l", "5"],
        &["factor", "-p", "2", "-m", "2", "-l", "7"],
        &["factor", "-p", "7", "-l", "5"],
        &["codes", "-p", "2", "-l", "5", "--max-list", "5"],
        &["self-dual", "-p", "2", "-m", "2", "-l", "5", "--verify"],
        &["self-dual", "-p", "2", "-l", "11"],
        &["verify", "-p", "2", "-l", "5", "--max-verify", "50"],
    ] {
        assert_valid(&schema, &report(args));
    }
}

#[test]
fn report_schema_rejects_wrong_command_shape() {
    let schema = compile("report.schema.json");
    let mut doc = report(&["classify", "-p", "2", "-l", "5"]);
    doc["command"] = Value::from("factor");
    assert!(!schema.is_valid(&doc));
    let mut doc = report(&["factor", "-p", "2", "-l", "5", "--lambda", "0"]);
    doc["results"][0]["entries"][0].as_object_mut().unwrap().remove("multiplicity");
    assert!(!schema.is_valid(&doc));
    let mut doc = report(&["factor", "-p", "2", "-l", "5", "--lambda", "0"]);
    doc["field"]["xi"] = Value::from("one");
    assert!(!schema.is_valid(&doc));
}

#[test]
fn field_members_are_field_specs() {
    let schema = compile("field-spec.schema.json");
    for (p, m) in [("2", "3"), ("7", "1"), ("2", "4")] {
        let doc = report(&["field-info", "-p", p, "-m", m, "-l", "5"]);
        assert_valid(&schema, &doc["field"]);
    }
    assert!(!schema.is_valid(&serde_json::json!({"p": 2, "m": 3, "modulus": [1, 1, 0, 1]})));
}
