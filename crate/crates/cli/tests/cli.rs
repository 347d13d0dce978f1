use std::process::Command;

use constacode::json::{CensusJson, ClassJson, FactorTableJson, VerifyJson};
use constacode_cli::{run, EXIT_HYPOTHESIS, EXIT_OK};
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("constacode").chain(args.iter().copied());
    let status = run(argv, &mut out, &mut err);
    (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let (status, out, err) = invoke(&full);
    assert_eq!(status, EXIT_OK, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn factor_length_30_over_f2() {
    let v = json(&["factor", "-p", "2", "-m", "1", "-s", "1", "-l", "5", "--lambda", "0"]);
    let tables: Vec<FactorTableJson> = serde_json::from_value(v["results"].clone()).unwrap();
    assert_eq!(tables.len(), 1);
    let t = &tables[0];
    assert_eq!(t.d, 1);
    assert!(t.case.starts_with("d1/"));
    assert_eq!(t.entries.len(), 5);
    assert!(t.entries.iter().all(|e| e.multiplicity == 2));
}

#[test]
fn classify_over_f31() {
    let v = json(&["classify", "-p", "31", "-m", "1", "-s", "1", "-l", "5", "--lambda", "7"]);
    let rows: Vec<ClassJson> = serde_json::from_value(v["results"].clone()).unwrap();
    // 31 = 1 mod 15, so j = 7 * 31^-1 = 7.
    assert_eq!((rows[0].d, rows[0].j), (15, 7));
}

#[test]
fn all_lambda_iterates_class_representatives() {
    let v = json(&["classify", "-p", "2", "-m", "2", "-l", "5", "--lambda", "all"]);
    let rows: Vec<ClassJson> = serde_json::from_value(v["results"].clone()).unwrap();
    let js: Vec<u64> = rows.iter().map(|r| r.j).collect();
    assert_eq!(js, vec![0, 1, 2]);
}

#[test]
fn self_dual_census_three_ways() {
    let v = json(&["self-dual", "-p", "2", "-m", "2", "-s", "1", "-l", "5", "--verify"]);
    let c: CensusJson = serde_json::from_value(v["results"].clone()).unwrap();
    assert_eq!(c.formula_count, "27");
    assert_eq!(c.partition_count, "27");
    assert_eq!(c.oracle_count.as_deref(), Some("27"));
    assert_eq!(c.codes.len(), 27);
    assert!(c.codes.iter().all(|h| h.dimension == 15 && h.generator == h.dual_generator));
}

#[test]
fn self_dual_list_is_truncated() {
    let (status, out, _) = invoke(&["self-dual", "-p", "2", "-m", "2", "-l", "5", "--max-list", "4"]);
    assert_eq!(status, EXIT_OK);
    assert!(out.contains("showing 4 of 27"), "{out}");
}

#[test]
fn verify_passes_every_property() {
    let v = json(&["verify", "-p", "7", "-l", "5", "--max-verify", "300"]);
    let rows: Vec<VerifyJson> = serde_json::from_value(v["results"].clone()).unwrap();
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert!(r.passed, "{r:?}");
        assert_eq!(r.checks.len(), 5);
    }
}

#[test]
fn codes_lists_and_counts() {
    let v = json(&["codes", "-p", "2", "-l", "5", "--lambda", "0", "--max-list", "10"]);
    let r = &v["results"][0];
    assert_eq!(r["total"], "243");
    assert_eq!(r["listed"], 10);
    assert_eq!(r["codes"][0]["dimension"], 30);
}

#[test]
fn hypothesis_violations_exit_1() {
    for args in [
        &["factor", "-p", "3", "-l", "5"][..],
        &["factor", "-p", "2", "-l", "9"],
        &["factor", "-p", "5", "-l", "5"],
        &["self-dual", "-p", "7", "-l", "5"],
        &["factor", "-p", "2", "-l", "5", "--lambda", "[0]"],
        &["factor", "-p", "2", "-l", "5", "--lambda", "xyz"],
        &["factor", "-l", "5"],
        &["frobnicate"],
    ] {
        let (status, _, err) = invoke(args);
        assert_eq!(status, EXIT_HYPOTHESIS, "{args:?}");
        assert!(!err.is_empty());
    }
    let (status, out, _) = invoke(&["--help"]);
    assert_eq!(status, EXIT_OK);
    assert!(out.contains("self-dual"));
}

#[test]
fn json_is_byte_identical_across_runs() {
    for args in [
        &["factor", "-p", "2", "-m", "2", "-l", "7", "--format", "json"][..],
        &["codes", "-p", "7", "-l", "5", "--format", "json", "--max-list", "20"],
        &["self-dual", "-p", "2", "-l", "5", "--format", "json"],
    ] {
        let a = invoke(args).1;
        let b = invoke(args).1;
        assert_eq!(a, b);
    }
}

#[test]
fn pinned_field_spec_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    for (p, m) in [("2", "3"), ("7", "1")] {
        let info = json(&["field-info", "-p", p, "-m", m, "-l", "5"]);
        let path = dir.path().join(format!("f{p}_{m}.json"));
        std::fs::write(&path, info["field"].to_string()).unwrap();
        let pinned = invoke(&["factor", "-p", p, "-m", m, "-l", "5", "--format", "json", "--field-spec", path.to_str().unwrap()]);
        let default = invoke(&["factor", "-p", p, "-m", m, "-l", "5", "--format", "json"]);
        assert_eq!(pinned.0, EXIT_OK, "{}", pinned.2);
        assert_eq!(pinned.1, default.1);
    }
}

#[test]
fn other_modulus_still_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f8.json");
    // F_8 = F_2[y]/(y^3 + y^2 + 1) instead of the default y^3 + y + 1.
    std::fs::write(&path, r#"{"p":2,"m":3,"modulus":[1,0,1,1],"xi":[0,1]}"#).unwrap();
    let (status, out, err) = invoke(&["verify", "-p", "2", "-m", "3", "-l", "5", "--field-spec", path.to_str().unwrap()]);
    assert_eq!(status, EXIT_OK, "{err}");
    assert!(!out.contains("FAIL"));
    std::fs::write(&path, r#"{"p":2,"m":3,"modulus":[1,1,0,1],"xi":[0,1]}"#).unwrap();
    let (status, _, _) = invoke(&["factor", "-p", "2", "-m", "2", "-l", "5", "--field-spec", path.to_str().unwrap()]);
    assert_eq!(status, EXIT_HYPOTHESIS);
    std::fs::write(&path, r#"{"p":2,"m":3,"modulus":[1,1,1,1],"xi":[0,1]}"#).unwrap();
    let (status, _, _) = invoke(&["factor", "-p", "2", "-m", "3", "-l", "5", "--field-spec", path.to_str().unwrap()]);
    assert_eq!(status, EXIT_HYPOTHESIS);
}

#[test]
fn capacity_bound_from_environment() {
    let bin = env!("CARGO_BIN_EXE_constacode");
    let out = Command::new(bin)
        .args(["factor", "-p", "2", "-m", "2", "-l", "5"])
        .env("CONSTACODE_CAPACITY", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("capacity"));
    let out = Command::new(bin)
        .args(["factor", "-p", "2", "-m", "2", "-l", "5", "--capacity", "4096"])
        .env("CONSTACODE_CAPACITY", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}
