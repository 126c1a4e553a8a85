use std::path::Path;
use std::process::{Command, Output};

use ecc_core::blocks::tensor::EccJson;
use ecc_core::blocks::TensorSpec;

fn ecc(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecc"))
        .args(args)
        .env("ECC_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn g2_closed_forms_have_no_diffs() {
    let dir = tempfile::tempdir().unwrap();
    let o = ecc(dir.path(), &["mq", "--type", "G2", "--verify-appendix"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "G2 (closed form): 3/3 entries match\n");
}

#[test]
fn e8_listing_reports_two_misprints() {
    let dir = tempfile::tempdir().unwrap();
    let o = ecc(dir.path(), &["mq", "--type", "E8", "--verify-appendix"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.starts_with("E8 (listed): 34/36 entries match"));
    assert!(out.contains("n33: listed") && out.contains("n66: listed"));
}

#[test]
fn e8_relations_match() {
    let dir = tempfile::tempdir().unwrap();
    let o = ecc(dir.path(), &["relations", "--type", "E8"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("rank 8; kernel matches"));
}

#[test]
fn linked_verdicts() {
    let dir = tempfile::tempdir().unwrap();
    let no = ecc(dir.path(), &["linked", "--type", "A2", "--left", "V1@0", "--right", "V1@2"]);
    assert_eq!((code(&no), stdout(&no).as_str()), (0, "NOT LINKED\n"));
    let yes = ecc(dir.path(), &["linked", "--type", "A2", "--left", "V1@0", "--right", "V1@6"]);
    assert_eq!((code(&yes), stdout(&yes).as_str()), (0, "LINKED\n"));
    let b = ecc(dir.path(), &["linked", "--left", "B3:", "--right", "B3: V3@5, V3@15"]);
    assert_eq!(stdout(&b), "LINKED\n");
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["cartan", "--type", "Z3"][..],
        &["cartan", "--type", "E9"],
        &["divisor", "--type", "A2", "--i", "3", "--j", "1"],
        &["search", "--type", "A2", "--factors", "1,1,1,1", "--target", "1"],
        &["linked", "--type", "A2", "--left", "W1", "--right", "V1"],
        &["frobnicate"],
    ] {
        assert_eq!(code(&ecc(dir.path(), args)), 2, "{args:?}");
    }
}

#[test]
fn cold_and_warm_cache_agree() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["table2", "--type", "E8"];
    let cold = ecc(dir.path(), &args);
    assert!(dir.path().join("mq-v1-E8.json").exists());
    let warm = ecc(dir.path(), &args);
    assert_eq!(cold.stdout, warm.stdout);
    let none = Command::new(env!("CARGO_BIN_EXE_ecc"))
        .args(args)
        .arg("--no-cache")
        .output()
        .unwrap();
    assert_eq!(cold.stdout, none.stdout);
    let first = stdout(&cold);
    assert!(first.lines().next().unwrap().starts_with("(1,1)  {q^2,q^12,q^20,q^30}  V2,V7,V1,ℂ"));
}

#[test]
fn cache_inspect_and_clear() {
    let dir = tempfile::tempdir().unwrap();
    ecc(dir.path(), &["mq", "--type", "A3"]);
    let o = ecc(dir.path(), &["cache", "inspect"]);
    assert!(stdout(&o).contains("mq-v1-A3.json  A3"));
    let o = ecc(dir.path(), &["cache", "clear"]);
    assert_eq!(stdout(&o), "removed 1 files\n");
    let o = ecc(dir.path(), &["cache", "inspect"]);
    assert!(stdout(&o).ends_with("empty\n"));
}

#[test]
fn ecc_json_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let spec = r#"{"type":"D4","factors":[{"node":3,"orbit":"default","exp":0},{"node":4,"orbit":"x","exp":2}]}"#;
    let o = ecc(dir.path(), &["ecc", "--left", spec, "--format", "json"]);
    assert_eq!(code(&o), 0);
    let parsed: EccJson = serde_json::from_str(&stdout(&o)).unwrap();
    let direct = ecc_core::blocks::ecc(&TensorSpec::from_json(spec).unwrap()).unwrap();
    assert_eq!(parsed, direct.to_json());
    assert_eq!(serde_json::to_value(&parsed).unwrap(), serde_json::from_str::<serde_json::Value>(&stdout(&o)).unwrap());
}

#[test]
fn fundmatch_and_search() {
    let dir = tempfile::tempdir().unwrap();
    let o = ecc(dir.path(), &["fundmatch", "--type", "E8", "--i", "7", "--j", "8"]);
    assert_eq!(stdout(&o), "q^5  V4(q^3)\nq^23  V7(q^16)\nq^27  V1(q^22)\n");
    let o = ecc(dir.path(), &["search", "--type", "E8", "--factors", "1,1,7", "--target", "4", "--multi-orbit"]);
    assert_eq!((code(&o), stdout(&o).as_str()), (0, "none\n"));
}

#[test]
fn subreps_pass() {
    let dir = tempfile::tempdir().unwrap();
    let o = ecc(dir.path(), &["subreps", "--type", "G2"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("ok  V2(q^1) ⊂ V1 ⊗ V1(q^2)\n"));
}

#[test]
fn every_verb_speaks_json() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["cartan", "--type", "F4"][..],
        &["mq", "--type", "A2", "--i", "1", "--j", "2"],
        &["divisor", "--type", "C3", "--i", "1", "--j", "2"],
        &["table", "--type", "G2", "--i", "1", "--j", "2"],
        &["tmatrix", "--type", "A3"],
        &["tmatrix", "--type", "A3", "--i", "1", "--j", "1", "--window", "4", "--count", "2"],
        &["relations", "--type", "D5"],
        &["fundmatch", "--type", "A1", "--i", "1", "--j", "1"],
        &["subreps", "--type", "D4"],
    ] {
        let mut with = args.to_vec();
        with.extend(["--format", "json"]);
        let o = ecc(dir.path(), &with);
        assert_eq!(code(&o), 0, "{args:?}");
        serde_json::from_str::<serde_json::Value>(&stdout(&o)).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}
