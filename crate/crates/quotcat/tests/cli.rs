use std::process::Command;

use quotcat::fixtures::FIXTURES;
use quotcat::schema::{report_schema, validate_report};

fn quotcat(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_quotcat")).args(args).output().unwrap()
}

fn expected_exit(name: &str) -> i32 {
    if name == "a2-nonrigid" {
        1
    } else {
        0
    }
}

#[test]
fn fixtures_exit_codes_and_schema() {
    for (name, _) in FIXTURES {
        let out = quotcat(&["run", &format!("fixture:{name}"), "--format", "json"]);
        assert_eq!(out.status.code(), Some(expected_exit(name)), "{name}");
        let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(validate_report(&value), Vec::<String>::new(), "{name}");
    }
}

#[test]
fn markdown_and_json_agree() {
    let json = quotcat(&["run", "fixture:n3-stable-left", "--format", "json"]);
    let md = quotcat(&["run", "fixture:n3-stable-left"]);
    let (js, jo) = quotcat::report::json_verdicts(std::str::from_utf8(&json.stdout).unwrap()).unwrap();
    let (ms, mo) = quotcat::report::markdown_verdicts(std::str::from_utf8(&md.stdout).unwrap());
    assert_eq!(js, ms);
    assert_eq!(Some(jo), mo);
}

#[test]
fn report_file_and_check_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.json");
    let p = path.to_str().unwrap();
    let out = quotcat(&["run", "fixture:n3-exact-right", "--task", "rigid", "--report", p, "--seed-order", "lex"]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"rigid\""));
    assert!(!text.contains("verify-right\","));
    assert_eq!(quotcat(&["check-report", p]).status.code(), Some(0));
    std::fs::write(&path, "{\"tool\": \"quotcat\"}").unwrap();
    assert_eq!(quotcat(&["check-report", p]).status.code(), Some(1));
}

#[test]
fn input_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.qc");
    std::fs::write(&bad, "field p=4\nquiver vertices=1\n").unwrap();
    let out = quotcat(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
    std::fs::write(&bad, "field p=2\nquiver vertices=1\ntask star\n").unwrap();
    assert_eq!(quotcat(&["run", bad.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(quotcat(&["run", "missing-file.qc"]).status.code(), Some(3));
    assert_eq!(quotcat(&["run", "fixture:nope"]).status.code(), Some(3));
}

#[test]
fn validate_and_fixtures_commands() {
    let out = quotcat(&["validate", "fixture:n3-stable-right"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok: algebra of dimension 6"));
    let list = String::from_utf8(quotcat(&["fixtures"]).stdout).unwrap();
    assert_eq!(list.lines().count(), FIXTURES.len());
    let shown = quotcat(&["fixtures", "--show", "a2-nonrigid"]);
    assert_eq!(String::from_utf8(shown.stdout).unwrap(), FIXTURES.iter().find(|f| f.0 == "a2-nonrigid").unwrap().1);
    let schema: serde_json::Value = serde_json::from_slice(&quotcat(&["schema"]).stdout).unwrap();
    assert_eq!(schema, report_schema());
}
