use serde_json::Value;

use nvalued::cli::{run, CommandOutcome};

fn exec(args: &[&str], stdin: &str) -> CommandOutcome {
    let argv = std::iter::once("nvalued").chain(args.iter().copied());
    run(argv, &mut stdin.as_bytes())
}

fn json(out: &CommandOutcome) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

#[test]
fn xn_piped_into_check() {
    let table = exec(&["family", "xn", "--n", "3"], "");
    assert_eq!(table.exit_code, 0);
    let out = exec(&["check", "-"], &table.stdout);
    assert_eq!(out.exit_code, 0, "{}", out.stderr);
    let v = json(&out);
    assert_eq!(v["group"], true);
    assert_eq!(v["reversible"], false);
    assert_eq!(v["inv_map_count"], 4);
    assert_eq!(v["coset"], "No");
    assert_eq!(v["matches"][0]["series"], "B2");
}

#[test]
fn classify_reports_matches_and_key() {
    let table = exec(&["family", "b2tilde", "--k", "1"], "");
    assert_eq!(table.exit_code, 0, "{}", table.stderr);
    let out = exec(&["classify", "-"], &table.stdout);
    assert_eq!(out.exit_code, 0, "{}", out.stderr);
    let v = json(&out);
    assert!(v["matches"].as_array().unwrap().iter().any(|m| m["series"] == "B2"));
    assert_eq!(v["canonical_key"]["n"], 3);
}

#[test]
fn borovik_violation_exits_one() {
    let out = exec(&["check", "borovik", "--n", "5"], "");
    assert_eq!(out.exit_code, 1);
    let v = json(&out);
    assert_eq!(v["violation"]["triple"], serde_json::json!([1, 1, 4]));
    assert_eq!(v["violation"]["lhs"], serde_json::json!([1, 2, 4, 4]));
    assert_eq!(v["violation"]["rhs"], serde_json::json!([1, 1, 2, 4]));
}

#[test]
fn nonunital_input_is_reported() {
    let text = r#"{"n":1,"order":2,"unit":0,"rows":[[[1,0],[1,0]],[[1,0],[0,1]]]}"#;
    assert_eq!(exec(&["check", "-"], text).exit_code, 2);
    let out = exec(&["check", "-", "--allow-nonunital"], text);
    assert_eq!(out.exit_code, 1);
    assert!(json(&out)["unit_violations"].is_array());
}

#[test]
fn malformed_input_is_a_usage_error() {
    assert_eq!(exec(&["check", "-"], "{").exit_code, 2);
    assert_eq!(exec(&["check", "-"], r#"{"n":0,"order":1,"rows":[[[0]]]}"#).exit_code, 2);
    assert_eq!(exec(&["enumerate", "--n", "31"], "").exit_code, 2);
    assert_eq!(exec(&["frobnicate"], "").exit_code, 2);
}

#[test]
fn enumerate_n1_classes() {
    let out = exec(&["enumerate", "--n", "1", "--classes"], "");
    assert_eq!(out.exit_code, 0);
    assert_eq!(json(&out).as_array().unwrap().len(), 7);
}

#[test]
fn enumerated_tables_round_trip_through_check() {
    let out = exec(&["enumerate", "--n", "2"], "");
    assert_eq!(out.exit_code, 0);
    let tables = json(&out);
    let tables = tables.as_array().unwrap();
    assert_eq!(tables.len(), 25);
    for t in tables {
        let checked = exec(&["check", "-"], &t.to_string());
        assert_eq!(checked.exit_code, 0, "{t}");
        assert_eq!(json(&checked)["associative"], true);
        assert!(!json(&checked)["matches"].as_array().unwrap().is_empty());
    }
}

#[test]
fn family_tables_round_trip() {
    for args in [
        &["family", "xn", "--n", "5"][..],
        &["family", "b2tilde", "--k", "2"],
        &["family", "starb2", "--a", "1", "--n", "3"],
    ] {
        let table = exec(args, "");
        assert_eq!(table.exit_code, 0, "{args:?}: {}", table.stderr);
        let checked = exec(&["check", "-"], &table.stdout);
        assert_eq!(checked.exit_code, 0, "{args:?}");
    }
    let sv = exec(&["family", "single-valued"], "");
    assert_eq!(json(&sv).as_array().unwrap().len(), 7);
}

#[test]
fn csv_and_table_formats() {
    let csv = exec(&["enumerate", "--n", "1", "--format", "csv"], "");
    assert_eq!(csv.exit_code, 0);
    let lines: Vec<&str> = csv.stdout.lines().collect();
    assert_eq!(lines.len(), 12);
    assert!(lines[0].starts_with("n,order,m00_0"));
    assert_eq!(lines[1].split(',').count(), 2 + 27);

    let classes = exec(&["enumerate", "--n", "1", "--classes", "--format", "csv"], "");
    assert_eq!(classes.stdout.lines().count(), 8);

    let text = exec(&["enumerate", "--n", "1", "--classes", "--format", "table"], "");
    assert_eq!(text.exit_code, 0);
    assert_eq!(text.stdout.lines().count(), 8);
}

#[test]
fn help_and_version() {
    assert_eq!(exec(&["--help"], "").exit_code, 0);
    assert_eq!(exec(&["--version"], "").exit_code, 0);
}
