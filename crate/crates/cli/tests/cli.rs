use std::path::Path;
use std::process::{Command, Output};

use apery_cli::document::SeriesDocument;
use serde_json::Value;

fn apery(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_apery"))
        .args(args)
        .env("APERY_CACHE_DIR", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn coefficient_pairs(json: &str) -> Vec<(String, String)> {
    let doc = SeriesDocument::from_json(json.trim()).unwrap();
    doc.coefficients.into_iter().map(|[n, d]| (n, d)).collect()
}

fn integers(json: &str) -> Vec<i64> {
    coefficient_pairs(json)
        .into_iter()
        .map(|(n, d)| {
            assert_eq!(d, "1");
            n.parse().unwrap()
        })
        .collect()
}

#[test]
fn expand_examples() {
    let dir = tempfile::tempdir().unwrap();
    let o = apery(dir.path(), &["expand", "T", "--order", "4"]);
    assert!(o.status.success());
    assert_eq!(integers(&stdout(&o)), [0, 1, -12, 66, -220]);

    let o = apery(dir.path(), &["expand", "yukawa", "--family", "dwork", "--order", "4"]);
    assert_eq!(integers(&stdout(&o)), [6, -480, -2400, -13440, -17760]);

    let o = apery(dir.path(), &["expand", "h1", "--order", "0"]);
    assert_eq!(integers(&stdout(&o)), [0]);

    let o = apery(dir.path(), &["expand", "h3", "--order", "2"]);
    assert_eq!(
        coefficient_pairs(&stdout(&o)),
        [("0", "1"), ("-42", "1"), ("-3033", "4")].map(|(n, d)| (n.to_string(), d.to_string()))
    );
}

#[test]
fn json_is_canonical() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["expand", "rho", "--order", "5"][..],
        &["instantons", "--order", "6", "--check-period"][..],
        &["apery", "--order", "5"][..],
    ] {
        let text = stdout(&apery(dir.path(), args));
        let value: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value.to_string(), text.trim_end(), "{args:?}");
        assert_eq!(text.matches('\n').count(), 1);
    }
    let text = stdout(&apery(dir.path(), &["expand", "q-of-phi", "--order", "6"]));
    let doc = SeriesDocument::from_json(&text).unwrap();
    assert_eq!(doc.to_json(), text.trim_end());
    assert_eq!(doc.to_series().unwrap().order(), 6);
}

#[test]
fn csv_layout() {
    let dir = tempfile::tempdir().unwrap();
    let o = apery(dir.path(), &["expand", "h3", "--order", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "index,numerator,denominator\n0,0,1\n1,-42,1\n2,-3033,4\n");
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["expand", "T", "--family", "dwork"][..],
        &["expand", "yukawa-variant", "--family", "dwork"][..],
        &["expand", "nonsense"][..],
        &["verify", "nonsense"][..],
        &["verify", "apery", "--order", "0"][..],
        &["instantons", "--order", "0"][..],
        &["expand", "w0", "--format", "xml"][..],
    ] {
        assert_eq!(apery(dir.path(), args).status.code(), Some(2), "{args:?}");
    }
}

fn instanton_json(dir: &Path, args: &[&str]) -> Value {
    serde_json::from_str(&stdout(&apery(dir, args))).unwrap()
}

fn numbers(v: &Value) -> Vec<i64> {
    v["numbers"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            assert_eq!(e["value"][1], "1");
            e["value"][0].as_str().unwrap().parse().unwrap()
        })
        .collect()
}

#[test]
fn instanton_tables() {
    let dir = tempfile::tempdir().unwrap();
    let v = instanton_json(dir.path(), &["instantons", "--order", "12", "--check-period"]);
    assert_eq!(numbers(&v), [-42, -39, -44, -39, -42, -34, -42, -39, -44, -39, -42, -34]);
    assert_eq!(v["integral"], true);

    let v = instanton_json(dir.path(), &["instantons", "--family", "dwork", "--order", "6", "--check-period"]);
    assert_eq!(numbers(&v), [-480, -240, -480, -240, -480, -240]);
    assert_eq!(v["period"], 2);

    let v = instanton_json(dir.path(), &["instantons", "--order", "1", "--check-period"]);
    assert_eq!(numbers(&v), [-42]);
    assert_eq!(v["period"], Value::Null);
    assert_eq!(v["period_status"], "undetermined");

    let v = instanton_json(dir.path(), &["instantons", "--order", "3"]);
    assert_eq!(v["period_status"], "unchecked");
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let o = apery(dir.path(), &["verify", "apery", "--order", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.lines().any(|l| l.starts_with("PASS apery/integrality")));
    assert!(!out.contains("FAIL"));

    let o = apery(dir.path(), &["verify", "dwork", "--order", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    // too short for the period check: skipped, not failed
    let o = apery(dir.path(), &["verify", "instanton", "--order", "10"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("SKIP instanton/period"));
}

#[test]
fn cache_is_used_and_bypassable() {
    let dir = tempfile::tempdir().unwrap();
    let entry = dir.path().join("beukers-basis-7.json");
    apery(dir.path(), &["expand", "h2", "--order", "7", "--no-cache"]);
    assert!(!entry.exists());
    let first = stdout(&apery(dir.path(), &["expand", "h2", "--order", "7"]));
    assert!(entry.exists());
    let second = stdout(&apery(dir.path(), &["expand", "h2", "--order", "7"]));
    assert_eq!(first, second);

    std::fs::write(&entry, "garbage").unwrap();
    let third = stdout(&apery(dir.path(), &["expand", "h2", "--order", "7"]));
    assert_eq!(first, third);
}
