use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn table(name: &str) -> String {
    format!("table:{}", data(name))
}

fn gyrokit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gyrokit")).args(args).output().unwrap()
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn line<'a>(lines: &'a [Value], check: &str) -> &'a Value {
    lines.iter().find(|l| l["check"] == check).unwrap_or_else(|| panic!("no {check} line"))
}

#[test]
fn finite_check_passes_and_broken_table_fails_with_witness() {
    let ok = gyrokit(&["check", "--model", &table("z4.json")]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(lines(&ok).iter().all(|l| l["verdict"] == "pass"));

    let bad = gyrokit(&["check", "--model", &table("broken.json"), "--seed", "3"]);
    assert_eq!(bad.status.code(), Some(1));
    let ls = lines(&bad);
    let fail = ls.iter().find(|l| l["verdict"] == "fail").unwrap();
    assert!(!fail["witnesses"].as_array().unwrap().is_empty());
    assert_eq!(fail["seed"], 3);
    assert!(fail["model"].as_str().unwrap().ends_with("broken.json"));
    // other commands refuse a table that is not a gyrogroup
    assert_eq!(gyrokit(&["cosets", "--model", &table("broken.json"), "--subset", "0"]).status.code(), Some(2));
}

#[test]
fn einstein_check_meets_tolerance() {
    let out = gyrokit(&["check", "--model", "einstein", "--samples", "10000", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    for l in lines(&out) {
        assert!(l["residual"].as_f64().unwrap() < 1e-9, "{l}");
        assert_eq!(l["model"], "einstein");
    }
}

#[test]
fn cosets_of_z4() {
    let out = gyrokit(&["cosets", "--model", &table("z4.json"), "--subset", "0,2"]);
    assert_eq!(out.status.code(), Some(0));
    let ls = lines(&out);
    assert_eq!(line(&ls, "coset:list")["value"]["cosets"], serde_json::json!([[0, 2], [1, 3]]));

    let out = gyrokit(&["cosets", "--model", &table("z4.json"), "--subset", "0,1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn g8_cosets_match_table_translates() {
    let raw: Value = serde_json::from_slice(&std::fs::read(data("g8.json")).unwrap()).unwrap();
    let rows: Vec<Vec<usize>> = serde_json::from_value(raw["table"].clone()).unwrap();
    let h = [0usize, 1];
    let expected: BTreeSet<Vec<usize>> = (0..8)
        .map(|a| {
            let mut c: Vec<usize> = h.iter().map(|&k| rows[a][k]).collect();
            c.sort();
            c
        })
        .collect();
    let out = gyrokit(&["cosets", "--model", &table("g8.json"), "--subset", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    let ls = lines(&out);
    let got: BTreeSet<Vec<usize>> =
        serde_json::from_value(line(&ls, "coset:list")["value"]["cosets"].clone()).unwrap();
    assert_eq!(got, expected);
}

#[test]
fn metric_pairs_and_quotient() {
    let out = gyrokit(&["metric", "--model", &table("z4.json"), "--chain", &data("z4-weak.json"), "--pairs", "0:1,0:2"]);
    assert_eq!(out.status.code(), Some(0));
    let ls = lines(&out);
    let pairs = &line(&ls, "metric:pairs")["value"];
    assert_eq!(pairs[0]["rho"], 2.0);
    assert_eq!(pairs[1]["rho"], 1.0);
    assert_eq!(line(&ls, "prenorm:values")["value"]["n"], serde_json::json!([0.0, 1.0, 0.5, 1.0]));

    let out = gyrokit(&["metric", "--model", "einstein", "--chain", &data("einstein-radial.json"), "--pairs", "0:0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(line(&lines(&out), "metric:pairs")["value"][0]["rho"], 0.0);

    let out = gyrokit(&[
        "metric",
        "--model",
        &table("z4.json"),
        "--chain",
        &data("z4-adm.json"),
        "--subset",
        "0,2",
        "--quotient",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let ls = lines(&out);
    assert_eq!(line(&ls, "quotient:table")["value"]["varrho"][0][1], 2.0);
    assert_eq!(line(&ls, "quotient:well-defined")["verdict"], "pass");
}

#[test]
fn invalid_chain_is_an_input_error_naming_the_index() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"flavor":"weak","sets":[[0,1,2,3],[0,1],[0]]}"#).unwrap();
    let out = gyrokit(&["metric", "--model", &table("z4.json"), "--chain", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("at index 1"), "{err}");
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(gyrokit(&["check"]).status.code(), Some(2));
    assert_eq!(gyrokit(&["check", "--model", "hyperbolic"]).status.code(), Some(2));
    assert_eq!(gyrokit(&["frobnicate", "--model", "einstein"]).status.code(), Some(2));
    assert_eq!(gyrokit(&["cosets", "--model", &table("z4.json"), "--subset", "0,9"]).status.code(), Some(2));
    assert_eq!(gyrokit(&["intersect", "--model", &table("z4.json"), "--chain", &data("z4-weak.json")]).status.code(), Some(2));
    assert_eq!(gyrokit(&["metric", "--model", "einstein", "--chain", &data("z4-weak.json")]).status.code(), Some(2));
}

#[test]
fn out_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.jsonl");
    let out = gyrokit(&["hull", "--model", &table("g8.json"), "--subset", "0,1,2,4,5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
    let ls = lines(&out);
    let checks: Vec<&str> = ls.iter().map(|l| l["check"].as_str().unwrap()).collect();
    let mut sorted = checks.clone();
    sorted.sort();
    assert_eq!(checks, sorted);
}

#[test]
fn ball_microassoc_hull_and_intersect() {
    let out = gyrokit(&["microassoc", "--model", "einstein", "--subset", "ball:0.4", "--within", "ball:0.2", "--samples", "50"]);
    assert_eq!(out.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let mut paths = Vec::new();
    for (i, r) in [0.7, 0.5].iter().enumerate() {
        let hull = gyrokit(&["hull", "--model", "einstein", "--subset", &format!("ball:{r}"), "--depth", "8"]);
        assert_eq!(hull.status.code(), Some(0));
        let ls = lines(&hull);
        let chain = &line(&ls, "hull:chain")["value"];
        let p = dir.path().join(format!("c{i}.json"));
        std::fs::write(&p, chain.to_string()).unwrap();
        paths.push(p.to_str().unwrap().to_string());
    }
    let out = gyrokit(&["intersect", "--model", "einstein", "--chain", &paths[0], "--chain", &paths[1]]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}
