use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn sasaki(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sasaki")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON output")
}

#[test]
fn parse_prints_normal_form() {
    let o = sasaki(&["parse", data("heisenberg.txt").to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("(0,0,2e^{12})\n"));
}

#[test]
fn parse_with_binding() {
    let file = std::env::temp_dir().join(format!("sasaki-cli-{}.txt", std::process::id()));
    std::fs::write(&file, "(0,0,-2e^{12}-2τe^{35},0,0)").unwrap();
    let o = sasaki(&["parse", file.to_str().unwrap(), "--bind", "tau=-1", "--output", "json"]);
    std::fs::remove_file(&file).ok();
    assert!(o.status.success());
    assert_eq!(json(&o)["salamon"], "(0,0,−2e^{12}+2e^{35},0,0)");
}

#[test]
fn unbound_symbol_is_an_error() {
    let file = std::env::temp_dir().join(format!("sasaki-cli-unbound-{}.txt", std::process::id()));
    std::fs::write(&file, "(0,0,λe^{12})").unwrap();
    let o = sasaki(&["parse", file.to_str().unwrap()]);
    std::fs::remove_file(&file).ok();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn check_reports_sasaki() {
    let o = sasaki(&["check", data("ex43prime.json").to_str().unwrap(), "--output", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["sasaki"], true);
    assert_eq!(v["characterizations_agree"], true);
}

#[test]
fn decompose_and_reduce() {
    let path = data("ex43prime.json");
    let o = sasaki(&["decompose", path.to_str().unwrap(), "--ideal", "2,3,4,5", "--e0", "1", "--output", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["standard"], true);
    assert_eq!(v["pseudo_iwasawa"], false);
    assert_eq!(v["z_standard"], true);

    let o = sasaki(&["reduce", path.to_str().unwrap(), "--output", "json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["h"], 2);
    assert_eq!(v["tau"], -1);
    assert_eq!(v["b"], serde_json::json!([0, -1, 0, 0, 0]));
    assert_eq!(v["sasaki_quotient"], "(0,0,2e^{12})");
}

#[test]
fn construct_output_checks_as_sasaki() {
    let o = sasaki(&["construct", data("plane_seed.json").to_str().unwrap()]);
    assert!(o.status.success());
    let file = std::env::temp_dir().join(format!("sasaki-cli-built-{}.json", std::process::id()));
    std::fs::write(&file, &o.stdout).unwrap();
    let c = sasaki(&["check", file.to_str().unwrap(), "--sasaki", "--output", "json"]);
    let d = sasaki(&["decompose", file.to_str().unwrap()]);
    std::fs::remove_file(&file).ok();
    assert!(c.status.success());
    assert_eq!(json(&c)["sasaki"], true);
    assert!(d.status.success(), "{}", stdout(&d));
}

#[test]
fn catalog_list_has_sixteen_entries() {
    let o = sasaki(&["catalog", "list", "--json"]);
    assert!(o.status.success());
    assert_eq!(json(&o).as_array().map(Vec::len), Some(16));
}

#[test]
fn catalog_verify_exit_code_follows_result() {
    let o = sasaki(&["catalog", "verify", "--filter", "dim5.[13]", "--json"]);
    assert!(o.status.success());
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["total"], 8);
    assert!(v["reports"][0].get("wall_time_ms").is_none());

    let o = sasaki(&["catalog", "verify", "--filter", "dim5.2", "--text"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("finding: Jacobi fails"));
}

#[test]
fn catalog_verify_lambda_list() {
    let o = sasaki(&["catalog", "verify", "--filter", "table1.9", "--lambda", "0,3/2", "--json", "--timing"]);
    let v = json(&o);
    assert_eq!(v["total"], 8);
    assert!(v["reports"][0]["wall_time_ms"].is_number());
}
