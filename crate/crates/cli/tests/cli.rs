use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ambientforge::formats::MetricFile;
use ambientforge::suites::octonion_report;
use ambientforge_core::data::closed_form_metric;
use ambientforge_core::exactnum::{RhoFunction, Ring};
use ambientforge_core::octonion::FiniteAlgebra;
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ambientforge")).args(args).output().unwrap()
}

fn run_in(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ambientforge")).current_dir(dir).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, contents).unwrap();
    p.display().to_string()
}

fn without_timings(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timings");
    v
}

#[test]
fn holonomy_passes_with_rank_14() {
    let out = run(&["verify", "--suite", "holonomy"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["rank"], 14);
    assert_eq!(v["pass"], true);
}

#[test]
fn order_zero_is_an_input_error() {
    let out = run(&["verify", "--suite", "fg-series", "--order", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("order"));
}

#[test]
fn perturbed_metric_fails_and_names_component() {
    let dir = TempDir::new().unwrap();
    let mut g = closed_form_metric().into_matrix();
    let bump = g[(1, 1)].clone() + RhoFunction::rho() * RhoFunction::rho();
    g[(1, 1)] = bump;
    let file = MetricFile::from_metric(&ambientforge_core::liealg::SymMatrix::new(g).unwrap());
    let metric = write(&dir, "metric.json", &serde_json::to_string(&file).unwrap());
    let config = write(&dir, "config.json", &serde_json::json!({ "metric": metric }).to_string());
    let out = run(&["verify", "--suite", "ambient-ricci", "--config", &config]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let ricci = v["details"].as_array().unwrap().iter().find(|c| c["name"] == "ricci_flat").unwrap();
    assert_eq!(ricci["pass"], false);
    let first = ricci["first_nonzero"].as_str().unwrap();
    assert!(first.starts_with("Ric(") && first.ends_with(')'), "{first}");
}

#[test]
fn bad_inputs_exit_2() {
    let dir = TempDir::new().unwrap();
    let unknown_key = write(&dir, "a.json", r#"{"orderr": 3}"#);
    let not_json = write(&dir, "b.json", "order = 3");
    let missing_file = write(&dir, "c.json", r#"{"metric": "nowhere.json"}"#);
    write(&dir, "m.json", r#"{"dim": 5, "entries": {"1,6": "1"}}"#);
    let bad_ref = write(&dir, "d.json", r#"{"metric": "m.json"}"#);
    for cfg in [&unknown_key, &not_json, &missing_file, &bad_ref] {
        let out = run(&["verify", "--suite", "ambient-ricci", "--config", cfg]);
        assert_eq!(out.status.code(), Some(2), "{cfg}");
        assert!(out.stdout.is_empty());
    }
    assert_eq!(run(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--suite", "octonion", "--config", "/no/such/file.json"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic_apart_from_timings() {
    let a = run(&["verify", "--suite", "all"]);
    let b = run(&["verify", "--suite", "all"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(without_timings(json(&a)), without_timings(json(&b)));
    let v = json(&a);
    let names: Vec<&str> = v["details"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    let suites: Vec<&str> = names.iter().map(|n| n.split('/').next().unwrap()).collect();
    let mut sorted = suites.clone();
    sorted.sort();
    assert_eq!(suites, sorted);
    assert_eq!(sorted.first(), Some(&"ambient-ricci"));
}

#[test]
fn tampered_octonion_table_fails() {
    let mut alg = FiniteAlgebra::split_octonions();
    let v = alg.structure(2, 3, 7).clone();
    alg.set_structure(2, 3, 7, v + ambientforge_core::exactnum::Rational::one());
    let r = octonion_report(&alg, Some(14));
    assert!(!r.pass);
    assert!(octonion_report(&FiniteAlgebra::split_octonions(), Some(14)).pass);
}

#[test]
fn config_paths_are_relative_to_the_config() {
    let dir = TempDir::new().unwrap();
    fs::create_dir(dir.path().join("inputs")).unwrap();
    let metric = serde_json::to_string(&MetricFile::from_metric(&closed_form_metric())).unwrap();
    fs::write(dir.path().join("inputs/metric.json"), metric).unwrap();
    fs::write(dir.path().join("inputs/config.json"), r#"{"metric": "metric.json"}"#).unwrap();
    let elsewhere = TempDir::new().unwrap();
    let cfg = dir.path().join("inputs/config.json").display().to_string();
    let out = run_in(elsewhere.path(), &["verify", "--suite", "ambient-ricci", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn text_output_to_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("report.txt");
    let out = run(&["verify", "--suite", "distribution", "--format", "text", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(path).unwrap();
    assert!(text.starts_with("suite distribution: PASS"));
    assert!(text.contains("flag_ranks_monge"));
}

#[test]
fn empty_symmetry_list_gives_empty_details() {
    let dir = TempDir::new().unwrap();
    let fields = write(&dir, "vf.json", r#"{"vars": ["x","y","p","r","z"], "frame": {}, "fields": {}}"#);
    let config = write(&dir, "config.json", &serde_json::json!({ "vector_fields": fields }).to_string());
    let out = run(&["verify", "--suite", "symmetries", "--config", &config]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["details"], Value::Array(vec![]));
}

#[test]
fn custom_algebra_skips_closed_form() {
    let dir = TempDir::new().unwrap();
    let alg = write(&dir, "alg.json", r#"{"dim": 5, "brackets": []}"#);
    let config = write(&dir, "config.json", &serde_json::json!({ "structure_constants": alg, "order": 3 }).to_string());
    let out = run(&["verify", "--suite", "fg-series", "--config", &config]);
    let v = json(&out);
    let names: Vec<&str> = v["details"].as_array().unwrap().iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert!(!names.contains(&"closed_form_match"), "{names:?}");
    assert_eq!(out.status.code(), Some(0), "{v}");
}

#[test]
fn config_can_name_suite_output_and_format() {
    let dir = TempDir::new().unwrap();
    let config = write(&dir, "config.json", r#"{"suite": "octonion", "out": "report.txt", "format": "text"}"#);
    let out = run(&["verify", "--config", &config]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(dir.path().join("report.txt")).unwrap();
    assert!(text.starts_with("suite octonion: PASS"));
    // flags win over the config
    let out = run(&["verify", "--config", &config, "--suite", "symmetries", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&fs::read_to_string(dir.path().join("report.txt")).unwrap()).unwrap();
    assert_eq!(v["suite"], "symmetries");
}

#[test]
fn missing_suite_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let config = write(&dir, "config.json", r#"{"order": 4}"#);
    assert_eq!(run(&["verify", "--config", &config]).status.code(), Some(2));
    let bad_suite = write(&dir, "bad.json", r#"{"suite": "everything"}"#);
    assert_eq!(run(&["verify", "--config", &bad_suite]).status.code(), Some(2));
}
