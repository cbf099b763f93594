use std::path::{Path, PathBuf};
use std::process::Command;

use sandpile_cli::input::load_ribbon;
use sandpile_cli::report::{Report, RunConfig};
use sandpile_cli::suites::{run_suite, to_value, Suite};
use sandpile_core::fixtures;
use sandpile_core::torsor::Variant;
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn sandpile(args: &[&str]) -> (i32, Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_sandpile"))
        .args(args)
        .output()
        .unwrap();
    let stdout = String::from_utf8(out.stdout).unwrap();
    let json = serde_json::from_str(&stdout).unwrap_or(Value::Null);
    (out.status.code().unwrap(), json, String::from_utf8(out.stderr).unwrap())
}

fn path(name: &str) -> String {
    data(name).to_str().unwrap().to_string()
}

#[test]
fn data_files_match_fixtures() {
    let same = |file: &str, rg: sandpile_core::RibbonGraph| {
        assert_eq!(
            load_ribbon(&data(file)).unwrap().canonical_code(),
            rg.canonical_code(),
            "{file}"
        );
    };
    same("k4-minus-edge.json", fixtures::diamond());
    same("routing.json", fixtures::routing_example());
    same("triple-edge-torus.json", fixtures::triple_edge(false));
}

#[test]
fn group_order() {
    let (code, v, _) = sandpile(&["group", &path("k4-minus-edge.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["order"], "8");
    assert_eq!(v["spanningTrees"], 8);
}

#[test]
fn route_reaches_expected_tree() {
    let (code, v, _) = sandpile(&[
        "route",
        &path("routing.json"),
        "--chip",
        "c",
        "--sink",
        "s",
        "--tree",
        &path("routing-tree.json"),
        "--trace",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["tree"], serde_json::json!(["Ac", "As", "e1"]));
    assert_eq!(v["steps"].as_array().unwrap().len(), 2);
}

#[test]
fn act_with_inline_divisor() {
    let (code, v, _) = sandpile(&[
        "act",
        &path("routing.json"),
        "--tree",
        "Ac,e1,f",
        "--divisor",
        "c:1,s:-1",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["tree"], serde_json::json!(["Ac", "As", "e1"]));
    let (code, _, _) = sandpile(&[
        "act",
        &path("triple-edge-torus.json"),
        "--tree",
        "e1",
        "--chip",
        "x",
        "--sink",
        "y",
    ]);
    assert_eq!(code, 2);
}

#[test]
fn bby_action() {
    let (code, v, _) = sandpile(&[
        "bby",
        "act",
        "--matroid",
        &path("square-matroid.json"),
        "--class",
        "e3",
        "--basis",
        "e2,e3,e5",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["basis"], serde_json::json!(["e1", "e3", "e4"]));
    assert_eq!(v["inputVector"], serde_json::json!([1, 0, 1, 0, 1]));
    let (code, v, _) = sandpile(&["bby", "info", "--matroid", &path("r10.json")]);
    assert_eq!(code, 0);
    assert_eq!(v["groupOrder"], "162");
}

#[test]
fn genus_and_telescope() {
    let (_, v, _) = sandpile(&["genus", &path("triple-edge-torus.json")]);
    assert_eq!(v["genus"], 1);
    let (code, v, _) = sandpile(&["telescope", "build", "--k", "1,0,0,2,1,0"]);
    assert_eq!(code, 0);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 11);
    assert_eq!(v["edges"].as_array().unwrap().len(), 20);
    let (code, v, _) = sandpile(&[
        "telescope",
        "check",
        &path("k4-minus-edge.json"),
        "--c",
        "a",
        "--g",
        "ab",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["holds"], true);
}

#[test]
fn move_paths() {
    let (code, v, _) = sandpile(&[
        "moves",
        "path",
        &path("k4-minus-edge.json"),
        "--from",
        "ab,ac,ad",
        "--to",
        "ad,bc,cd",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["mode"], "source-turn");
    let (code, _, _) = sandpile(&[
        "moves",
        "path",
        &path("k4-minus-edge.json"),
        "--from",
        "ab,ac,ad",
        "--to",
        "ad,bc,cd",
        "--leaf-swap",
    ]);
    assert_eq!(code, 0);
}

#[test]
fn input_errors_exit_with_two() {
    let (code, _, err) = sandpile(&["group", "/nonexistent.json"]);
    assert_eq!(code, 2);
    assert!(err.contains("input error"));
    let (code, _, _) = sandpile(&[
        "route",
        &path("routing.json"),
        "--chip",
        "q",
        "--sink",
        "s",
        "--tree",
        "Ac,e1,f",
    ]);
    assert_eq!(code, 2);
    let (code, _, _) = sandpile(&[
        "route",
        &path("routing.json"),
        "--chip",
        "c",
        "--sink",
        "s",
        "--tree",
        "Ac,e1",
    ]);
    assert_eq!(code, 2);
    let (code, _, _) = sandpile(&["verify", "torsor", "--max-edges", "0"]);
    assert_eq!(code, 2);
}

#[test]
fn verify_writes_report() {
    let dir = std::env::temp_dir().join(format!("sandpile-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("r.json");
    let (code, v, _) = sandpile(&[
        "verify",
        "sink-invariance",
        "--max-edges",
        "3",
        "--include-nonplanar",
        "--report",
        file.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    Report::validate_json(&v).unwrap();
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(written, v);
    assert!(v["counts"]["findings"].as_u64().unwrap() > 0);
    std::fs::remove_dir_all(dir).unwrap();
}

fn strip_time(mut v: Value) -> Value {
    v["wallTimeMs"] = Value::from(0);
    v["config"]["workers"] = Value::from(0);
    v
}

#[test]
fn reports_do_not_depend_on_workers() {
    let run = |workers| {
        let cfg = RunConfig {
            max_edges: 4,
            variants: Variant::ALL.to_vec(),
            workers,
            ..Default::default()
        };
        strip_time(to_value(&run_suite(Suite::Consistency, &cfg).unwrap()))
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn sampling_is_seeded() {
    let run = |seed| {
        let cfg = RunConfig {
            max_edges: 5,
            sample: Some(10),
            seed,
            ..Default::default()
        };
        let r = run_suite(Suite::RotorLemmas, &cfg).unwrap();
        assert_eq!(r.counts.instances, 10);
        strip_time(to_value(&r))
    };
    assert_eq!(run(9), run(9));
    assert_ne!(run(9)["sampled"], run(10)["sampled"]);
}

#[test]
fn every_suite_produces_a_valid_report() {
    let cfg = RunConfig {
        max_edges: 3,
        max_elements: 4,
        telescope_n: 1,
        telescope_k: 1,
        ..Default::default()
    };
    for suite in [
        Suite::Torsor,
        Suite::SinkInvariance,
        Suite::Consistency,
        Suite::Moves,
        Suite::Unicycle,
        Suite::Telescope,
        Suite::Matroid,
        Suite::RotorLemmas,
    ] {
        let r = run_suite(suite, &cfg).unwrap();
        Report::validate_json(&to_value(&r)).unwrap();
        assert!(r.passed(), "{}", suite.name());
        assert!(r.counts.instances > 0, "{}", suite.name());
    }
}
