use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn scenario(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn tiltcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tiltcheck")).args(args).output().expect("tiltcheck runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

#[test]
fn bundled_full_scenario_passes() {
    let path = scenario("a2_full.json");
    let out = tiltcheck(&[path.to_str().unwrap(), "--no-timing"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = report(&out);
    assert_eq!(r["passed"], true);
    let commands = r["commands"].as_array().unwrap();
    assert!(commands.iter().all(|c| c["verdict"] != "fail"));
    assert!(String::from_utf8_lossy(&out.stderr).contains("all verifications passed"));
}

#[test]
fn invalid_pair_exits_one_with_a_witness() {
    let path = scenario("a2_invalid_pair.json");
    let out = tiltcheck(&[path.to_str().unwrap(), "--json-only"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stderr.is_empty());
    let r = report(&out);
    let failing = r["commands"].as_array().unwrap().iter().find(|c| c["verdict"] == "fail").unwrap();
    assert_eq!(failing["witness"]["axiom"], "hom-orthogonality");
}

#[test]
fn empty_scenario_passes_trivially() {
    let path = scenario("empty.json");
    let out = tiltcheck(&[path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report(&out)["commands"].as_array().unwrap().len(), 0);
}

#[test]
fn reports_are_byte_identical_without_timings() {
    let path = scenario("a2_full.json");
    let a = tiltcheck(&[path.to_str().unwrap(), "--no-timing", "--json-only"]);
    let b = tiltcheck(&[path.to_str().unwrap(), "--no-timing", "--json-only"]);
    assert_eq!(a.stdout, b.stdout);
    assert!(!String::from_utf8_lossy(&a.stdout).contains("time_ms"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = std::env::temp_dir().join(format!("tiltcheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\n  \"version\": 1,\n  \"field\": 2,\n  \"quiver\": oops\n}").unwrap();
    let out = tiltcheck(&[bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 4"), "{err}");
    assert!(out.stdout.is_empty());

    let missing = dir.join("missing.json");
    assert_eq!(tiltcheck(&[missing.to_str().unwrap()]).status.code(), Some(2));

    let path = scenario("a2_full.json");
    assert_eq!(tiltcheck(&[path.to_str().unwrap(), "--bound", "9"]).status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
