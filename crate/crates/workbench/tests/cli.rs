use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};
use tropgrass::fixtures::MK4_CIRCUITS_GOLDEN;

fn tropgrass(args: &[&str], stdin: Option<&Value>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tropgrass"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    let mut pipe = child.stdin.take().unwrap();
    if let Some(v) = stdin {
        pipe.write_all(v.to_string().as_bytes()).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn repro_mk4_prints_the_golden_matrix() {
    let out = tropgrass(&["repro", "mk4"], None);
    assert_eq!(out.status.code(), Some(0));
    let json = stdout_json(&out);
    assert_eq!(json["details"]["matrix"], MK4_CIRCUITS_GOLDEN);
    assert!(String::from_utf8(out.stderr).unwrap().starts_with(MK4_CIRCUITS_GOLDEN));
}

#[test]
fn zero_tensor_is_rejected() {
    let zero = json!({"semifield": "B", "n": 4, "d": 2, "entries": {}});
    let out = tropgrass(&["check-plucker", "--input", "-"], Some(&zero));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("nonzero required"));
}

#[test]
fn check_plucker_exit_codes() {
    let good = json!({"semifield": "TQ", "n": 4, "d": 2,
        "entries": {"1,2": "0", "1,3": "0", "1,4": "0", "2,3": "0", "2,4": "0", "3,4": "0"}});
    assert_eq!(tropgrass(&["check-plucker", "--input", "-"], Some(&good)).status.code(), Some(0));
    let bad = json!({"semifield": "B", "n": 4, "d": 2, "entries": {"1,2": "1", "3,4": "1"}});
    let out = tropgrass(&["check-plucker", "--input", "-"], Some(&bad));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["is_plucker"], false);
    let mismatch = tropgrass(&["--semifield", "TQ", "check-plucker", "--input", "-"], Some(&bad));
    assert_eq!(mismatch.status.code(), Some(2));
}

#[test]
fn star_round_trips_through_json() {
    let w = json!({"semifield": "TQ", "n": 4, "d": 2,
        "entries": {"1,2": "0", "1,3": "1/2", "2,4": "-inf", "3,4": "-3"}});
    let once = stdout_json(&tropgrass(&["star", "--input", "-"], Some(&w)));
    let twice = stdout_json(&tropgrass(&["star", "--input", "-"], Some(&once["tensor"])));
    let expected = json!({"semifield": "TQ", "n": 4, "d": 2,
        "entries": {"1,2": "0", "1,3": "1/2", "3,4": "-3"}});
    assert_eq!(twice["tensor"], expected);
}

#[test]
fn qw_presentation_feeds_equiv() {
    let w = json!({"semifield": "B", "n": 4, "d": 3,
        "entries": {"1,2,3": "1", "1,2,4": "1", "1,3,4": "1", "2,3,4": "1"}});
    let p = stdout_json(&tropgrass(&["qw", "--k", "2", "--input", "-"], Some(&w)));
    let job = json!({
        "presentation": p["presentation"],
        "u": {"1,2": "1", "3,4": "1"},
        "v": {"1,3": "1", "2,4": "1"},
    });
    let out = tropgrass(&["equiv", "--input", "-"], Some(&job));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["verdict"], "distinct");
}

#[test]
fn budget_exhaustion_exits_three() {
    let w = json!({"semifield": "B", "n": 6, "d": 3, "entries": {"1,2,3": "1", "4,5,6": "1", "1,4,5": "1"}});
    let out = tropgrass(&["free-rank-one", "--budget", "1", "--input", "-"], Some(&w));
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn stable_sum_undefined_fails() {
    let e1 = json!({"semifield": "B", "n": 2, "d": 1, "entries": {"1": "1"}});
    let dir = std::env::temp_dir().join(format!("tropgrass-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("e1.json");
    std::fs::write(&path, e1.to_string()).unwrap();
    let p = path.to_str().unwrap();
    let report = dir.join("report.json");
    let out = tropgrass(&["stable-sum", "--input", p, "--input", p, "--out", report.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(written["defined"], false);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn sweep_single_shape() {
    let out = tropgrass(&["sweep", "--n", "4", "--d", "2"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["rows"][0]["plucker"], 36);
}

#[test]
fn all_repros_exit_zero() {
    for name in ["u34-pairing", "tropker-example", "sec6-quotient", "perp-strict"] {
        assert_eq!(tropgrass(&["repro", name], None).status.code(), Some(0), "{name}");
    }
}

#[test]
fn undecided_equivalence_exits_three() {
    let w = json!({"semifield": "TQ", "n": 4, "d": 2,
        "entries": {"1,2": "0", "1,3": "0", "1,4": "0", "2,3": "0", "2,4": "0", "3,4": "0"}});
    let p = stdout_json(&tropgrass(&["top-wedge", "--input", "-"], Some(&w)));
    let job = json!({"presentation": p["presentation"], "u": {"1,2": "0"}, "v": {"3,4": "0"}});
    let out = tropgrass(&["equiv", "--budget", "1", "--input", "-"], Some(&job));
    assert_eq!(out.status.code(), Some(3));
    let full = tropgrass(&["equiv", "--input", "-"], Some(&job));
    assert_eq!(full.status.code(), Some(0));
    assert_eq!(stdout_json(&full)["verdict"], "equal");
}
