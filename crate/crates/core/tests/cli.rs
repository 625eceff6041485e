use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out =
        Command::new(env!("CARGO_BIN_EXE_matchflip")).args(args).env_remove("MATCHFLIP_THREADS").output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn enumerate() {
    let (code, out, _) = run(&["enumerate", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 5);
    let (_, out, _) = run(&["enumerate", "--n", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 14);
    let (code, _, err) = run(&["enumerate", "--n", "1"]);
    assert_eq!(code, 1);
    assert!(err.contains("--n"));
}

#[test]
fn diameter() {
    assert_eq!(run(&["diameter", "--n", "5", "--mode", "centered"]).1.trim(), "8");
    assert_eq!(run(&["diameter", "--n", "6"]).1.trim(), "∞");
    assert_eq!(run(&["diameter", "--n", "6", "--mode", "all"]).1.trim(), "5");
}

#[test]
fn stats() {
    let (code, out, _) = run(&["stats", "--n", "6", "--mode", "centered"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["components"], 8);
    assert_eq!(v["tree_components"], 5);
}

#[test]
fn rainbow() {
    let (code, out, _) = run(&["rainbow", "--n", "4", "--r", "1"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["cycle"]["flips"].as_array().unwrap().len(), 8);
    let (code, _, _) = run(&["rainbow", "--n", "6", "--r", "2", "--search-budget", "3"]);
    assert_eq!(code, 3);
}

#[test]
fn counts_and_verify() {
    let (code, out, _) = run(&["counts", "--n", "8", "--format", "table"]);
    assert_eq!(code, 0);
    assert!(!out.contains(" NO"));
    let (code, out, _) = run(&["verify", "--n", "7"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["entries"].as_array().unwrap().iter().all(|e| e["matched"] == true));
}

#[test]
fn exports_round_trip() {
    let (_, dot, _) = run(&["graph", "--n", "5", "--mode", "all", "--format", "dot"]);
    let (_, csv, _) = run(&["graph", "--n", "5", "--mode", "all", "--format", "csv"]);
    let a = matchflip::graph::parse_dot(&dot).unwrap();
    let b = matchflip::graph::parse_csv(&csv).unwrap();
    assert_eq!(a, b);
    assert!(dot.contains("dashed"));
}

#[test]
fn identical_runs_are_identical() {
    let a = run(&["graph", "--n", "6", "--format", "json", "--threads", "2"]);
    let b = run(&["graph", "--n", "6", "--format", "json", "--threads", "1"]);
    assert_eq!(a, b);
}

#[test]
fn resource_and_usage_errors() {
    let (code, _, err) = run(&["graph", "--n", "9", "--mem-budget", "10"]);
    assert_eq!(code, 4);
    assert!(err.contains("budget"));
    assert_eq!(run(&["enumerate", "--n", "3", "--format", "dot"]).0, 1);
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("matchflip-cli-{}.txt", std::process::id()));
    let (code, out, _) = run(&["enumerate", "--n", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 2);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn path_command() {
    let (code, out, _) = run(&["path", "--n", "7", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["length"], 14);
    assert_eq!(run(&["path", "--n", "6"]).0, 1);
}
