use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn hat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hat")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).display().to_string()
}

fn build(dir: &TempDir, name: &str, args: &[&str]) -> (String, String) {
    let prefix = path(dir, name);
    let mut all = vec!["build"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", &prefix]);
    let o = hat(&all);
    assert!(o.status.success(), "{}", stderr(&o));
    (format!("{prefix}.graph"), format!("{prefix}.perms"))
}

#[test]
fn build_then_analyze_xo() {
    let dir = TempDir::new().unwrap();
    let (g, p) = build(&dir, "x", &["xo", "--m", "5", "--r", "11", "--q", "3"]);
    assert!(Path::new(&g.replace(".graph", ".json")).exists());
    let o = hat(&["analyze", &g, &p]);
    assert!(o.status.success(), "{}", stderr(&o));
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(j["schema"], "hatreport/1");
    assert_eq!(j["graph"]["order"], 55);
    assert_eq!(j["radius"], 11);
    assert_eq!(j["attachment"], 11);
    assert_eq!(j["consistent_cycle_lengths"], serde_json::json!([5, 10]));
    assert_eq!(j["alter_complete"], false);
    assert_eq!(j["five_cycle_types"]["5"], 22);
    assert!(j.get("timing_ms").is_none());

    let again = hat(&["analyze", &g, &p]);
    assert_eq!(stdout(&o), stdout(&again), "reports are deterministic");
    let timed: Value = serde_json::from_str(&stdout(&hat(&["analyze", &g, &p, "--timing"]))).unwrap();
    assert!(timed["timing_ms"].is_u64());
}

#[test]
fn r12_groups_give_different_types() {
    let dir = TempDir::new().unwrap();
    for (group, kind) in [("g1", "4"), ("g2", "3")] {
        let (g, p) = build(&dir, group, &["r12", "--group", group]);
        let j: Value = serde_json::from_str(&stdout(&hat(&["analyze", &g, &p]))).unwrap();
        assert_eq!(j["five_cycle_types"][kind], 48, "{group}");
        assert_eq!(j["stabilizer_order"], 2);
    }
    let (g, p) = build(&dir, "aut", &["r12", "--group", "aut"]);
    let o = hat(&["analyze", &g, &p]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error[E_NOT_HAT]:"), "{}", stderr(&o));
}

#[test]
fn orientation_seed_flag() {
    let dir = TempDir::new().unwrap();
    let (g, p) = build(&dir, "dh", &["xo", "--m", "3", "--r", "9", "--q", "4"]);
    let a: Value = serde_json::from_str(&stdout(&hat(&["analyze", &g, &p]))).unwrap();
    let (u, v) = (a["orientation_seed"][0].as_u64().unwrap(), a["orientation_seed"][1].as_u64().unwrap());
    let rev = format!("{v},{u}");
    let b: Value = serde_json::from_str(&stdout(&hat(&["analyze", &g, &p, "--orientation-seed", &rev]))).unwrap();
    assert_eq!(b["orientation_seed"], serde_json::json!([v, u]));
    assert_eq!(a["five_cycle_types"], b["five_cycle_types"]);
    let bad = hat(&["analyze", &g, &p, "--orientation-seed", "0,1"]);
    assert!(!bad.status.success());
}

#[test]
fn aut_and_canon() {
    let dir = TempDir::new().unwrap();
    let (g4, _) = build(&dir, "q4", &["xo", "--m", "3", "--r", "9", "--q", "4"]);
    let (g7, _) = build(&dir, "q7", &["xo", "--m", "3", "--r", "9", "--q", "7"]);
    let out = path(&dir, "aut.perms");
    let o = hat(&["aut", &g4, "--out", &out]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "order 54, half-arc-transitive");
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("HATPERMS v1"));
    // the full group analyses like the constructed one
    assert!(hat(&["analyze", &g4, &out]).status.success());

    let c4 = stdout(&hat(&["canon", &g4]));
    let c7 = stdout(&hat(&["canon", &g7]));
    assert_eq!(c4, c7);
    assert_eq!(c4.trim().len(), 64);
    let (rw, _) = build(&dir, "rw", &["rw", "--n", "12", "--a", "5", "--r", "2"]);
    assert_ne!(stdout(&hat(&["canon", &rw])), c4);
}

#[test]
fn psl2_build_and_export_dot() {
    let dir = TempDir::new().unwrap();
    let (g, p) = build(&dir, "psl", &["psl2", "--p", "11"]);
    let undirected = stdout(&hat(&["export-dot", &g]));
    assert!(undirected.starts_with("graph G {") && undirected.matches(" -- ").count() == 660);
    let directed = stdout(&hat(&["export-dot", &g, "--perms", &p]));
    assert!(directed.starts_with("digraph G {") && directed.matches(" -> ").count() == 660);
    let too_big = hat(&["build", "psl2", "--p", "41"]);
    assert_eq!(too_big.status.code(), Some(2));
    assert!(stderr(&too_big).starts_with("error[E_PARAM]:"));
}

#[test]
fn verify_subcommands() {
    let o = hat(&["verify", "ta", "--m", "3", "--bound", "1000"]);
    assert!(o.status.success());
    let j: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let sols: Vec<(u64, u64)> = j["data"]["solutions"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| (s["r"].as_u64().unwrap(), s["q"].as_u64().unwrap()))
        .collect();
    assert_eq!(sols, [(9, 4), (9, 7)]);
    assert!(hat(&["verify", "undirected"]).status.success());
    assert!(hat(&["verify", "table", "--row", "HAT[55,1]"]).status.success());
    assert!(hat(&["verify", "psl2", "--p", "11"]).status.success());
    assert!(hat(&["verify", "xiv", "--nbound", "12"]).status.success());
    let unknown = hat(&["verify", "table", "--row", "HAT[1,1]"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(stderr(&unknown).starts_with("error[E_PARAM]:"));
    let bad_m = hat(&["verify", "ta", "--m", "4", "--bound", "10"]);
    assert!(stderr(&bad_m).starts_with("error[E_VERIFY]:"));
}

#[test]
fn errors_are_one_line_with_a_code() {
    let dir = TempDir::new().unwrap();
    let cyc = path(&dir, "c5.graph");
    std::fs::write(&cyc, "HATGRAPH v1\n5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n").unwrap();
    let perms = path(&dir, "c5.perms");
    std::fs::write(&perms, "HATPERMS v1\n5\n1 2 3 4 0\n").unwrap();
    let o = hat(&["analyze", &cyc, &perms]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error[E_NOT_TETRAVALENT]:"), "{err}");

    let junk = path(&dir, "junk.graph");
    std::fs::write(&junk, "not a graph\n").unwrap();
    assert!(stderr(&hat(&["canon", &junk])).starts_with("error[E_PARSE]:"));
    assert!(stderr(&hat(&["canon", &path(&dir, "missing.graph")])).starts_with("error[E_IO]:"));
    assert!(stderr(&hat(&["build", "xo", "--m", "3", "--r", "9", "--q", "3"])).starts_with("error[E_PARAM]:"));
}
