use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> (Output, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_toppling")).args(args).output().expect("binary runs");
    let doc = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    (out, doc)
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn toppling_betti_numbers_of_k4() {
    let (out, doc) = run(&["betti", &path("k4.graph"), "--ideal", "toppling"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(doc["results"]["ranks"], serde_json::json!([1, 7, 12, 6]));
    assert!(doc["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
    let summary = String::from_utf8(out.stderr).unwrap();
    assert!(summary.starts_with("betti: ranks [1, 7, 12, 6]"), "{summary}");
}

#[test]
fn riemann_roch_profile_of_the_plane_example() {
    let (out, doc) = run(&["rrcheck", &path("fig2.ideal"), "--b", "3,4", "--b=-2,15"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &doc["results"];
    assert_eq!(r["genus"], 12);
    assert_eq!(r["canonical"], serde_json::json!([9, 13]));
    assert_eq!(r["reflection_invariant"], true);
    assert_eq!(r["evaluations"].as_array().unwrap().len(), 2);
}

#[test]
fn single_edge() {
    let (out, doc) = run(&["info", &path("edge.graph")]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(doc["results"]["genus"], 0);
    assert_eq!(doc["results"]["tree_count"], 1);
}

#[test]
fn sink_relabeling_preserves_invariants() {
    let (_, a) = run(&["info", &path("c4.graph")]);
    let (_, b) = run(&["info", &path("c4.graph"), "--sink", "2"]);
    assert_eq!(a["results"], b["results"]);
    assert_eq!(b["inputs"]["sink"], 2);
}

#[test]
fn malformed_input_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    std::fs::write(&bad, "nodes 3\nedge 1 7 1\n").unwrap();
    let (out, doc) = run(&["info", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(doc["results"]["error"].is_string());

    let (out, _) = run(&["rank", &path("k4.graph"), "--divisor", "1,2"]);
    assert_eq!(out.status.code(), Some(1));
    let (out, _) = run(&["hilbert", &path("c4.graph")]);
    assert_eq!(out.status.code(), Some(1));
    let (out, _) = run(&["betti", &path("k4.graph"), "--char", "6"]);
    assert_eq!(out.status.code(), Some(1));
    let (out, doc) = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(doc["command"], "usage");
}

#[test]
fn output_is_deterministic() {
    let args = ["conjecture", &path("k4.graph"), "--char", "2"];
    let (a, _) = run(&args);
    let (b, _) = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn construct_round_trips_through_rrcheck() {
    let (out, doc) = run(&["construct", "--canonical", "4,6", "--seed", "2,3", "--seed", "4,1"]);
    assert_eq!(out.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("built.ideal");
    std::fs::write(&file, doc["results"]["text"].as_str().unwrap()).unwrap();
    let (out, doc) = run(&["rrcheck", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(doc["results"]["canonical"], serde_json::json!([4, 6]));
    assert_eq!(doc["results"]["genus"], 6);
}

#[test]
fn rank_agrees_with_burning() {
    let (out, doc) = run(&["rank", &path("k4.graph"), "--divisor=3,0,-1,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(doc["results"]["rank"], doc["results"]["rank_by_burning"]);
}
