use std::path::PathBuf;
use std::process::{Command, Output};

use lpakit::cli::AlgebraFacts;
use lpakit::report::{self, Inspection, Report};

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/corpus")
}

fn graph(name: &str) -> String {
    corpus_dir()
        .join(format!("{name}.graph"))
        .display()
        .to_string()
}

fn lpakit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpakit"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok_json<T: serde::de::DeserializeOwned>(args: &[&str]) -> T {
    let o = lpakit(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn classify_toeplitz() {
    let r: Report = ok_json(&["classify", &graph("toeplitz"), "--json", "--witness"]);
    assert!(r.almost_simple && r.predicted_kk_simple);
    assert_eq!(r.decomposition.core, ["w"]);
    assert_eq!(r.decomposition.balloons, ["v"]);
    assert!(r.decomposition.fiber_units.is_empty());
    let ev = r.evidence.unwrap();
    assert_eq!(ev.truncation, 4);
    assert!(ev.witness.is_some());
    assert!(ev.containment.unwrap().holds);
}

#[test]
fn classify_fork_vanishes() {
    let r: Report = ok_json(&["classify", &graph("fork2"), "--json", "--truncate", "6"]);
    assert!(!r.almost_simple);
    let ev = r.evidence.unwrap();
    assert_eq!((ev.bracket_space_dim, ev.algebra_dim), (0, Some(8)));
}

#[test]
fn no_evidence_skips_symbolic_work() {
    let r: Report = ok_json(&["classify", &graph("s2"), "--json", "--no-evidence"]);
    assert!(r.almost_simple && r.evidence.is_none());
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(
        lpakit(&["classify", "/no/such/file.graph"]).status.code(),
        Some(2)
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.graph");
    std::fs::write(&bad, "vertex v\nedge e v x\n").unwrap();
    let o = lpakit(&["classify", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
    assert_eq!(
        lpakit(&["algebra", &graph("toeplitz"), "--fiber", "e"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lpakit(&["algebra", &graph("toeplitz"), "--fiber", "zz"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lpakit(&["algebra", &graph("loop"), "--action", "dim"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        lpakit(&["algebra", &graph("loop"), "--cycle-check", "7"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(lpakit(&["classify"]).status.code(), Some(2));
}

#[test]
fn inspect_listings() {
    let t: Inspection = ok_json(&["inspect", &graph("toeplitz"), "--json"]);
    assert!(t.fibers.is_empty());
    assert_eq!(t.hs_subsets.unwrap(), [vec!["w"], vec!["v", "w"]]);
    let f: Inspection = ok_json(&["inspect", &graph("fiber"), "--json"]);
    assert_eq!(f.fibers, ["e"]);
    let l: Inspection = ok_json(&["inspect", &graph("loop"), "--json"]);
    assert_eq!(l.exitless_cycles, [vec!["c"]]);
    let text = stdout(&lpakit(&["inspect", &graph("loop")]));
    assert!(text.contains("exitless cycles: (c)"));
}

#[test]
fn algebra_actions() {
    let f: AlgebraFacts = ok_json(&["algebra", &graph("fork2"), "--action", "dim", "--json"]);
    assert_eq!(f.dimension, Some(8));
    let f: AlgebraFacts = ok_json(&["algebra", &graph("fiber"), "--fiber", "e", "--json"]);
    let m = f.m2_check.unwrap();
    assert_eq!(
        (m.products_matched, m.products_checked, m.star_compatible),
        (16, 16, true)
    );
    let f: AlgebraFacts = ok_json(&[
        "algebra",
        &graph("loop"),
        "--action",
        "bracket-dim",
        "--truncate",
        "6",
        "--json",
    ]);
    assert_eq!(f.bracket_space_dim, Some(0));
    let f: AlgebraFacts = ok_json(&[
        "algebra",
        &graph("loop"),
        "--action",
        "skew-basis",
        "--truncate",
        "2",
        "--json",
    ]);
    assert_eq!(f.skew_basis_dim, Some(2));
    let f: AlgebraFacts = ok_json(&["algebra", &graph("loop"), "--cycle-check", "3", "--json"]);
    assert!(f.cycle_check.unwrap().images_independent);
    let text = stdout(&lpakit(&["algebra", &graph("fiber"), "--fiber", "e"]));
    assert!(text.contains("16/16 products match"));
}

#[test]
fn json_round_trips_and_is_deterministic() {
    for (name, _) in lpakit_core::corpus::CURATED {
        let args = ["classify", &graph(name), "--json", "--witness"];
        let first = stdout(&lpakit(&args));
        assert_eq!(first, stdout(&lpakit(&args)), "{name}");
        let r: Report = serde_json::from_str(&first).unwrap();
        assert_eq!(report::to_json(&r) + "\n", first, "{name}");
        assert_eq!(r.predicted_kk_simple, r.almost_simple);
    }
}

#[test]
fn corpus_mode_in_filename_order() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::copy(graph("toeplitz"), dir.path().join("b.graph")).unwrap();
    std::fs::copy(graph("loop"), dir.path().join("a.graph")).unwrap();
    std::fs::write(dir.path().join("notes.txt"), "ignored").unwrap();
    let d = dir.path().to_str().unwrap();
    let v: serde_json::Value = ok_json(&["classify", "--corpus", d, "--json", "--no-evidence"]);
    let files: Vec<&str> = v
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["file"].as_str().unwrap())
        .collect();
    assert_eq!(files, ["a.graph", "b.graph"]);
    assert_eq!(v[1]["result"]["almost_simple"], true);

    std::fs::write(dir.path().join("c.graph"), "edge e a b\n").unwrap();
    let o = lpakit(&["inspect", "--corpus", d]);
    assert_eq!(o.status.code(), Some(2));
    let text = stdout(&o);
    assert!(text.contains("== a.graph") && text.contains("== c.graph\nerror"));
}
