use std::fs;
use std::path::PathBuf;

use positroid::bridges::{assemble_plabic, BridgeDecomposition};
use positroid::cli::run_with;
use positroid::permcore::{DecoratedPermutation, Permutation};
use positroid::plabic::PlabicGraph;
use positroid::verify::TABLE_STEPS;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("positroid").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

#[test]
fn enumerate_prints_the_worked_trace() {
    let (code, out, _) = run(&["bridge", "enumerate", "--perm", "4,6,5,1,2,3", "--trace"]);
    assert_eq!(code, 0);
    let d = DecoratedPermutation::undecorated(Permutation::new(vec![4, 6, 5, 1, 2, 3]).unwrap());
    let trace = BridgeDecomposition::replay(&d, &TABLE_STEPS).unwrap().render_trace();
    assert!(out.contains(&trace));
    assert!(trace.contains("(45)    | [7]   4   6   5   9   8"));
    assert!(trace.contains("(24)    | [7]   4 [9]   8 [5] [6]"));
}

#[test]
fn enumerate_lines_and_json() {
    let (code, out, _) = run(&["bridge", "enumerate", "--perm", "3,4,1,2"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "(12)(23)(12)(24)"));
    let (_, out, _) = run(&["bridge", "enumerate", "--perm", "3,4,1,2", "--format", "json", "--limit", "1"]);
    assert_eq!(out.lines().count(), 1);
    assert!(out.starts_with(r#"{"perm":[3,4,1,2],"ccw_fixed":[],"steps":"#));
}

#[test]
fn geodesics_include_the_leftmost_chain() {
    let (code, out, _) = run(&["polytope", "geodesics", "--J", "1,2", "--n", "4"]);
    assert_eq!(code, 0);
    let paths: Vec<Vec<[usize; 2]>> = serde_json::from_str(out.trim()).unwrap();
    assert!(paths.contains(&vec![[1, 2], [2, 3], [1, 2], [2, 4]]));
}

#[test]
fn skeleton_csv_and_face_census() {
    let (code, out, _) = run(&["polytope", "skeleton", "--J", "1,2", "--n", "4"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "1,2,3,4;1,3,2,4;2,3"));
    let (code, out, _) = run(&["polytope", "faces", "--J", "1,2", "--n", "4"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), r#"{"square":2,"trapezoid":6,"hexagon":2}"#);
}

#[test]
fn verify_small_suite_writes_only_its_report() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let (code, out, err) = run(&["verify", "all", "--n", "3", "--output", report.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.is_empty());
    let entries: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(json["passed"], true);
    assert_eq!(json["checks"].as_array().unwrap().len(), 10);
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = run(&["bridge", "enumerate", "--perm", "2,1", "--frobnicate"]);
    assert_eq!(code, 2);
    assert!(err.contains("Usage"));
    let (code, _, err) = run(&["polytope", "faces", "--J", "1", "--n", "7"]);
    assert_eq!(code, 2);
    assert!(err.contains("--unsafe"));
    let (code, _, _) = run(&["bridge", "enumerate", "--perm", "1,1"]);
    assert_eq!(code, 2);
}

#[test]
fn dot_export_is_stable() {
    let (code, out, _) = run(&["bridge", "assemble", "--perm", "3,4,1,2", "--steps", "1-2,2-3,1-2,2-4", "--format", "dot"]);
    assert_eq!(code, 0);
    assert_eq!(out, fs::read_to_string(data("fig9.dot")).unwrap());
    assert_eq!(out.matches("shape=square").count(), 4);
    assert!(out.starts_with("// trip permutation (3,4,1,2)"));
    assert!(out.contains("[label=\"[1,2]\"]"));
}

#[test]
fn empty_decoration_renders_two_lollipops() {
    let (code, out, _) = run(&["bridge", "assemble", "--perm", "1,2", "--ccw", "2", "--format", "dot"]);
    assert_eq!(code, 0);
    assert_eq!(out.matches("shape=circle").count(), 2);
    assert_eq!(out.matches(" -- ").count(), 2);
}

#[test]
fn json_round_trip_through_render() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let (_, json, _) = run(&["bridge", "assemble", "--perm", "4,6,5,1,2,3", "--steps", "3-4,2-3,1-2,5-6,4-5,3-4,4-6,2-4"]);
    fs::write(&path, &json).unwrap();
    let (code, rendered, _) = run(&["plabic", "render", "--graph", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 0);
    let a = PlabicGraph::from_json(&json).unwrap();
    let b = PlabicGraph::from_json(&rendered).unwrap();
    assert_eq!(a.canonical_form(), b.canonical_form());
    let (code, report, _) = run(&["plabic", "check", "--graph", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&report).unwrap();
    assert_eq!(v["trip_permutation"]["perm"], serde_json::json!([4, 6, 5, 1, 2, 3]));
}

#[test]
fn check_fails_on_a_reducible_graph() {
    let d = DecoratedPermutation::undecorated(Permutation::new(vec![3, 4, 1, 2]).unwrap());
    let g = assemble_plabic(&BridgeDecomposition::replay(&d, &[(1, 2), (2, 3), (1, 2), (2, 4)]).unwrap()).unwrap();
    let (dart, _) = g.edges().into_iter().find(|&(a, b)| !g.is_boundary(g.dart_vertex(a)) && !g.is_boundary(g.dart_vertex(b))).unwrap();
    let bad = g.with_parallel_pair(dart).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, bad.to_json()).unwrap();
    let (code, _, err) = run(&["plabic", "check", "--graph", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("not reduced"));
}

#[test]
fn necklace_of_a_positive_matrix() {
    let (code, out, _) = run(&["necklace", "--matrix", data("top_cell.txt").to_str().unwrap()]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["necklace"], serde_json::json!([[1, 2], [2, 3], [3, 4], [1, 4]]));
    assert_eq!(v["decorated_permutation"]["perm"], serde_json::json!([3, 4, 1, 2]));
}
