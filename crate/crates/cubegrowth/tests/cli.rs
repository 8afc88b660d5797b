use std::path::PathBuf;

use cubegrowth::cli::{run, Outcome};
use serde_json::Value;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("cubegrowth").chain(args.iter().copied()))
}

fn temp_file(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cubegrowth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn genus2_series_text() {
    let out = cli(&["series", "--input", "genus2.json", "--from", "x", "--to", "x", "--vars", "single"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.trim(), "(1-2t^2+t^4)/(1-14t^2+t^4)");
}

#[test]
fn genus2_reciprocity_verdict() {
    let out = cli(&["reciprocity", "--input", "genus2", "--from", "x", "--to", "y", "--vars", "single"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("Eulerian, n=2; reciprocity HOLDS (sign +1)"), "{}", out.stdout);
    assert!(out.stdout.contains("routes agree: yes"));
}

#[test]
fn per_hyperplane_reciprocity_falls_back_to_sampling() {
    let out = cli(&[
        "reciprocity",
        "--input",
        "genus2",
        "--from",
        "x",
        "--to",
        "z",
        "--vars",
        "per-hyperplane",
        "--format",
        "json",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["probabilistic"], true);
    assert_eq!(v["holds"], true);
    assert_eq!(v["routes_agree"], true);
}

#[test]
fn broken_complex_is_rejected() {
    let doc = r#"{"vertices": ["a", "b", "c", "d"],
        "edges": [{"id": "l", "from": "a", "to": "c"}, {"id": "r", "from": "b", "to": "d"},
                  {"id": "lo", "from": "a", "to": "b"}, {"id": "hi", "from": "c", "to": "d"}],
        "squares": [{"id": "s", "faces": ["l", "r", "lo", "lo"]}]}"#;
    let path = temp_file("broken.json", doc);
    let out = cli(&["validate", "--input", path.to_str().unwrap()]);
    assert_ne!(out.code, 0);
    assert!(out.stderr.contains("CubicalIdentityViolation"), "{}", out.stderr);
}

#[test]
fn malformed_documents_are_reported() {
    let path = temp_file("bad.json", "{\"cubes\": 3");
    let out = cli(&["info", "--input", path.to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("MalformedDocument"), "{}", out.stderr);
    let out = cli(&["info", "--input", "/nonexistent/complex.json"]);
    assert_eq!(out.code, 1);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(cli(&["series", "--input", "fig1", "--from", "x"]).code, 2);
    assert_eq!(cli(&["series", "--input", "fig1", "--from", "x", "--to", "x", "--bogus"]).code, 2);
    assert_eq!(cli(&["frobnicate"]).code, 2);
    assert_eq!(cli(&["reciprocity", "--input", "fig1", "--from", "x", "--to", "x", "--vars", "per-diagonal"]).code, 2);
    assert_eq!(cli(&["series", "--input", "fig1", "--from", "x", "--to", "x", "--format", "dot"]).code, 2);
}

#[test]
fn unknown_vertex_is_an_error() {
    let out = cli(&["series", "--input", "fig1", "--from", "x", "--to", "q"]);
    assert_eq!(out.code, 1);
    assert!(!out.stderr.is_empty());
}

#[test]
fn flagfail_fails_only_the_flag_check() {
    let out = cli(&["validate", "--input", "flagfail"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("spans no simplex"));
    let out = cli(&["verify", "--input", "flagfail"]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("npc: FAIL"));
    assert!(out.stdout.ends_with("result: FAIL\n"));
    assert_eq!(cli(&["automaton", "--input", "flagfail"]).code, 1);
}

#[test]
fn verify_passes_on_npc_examples() {
    for name in ["fig1", "square", "cube3", "tree4", "genus2"] {
        let out = cli(&["verify", "--input", name]);
        assert_eq!(out.code, 0, "{name}: {}", out.stdout);
        assert!(!out.stdout.contains("FAIL"), "{name}: {}", out.stdout);
        let eulerian = out.stdout.lines().find(|l| l.starts_with("eulerian:")).unwrap();
        assert_eq!(eulerian.starts_with("eulerian: Eulerian"), name == "genus2", "{eulerian}");
    }
}

#[test]
fn dot_export_lists_states_and_transitions() {
    let out = cli(&["automaton", "--input", "fig1", "--format", "dot"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.starts_with("digraph"));
    assert_eq!(out.stdout.matches("shape=").count(), 6);
    assert_eq!(out.stdout.matches(" -> ").count(), 10);
    assert!(out.stdout.contains("\"a*\" -> \"x\" [label=\"a*\"]"));
}

#[test]
fn enumerate_and_expand_agree() {
    let out = cli(&["enumerate", "--input", "fig1", "--from", "x", "--to", "y", "--max-len", "3", "--format", "json"]);
    let words: Vec<Vec<String>> = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(words.len(), 5);
    assert_eq!(words[0], ["a"]);
    let out = cli(&["expand", "--input", "fig1", "--from", "x", "--to", "y", "--max-degree", "3"]);
    assert_eq!(out.stdout.trim(), "[0, 1, 2, 2]");
    let out =
        cli(&["expand", "--input", "genus2", "--from", "x", "--to", "x", "--max-degree", "6", "--format", "json"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["coefficients"], serde_json::json!([1, 0, 12, 0, 168, 0, 2340]));
}

#[test]
fn series_json_shape() {
    let out =
        cli(&["series", "--input", "fig1", "--from", "x", "--to", "y", "--vars", "per-diagonal", "--format", "json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["vars"], serde_json::json!(["a", "a*", "b", "b*"]));
    assert!(v["num"].is_object() && v["den"].is_object());
    assert!(v.get("display").is_none());
}

#[test]
fn reverse_convention_gives_the_same_series() {
    for (from, to) in [("x", "x"), ("x", "y"), ("y", "x"), ("y", "y")] {
        let f = cli(&["series", "--input", "fig1", "--from", from, "--to", to]);
        let r = cli(&["series", "--input", "fig1", "--from", from, "--to", to, "--convention", "reverse"]);
        assert_eq!(f.stdout, r.stdout);
    }
}

#[test]
fn outputs_are_deterministic() {
    let runs: &[&[&str]] = &[
        &["info", "--input", "genus2", "--format", "json"],
        &["automaton", "--input", "genus2", "--format", "dot"],
        &["reciprocity", "--input", "genus2", "--from", "y", "--to", "w", "--vars", "per-hyperplane"],
        &["verify", "--input", "cube3"],
        &["enumerate", "--input", "square", "--from", "u00", "--to", "u11"],
    ];
    for args in runs {
        assert_eq!(cli(args), cli(args), "{args:?}");
    }
}
