use std::fs;
use std::path::Path;
use std::process::Command;

use cfrieze::{Frieze, FriezeDescriptor, Rat};
use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("cfrieze").chain(args.iter().copied());
    let code = cfrieze_cli::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn build_file(dir: &TempDir, name: &str, args: &[&str]) -> String {
    let path = dir.path().join(name);
    let mut full = vec!["build"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", path_str(&path)]);
    let (code, _, err) = run(&full);
    assert_eq!(code, 0, "{err}");
    path_str(&path).to_string()
}

#[test]
fn build_example_one() {
    let (code, out, _) = run(&["build", "--c", "4", "--n", "2", "--free", "2,-3,-1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["seed"], serde_json::json!(["2", "-3", "-1", "4/5", "35/8"]));
    assert_eq!(v["base_index"], 1);
    let (code, out, _) = run(&["build", "--c", "-4", "--n", "2", "--seed", "4,3,3,4,5/2", "--base", "-2"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"base_index\": -2"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["build", "--c", "4", "--n", "2"]).0, 2);
    assert_eq!(run(&["build", "--c", "4", "--n", "2", "--free", "1", "--seed", "1"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["build", "--c", "1/0", "--n", "2", "--free", "1,2,3"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);

    let (code, _, err) = run(&["build", "--c", "-1", "--n", "1", "--free", "1,1"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: DegenerateSeed:"), "{err}");
    let (code, _, err) = run(&["build", "--c", "-1", "--n", "2", "--seed", "1,1,1,1,1"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: InvalidSeed:"), "{err}");
    let (code, _, err) = run(&["analyze", "--in", "/nonexistent/frieze.json"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: Io:"));
}

#[test]
fn render_layouts() {
    let dir = TempDir::new().unwrap();
    let cc = build_file(&dir, "cc.json", &["--c", "-1", "--n", "2", "--free", "1,2,2"]);
    let (code, out, _) = run(&["render", "--in", &cc, "--cols", "9"]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<&str>> = out.lines().map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(rows[0], vec!["0"; 9]);
    assert_eq!(rows[1], vec!["1"; 9]);
    assert_eq!(rows[2], vec!["1", "2", "2", "1", "3", "1", "2", "2", "1"]);
    assert_eq!(rows[3], vec!["1", "3", "1", "2", "2", "1", "3", "1", "2"]);
    assert_eq!(rows[4], vec!["1"; 9]);

    let e1 = build_file(&dir, "e1.json", &["--c", "4", "--n", "2", "--free", "2,-3,-1"]);
    let (_, out, _) = run(&["render", "--in", &e1, "--from", "0", "--cols", "4"]);
    let row3: Vec<&str> = out.lines().nth(4).unwrap().split_whitespace().collect();
    assert_eq!(row3, vec!["-32/5", "10", "-32/5", "10"]);

    // a single column is the down-right oblique section
    let (_, out, _) = run(&["render", "--in", &e1, "--cols", "1"]);
    let cells: Vec<(usize, &str)> = out
        .lines()
        .map(|l| (l.len() - l.trim_start().len(), l.trim()))
        .collect();
    assert_eq!(cells.iter().map(|c| c.1).collect::<Vec<_>>(), vec!["0", "1", "2", "-2", "10", "0"]);
    assert!(cells.windows(2).all(|w| w[0].0 < w[1].0));

    let (_, tsv, _) = run(&["render", "--in", &e1, "--cols", "2", "--format", "tsv"]);
    assert!(tsv.lines().any(|l| l == "1\t3\t10"));
    assert_eq!(tsv.lines().count(), 12);
}

#[test]
fn render_json_matches_library() {
    let dir = TempDir::new().unwrap();
    let e1 = build_file(&dir, "e1.json", &["--c", "4", "--n", "2", "--free", "2,-3,-1"]);
    let (_, out, _) = run(&["render", "--in", &e1, "--from", "-3", "--cols", "12", "--format", "json"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    let descriptor: FriezeDescriptor = serde_json::from_str(&fs::read_to_string(&e1).unwrap()).unwrap();
    let f = Frieze::new(descriptor.to_seed().unwrap());
    for row in v["rows"].as_array().unwrap() {
        let k = row["k"].as_i64().unwrap();
        let values: Vec<Rat> = serde_json::from_value(row["values"].clone()).unwrap();
        assert_eq!(values, f.row(k, -3, 9).unwrap());
    }
}

#[test]
fn analyze_monotonic_example() {
    let dir = TempDir::new().unwrap();
    let m = build_file(&dir, "m.json", &["--c", "-4", "--n", "2", "--seed", "4,3,3,4,5/2"]);
    let (code, out, _) = run(&["analyze", "--in", &m]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["s"], "8");
    assert_eq!(v["t"], "8");
    assert_eq!(v["periodicity"]["kind"], "periodic");
    assert_eq!(v["periodicity"]["period"], 5);
    assert_eq!(v["integrality"]["status"], "non_integer");
    assert_eq!(v["integrality"]["value"], "5/2");
    assert_eq!(v["classification"]["repetitive"], true);
    assert!(v["s_convention"].as_str().unwrap().contains("even"));
}

#[test]
fn reconstruct_sections() {
    let dir = TempDir::new().unwrap();
    let sec = dir.path().join("sec.json");
    fs::write(
        &sec,
        r#"{"oblique": {"anchor": 0, "orientation": "down-right"}, "values": ["0","1","-4","-3","5","2","-1","0"]}"#,
    )
    .unwrap();
    let (code, out, err) = run(&["reconstruct", "--c", "1", "--n", "4", "--in", path_str(&sec)]);
    assert_eq!(code, 0, "{err}");
    let d: FriezeDescriptor = serde_json::from_str(&out).unwrap();
    let f = Frieze::new(d.to_seed().unwrap());
    let cycle: Vec<String> = f.first_row_range(0, 6).iter().map(Rat::to_string).collect();
    assert_eq!(cycle, ["-4", "1", "-3", "1", "-3", "2", "-1"]);

    fs::write(
        &sec,
        r#"{"points": [[2,0],[2,1],[2,2],[1,2],[1,3],[0,3]], "values": ["0","1","-3","-2","10","0"]}"#,
    )
    .unwrap();
    let (code, out, _) = run(&["reconstruct", "--c", "4", "--n", "2", "--in", path_str(&sec)]);
    assert_eq!(code, 0);
    let d: FriezeDescriptor = serde_json::from_str(&out).unwrap();
    assert_eq!(Frieze::new(d.to_seed().unwrap()).first_row(4).to_string(), "4/5");

    fs::write(&sec, r#"{"oblique": {"anchor": 1, "orientation": "up-right"}, "values": ["0","1","0","2","0"]}"#).unwrap();
    let (code, _, err) = run(&["reconstruct", "--c", "-1", "--n", "1", "--in", path_str(&sec)]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: ZeroOnSection:"), "{err}");
}

#[test]
fn transform_ops() {
    let dir = TempDir::new().unwrap();
    let p = build_file(&dir, "p.json", &["--c", "-4", "--n", "2", "--seed", "1,6,6,1,16"]);
    let g = dir.path().join("g.json");
    let (code, _, _) = run(&["transform", "--in", &p, "--op", "gamma", "--out", path_str(&g)]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!(v["seed"], serde_json::json!(["3", "6", "6", "1", "18", "2"]));
    assert_eq!(v["n"], 3);

    let (code, out, _) = run(&["transform", "--in", path_str(&g), "--op", "gamma-inv:6"]);
    assert_eq!(code, 0);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["seed"], serde_json::json!(["1", "6", "6", "1", "16"]));
    let (code, out, _) = run(&["transform", "--in", path_str(&g), "--op", "gamma-inv"]);
    assert_eq!(code, 0);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["n"], 2);

    let (code, _, err) = run(&["transform", "--in", &p, "--op", "gamma-inv:2"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: NotInduced:"), "{err}");

    let e1 = build_file(&dir, "e1.json", &["--c", "4", "--n", "2", "--free", "2,-3,-1"]);
    let (_, out, _) = run(&["transform", "--in", &e1, "--op", "flip"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["c"], "-4");
    assert_eq!(v["seed"], serde_json::json!(["-2", "-3", "1", "4/5", "-35/8"]));
    let (_, out, _) = run(&["transform", "--in", &e1, "--op", "scale:2"]);
    assert_eq!(serde_json::from_str::<Value>(&out).unwrap()["c"], "16");
    let (code, _, err) = run(&["transform", "--in", &e1, "--op", "gamma"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: NotRepetitive:"));
    assert_eq!(run(&["transform", "--in", &e1, "--op", "rotate"]).0, 2);
    let (code, _, err) = run(&["transform", "--in", &e1, "--op", "scale:0"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: ZeroScale:"));
}

#[test]
fn verify_identities_and_relations() {
    let (code, out, _) = run(&["verify", "--identities", "--max-k", "6"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.starts_with("ok ")));
    assert!(out.contains("ok concat(3,3)"));
    assert!(out.contains("ok signflip(6,odd)"));

    let dir = TempDir::new().unwrap();
    let e1 = build_file(&dir, "e1.json", &["--c", "4", "--n", "2", "--free", "2,-3,-1"]);
    let (code, out, _) = run(&["verify", "--in", &e1, "--from", "-20", "--cols", "40"]);
    assert_eq!(code, 0);
    assert_eq!(out, "ok local relations on anchors -20..20\n");
}

#[test]
fn binary_is_deterministic() {
    let exe = env!("CARGO_BIN_EXE_cfrieze");
    let args = ["build", "--c", "4", "--n", "2", "--free", "2,-3,-1"];
    let a = Command::new(exe).args(args).output().unwrap();
    let b = Command::new(exe).args(args).output().unwrap();
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let bad = Command::new(exe).args(["build", "--n", "2"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
