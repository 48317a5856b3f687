use std::process::Command;

use artk_cli::{run, Output, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_PASS, EXIT_USAGE};
use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn artk(args: &[&str]) -> Output {
    run(std::iter::once("artk").chain(args.iter().copied()))
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

#[test]
fn decompose_square() {
    let out = artk(&["decompose", &fixture("square-2345.graph"), "--strategy=star-link"]);
    assert_eq!(out.code, EXIT_PASS);
    assert_eq!(out.stdout, "(<v,w> *_<v> <v,y>) *_<w,y> (<w,x> *_<x> <x,y>)\n");
}

#[test]
fn cube_domain_json() {
    let out = artk(&["cube", "domain", &fixture("path-abc-22.graph"), "--format=json"]);
    assert_eq!(out.code, EXIT_PASS);
    assert_eq!(json(&out)["f_vector"], serde_json::json!([6, 7, 2]));
}

#[test]
fn verify_all_on_a3() {
    let out = artk(&["verify", "--suite=all", &fixture("a3.graph"), "--format=json"]);
    assert_eq!(out.code, EXIT_PASS, "{}", out.stdout);
    let report = json(&out);
    assert_eq!(report["verdict"], "pass");
    assert_eq!(report["seed"], 0);
    let suites: Vec<&str> = report["details"]["suites"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["suite"].as_str().unwrap())
        .collect();
    let mut sorted = suites.clone();
    sorted.sort();
    assert_eq!(suites, sorted);
    assert_eq!(suites.len(), 8);
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "--suite=word-problem", "--seed=7", "--format=json"];
    let path = fixture("i2-5.graph");
    let a = artk(&[&args[..], &[path.as_str()]].concat());
    let b = artk(&[&args[..], &[path.as_str()]].concat());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 7);
}

#[test]
fn infinite_groups_are_inconclusive() {
    let out = artk(&["verify", "--suite=double-coset", &fixture("path-abc-22.graph")]);
    assert_eq!(out.code, EXIT_INCONCLUSIVE);
    let out = artk(&["parabolic", "intersect", &fixture("path-abc-22.graph"), "a", "b", "e", "c"]);
    assert_eq!(out.code, EXIT_INCONCLUSIVE);
    assert!(out.stderr.contains("cap"));
}

#[test]
fn usage_errors() {
    assert_eq!(artk(&["bogus"]).code, EXIT_USAGE);
    assert_eq!(artk(&["coxeter", "reduce", &fixture("a3.graph"), "a q"]).code, EXIT_USAGE);
    assert_eq!(artk(&["graph", "/nonexistent.graph"]).code, EXIT_USAGE);
    assert_eq!(artk(&["verify", "--suite=nope", &fixture("a3.graph")]).code, EXIT_USAGE);
    assert_eq!(artk(&["--cap-braid=0", "graph", &fixture("a3.graph")]).code, EXIT_USAGE);
    assert_eq!(artk(&["coxeter", "length", &fixture("a3.graph"), "a", "--format=dot"]).code, EXIT_USAGE);
    assert_eq!(artk(&["tree", "ball", &fixture("triangle.graph")]).code, EXIT_USAGE);
}

#[test]
fn coxeter_commands() {
    let g = fixture("i2-3.graph");
    assert_eq!(artk(&["coxeter", "reduce", &g, "v w v w"]).stdout, "w v\n");
    assert_eq!(artk(&["coxeter", "reduce", &g, "v v"]).stdout, "e\n");
    assert_eq!(artk(&["coxeter", "equal", &g, "v w v", "w v w"]).stdout, "true\n");
    assert_eq!(artk(&["coxeter", "length", &g, "v w v w"]).stdout, "2\n");
    assert_eq!(artk(&["coxeter", "coset-min", &g, "v w v", "--subset=v"]).stdout, "v w\n");
    assert_eq!(artk(&["coxeter", "coset-min", &g, "v w v", "--subset=v", "--side=left"]).stdout, "w v\n");
    let out = artk(&["coxeter", "double-coset", &g, "v w v", "--left=v", "--right=w", "--format=json"]);
    let d = json(&out);
    assert_eq!((d["h1"].as_str(), d["g0"].as_str(), d["h2"].as_str()), (Some("v"), Some("w v"), Some("e")));
}

#[test]
fn artin_commands() {
    let g = fixture("i2-3.graph");
    assert_eq!(artk(&["artin", "theta", &g, "v^-1 w v"]).stdout, "v w v\n");
    assert_eq!(artk(&["artin", "free-reduce", &g, "v w w^-1 v"]).stdout, "v v\n");
    assert_eq!(artk(&["artin", "equal", &g, "v w v", "w v w"]).code, EXIT_PASS);
    assert_eq!(artk(&["artin", "equal", &g, "v w", "w v"]).code, EXIT_FAIL);
    let lift = artk(&["artin", "lift", &g, "v w", "--from=v", "--to=w", "--format=json"]);
    assert_eq!(lift.code, EXIT_PASS);
    let l = json(&lift);
    assert_eq!(l["generator_map"]["v"], "w");
    assert_eq!(l["certificates_replay"], true);
    assert_eq!(artk(&["artin", "lift", &g, "v", "--from=v", "--to=w"]).code, EXIT_FAIL);
}

#[test]
fn parabolic_commands() {
    let a3 = fixture("a3.graph");
    let out = artk(&["parabolic", "check", &a3, "--property=int++", "--format=json"]);
    assert_eq!(out.code, EXIT_PASS);
    assert_eq!(json(&out)["property"], "Int++");
    let out = artk(&["parabolic", "closure", &a3, "a b"]);
    assert_eq!(out.code, EXIT_PASS);
    assert!(out.stdout.ends_with("closure: W{a,b}\n"), "{}", out.stdout);
    let out = artk(&["parabolic", "intersect", &a3, "e", "a b", "e", "b c"]);
    assert_eq!(out.stdout, "W{b}\n");
    // infinite group: a single generator's closure is certified by rank
    let out = artk(&["parabolic", "closure", &fixture("path-abc-22.graph"), "b"]);
    assert_eq!(out.code, EXIT_PASS);
    assert_eq!(artk(&["parabolic", "check", &fixture("path-abc-22.graph"), "--property=int"]).code, EXIT_PASS);
}

#[test]
fn tree_commands() {
    let out = artk(&["tree", "amalgam", "4", "6", "--radius=1", "--format=json"]);
    let t = json(&out);
    assert_eq!(t["backend"], "finite-table");
    assert_eq!(t["vertices"].as_array().unwrap().len(), 10);
    let dot = artk(&["tree", "ball", &fixture("path-abc-22.graph"), "--pivot=a,c", "--radius=3", "--dot"]);
    assert!(dot.stdout.starts_with("graph tree {"));
    assert_eq!(dot.stdout.matches(" -- ").count(), 7);
    let fix = artk(&["tree", "fix", &fixture("path-abc-22.graph"), "b", "--pivot=a,c", "--format=json"]);
    assert_eq!(json(&fix)["connected"], true);
    assert_eq!(artk(&["tree", "amalgam", "4", "6", "--over=4"]).code, EXIT_USAGE);
}

#[test]
fn cube_commands() {
    let p = fixture("path-abc-22.graph");
    let fix = artk(&["cube", "fix", &p, "b", "--domain"]);
    assert!(fix.stdout.starts_with("3 fixed vertices, 2 fixed cubes"), "{}", fix.stdout);
    let ball = artk(&["cube", "ball", &fixture("i2-3.graph"), "--radius=3", "--format=json"]);
    assert_eq!(json(&ball)["f_vector"], serde_json::json!([13, 18, 6]));
    let flag = artk(&["cube", "flagcheck", &fixture("triangle.graph"), "--radius=2"]);
    assert_eq!(flag.code, EXIT_PASS, "{}", flag.stdout);
}

#[test]
fn out_file() {
    let dir = std::env::temp_dir().join(format!("artk-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.dot");
    let out = artk(&["cube", "domain", &fixture("path-abc-22.graph"), "--format=dot", "--out", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_PASS);
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("graph cubes {"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_artk");
    let ok = Command::new(bin).args(["graph", &fixture("square-2345.graph")]).output().unwrap();
    assert_eq!(ok.status.code(), Some(EXIT_PASS));
    assert!(String::from_utf8(ok.stdout).unwrap().starts_with("vertices: v w x y\n"));
    let bad = Command::new(bin).arg("--nope").output().unwrap();
    assert_eq!(bad.status.code(), Some(EXIT_USAGE));
}
