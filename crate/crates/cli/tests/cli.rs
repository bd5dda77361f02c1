use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn sutured(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sutured")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stderr).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const PYRAMID: &str =
    r#"{"dim": 3, "points": [["0","1","1"],["0","1","0"],["0","0","1"],["1","0","1"],["1","1","0"]]}"#;

#[test]
fn verify_example_reports_the_pyramid() {
    let o = sutured(&["verify", "--example", "cc-two-component-link"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("vertex centroid: (2/5, 3/5, 3/5)"));
    assert!(text.contains("cone count: 5"));
    assert!(text.contains("[      ok] ray union"));
    assert!(text.ends_with("result: ok\n"));
}

#[test]
fn verify_json_and_seed() {
    let o = sutured(&["--json", "verify", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["ok"], true);
    let again = sutured(&["--json", "verify", "--seed", "7"]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn norm_of_the_centred_pyramid() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "pyramid.json", PYRAMID);
    let o = sutured(&["norm", "--kind", "y", "--at", "1,0,0", "--polytope", &f, "--center"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2/5\n");
    let o = sutured(&["norm", "--kind", "z", "--at", "1,0,0", "--polytope", &f, "--center"]);
    assert_eq!(stdout(&o), "1/2\n");
    let o = sutured(&["norm", "--kind", "yt", "--at", "-1,0,0", "--polytope", &f]);
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn uncentred_seminorm_is_a_domain_error() {
    let o = sutured(&["norm", "--kind", "y", "--at", "1,0,0", "--polytope", "example:cc-two-component-link"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "not_centered");
}

#[test]
fn surface_complexities() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "s.json",
        r#"{"components": [{"chi": 1, "n": 3, "beta": 2}, {"chi": -1, "n": 4, "beta": 0}]}"#,
    );
    assert_eq!(stdout(&sutured(&["norm", "--kind", "chi", "--surface", &f])), "1\n");
    assert_eq!(stdout(&sutured(&["norm", "--kind", "chi-beta", "--surface", &f])), "2\n");
    assert_eq!(stdout(&sutured(&["norm", "--kind", "chi-s", "--surface", &f])), "7/2\n");
    let o = sutured(&["norm", "--kind", "chi"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn empty_hull_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "empty.json", r#"{"dim": 3, "points": []}"#);
    let o = sutured(&["hull", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "empty_input");
    assert!(o.stdout.is_empty());
}

#[test]
fn malformed_input_is_a_parse_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.json", r#"{"dim": 2, "points": [["1/0", "2"]]}"#);
    let o = sutured(&["hull", &f]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "parse");
    let o = sutured(&["support", "--polytope", "example:cc-two-component-link", "--at", "1,x,0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = sutured(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_json(&o)["error"], "usage");
}

#[test]
fn hull_facets_and_cones() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "pyramid.json", PYRAMID);
    let text = stdout(&sutured(&["hull", &f]));
    assert!(text.starts_with("vertices: 5\naffine dimension: 3\n"));
    assert_eq!(stdout(&sutured(&["facets", &f])).lines().count(), 5);

    let o = sutured(&["--json", "dual-cones", &f, "--check"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["cones"].as_array().unwrap().len(), 5);
    assert_eq!(v["fan_check"]["covers"], true);
    let text = stdout(&sutured(&["foliation-cones", "example:cc-two-component-link"]));
    assert!(text.starts_with("5 of 5 dual cones"));
}

#[test]
fn support_json() {
    let o = sutured(&["--json", "support", "--polytope", "example:cc-two-component-link", "--at", "0,1,1"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], "1");
    assert_eq!(v["face"].as_array().unwrap().len(), 4);
}

#[test]
fn ball_bounded_and_not() {
    let text = stdout(&sutured(&["ball", "--polytope", "example:cc-two-component-link", "--center"]));
    assert!(text.starts_with("bounded ball with"));
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "seg.json", r#"{"dim": 2, "points": [["-1","0"],["1","0"]]}"#);
    let o = sutured(&["--json", "ball", "--polytope", &f]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["bounded"], false);
}

#[test]
fn fox_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "k.fox", "generators: 2\nabelianization: 1\n1\n1\nx1 x2 x1 x2^-1 x1^-1 x2^-1\n");
    assert!(stdout(&sutured(&["fox", &f])).starts_with("polynomial: t^2 - t + 1\n"));
    let o = sutured(&["--json", "fox", "example:figure-eight", "--lspace"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["terms"][1]["coef"], -3);
    assert_eq!(v["warning"], true);
    let bad = write(dir.path(), "bad.fox", "generators: 1\nabelianization: 1\n1\nx1\n");
    let o = sutured(&["fox", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "relator_not_in_kernel");
}

#[test]
fn render_to_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_sutured"))
        .args(["render", "example:cc-two-component-link", "--cones"])
        .env("SUTURED_OUT_DIR", dir.path())
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(dir.path().join("cc-two-component-link-cones.svg")).unwrap();
    assert_eq!(svg.matches(r#"class="cone""#).count(), 5);

    let o = sutured(&["render", "example:cc-two-component-link", "--project-along", "1,1,1"]);
    assert_eq!(stdout(&o).matches(r#"class="vertex""#).count(), 5);
}

#[test]
fn render_refuses_four_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "simplex.json",
        r#"{"dim": 4, "points": [[0,0,0,0],[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]}"#,
    );
    let o = sutured(&["render", &f]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_json(&o)["error"], "render_dimension");
}

#[test]
fn unknown_example() {
    let o = sutured(&["verify", "--example", "unknown"]);
    assert_eq!(o.status.code(), Some(1));
    let msg = stderr_json(&o)["message"].as_str().unwrap().to_string();
    assert!(msg.contains("cc-two-component-link"));
}
