use std::process::{Command, Output};

fn sturm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sturm"))
        .args(args)
        .current_dir(concat!(env!("CARGO_MANIFEST_DIR"), "/../.."))
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn check_identity_passes() {
    let o = sturm(&["check", "1 2 3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sturm=true"));
}

#[test]
fn check_failure_and_parse_error() {
    assert_eq!(sturm(&["check", "1 3 2"]).status.code(), Some(1));
    assert_eq!(sturm(&["check", "1 two 3"]).status.code(), Some(2));
    assert_eq!(sturm(&["check"]).status.code(), Some(2));
    assert_eq!(sturm(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn check_ball_on_octahedron() {
    let o = sturm(&["check", "--ball", "--json", "--file", "fixtures/oct.perm"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["template"]["neighbor_sources"], true);
}

#[test]
fn analyze_octahedron_json() {
    let o = sturm(&["analyze", "--file", "fixtures/oct.perm", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["morse"][26], 3);
    assert_eq!(v["ball"]["anatomy"]["center"], 27);
    assert!(v.get("millis").is_none());
    let t = sturm(&[
        "analyze",
        "--file",
        "fixtures/oct.perm",
        "--json",
        "--timing",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&t.stdout).unwrap();
    assert!(v["millis"].is_number());
}

#[test]
fn analyze_is_deterministic() {
    let a = sturm(&["analyze", "--file", "fixtures/oct.perm", "--json"]);
    let b = sturm(&["analyze", "--file", "fixtures/oct.perm", "--json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn design_octahedron() {
    let o = sturm(&["design", "fixtures/octahedron.json"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains(
        "sigma: 1 24 19 4 5 18 17 8 9 16 25 26 15 14 13 10 7 6 3 20 23 22 21 2 11 12 27"
    ));
    assert!(out.contains("3-meander template: true"));
}

#[test]
fn design_bare_complex_lists_decorations() {
    let text = std::fs::read_to_string(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/../../fixtures/octahedron.json"
    ))
    .unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&text).unwrap();
    v.as_object_mut().unwrap().remove("decoration");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bare.json");
    std::fs::write(&path, v.to_string()).unwrap();
    let o = sturm(&["design", path.to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let out: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let sigmas: Vec<String> = out
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["pair"]["sigma"].to_string())
        .collect();
    assert_eq!(sigmas.len(), 3);
    assert!(sigmas.contains(
        &"[1,24,19,4,5,18,17,8,9,16,25,26,15,14,13,10,7,6,3,20,23,22,21,2,11,12,27]".to_string()
    ));
}

#[test]
fn design_rejects_broken_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{\"cells\": [").unwrap();
    assert_eq!(
        sturm(&["design", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn retract_and_scoop() {
    let o = sturm(&["retract", "--file", "fixtures/oct.perm", "--nose", "9", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("sturm: true"));
    assert_eq!(
        sturm(&["retract", "--file", "fixtures/oct.perm", "--nose", "9", "6"])
            .status
            .code(),
        Some(1)
    );
    let s = sturm(&["scoop", "--file", "fixtures/oct.perm", "--side", "west"]);
    assert_eq!(s.status.code(), Some(0));
    assert!(stdout(&s).contains("h0: 1 10 5 14 21 7 26 8 3 11 2"));
    assert_eq!(
        sturm(&["scoop", "1 2 3", "--side", "east"]).status.code(),
        Some(1)
    );
}

#[test]
fn roundtrips() {
    assert_eq!(
        sturm(&["roundtrip", "--file", "fixtures/oct.perm"])
            .status
            .code(),
        Some(0)
    );
    let bare = "1 24 19 4 5 18 17 8 9 16 25 26 15 14 13 10 7 6 3 20 23 22 21 2 11 12 27";
    assert_eq!(sturm(&["roundtrip", bare]).status.code(), Some(0));
    assert_eq!(
        sturm(&["roundtrip", "--planar", "1 4 3 2 5"]).status.code(),
        Some(0)
    );
    assert_eq!(sturm(&["roundtrip", "1 2 3"]).status.code(), Some(1));
}

#[test]
fn enumerate_counts_and_guard() {
    let o = sturm(&["enumerate", "--n", "7", "--json", "--jobs", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 7);
    let b = sturm(&["enumerate", "--n", "7", "--ball"]);
    assert_eq!(stdout(&b).trim(), "1 6 3 4 5 2 7");
    assert_eq!(sturm(&["enumerate", "--n", "13"]).status.code(), Some(2));
    assert_eq!(
        sturm(&["enumerate", "--n", "13", "--max-n", "13"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn render_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.svg");
    let o = sturm(&["render", "1 4 3 2 5", "--svg", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let svg = std::fs::read_to_string(&path).unwrap();
    assert_eq!(svg.matches("<path").count(), 4);
}
