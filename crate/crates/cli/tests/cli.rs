use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn relstab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relstab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_worked_example() {
    let out = relstab(&["analyze", path(&data("example_m.json")), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["projective"], false);
    assert_eq!(v["weakly_projective"], false);
    assert_eq!(v["gproj"], false);
    assert_eq!(v["pdim"], "1");
}

#[test]
fn tensor_with_trivial_echoes_profile() {
    let x = data("example_m.json");
    let out = relstab(&["op", "tensor", path(&data("trivialZ.json")), path(&x), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let t = dir.path().join("t.json");
    std::fs::write(&t, &out.stdout).unwrap();
    let a = json_of(&relstab(&["analyze", path(&t), "--json"]));
    let b = json_of(&relstab(&["analyze", path(&x), "--json"]));
    assert_eq!(a, b);
}

#[test]
fn betti_of_f2c2() {
    let out = relstab(&["betti", path(&data("f2c2.json")), "-n", "10", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["betti"], serde_json::json!([1, 1, 1, 1, 1, 1, 1, 1, 1, 1]));
    assert_eq!(v["complexity"]["complexity"], 1);
}

#[test]
fn exit_codes() {
    assert_eq!(relstab(&["paper", "verify-example"]).status.code(), Some(0));
    assert_eq!(
        relstab(&["paper", "verify-example", "--constant", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(relstab(&["betti", path(&data("trivialZ.json"))]).status.code(), Some(3));
    assert_eq!(relstab(&["pdim", "/nonexistent/module.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(
        &bad,
        r#"{"ring":{"type":"Z"},"group":"C2","factors":[0],"action":{"1":[[2]]}}"#,
    )
    .unwrap();
    assert_eq!(relstab(&["module", "validate", path(&bad)]).status.code(), Some(2));
    let out = relstab(&[
        "check",
        "fpd-tensor",
        path(&data("example_m.json")),
        path(&data("example_m.json")),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(relstab(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn entry_cap_is_input_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_relstab"))
        .args(["analyze", path(&data("example_m.json"))])
        .env("RELSTAB_MAX_ENTRY_BITS", "2")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_relstab"))
        .args(["analyze", path(&data("example_m.json"))])
        .env("RELSTAB_MAX_ENTRY_BITS", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn homological_commands() {
    let t = data("trivialZ.json");
    let v = json_of(&relstab(&[
        "stable-hom",
        path(&t),
        path(&t),
        "--ideal",
        "proj",
        "--json",
    ]));
    assert_eq!(v["factors"], serde_json::json!([2]));
    let v = json_of(&relstab(&[
        "stable-hom",
        path(&t),
        path(&t),
        "--ideal",
        "wproj",
        "--json",
    ]));
    assert_eq!(v["factors"], serde_json::json!([2]));
    let v = json_of(&relstab(&["ext", path(&t), path(&t), "-i", "2", "--json"]));
    assert_eq!(v["factors"], serde_json::json!([2]));
    let v = json_of(&relstab(&["syzygy", path(&t), "--kind", "relative-co", "--json"]));
    assert_eq!(v["action"]["1"], serde_json::json!([[-1]]));
    let v = json_of(&relstab(&[
        "syzygy",
        path(&data("example_m.json")),
        "-n",
        "2",
        "--json",
    ]));
    assert_eq!(v["factors"], serde_json::json!([]));
    let v = json_of(&relstab(&["gproj", "test", path(&data("signZ.json")), "--json"]));
    assert_eq!(v["gorenstein_projective"], true);
    let v = json_of(&relstab(&["hom", path(&t), path(&data("freeZC2.json")), "--json"]));
    assert_eq!(v["factors"], serde_json::json!([0]));
    let v = json_of(&relstab(&[
        "module",
        "fingerprint",
        path(&data("example_m.json")),
        "--json",
    ]));
    assert_eq!(v["hom_to_trivial"], serde_json::json!([]));
}

#[test]
fn decomposition_commands() {
    let v = json_of(&relstab(&["approx", "gproj", path(&data("trivialZ.json")), "--json"]));
    assert_eq!(v["gproj_part"]["factors"], serde_json::json!([0, 0, 0]));
    let v = json_of(&relstab(&[
        "approx",
        "gproj",
        path(&data("example_m.json")),
        "--r-split",
        "--json",
    ]));
    assert_eq!(v["r_split"], true);
    assert!(v["section"].is_array());
    let v = json_of(&relstab(&["psi", path(&data("example_m.json")), "--json"]));
    assert_eq!(v["factors"], serde_json::json!([]));
    let out = relstab(&[
        "check",
        "fpd-tensor",
        path(&data("signZ.json")),
        path(&data("example_m.json")),
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn group_file_validation() {
    assert_eq!(
        relstab(&["group", "validate", path(&data("c2.json"))]).status.code(),
        Some(0)
    );
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("g.json");
    std::fs::write(&bad, r#"{"name":"bad","order":2,"table":[[0,1],[1,1]]}"#).unwrap();
    assert_eq!(relstab(&["group", "validate", path(&bad)]).status.code(), Some(2));
}

#[test]
fn suite_is_deterministic() {
    let cfg = data("suite_c2.json");
    let a = relstab(&["suite", "run", "--config", path(&cfg), "--json"]);
    let b = relstab(&["suite", "run", "--config", path(&cfg), "--json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = json_of(&a);
    assert_eq!(v["failures"], 0);
    let c = relstab(&["suite", "run", "--config", path(&cfg), "--seed", "2", "--json"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn empty_check_list() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.json");
    std::fs::write(
        &cfg,
        r#"{"seed":1,"ring":{"type":"Z"},"group":"C2","corpus_size":5,"checks":[]}"#,
    )
    .unwrap();
    let out = relstab(&["suite", "run", "--config", path(&cfg), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["checks"], serde_json::json!([]));
    std::fs::write(&cfg, r#"{"seed":1,"ring":{"type":"Z"},"group":"C2","checks":["nope"]}"#).unwrap();
    assert_eq!(
        relstab(&["suite", "run", "--config", path(&cfg)]).status.code(),
        Some(2)
    );
}

#[test]
fn suite_over_prime_power_ring() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.json");
    std::fs::write(
        &cfg,
        r#"{"seed":3,"ring":{"type":"Zpn","p":2,"n":2},"group":"C2","corpus_size":10}"#,
    )
    .unwrap();
    let out = relstab(&["suite", "run", "--config", path(&cfg), "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json_of(&out);
    assert_eq!(v["skipped"].as_array().unwrap().len(), 6);
    assert_eq!(v["checks"].as_array().unwrap().len(), 3);
}

#[test]
fn suite_over_prime_field_runs_everything() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("s.json");
    std::fs::write(
        &cfg,
        r#"{"seed":3,"ring":{"type":"Zpn","p":3,"n":1},"group":"C3","corpus_size":8}"#,
    )
    .unwrap();
    let out = relstab(&["suite", "run", "--config", path(&cfg), "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(json_of(&out)["skipped"], serde_json::json!([]));
}
