use std::path::PathBuf;
use std::process::{Command, Output};

fn quiverkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quiverkit")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("quiverkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn one_vertex_algebra_has_dimension_one() {
    let f = scratch("empty.q", "vertices: 1\n");
    let o = quiverkit(&["build", f.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("dimension: 1\n"));
}

#[test]
fn mutation_output_feeds_back_in() {
    let o = quiverkit(&["mutate", "ex310", "3", "4"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let f = scratch("mutated.q", &stdout(&o));
    let o = quiverkit(&["is-acyclic", f.to_str().unwrap()]);
    assert_eq!(stdout(&o), "true\n");
    let o = quiverkit(&["is-acyclic", "ex310"]);
    assert_eq!(stdout(&o), "false\n");
}

#[test]
fn exit_codes() {
    let o = quiverkit(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Usage"));
    let o = quiverkit(&["tau", "d4_clustertilted"]);
    assert_eq!(o.status.code(), Some(2));
    let o = quiverkit(&["--format", "dot", "ext", "d4_tilted", "S:1", "S:4", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: "));

    for args in [
        &["build", "no/such/file.q"][..],
        &["tau", "d4_clustertilted", "P:9"],
        &["relext", "d4_clustertilted"],
        &["verify-thm1", "d4_tilted", "S:2"],
        &["mutate", "d4_clustertilted", "7"],
    ] {
        let o = quiverkit(args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        let e = stderr(&o);
        assert!(e.starts_with("error: ") && e.lines().count() == 1, "{args:?}: {e}");
    }
    let bad = scratch("bad.q", "vertices: 1 2\narrows: a: 1 -> 3\n");
    let o = quiverkit(&["build", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2, column 17"), "{}", stderr(&o));
}

#[test]
fn json_is_deterministic_and_versioned() {
    for args in [&["--format", "json", "knit", "d4_clustertilted"][..], &["--format", "json", "relext", "cm_s2"]] {
        let a = quiverkit(args);
        let b = quiverkit(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
        let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
        assert_eq!(v["schema"], 1);
    }
}

#[test]
fn dot_output() {
    let f = scratch("a2.q", "vertices: 1 2\narrows: a: 1 -> 2\n");
    let o = quiverkit(&["--format", "dot", "quiver", f.to_str().unwrap()]);
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("->").count(), 1);
    let o = quiverkit(&["--format", "dot", "knit", "d4_clustertilted"]);
    let dot = stdout(&o);
    assert!(dot.contains("dashed"));
}

#[test]
fn field_override() {
    let o = quiverkit(&["--field", "gf:32003", "build", "d4_clustertilted"]);
    assert!(stdout(&o).starts_with("field: gf(32003)\ndimension: 10\n"));
    let o = quiverkit(&["--field", "gf:2", "knit", "d4_clustertilted"]);
    assert!(stdout(&o).contains("complete: true"));
    let o = quiverkit(&["--field", "gf:4", "build", "d4_clustertilted"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn module_files() {
    let o = quiverkit(&["--format", "json", "tau", "d4_clustertilted", "S:2"]);
    let f = scratch("p3.json", &stdout(&o));
    let spec = format!("@{}", f.display());
    let o = quiverkit(&["tauinv", "d4_clustertilted", &spec]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "2 (0,1,0,0)\n");
}

#[test]
fn corpus_passes() {
    let o = quiverkit(&["corpus"]);
    assert!(o.status.success(), "{}{}", stdout(&o), stderr(&o));
    assert!(stdout(&o).ends_with(" checks, 0 failed\n"));
}
