use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const EPS: &str = r#"{"arity":3,"dim":4,"brackets":[
  {"on":[2,3,4],"value":{"1":"1"}},{"on":[1,3,4],"value":{"2":"-1"}},
  {"on":[1,2,4],"value":{"3":"1"}},{"on":[1,2,3],"value":{"4":"-1"}}]}"#;
const ZERO: &str = r#"{"arity":3,"dim":4,"brackets":[]}"#;
const SL2: &str = r#"{"arity":2,"dim":3,"brackets":[
  {"on":[1,2],"value":{"3":"1"}},{"on":[1,3],"value":{"1":"2"}},{"on":[2,3],"value":{"2":"-2"}}]}"#;
// [e1,e2,e3] = e1 and [e1,e2,e4] = e1 break the fundamental identity
const BROKEN: &str = r#"{"arity":3,"dim":4,"brackets":[
  {"on":[1,2,3],"value":{"4":"1"}},{"on":[1,2,4],"value":{"3":"1"}},{"on":[1,3,4],"value":{"1":"1"}}]}"#;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_filippov"))
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_eps_holds() {
    let d = TempDir::new().unwrap();
    let a = write(&d, "eps.json", EPS);
    let o = run(&["check", s(&a)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("fundamental identity: holds"));
}

#[test]
fn check_broken_fails_with_witness() {
    let d = TempDir::new().unwrap();
    let a = write(&d, "b.json", BROKEN);
    let o = run(&["--format", "json", "check", s(&a)]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "fails");
    assert!(v["result"]["witness"].is_object());
}

#[test]
fn cohomology_of_zero_bracket() {
    let d = TempDir::new().unwrap();
    let a = write(&d, "z.json", ZERO);
    let o = run(&["--format", "json", "cohomology", s(&a), "--degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["betti"], 16);
    assert_eq!(v["result"]["dim_cochains"], 16);
}

#[test]
fn extend_with_zero_obstruction_emits_cochain() {
    let d = TempDir::new().unwrap();
    let p = write(&d, "p.json", &format!(r#"{{"base":{ZERO},"order":0,"terms":[]}}"#));
    let out = d.path().join("next.json");
    let o = run(&["--output", s(&out), "deform", "extend", s(&p)]);
    assert_eq!(o.status.code(), Some(0));
    let c: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(c["degree"], 1);
    assert_eq!(c["arity"], 3);
    assert_eq!(c["dim"], 4);
    assert!(c["entries"].as_array().unwrap().is_empty());
}

#[test]
fn input_errors_exit_2() {
    let d = TempDir::new().unwrap();
    let bad = write(&d, "bad.json", "{bad");
    let o = run(&["check", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));

    let o = run(&["--format", "json", "check", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "error");

    let missing = d.path().join("nope.json");
    assert_eq!(run(&["check", s(&missing)]).status.code(), Some(2));

    // index out of range
    let oob = write(
        &d,
        "oob.json",
        r#"{"arity":2,"dim":2,"brackets":[{"on":[1,3],"value":{}}]}"#,
    );
    assert_eq!(run(&["check", s(&oob)]).status.code(), Some(2));

    // reduce-lie wants a Lie algebra
    let eps = write(&d, "eps.json", EPS);
    assert_eq!(run(&["reduce-lie", s(&eps)]).status.code(), Some(2));
}

#[test]
fn output_is_byte_stable() {
    let d = TempDir::new().unwrap();
    let a = write(&d, "sl2.json", SL2);
    let first = run(&[
        "--format",
        "json",
        "deform",
        "rigidity",
        s(&a),
        "--trials",
        "2",
        "--seed",
        "7",
    ]);
    let second = run(&[
        "--threads",
        "1",
        "--format",
        "json",
        "deform",
        "rigidity",
        s(&a),
        "--trials",
        "2",
        "--seed",
        "7",
    ]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);

    let e = write(&d, "eps.json", EPS);
    let x = run(&["cohomology", s(&e), "--degree", "1"]);
    let y = run(&["cohomology", s(&e), "--degree", "1"]);
    assert_eq!(x.stdout, y.stdout);
}

#[test]
fn reduce_lie_on_sl2() {
    let d = TempDir::new().unwrap();
    let a = write(&d, "sl2.json", SL2);
    let o = run(&["reduce-lie", s(&a)]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    assert!(t.contains("status: holds"));
    assert_eq!(t.matches(": agree").count(), 3);
}

#[test]
fn nijenhuis_identity_generates_a_path() {
    let d = TempDir::new().unwrap();
    let a = write(&d, "eps.json", EPS);
    let id = write(
        &d,
        "n.json",
        r#"[["1","0","0","0"],["0","1","0","0"],["0","0","1","0"],["0","0","0","1"]]"#,
    );
    let out = d.path().join("path.json");
    let o = run(&["--output", s(&out), "nijenhuis", s(&a), s(&id), "--generate-path"]);
    assert_eq!(o.status.code(), Some(0));
    let path = std::fs::read_to_string(&out).unwrap();
    let o = run(&["deform", "check", &out.to_string_lossy(), "--full"]);
    assert_eq!(o.status.code(), Some(0), "{path}");
    assert!(stdout(&o).contains("deformation equations: holds"));
}

#[test]
fn obstruction_reports_cocycle() {
    let d = TempDir::new().unwrap();
    let p = write(&d, "p.json", &format!(r#"{{"base":{EPS},"order":0,"terms":[]}}"#));
    let o = run(&["--format", "json", "obstruction", s(&p)]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["is_cocycle"], true);
}

#[test]
fn algebroid_examples_round_trip_through_check() {
    let d = TempDir::new().unwrap();
    let top = d.path().join("top.json");
    let o = run(&[
        "--output",
        s(&top),
        "algebroid",
        "example-topform",
        "--m",
        "3",
        "--n",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["algebroid", "check", s(&top)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("algebroid axioms: holds"));

    let e = write(&d, "eps.json", EPS);
    let fc = d.path().join("fc.json");
    let f = r#"[{"exponents":[0,1,0,0],"coeff":"1"}]"#;
    let o = run(&["--output", s(&fc), "algebroid", "example-fc", s(&e), "--f", f]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["algebroid", "check", s(&fc), "--no-symbols"]);
    assert_eq!(o.status.code(), Some(0));

    assert_eq!(
        run(&["algebroid", "example-topform", "--m", "2", "--n", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn algebroid_violation_exits_1() {
    let d = TempDir::new().unwrap();
    let a = write(
        &d,
        "v.json",
        r#"{"num_vars":1,"rank":2,"arity":2,
            "brackets":[{"on":[1,2],"value":[[{"exponents":[1],"coeff":"1"}],[]]}],
            "anchor":[{"on":[1],"field":[[{"exponents":[0],"coeff":"1"}]]}]}"#,
    );
    let o = run(&["algebroid", "check", s(&a)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness"));
}
