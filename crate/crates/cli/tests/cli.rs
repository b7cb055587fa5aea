use std::path::Path;
use std::process::{Command, Output};

fn liesolv(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_liesolv")).current_dir(dir).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn family(dir: &Path, args: &[&str], out: &str) {
    let mut a = vec!["family"];
    a.extend_from_slice(args);
    a.extend_from_slice(&["-o", out]);
    assert!(liesolv(dir, &a).status.success());
}

#[test]
fn heisenberg_file_is_solvable() {
    let dir = tempfile::tempdir().unwrap();
    family(dir.path(), &["heisenberg"], "h3.json");
    let o = liesolv(dir.path(), &["axioms", "h3.json"]);
    assert_eq!(o.status.code(), Some(0));
    let o = liesolv(dir.path(), &["solvable", "h3.json"]);
    assert_eq!(stdout(&o).trim(), "ReachedZero, derived length 2, dims: 8 → 3 → 0");
    let o = liesolv(dir.path(), &["classify", "h3.json"]);
    assert!(stdout(&o).starts_with("Solvable I_CodimLE1Abelian"));
}

#[test]
fn n7_is_refuted_by_the_four_generator_test() {
    let dir = tempfile::tempdir().unwrap();
    family(dir.path(), &["n7"], "n7.json");
    let o = liesolv(dir.path(), &["classify", "n7.json"]);
    assert_eq!(o.status.code(), Some(0));
    let first = stdout(&o).lines().next().unwrap_or_default().to_string();
    assert_eq!(first, "NotSolvable (necessary test: four-generator relation witness non-nilpotent)");
}

#[test]
fn jacobi_mutation_is_reported_with_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    family(dir.path(), &["heisenberg"], "h3.json");
    let mut v: serde_json::Value = serde_json::from_slice(&std::fs::read(dir.path().join("h3.json")).unwrap()).unwrap();
    // [e1, e3] = e1 breaks Jacobi on (e1, e2, e3)
    v["brackets"].as_array_mut().unwrap().push(serde_json::json!({"i": 0, "j": 2, "value": {"0": "1"}}));
    std::fs::write(dir.path().join("bad.json"), v.to_string()).unwrap();
    let o = liesolv(dir.path(), &["axioms", "bad.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("jacobi: triple (e1, e2, e3)"));
    assert_eq!(liesolv(dir.path(), &["classify", "bad.json"]).status.code(), Some(2));
}

#[test]
fn malformed_files_exit_2_with_position() {
    let dir = tempfile::tempdir().unwrap();
    let missing_pmap = r#"{"version": 1, "field": {"kind": "gf2k", "k": 1, "modulus": [1, 1]},
        "restricted": true, "dim": 1, "names": ["x"]}"#;
    std::fs::write(dir.path().join("a.json"), missing_pmap).unwrap();
    let o = liesolv(dir.path(), &["classify", "a.json"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("a.json:2:") && err.contains("pmap"), "{err}");
    let unknown = missing_pmap.replace("\"dim\"", "\"colour\": 1, \"dim\"");
    std::fs::write(dir.path().join("b.json"), unknown).unwrap();
    assert_eq!(liesolv(dir.path(), &["axioms", "b.json"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(liesolv(dir.path(), &["classify"]).status.code(), Some(1));
    assert_eq!(liesolv(dir.path(), &["--help"]).status.code(), Some(0));
    family(dir.path(), &["ord-heisenberg"], "oh3.json");
    assert_eq!(liesolv(dir.path(), &["classify", "oh3.json"]).status.code(), Some(1));
    assert_eq!(liesolv(dir.path(), &["family", "fam-i", "--field", "gf3", "-o", "x.json"]).status.code(), Some(1));
}

#[test]
fn ordinary_commands() {
    let dir = tempfile::tempdir().unwrap();
    family(dir.path(), &["ord-free-class2"], "free.json");
    let o = liesolv(dir.path(), &["ordinary", "witness", "free.json"]);
    assert!(stdout(&o).contains("z14^3*z23 + z13*z14^2*z24 + z12*z14^2*z34"));
    family(dir.path(), &["ord-heisenberg"], "oh3.json");
    let o = liesolv(dir.path(), &["ordinary", "classify", "oh3.json"]);
    assert!(stdout(&o).starts_with("Solvable (ii)"));
    let o = liesolv(dir.path(), &["ordinary", "envelope", "oh3.json", "--m-max", "2"]);
    assert!(stdout(&o).starts_with("not stabilized"));
}

#[test]
fn rational_example_commutator_is_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let o = liesolv(dir.path(), &["rational-example"]);
    let text = stdout(&o);
    assert!(text.starts_with("(1) [[x,x*x1],[x1,x1*x2*x3],x2] = "));
    assert!(text.lines().nth(1).unwrap().contains("nonzero: true"));
}

#[test]
fn json_reports_are_deterministic_and_corpus_agrees() {
    let dir = tempfile::tempdir().unwrap();
    family(dir.path(), &["fam-iii", "--field", "gf4", "--center-dim", "1", "--toral"], "f3.json");
    family(dir.path(), &["random", "--dim", "4", "--instance-seed", "9"], "r.json");
    family(dir.path(), &["ord-two-eigenvectors"], "o4.json");
    let a = liesolv(dir.path(), &["--json", "corpus", "."]);
    let b = liesolv(dir.path(), &["--json", "corpus", "."]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["result"]["disagreements"], 0);
    assert_eq!(v["result"]["files"].as_array().unwrap().len(), 3);
}
