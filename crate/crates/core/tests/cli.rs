use std::path::Path;

use serde_json::Value;
use tripencil::cli::{run, EXIT_IO, EXIT_OK, EXIT_PRECONDITION, EXIT_VERIFY};
use tripencil::io::{InstanceFile, PencilFile};
use tripencil::oracle::{self, GeneratorConfig};
use tripencil::{Complex64, Pencil};

fn call(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(
        std::iter::once("tripencil").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(path: &Path, text: &str) -> String {
    std::fs::write(path, text).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn direct_on_a_single_entry_pencil() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(&dir.path().join("p.json"), r#"{"c":[1.0],"d":[],"a":[0.0],"b":[]}"#);
    let (code, out, _) = call(&["direct", &f, "--at", "2.0"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("S_1 = 5.000000000000000e-1"), "{out}");

    let (code, out, _) = call(&["--json", "direct", &f, "--at", "2.0"]);
    assert_eq!(code, EXIT_OK);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["S"][0]["value"], serde_json::json!([0.5, 0.0]));
}

#[test]
fn direct_reports_the_spectrum() {
    let dir = tempfile::tempdir().unwrap();
    let p = Pencil::from_parts(
        vec![2.0, 2.0],
        vec![0.5],
        vec![0.0, 1.0],
        vec![Complex64::new(0.2, 0.7)],
    )
    .unwrap();
    let f = write(
        &dir.path().join("p.json"),
        &serde_json::to_string(&PencilFile::from(&p)).unwrap(),
    );
    let (code, out, _) = call(&["--json", "direct", &f, "--at", "0.3,-1", "--all", "--spectrum"]);
    assert_eq!(code, EXIT_OK);
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["spectrum"].as_array().unwrap().len(), 2);
    assert_eq!(doc["P"].as_array().unwrap().len(), 3);
}

#[test]
fn generate_solve_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_string_lossy().into_owned();
    let (code, _, err) = call(&["generate", "--n", "5", "--k", "2", "--seed", "3", "--out", &d]);
    assert_eq!(code, EXIT_OK, "{err}");
    let inst = format!("{d}/instance.json");
    let res = format!("{d}/result.json");
    let (code, out, _) = call(&["solve", &inst, "--out", &res]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("b_4 = "));
    let (code, out, _) = call(&["verify", "--truth", &format!("{d}/truth.json"), "--result", &res]);
    assert_eq!(code, EXIT_OK);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["passed"], Value::Bool(true));
    assert!(report["delta_magnitudes"].as_array().unwrap().len() == 3);
}

#[test]
fn verify_fails_against_the_wrong_truth() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_string_lossy().into_owned();
    call(&["generate", "--n", "4", "--k", "1", "--seed", "1", "--out", &d]);
    call(&[
        "solve",
        &format!("{d}/instance.json"),
        "--out",
        &format!("{d}/result.json"),
    ]);
    let g = oracle::generate_instance(&GeneratorConfig::new(4, 1, 2)).unwrap();
    let other = write(
        &dir.path().join("other.json"),
        &serde_json::to_string(&PencilFile::from(&g.truth)).unwrap(),
    );
    let (code, out, _) = call(&["verify", "--truth", &other, "--result", &format!("{d}/result.json")]);
    assert_eq!(code, EXIT_VERIFY);
    let report: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(report["passed"], Value::Bool(false));
}

#[test]
fn real_pole_is_a_precondition_failure() {
    let g = oracle::generate_instance(&GeneratorConfig::new(3, 1, 11)).unwrap();
    let mut b = g.truth.b().to_vec();
    b[2] = Complex64::new(0.3 * g.truth.d()[2], 0.0);
    let truth = Pencil::from_parts(g.truth.c().to_vec(), g.truth.d().to_vec(), g.truth.a().to_vec(), b).unwrap();
    let (l, m) = oracle::extreme_pair(&truth).unwrap();
    let inst = oracle::instance_from_truth(&truth, 1, l, m).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        &dir.path().join("i.json"),
        &serde_json::to_string(&InstanceFile::from(&inst)).unwrap(),
    );
    let (code, _, err) = call(&["solve", &f]);
    assert_eq!(code, EXIT_PRECONDITION);
    assert!(err.contains("Delta_2"), "{err}");
    assert!(err.contains("hypothesis:"), "{err}");
}

#[test]
fn mfun_reconstructs_the_tail() {
    let g = oracle::generate_instance(&GeneratorConfig::new(4, 1, 5)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        &dir.path().join("p.json"),
        &serde_json::to_string(&PencilFile::from(&g.truth)).unwrap(),
    );
    let (code, out, err) = call(&["--json", "mfun", &f, "--omega", "-7,0.5", "--k", "1", "--reconstruct"]);
    assert_eq!(code, EXIT_OK, "{err}");
    let doc: Value = serde_json::from_str(&out).unwrap();
    let a = doc["reconstruct"]["a"].as_array().unwrap();
    assert_eq!(a.len(), 3);
    for (i, v) in a.iter().enumerate() {
        assert!((v.as_f64().unwrap() - g.truth.a()[2 + i]).abs() < 1e-8);
    }
}

#[test]
fn input_problems_exit_with_io_code() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.json").to_string_lossy().into_owned();
    assert_eq!(call(&["solve", &missing]).0, EXIT_IO);
    let bad = write(&dir.path().join("bad.json"), "{ not json");
    assert_eq!(call(&["direct", &bad]).0, EXIT_IO);
    assert_eq!(call(&["frobnicate"]).0, EXIT_IO);
    assert_eq!(call(&["direct", &bad, "--at", "1,2,3"]).0, EXIT_IO);
}
