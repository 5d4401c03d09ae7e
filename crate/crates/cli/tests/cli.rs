use std::path::Path;
use std::process::{Command, Output};

use effkit_core::report::validate_report;
use serde_json::Value;

fn effkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_effkit")).args(args).output().expect("binary runs")
}

/// Runs the binary, checks the report shape and returns `(exit code, report)`.
fn run(args: &[&str]) -> (i32, Value) {
    let out = effkit(args);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: stdout is not JSON: {e}"));
    validate_report(&v).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    (out.status.code().expect("exit code"), v)
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.display().to_string()
}

#[test]
fn bounds_with_pack_override() {
    let (code, v) = run(&["--pack-set", "C_c1=2", "bounds", "--which", "thm11", "--args", "d=2,h=1,r=1"]);
    assert_eq!(code, 0);
    // (2d)^(2^1) (h+1) = 16 * 2
    let ln: f64 = v["outputs"]["value"]["ln"].as_str().unwrap().parse().unwrap();
    assert_eq!(ln, 32.0);
    assert_eq!(v["certificates"]["pack"]["C_c1"], 2.0);
}

#[test]
fn ff_sunit_three_places() {
    let (code, v) = run(&["ff-sunit", "--places", "inf,z,z-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["count"], 6);
    assert_eq!(v["outputs"]["solutions"].as_array().unwrap().len(), 6);
}

#[test]
fn multdep_verdicts_and_exit_codes() {
    let (code, v) = run(&["multdep", "--values", "2,4"]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["verdict"], "dependent");
    assert_eq!(v["outputs"]["relation"], serde_json::json!(["2", "-1"]));

    let (code, v) = run(&["multdep", "--values", "2,3", "--target", "5"]);
    assert_eq!(code, 1);
    assert_eq!(v["status"], "not_found");
}

#[test]
fn presentation_commands() {
    let dir = tempfile::tempdir().unwrap();
    let golden = write(dir.path(), "golden.json", r#"{"r": 1, "q": 0, "generators": ["X1^2 - X1 - 1"], "a": "1", "b": "1", "c": "1"}"#);
    let elem = write(dir.path(), "elem.json", r#"{"num": "X1", "den": "1"}"#);
    let target = write(dir.path(), "target.txt", "X1^3 - 2*X1 - 1");
    let integers = write(dir.path(), "z.json", r#"{"r": 1, "q": 0, "generators": ["X1 - 1"]}"#);
    let gammas = write(dir.path(), "gammas.json", r#"{"gammas": [["2", "1"]], "a": "1", "b": "1", "c": "3"}"#);

    assert_eq!(run(&["solve-unit", "--pres", &golden, "--size-cap", "1"]).0, 0);
    assert_eq!(run(&["reduce", "--pres", &golden]).0, 0);
    assert_eq!(run(&["specialize", "--pres", &golden, "--elem", &elem]).0, 0);

    // X^3 - 2X - 1 = (X + 1)(X^2 - X - 1)
    let (code, v) = run(&["ideal-member", "--gens", &golden, "--target", &target]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["verdict"], "member");

    let (code, v) = run(&["solve-exp", "--pres", &integers, "--gammas", &gammas]);
    assert_eq!(code, 0);
    assert_eq!(v["outputs"]["solutions"].as_array().unwrap().len(), 2);

    let (code, v) = run(&["solve-sunit-q", "--primes", "2,3", "--abc", "1,1,1", "--cap", "8"]);
    assert_eq!(code, 0);
    assert!(!v["outputs"]["solutions"].as_array().unwrap().is_empty());
}

#[test]
fn bad_input_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty");
    std::fs::create_dir(&empty).unwrap();
    let cases: Vec<Vec<String>> = vec![
        vec!["solve-sunit-q".into(), "--primes".into(), "2,x".into(), "--abc".into(), "1,1,1".into()],
        vec!["verify-paper".into(), "--fixtures".into(), empty.display().to_string()],
        vec!["reduce".into(), "--pres".into(), dir.path().join("missing.json").display().to_string()],
        vec!["--pack-set".into(), "nonsense=1".into(), "multdep".into(), "--values".into(), "2".into()],
    ];
    for args in cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (code, v) = run(&args);
        assert_eq!(code, 2, "{args:?}");
        assert_eq!(v["status"], "bad_input");
    }
}

#[test]
fn verify_paper_and_tampering() {
    let (code, v) = run(&["verify-paper"]);
    assert_eq!(code, 0, "{v}");

    let src = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures");
    let dir = tempfile::tempdir().unwrap();
    for e in std::fs::read_dir(&src).unwrap() {
        let e = e.unwrap();
        std::fs::copy(e.path(), dir.path().join(e.file_name())).unwrap();
    }
    // one stored solution dropped
    let path = dir.path().join("exp_two.json");
    let body = std::fs::read_to_string(&path).unwrap();
    std::fs::write(&path, body.replace(r#"{"v": [0], "w": [1]}, "#, "")).unwrap();
    let (code, v) = run(&["verify-paper", "--fixtures", &dir.path().display().to_string()]);
    assert_eq!(code, 1, "{v}");
}

#[test]
fn output_is_deterministic() {
    let runs: [&[&str]; 3] = [
        &["ff-sunit", "--places", "inf,z,z-1"],
        &["solve-sunit-q", "--primes", "2,3,5", "--abc", "1,1,1", "--cap", "6"],
        &["multdep", "--values", "12,18,-2"],
    ];
    for args in runs {
        let first = effkit(args).stdout;
        assert_eq!(first, effkit(args).stdout, "{args:?}");
        let mut seq = vec!["--sequential"];
        seq.extend_from_slice(args);
        assert_eq!(first, effkit(&seq).stdout, "{args:?} with --sequential");
    }
}
