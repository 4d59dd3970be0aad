use std::path::Path;
use std::process::{Command, Output};

use gci_core::ci::{ci_holds, cyclic_model};
use gci_core::document::{parse_statement, MatrixDocument};
use serde_json::Value;

fn gci(args: &[&str]) -> Output {
    gci_env(args, None)
}

fn gci_env(args: &[&str], seed: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gci"));
    cmd.args(args).env_remove("GCI_SEED");
    if let Some(s) = seed {
        cmd.env("GCI_SEED", s);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn assert_error(o: &Output, code: i32, kind: &str) {
    assert_eq!(o.status.code(), Some(code), "{o:?}");
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    assert_eq!(err.lines().count(), 1, "{err:?}");
    assert!(err.starts_with(&format!("error[{kind}]: ")), "{err:?}");
    assert!(o.stdout.is_empty());
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const IDENTITY3: &str = r#"{"n":3,"entries":[["1","0","0"],["0","1","0"],["0","0","1"]]}"#;

#[test]
fn success_paths_exit_zero() {
    for args in [
        &["primes", "--n", "5"][..],
        &["basis", "--n", "6"],
        &["implication", "--n", "4", "--samples", "5"],
        &["counterexample", "--n", "5"],
        &["--help"],
        &["--version"],
    ] {
        let o = gci(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {o:?}");
        assert!(!o.stdout.is_empty());
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_error(&gci(&[]), 2, "usage");
    assert_error(&gci(&["frobnicate"]), 2, "usage");
    assert_error(&gci(&["primes"]), 2, "usage");
    assert_error(&gci(&["primes", "--n", "five"]), 2, "usage");
    assert_error(&gci_env(&["implication", "--n", "4"], Some("abc")), 2, "usage");
}

#[test]
fn domain_errors_exit_one() {
    assert_error(&gci(&["primes", "--n", "3"]), 1, "domain");
    assert_error(&gci(&["counterexample", "--n", "5", "--drop", "6"]), 1, "domain");
    assert_error(&gci(&["counterexample", "--n", "5", "--a", "1/2"]), 1, "domain");
    assert_error(&gci(&["counterexample", "--n", "5", "--a", "one"]), 1, "domain");
    assert_error(&gci(&["check", "--sigma", "/nonexistent/sigma.json", "--statement", "1 _||_ 2"]), 1, "io");

    let dir = tempfile::tempdir().unwrap();
    let id = write(dir.path(), "identity.json", IDENTITY3);
    let bad = gci(&["check", "--sigma", &id, "--statement", "1 _||_ x | 3"]);
    assert_error(&bad, 1, "domain");
    assert!(String::from_utf8_lossy(&bad.stderr).contains('7'));
    assert_error(&gci(&["check", "--sigma", &id, "--statement", "1,2 _||_ 2"]), 1, "domain");
    assert_error(&gci(&["check", "--sigma", &id, "--statement", "1 _||_ 4"]), 1, "domain");
    let asym = write(dir.path(), "asym.json", r#"{"n":2,"entries":[["1","1/2"],["1/3","1"]]}"#);
    assert_error(&gci(&["check", "--sigma", &asym, "--statement", "1 _||_ 2"]), 1, "domain");
    let garbage = write(dir.path(), "garbage.json", "{not json");
    assert_error(&gci(&["check", "--sigma", &garbage, "--statement", "1 _||_ 2"]), 1, "domain");
    assert_error(&gci(&["witness", "--sigma", &id, "--model-n", "4"]), 1, "domain");
}

#[test]
fn check_on_identity_holds() {
    let dir = tempfile::tempdir().unwrap();
    let id = write(dir.path(), "identity.json", IDENTITY3);
    let o = gci(&["check", "--sigma", &id, "--statement", "1 _||_ 2 | 3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "HOLDS 1 _||_ 2 | 3\n");
    let o = gci(&["check", "--sigma", &id, "--statement", "1 _||_ 2 | 3", "--json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["holds"], Value::Bool(true));
    assert_eq!(v["statement"], "1 _||_ 2 | 3");

    let dense = write(dir.path(), "dense.json", r#"{"n":2,"entries":[["1","1/2"],["1/2","1"]]}"#);
    assert_eq!(stdout(&gci(&["check", "--sigma", &dense, "--statement", "1 _||_ 2"])), "FAILS 1 _||_ 2\n");
}

#[test]
fn counterexample_drop_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    for n in [4usize, 5, 6] {
        for drop in 1..=n {
            let o = gci(&["counterexample", "--n", &n.to_string(), "--drop", &drop.to_string(), "--json"]);
            assert_eq!(o.status.code(), Some(0));
            let text = stdout(&o);
            let doc = MatrixDocument::from_json(&text).unwrap();
            let meta = doc.metadata.clone().unwrap();
            let failing = parse_statement(meta["failing_statement"].as_str().unwrap()).unwrap();
            let sigma = doc.to_matrix().unwrap();
            let model = cyclic_model(n).unwrap();
            for s in model.statements() {
                assert_eq!(ci_holds(&sigma, s).unwrap(), *s != failing, "n={n} drop={drop} {s}");
            }

            let path = write(dir.path(), "cx.json", &text);
            let w = gci(&["witness", "--sigma", &path, "--model-n", &n.to_string(), "--json"]);
            let v: Value = serde_json::from_str(&stdout(&w)).unwrap();
            assert_eq!(v["verdict"], "SHARPNESS");
            assert_eq!(v["sharpness"], Value::Bool(true));
            assert_eq!(v["non_implication"], Value::Bool(false));
            let text_report = stdout(&gci(&["witness", "--sigma", &path, "--model-n", &n.to_string()]));
            assert!(text_report.contains("SHARPNESS"));
        }
    }
}

#[test]
fn json_outputs_are_byte_identical_on_rerun() {
    for args in [
        &["implication", "--n", "6", "--json"][..],
        &["primes", "--n", "7", "--json"],
        &["counterexample", "--n", "6", "--drop", "2", "--json"],
        &["basis", "--n", "5", "--json"],
    ] {
        let first = gci_env(args, Some("17"));
        let second = gci_env(args, Some("17"));
        assert_eq!(first.status.code(), Some(0));
        assert_eq!(first.stdout, second.stdout, "{args:?}");
    }
}

#[test]
fn seed_is_reported_and_defaults_to_zero() {
    let seed_of = |seed: Option<&str>| -> Value {
        let o = gci_env(&["implication", "--n", "4", "--samples", "3", "--json"], seed);
        serde_json::from_str::<Value>(&stdout(&o)).unwrap()["seed"].clone()
    };
    assert_eq!(seed_of(None), 0);
    assert_eq!(seed_of(Some("42")), 42);
}

#[test]
fn in_process_run_matches_binary() {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = gci_cli::run_with_seed(["gci", "primes", "--n", "5"], None, &mut out, &mut err);
    assert_eq!(code, 0);
    assert!(err.is_empty());
    assert_eq!(out, gci(&["primes", "--n", "5"]).stdout);
    let text = String::from_utf8(out).unwrap();
    assert!(text.contains("TORIC"));
    assert!(text.contains("{s_1_2, s_1_5, s_2_3, s_3_4, s_4_5}"));
}
