//! End-to-end tests of the bpbw binary: the documented invocations, exit
//! codes, output determinism and the solve-verify round trip.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bpbw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bpbw"))
        .args(args)
        .env_remove("BPBW_DEGREE_BOUND")
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn run_ok(args: &[&str]) -> String {
    let out = bpbw(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}{}",
        stdout_of(&out),
        String::from_utf8_lossy(&out.stderr)
    );
    stdout_of(&out)
}

fn exit_code(args: &[&str]) -> i32 {
    bpbw(args).status.code().expect("exit code")
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn solve_reports_the_one_parameter_line() {
    let out = run_ok(&["solve", "sweedler-plane", "--lambda", "1"]);
    assert!(out.contains("parameter space dimension: 1"), "{out}");
    assert!(out.contains("documented dimension: 1 (matches"), "{out}");
}

#[test]
fn verify_accepts_the_grouplike_family_file() {
    let path = tmp("family.kappa");
    fs::write(
        &path,
        "[constant]\n\
         r1 = \"K^(3*s1)\"\n\
         r2 = \"K^(3*s2)\"\n\
         r4 = \"alpha*K^(3*s0)\"\n\
         r5 = \"-alpha*q^2*K^(3*s0)\"\n",
    )
    .unwrap();
    let out = run_ok(&[
        "verify",
        "uqsl2-braided",
        "--n",
        "3",
        "--kappa",
        path.to_str().unwrap(),
        "--s0",
        "2",
        "--alpha",
        "5",
    ]);
    assert!(out.contains("kappa(r4) = 5*K^6"), "{out}");
    assert!(out.ends_with("result: pass\n"), "{out}");
}

#[test]
fn dims_prints_the_degree_prefix() {
    let out = run_ok(&[
        "dims",
        "sklyanin-c2-R",
        "--a",
        "1",
        "--b",
        "2",
        "--c",
        "3",
        "--degree",
        "3",
    ]);
    assert!(out.contains("1, 6, 21, 56"), "{out}");
    assert!(out.contains("factor cross-check: 1, 6, 21, 56 (matches)"), "{out}");
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        vec!["build", "uqsl2-braided", "--n", "3"],
        vec!["solve", "jordan-c2-trivial", "--format", "json"],
        vec!["list"],
    ] {
        let first = run_ok(&args);
        let second = run_ok(&args);
        assert_eq!(first, second, "{args:?} must be deterministic");
    }
}

#[test]
fn output_file_matches_stdout() {
    let path = tmp("dims.txt");
    let on_stdout = run_ok(&["dims", "sklyanin", "--degree", "4"]);
    let out = run_ok(&[
        "dims",
        "sklyanin",
        "--degree",
        "4",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.is_empty(), "writing to a file keeps stdout quiet");
    assert_eq!(fs::read_to_string(&path).unwrap(), on_stdout);
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(exit_code(&["build", "nonsense"]), 2);
    assert_eq!(exit_code(&["solve", "sweedler-plane", "--badflag"]), 2);
    assert_eq!(exit_code(&["build", "uqsl2-braided", "--n", "2"]), 2);
    assert_eq!(exit_code(&["verify", "sweedler-plane", "--kappa", "/no/such/file"]), 2);
    // The solver needs a finite Hopf basis unless an ansatz file narrows it.
    assert_eq!(exit_code(&["solve", "quantum-plane"]), 2);
}

#[test]
fn failed_verification_exits_with_one() {
    let path = tmp("bad.kappa");
    fs::write(&path, "[constant]\nr1 = \"x\"\n").unwrap();
    let out = bpbw(&["verify", "sweedler-plane", "--kappa", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("result: FAIL"), "{text}");
    assert!(text.contains("overlap identity"), "{text}");
}

#[test]
fn solved_basis_maps_verify_one_by_one() {
    let out = run_ok(&["solve", "jordan-c2-R", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dimension"], 3);
    let basis = v["basis"].as_array().unwrap();
    assert_eq!(basis.len(), 3);
    for (i, map) in basis.iter().enumerate() {
        let mut doc = String::from("[constant]\n");
        for line in map.as_array().unwrap() {
            let line = line.as_str().unwrap();
            let rest = line.strip_prefix("kappa(").unwrap();
            let (label, value) = rest.split_once(") = ").unwrap();
            doc.push_str(&format!("{label} = \"{value}\"\n"));
        }
        let path = tmp(&format!("roundtrip-{i}.kappa"));
        fs::write(&path, doc).unwrap();
        let text = run_ok(&[
            "verify",
            "jordan-c2-R",
            "--kappa",
            path.to_str().unwrap(),
        ]);
        assert!(text.ends_with("result: pass\n"), "map {i}: {text}");
    }
}

#[test]
fn degree_bound_comes_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_bpbw"))
        .args(["dims", "jordan-plane"])
        .env("BPBW_DEGREE_BOUND", "2")
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("degrees 0..2"), "{text}");
    assert!(text.contains("1, 2, 3"), "{text}");

    let out = Command::new(env!("CARGO_BIN_EXE_bpbw"))
        .args(["dims", "jordan-plane"])
        .env("BPBW_DEGREE_BOUND", "nope")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn check_axioms_covers_every_example() {
    let list = run_ok(&["list"]);
    let names: Vec<&str> = list
        .lines()
        .skip(1)
        .filter(|l| !l.trim_start().starts_with("parameters:"))
        .filter_map(|l| l.split_whitespace().next())
        .collect();
    assert_eq!(names.len(), 12, "{list}");
    for name in names {
        let out = run_ok(&["check-axioms", name, "--degree", "3"]);
        assert!(out.ends_with("result: pass\n"), "{name}: {out}");
    }
}
