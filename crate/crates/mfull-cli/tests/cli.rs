use std::path::PathBuf;
use std::process::{Command, Output};

fn mfull(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mfull")).args(args).env_remove("MFULL_SPAIR_BUDGET").output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scenario_file(name: &str, text: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(format!("{name}.scn"));
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn list_names_builtins_and_suites() {
    let o = mfull(&["list"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    for n in ["example-CGTT", "example-eg2", "jorgensen", "cor-ext-pairs", "burch", "lemmas"] {
        assert!(s.contains(n), "{n} missing from {s}");
    }
}

#[test]
fn passing_scenario_exits_zero() {
    let o = mfull(&["check", "example-CGTT"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("verdict: pass"));
}

#[test]
fn violated_expectation_exits_one() {
    let p = scenario_file("wrong", "[ring]\nsemigroup = 4, 5, 6\n[objects]\nI = ideal(t^4, t^11)\n[checks]\nburch I expect=false\n");
    let o = mfull(&["check", p.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("fail"));
}

#[test]
fn parse_errors_exit_two_with_a_location() {
    let p = scenario_file("broken", "[ring]\nsemigroup = 4, 5, 6\n[checks]\nweakly_mfull\n");
    let o = mfull(&["check", p.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 4, column 1"), "{err}");
    let o = mfull(&["check", "/nonexistent/file.scn"]);
    assert_eq!(code(&o), 2);
    assert_eq!(code(&mfull(&["suite", "no-such-suite"])), 2);
}

#[test]
fn budget_override_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_mfull")).args(["check", "example-it"]).env("MFULL_SPAIR_BUDGET", "1").output().unwrap();
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8(o.stderr).unwrap().contains("budget"));
}

#[test]
fn suite_json_is_deterministic() {
    let args = ["suite", "cor-ext-pairs", "--seed", "3", "--format", "json"];
    let a = mfull(&args);
    let b = mfull(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["settings"]["seed"], 3);
    assert_eq!(v["kind"], "suite");
}

#[test]
fn prime_field_and_bound_flags() {
    let o = mfull(&["suite", "rigidity", "--field", "p:32003", "--bound", "6", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["field_heuristic"], true);
    assert_eq!(v["settings"]["bound"], 6);
    assert_ne!(code(&mfull(&["suite", "rigidity", "--field", "p:6"])), 0);
}

#[test]
fn report_defaults_to_json_and_accepts_suites() {
    let a = mfull(&["report", "example-eg1"]);
    assert_eq!(code(&a), 0);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["name"], "example-eg1");
    assert_eq!(a.stdout, mfull(&["report", "example-eg1"]).stdout);
    let s = mfull(&["report", "suite:cor-window", "--format", "table"]);
    assert_eq!(code(&s), 0);
    assert!(stdout(&s).contains("cor-window"));
}

#[test]
fn ring_prints_hilbert_data() {
    let o = mfull(&["ring", "--semigroup", "4,5,6", "--degrees", "8"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let h: Vec<u64> = v["hilbert_function"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(h, vec![1, 0, 0, 0, 1, 1, 1, 0, 1]);
    let o = mfull(&["ring", "--vars", "x,y", "--relations", "x^2 - y"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn examples_run_the_reproduction_set() {
    let o = mfull(&["examples"]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    for n in ["example-CGTT", "example-it", "example-eg1", "example-eg2", "jorgensen"] {
        assert!(s.contains(n), "{n}");
    }
}
