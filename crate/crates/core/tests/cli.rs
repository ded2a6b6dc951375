use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use hyperlive::cli::{EXIT_ERROR, EXIT_FAIL, EXIT_OK, EXIT_UNKNOWN};
use hyperlive::hyperltl::parse_formula;
use hyperlive::mc::{mc_forall_exists, mc_universal, CheckOptions, STRATEGY_REFUTED};
use hyperlive::tsys::{load_strategy, load_system};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn hlv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hlv"))
        .args(args)
        .env_remove("HLV_SOLVER_CMD")
        .output()
        .unwrap()
}

fn c(name: &str) -> String {
    corpus(name).display().to_string()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout_json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn read_json(p: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn parse_reports_fragment() {
    let o = hlv(&["parse", "--formula", &c("gni.hltl"), "--system", &c("gni.json")]);
    assert_eq!(code(&o), EXIT_OK);
    let j = stdout_json(&o);
    assert_eq!(j["fragment"], "ForallExists(2, 1)");
    assert_eq!(j["alternations"], 1);
    assert_eq!(j["system"]["states"], 2);
}

#[test]
fn check_exit_codes() {
    let o = hlv(&["check", "--system", &c("gni.json"), "--formula", &c("gni.hltl"), "--strategy", &c("gni_replay.strategy.json")]);
    assert_eq!(code(&o), EXIT_OK);
    assert_eq!(stdout_json(&o)["verdict"], "holds");

    let o = hlv(&["check", "--system", &c("free_a.json"), "--formula", &c("x_example.hltl"), "--strategy", &c("copycat.strategy.json")]);
    assert_eq!(code(&o), EXIT_FAIL);
    assert!(String::from_utf8_lossy(&o.stderr).contains(STRATEGY_REFUTED));

    let o = hlv(&["check", "--system", &c("silent.json"), "--formula", &c("silent.hltl")]);
    assert_eq!(code(&o), EXIT_OK);

    let o = hlv(&["check", "--system", &c("free_a.json"), "--formula", &c("x_example.hltl")]);
    assert_eq!(code(&o), EXIT_ERROR);

    let o = hlv(&["check", "--system", &c("no_such_file.json"), "--formula", &c("silent.hltl")]);
    assert_eq!(code(&o), EXIT_ERROR);

    let o = hlv(&["check", "--formula"]);
    assert_eq!(code(&o), EXIT_ERROR);
}

#[test]
fn check_with_prophecy() {
    let o = hlv(&[
        "check",
        "--system",
        &c("free_a.json"),
        "--formula",
        &c("x_example.hltl"),
        "--prophecy",
        &c("x_prophecy.json"),
        "--strategy",
        &c("x_prophecy.strategy.json"),
    ]);
    assert_eq!(code(&o), EXIT_OK);
    let o = hlv(&[
        "check",
        "--system",
        &c("free_a.json"),
        "--formula",
        &c("x_example.hltl"),
        "--prophecy",
        &c("x_prophecy_unsound.json"),
        "--strategy",
        &c("x_prophecy.strategy.json"),
    ]);
    assert_eq!(code(&o), EXIT_ERROR);
}

#[test]
fn report_and_automaton_files() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let aut = dir.path().join("a.json");
    let o = hlv(&[
        "check",
        "--system",
        &c("toggle.json"),
        "--formula",
        &c("toggle_alternates.hltl"),
        "--report",
        report.to_str().unwrap(),
        "--dump-automaton",
        aut.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), EXIT_OK);
    assert!(o.stdout.is_empty());
    assert_eq!(read_json(&report)["verdict"], "holds");
    assert!(read_json(&aut).is_object());
}

#[test]
fn synth_strategy_lookahead() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let base = ["synth-strategy", "--system", &c("free_a.json"), "--formula", &c("x_example.hltl"), "--out-dir", out];

    let o = hlv(&[&base[..], &["--max-lookahead", "0"]].concat());
    assert_eq!(code(&o), EXIT_UNKNOWN);
    assert_eq!(stdout_json(&o)["result"], "exhausted");

    let smt = dir.path().join("last.smt2");
    let o = hlv(&[&base[..], &["--max-lookahead", "1", "--dump-smt", smt.to_str().unwrap()]].concat());
    assert_eq!(code(&o), EXIT_OK);
    let j = stdout_json(&o);
    assert_eq!(j["result"], "realizable");
    assert_eq!(j["bounds"]["strategy"], 1);
    assert_eq!(j["bounds"]["lookahead"], 1);
    assert!(std::fs::read_to_string(&smt).unwrap().contains("(check-sat)"));
    assert!(!dir.path().join("system.json").exists());

    let sys = load_system(&corpus("free_a.json")).unwrap();
    let f = parse_formula(&std::fs::read_to_string(corpus("x_example.hltl")).unwrap()).unwrap();
    let st = load_strategy(Path::new(j["files"]["strategy"].as_str().unwrap())).unwrap();
    assert_eq!(st.lookahead, 1);
    assert!(mc_forall_exists(&sys, &f, &st, &CheckOptions::default()).unwrap().holds());
    let ann = read_json(Path::new(j["files"]["annotation"].as_str().unwrap()));
    assert_eq!(ann["schema"], 1);
}

#[test]
fn synth_strategy_with_prophecy() {
    let dir = tempfile::tempdir().unwrap();
    let o = hlv(&[
        "synth-strategy",
        "--system",
        &c("free_a.json"),
        "--formula",
        &c("x_example.hltl"),
        "--prophecy",
        &c("x_prophecy.json"),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), EXIT_OK);
    assert_eq!(stdout_json(&o)["bounds"]["lookahead"], 0);
}

#[test]
fn synth_system_mutex() {
    let dir = tempfile::tempdir().unwrap();
    let o = hlv(&[
        "synth-system",
        "--system",
        &c("mutex_interface.json"),
        "--formula",
        &c("mutex_ltl.hltl"),
        "--out-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), EXIT_OK);
    let j = stdout_json(&o);
    assert_eq!(j["bounds"]["system"], 2);
    let sys = load_system(Path::new(j["files"]["system"].as_str().unwrap())).unwrap();
    let f = parse_formula(&std::fs::read_to_string(corpus("mutex_ltl.hltl")).unwrap()).unwrap();
    assert!(mc_universal(&sys, &f, &CheckOptions::default()).unwrap().holds());
}

#[test]
fn synth_system_exhausted_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = hlv(&[
        "synth-system",
        "--system",
        &c("io_interface.json"),
        "--formula",
        &c("uniform_output.hltl"),
        "--max-system",
        "2",
        "--max-strategy",
        "2",
        "--out-dir",
        out,
    ]);
    assert_eq!(code(&o), EXIT_UNKNOWN);
    assert_eq!(stdout_json(&o)["result"], "exhausted");

    let o = hlv(&[
        "synth-system",
        "--system",
        &c("io_interface.json"),
        "--formula",
        &c("uniform_output.hltl"),
        "--prophecy",
        &c("x_prophecy.json"),
    ]);
    assert_eq!(code(&o), EXIT_ERROR);

    let o = hlv(&["synth-system", "--system", &c("io_interface.json"), "--formula", &c("same_output.hltl"), "--solver-cmd", "false", "--out-dir", out]);
    assert_eq!(code(&o), EXIT_ERROR);
}
