mod common;

use common::{all_systems, corpus, exists_witness_oracle, formula, strategy, system};
use hyperlive::hyperltl::{parse_formula, Formula};
use hyperlive::mc::{apply_prophecy, mc_forall_exists, prophecies_from_json, CheckOptions, McError, Prepared, ProphecySpec};
use hyperlive::synth::{MaxBounds, SynthConfig, SynthProblem, SystemSpec};
use hyperlive::tsys::TransitionSystem;

fn specs(f: &Formula, file: &str) -> Vec<ProphecySpec> {
    prophecies_from_json(&std::fs::read_to_string(corpus(file)).unwrap(), f).unwrap()
}

/// Whether some one-state strategy without lookahead witnesses the
/// prophecy-strengthened formula, found by enumeration.
fn prophecy_strategy_exists(sys: &TransitionSystem, f: &Formula, sp: &[ProphecySpec]) -> bool {
    let (psys, pf) = apply_prophecy(sys, f, sp).unwrap();
    let p = SynthProblem::new(Prepared::new(&pf, &CheckOptions::default()).unwrap(), SystemSpec::Given(psys)).unwrap();
    let max = MaxBounds { system: 1, strategy: 1, lookahead: 0 };
    p.solve_bruteforce(&max, &SynthConfig::default()).unwrap().is_realizable()
}

#[test]
fn gni_replay_agrees_with_trace_oracle() {
    let (sys, f) = (system("gni.json"), formula("gni.hltl"));
    let r = mc_forall_exists(&sys, &f, &strategy("gni_replay.strategy.json"), &CheckOptions::default()).unwrap();
    assert!(r.holds(), "{:?}", r.verdict);
    assert!(exists_witness_oracle(&sys, &f, 1, 2));
}

#[test]
fn corpus_prophecies_match_trace_oracle() {
    let free = system("free_a.json");
    for (name, file, expected) in [
        ("x_example.hltl", "x_prophecy.json", true),
        ("x_example_depth2.hltl", "x_prophecy_depth2.json", true),
        ("x_example_false.hltl", "x_prophecy.json", false),
    ] {
        let f = formula(name);
        let oracle = exists_witness_oracle(&free, &f, 2, 2);
        let found = prophecy_strategy_exists(&free, &f, &specs(&f, file));
        assert_eq!((oracle, found), (expected, expected), "{name}");
    }
}

#[test]
fn unsound_prophecy_is_rejected() {
    let f = formula("x_example.hltl");
    let r = apply_prophecy(&system("free_a.json"), &f, &specs(&f, "x_prophecy_unsound.json"));
    assert!(matches!(r, Err(McError::Prophecy(_))));
}

/// Over every system with at most two states, a one-step prophecy makes a
/// memoryless strategy exist exactly when the formula holds.
#[test]
fn exhaustive_prophecy_biconditional() {
    let f = parse_formula("forall p. exists q. X X o[p] <-> X o[q]").unwrap();
    let sp = prophecies_from_json(r#"[{"prop": "pp", "guard": "X X o[p]"}]"#, &f).unwrap();
    let (mut yes, mut no, mut needed) = (0, 0, 0);
    for sys in all_systems(1).into_iter().chain(all_systems(2)) {
        let oracle = exists_witness_oracle(&sys, &f, 4, 2);
        assert_eq!(prophecy_strategy_exists(&sys, &f, &sp), oracle, "{sys:?}");
        if oracle && !prophecy_strategy_exists(&sys, &f, &[]) {
            needed += 1;
        }
        if oracle {
            yes += 1
        } else {
            no += 1
        }
    }
    assert!(yes > 0 && no > 0 && needed > 0, "{yes} {no} {needed}");
}
