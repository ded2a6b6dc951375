//! Bounded strategy synthesis with an external SMT solver (default
//! `z3 -in`, override with HLV_SOLVER_CMD).

use std::path::PathBuf;

use hyperlive::hyperltl::parse_formula;
use hyperlive::mc::{CheckOptions, Prepared};
use hyperlive::synth::{MaxBounds, SynthConfig, SynthOutcome, SynthProblem, SystemSpec};
use hyperlive::tsys::{load_system, strategy_to_json};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn main() {
    let sys = load_system(&corpus("free_a.json")).unwrap();
    let f = parse_formula(&std::fs::read_to_string(corpus("x_example.hltl")).unwrap()).unwrap();
    let problem = SynthProblem::new(Prepared::new(&f, &CheckOptions::default()).unwrap(), SystemSpec::Given(sys)).unwrap();
    let cfg = SynthConfig::default();
    for lookahead in [0, 1] {
        let max = MaxBounds { system: 1, strategy: 2, lookahead };
        match problem.synthesis_loop(&max, &cfg).unwrap() {
            SynthOutcome::Realizable { bounds, solution } => {
                println!("lookahead ≤ {lookahead}: realizable at {bounds:?}");
                println!("{}", strategy_to_json(solution.strategy.as_ref().unwrap()));
            }
            SynthOutcome::Exhausted { note } => println!("lookahead ≤ {lookahead}: {note}"),
            SynthOutcome::Unknown { reason, .. } => println!("lookahead ≤ {lookahead}: unknown ({reason})"),
        }
    }
}
