//! Ground one bound triple and print the SMT-LIB script and its size.

use std::path::PathBuf;

use hyperlive::hyperltl::parse_formula;
use hyperlive::mc::{CheckOptions, Prepared};
use hyperlive::synth::{emit_smtlib, SynthBounds, SynthProblem, SystemSpec, DEFAULT_CLAUSE_CAP};
use hyperlive::tsys::load_system;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn main() {
    let sys = load_system(&corpus("free_a.json")).unwrap();
    let f = parse_formula(&std::fs::read_to_string(corpus("x_example.hltl")).unwrap()).unwrap();
    let problem = SynthProblem::new(Prepared::new(&f, &CheckOptions::default()).unwrap(), SystemSpec::Given(sys)).unwrap();
    let b = SynthBounds { system: None, strategy: 1, lookahead: 1 };
    let cs = problem.encode(&b, DEFAULT_CLAUSE_CAP).unwrap();
    println!(
        "; {} clauses (predicted {}), {} run-graph vertices",
        cs.clauses.len(),
        cs.shape.expected_clauses(),
        cs.shape.num_vertices()
    );
    print!("{}", emit_smtlib(&cs));
}
