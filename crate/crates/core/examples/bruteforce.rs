//! The enumeration oracle next to the SMT loop on small ∃∀ instances.

use std::path::PathBuf;

use hyperlive::hyperltl::parse_formula;
use hyperlive::mc::{CheckOptions, Prepared};
use hyperlive::synth::{MaxBounds, SynthConfig, SynthProblem, SystemSpec};
use hyperlive::tsys::load_interface;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn main() {
    let iface = load_interface(&corpus("io_interface.json")).unwrap();
    let max = MaxBounds { system: 2, strategy: 2, lookahead: 0 };
    let cfg = SynthConfig::default();
    for name in ["same_output.hltl", "uniform_output.hltl"] {
        let f = parse_formula(&std::fs::read_to_string(corpus(name)).unwrap()).unwrap();
        let spec = SystemSpec::Interface { inputs: iface.inputs.clone(), outputs: iface.outputs.clone() };
        let problem = SynthProblem::new(Prepared::new(&f, &CheckOptions::default()).unwrap(), spec).unwrap();
        let smt = problem.synthesis_loop(&max, &cfg).unwrap();
        let brute = problem.solve_bruteforce(&max, &cfg).unwrap();
        println!(
            "{name}: smt {:?}, enumeration {:?}",
            smt.bounds(),
            brute.bounds()
        );
    }
}
