//! Synthesize a two-client arbiter, first for the plain LTL requirements
//! and then with the symmetry hyperproperty.

use std::path::PathBuf;

use hyperlive::hyperltl::parse_formula;
use hyperlive::mc::{CheckOptions, Prepared};
use hyperlive::synth::{MaxBounds, SynthConfig, SynthOutcome, SynthProblem, SystemSpec};
use hyperlive::tsys::{load_interface, system_to_json};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn main() {
    let iface = load_interface(&corpus("mutex_interface.json")).unwrap();
    let max = MaxBounds { system: 3, strategy: 1, lookahead: 0 };
    for name in ["mutex_ltl.hltl", "mutex_symmetry.hltl"] {
        let f = parse_formula(&std::fs::read_to_string(corpus(name)).unwrap()).unwrap();
        let spec = SystemSpec::Interface { inputs: iface.inputs.clone(), outputs: iface.outputs.clone() };
        let problem = SynthProblem::new(Prepared::new(&f, &CheckOptions::default()).unwrap(), spec).unwrap();
        match problem.synthesis_loop(&max, &SynthConfig::default()).unwrap() {
            SynthOutcome::Realizable { bounds, solution } => {
                println!("{name}: realizable at {bounds:?}");
                println!("{}", system_to_json(&solution.system));
            }
            other => println!("{name}: {other:?}"),
        }
    }
}
