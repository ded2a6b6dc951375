//! Model checking universal hyperproperties on the self-composition.

use std::path::PathBuf;

use hyperlive::hyperltl::parse_formula;
use hyperlive::mc::{mc_universal, CheckOptions, Verdict};
use hyperlive::tsys::load_system;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn main() {
    let opts = CheckOptions::default();
    for (sys, formula) in [("toggle.json", "toggle_alternates.hltl"), ("echo.json", "echo_same_output.hltl")] {
        let s = load_system(&corpus(sys)).unwrap();
        let f = parse_formula(&std::fs::read_to_string(corpus(formula)).unwrap()).unwrap();
        let r = mc_universal(&s, &f, &opts).unwrap();
        println!("{sys} ⊨ {f}: {} ({} run-graph vertices)", r.message(), r.stats.vertices);
        if let Verdict::Fails { counterexample, .. } = &r.verdict {
            for (var, w) in counterexample {
                println!("  {var}: {w}");
            }
        }
    }
}
