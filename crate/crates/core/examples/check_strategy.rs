//! ∀∃ model checking with a strategy for the existential traces:
//! generalized noninterference on a system that echoes a random bit.

use std::path::PathBuf;

use hyperlive::hyperltl::parse_formula;
use hyperlive::mc::{mc_forall_exists, CheckOptions};
use hyperlive::tsys::{load_strategy, load_system};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn main() {
    let opts = CheckOptions::default();
    let gni = load_system(&corpus("gni.json")).unwrap();
    let f = parse_formula(&std::fs::read_to_string(corpus("gni.hltl")).unwrap()).unwrap();
    let replay = load_strategy(&corpus("gni_replay.strategy.json")).unwrap();
    let r = mc_forall_exists(&gni, &f, &replay, &opts).unwrap();
    println!("GNI with the replay strategy: {}", r.message());

    // A failing check only refutes the strategy.
    let free = load_system(&corpus("free_a.json")).unwrap();
    let x = parse_formula(&std::fs::read_to_string(corpus("x_example.hltl")).unwrap()).unwrap();
    let copycat = load_strategy(&corpus("copycat.strategy.json")).unwrap();
    let r = mc_forall_exists(&free, &x, &copycat, &opts).unwrap();
    println!("{x} with copycat: {}", r.message());
}
