//! A strategy that needs to see the future: prophecy variables and
//! lookahead on `∀p ∃q. X a[p] ↔ a[q]`.

use std::path::PathBuf;

use hyperlive::hyperltl::parse_formula;
use hyperlive::mc::{apply_prophecy, mc_forall_exists, prophecies_from_json, CheckOptions};
use hyperlive::tsys::{load_strategy, load_system};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn main() {
    let opts = CheckOptions::default();
    let sys = load_system(&corpus("free_a.json")).unwrap();
    let f = parse_formula(&std::fs::read_to_string(corpus("x_example.hltl")).unwrap()).unwrap();

    // Prophecy `pp` predicts X a[p]; the strategy copies it into a[q].
    let specs = prophecies_from_json(&std::fs::read_to_string(corpus("x_prophecy.json")).unwrap(), &f).unwrap();
    let (sys_p, f_p) = apply_prophecy(&sys, &f, &specs).unwrap();
    let strat = load_strategy(&corpus("x_prophecy.strategy.json")).unwrap();
    println!("transformed: {f_p}");
    println!("with prophecy: {}", mc_forall_exists(&sys_p, &f_p, &strat, &opts).unwrap().message());

    // The same effect with one letter of lookahead and no prophecy.
    let la = load_strategy(&corpus("x_lookahead.strategy.json")).unwrap();
    println!("with lookahead 1: {}", mc_forall_exists(&sys, &f, &la, &opts).unwrap().message());
    let padded = la.pad();
    println!(
        "padded to lookahead {} ({} states): {}",
        padded.lookahead,
        padded.strategy.num_states(),
        mc_forall_exists(&sys, &f, &padded, &opts).unwrap().message()
    );

    // A guard over the existential trace is rejected.
    let bad = prophecies_from_json(&std::fs::read_to_string(corpus("x_prophecy_unsound.json")).unwrap(), &f).unwrap();
    println!("unsound guard: {}", apply_prophecy(&sys, &f, &bad).unwrap_err());
}
