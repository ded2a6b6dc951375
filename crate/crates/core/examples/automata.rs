//! Translate LTL to a Büchi automaton and its universal co-Büchi dual and
//! run both on a few lassos.

use hyperlive::automata::{ltl_to_nba, nba_accepts_lasso, ucw_accepts_lasso, ucw_for, DEFAULT_STATE_CAP};
use hyperlive::hyperltl::{parse_formula, LassoTrace, Ltl};

fn main() {
    let f = parse_formula("forall p. G (r[p] -> F g[p])").unwrap();
    // Plain propositions: strip the trace variable.
    let body: Ltl<String> = f.body.map_atoms(&mut |a| a.prop.clone());
    let nba = ltl_to_nba(&body, DEFAULT_STATE_CAP).unwrap();
    let ucw = ucw_for(&body, DEFAULT_STATE_CAP).unwrap();
    println!("{body}: NBA {} states, UCW {} states", nba.carrier.num_states, ucw.num_states());

    let words = [
        ("request then grant", LassoTrace::from_strs(&[], &[&["r"], &["g"]])),
        ("request, never grant", LassoTrace::from_strs(&[&["r"]], &[&[]])),
        ("idle", LassoTrace::from_strs(&[], &[&[]])),
    ];
    for (name, w) in &words {
        println!(
            "{name:>22}: NBA {} UCW {}",
            nba_accepts_lasso(&nba, w),
            ucw_accepts_lasso(&ucw, w)
        );
    }
}
