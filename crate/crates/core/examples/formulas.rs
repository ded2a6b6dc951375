//! Parse a HyperLTL formula, inspect its prefix and evaluate the body on
//! lasso traces.

use std::collections::BTreeMap;

use hyperlive::hyperltl::{bounded_eval, parse_formula, to_nnf, LassoTrace};

fn main() {
    let f = parse_formula(
        "forall p. forall p2. exists q.
           G (o[p] <-> o[q]) & G (h[p2] <-> h[q])  # replay p's output under p2's secret",
    )
    .expect("well-formed formula");
    println!("formula:     {f}");
    println!("fragment:    {:?}", f.classify());
    println!("negation nf: {}", to_nnf(&f.body));

    let on = LassoTrace::from_strs(&[], &[&["o"]]);
    let off = LassoTrace::from_strs(&[], &[&[]]);
    let secret = LassoTrace::from_strs(&[&["h"]], &[&[]]);
    let both = LassoTrace::from_strs(&[&["h", "o"]], &[&["o"]]);
    let mut env = BTreeMap::from([
        ("p".to_string(), on.clone()),
        ("p2".to_string(), secret),
        ("q".to_string(), both),
    ]);
    println!("body on (on, secret, both):  {}", bounded_eval(&f.body, &env, 0));
    env.insert("p".into(), off);
    println!("body on (off, secret, both): {}", bounded_eval(&f.body, &env, 0));
}
