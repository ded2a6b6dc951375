//! Exact LTL evaluation on ultimately periodic words.
//!
//! A lasso with stem length `s` and loop length `l` has `s + l` distinct
//! positions; position `s + l - 1` is followed by `s`. Each subformula is
//! evaluated to a truth vector over these positions, with `U`/`F` as least
//! and `R`/`G`/`W` as greatest fixpoints.

use std::collections::BTreeMap;

use super::ast::{Ltl, QfFormula, ZippedFormula};
use super::lasso::{common_shape, LassoTrace};

/// Truth vector of `f` over the positions of a word of shape `(stem, cycle)`.
/// `holds(a, p)` reports whether atom `a` is true at position `p`.
pub fn eval_positions<A>(
    f: &Ltl<A>,
    stem: usize,
    cycle: usize,
    holds: &impl Fn(&A, usize) -> bool,
) -> Vec<bool> {
    assert!(cycle > 0);
    let n = stem + cycle;
    let succ = |p: usize| if p + 1 < n { p + 1 } else { stem };
    let rec = |g: &Ltl<A>| eval_positions(g, stem, cycle, holds);
    let lfp = |step: &dyn Fn(usize, &[bool]) -> bool| fixpoint(n, false, step);
    let gfp = |step: &dyn Fn(usize, &[bool]) -> bool| fixpoint(n, true, step);
    match f {
        Ltl::True => vec![true; n],
        Ltl::False => vec![false; n],
        Ltl::Atom(a) => (0..n).map(|p| holds(a, p)).collect(),
        Ltl::Not(x) => rec(x).into_iter().map(|b| !b).collect(),
        Ltl::And(l, r) => zip_with(rec(l), rec(r), |a, b| a && b),
        Ltl::Or(l, r) => zip_with(rec(l), rec(r), |a, b| a || b),
        Ltl::Implies(l, r) => zip_with(rec(l), rec(r), |a, b| !a || b),
        Ltl::Iff(l, r) => zip_with(rec(l), rec(r), |a, b| a == b),
        Ltl::Next(x) => {
            let v = rec(x);
            (0..n).map(|p| v[succ(p)]).collect()
        }
        Ltl::Until(l, r) => {
            let (a, b) = (rec(l), rec(r));
            lfp(&|p, cur| b[p] || (a[p] && cur[succ(p)]))
        }
        Ltl::Eventually(x) => {
            let b = rec(x);
            lfp(&|p, cur| b[p] || cur[succ(p)])
        }
        Ltl::Release(l, r) => {
            let (a, b) = (rec(l), rec(r));
            gfp(&|p, cur| b[p] && (a[p] || cur[succ(p)]))
        }
        Ltl::Globally(x) => {
            let a = rec(x);
            gfp(&|p, cur| a[p] && cur[succ(p)])
        }
        Ltl::WeakUntil(l, r) => {
            let (a, b) = (rec(l), rec(r));
            gfp(&|p, cur| b[p] || (a[p] && cur[succ(p)]))
        }
    }
}

fn zip_with(a: Vec<bool>, b: Vec<bool>, f: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| f(x, y)).collect()
}

fn fixpoint(n: usize, init: bool, step: &dyn Fn(usize, &[bool]) -> bool) -> Vec<bool> {
    let mut cur = vec![init; n];
    loop {
        let mut changed = false;
        for p in (0..n).rev() {
            let v = step(p, &cur);
            if v != cur[p] {
                cur[p] = v;
                changed = true;
            }
        }
        if !changed {
            return cur;
        }
    }
}

/// Evaluates `f` at `position` under an assignment of lassos to trace
/// variables. Panics if a variable of `f` is unassigned.
pub fn bounded_eval(
    f: &QfFormula,
    assignment: &BTreeMap<String, LassoTrace>,
    position: usize,
) -> bool {
    let (stem, cycle) = common_shape(assignment.values());
    let holds = |a: &super::ast::IndexedAtom, p: usize| {
        assignment
            .get(&a.var)
            .unwrap_or_else(|| panic!("trace variable `{}` unassigned", a.var))
            .letter_at(p)
            .contains(&a.prop)
    };
    let v = eval_positions(f, stem, cycle, &holds);
    v[normalize(position, stem, cycle)]
}

/// Evaluates a zipped formula at position 0 of a single word whose letters
/// contain tuple propositions `a@i`.
pub fn eval_zipped(f: &ZippedFormula, w: &LassoTrace) -> bool {
    let holds = |a: &super::ast::TupleProp, p: usize| w.letter_at(p).contains(&a.to_string());
    eval_positions(f, w.stem.len(), w.cycle.len(), &holds)[0]
}

/// Evaluates an LTL formula over plain proposition names at position 0.
pub fn eval_plain(f: &Ltl<String>, w: &LassoTrace) -> bool {
    let holds = |a: &String, p: usize| w.letter_at(p).contains(a);
    eval_positions(f, w.stem.len(), w.cycle.len(), &holds)[0]
}

fn normalize(p: usize, stem: usize, cycle: usize) -> usize {
    if p < stem {
        p
    } else {
        stem + (p - stem) % cycle
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperltl::parser::parse_formula;

    fn assign(pairs: &[(&str, LassoTrace)]) -> BTreeMap<String, LassoTrace> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
    }

    #[test]
    fn globally_on_constant_loop() {
        let f = parse_formula("forall p. G a[p]").unwrap();
        let w = LassoTrace::from_strs(&[], &[&["a"]]);
        assert!(bounded_eval(&f.body, &assign(&[("p", w)]), 0));
    }

    #[test]
    fn next_reads_following_letter() {
        let f = parse_formula("forall p. X a[p]").unwrap();
        let w = LassoTrace::from_strs(&[&[]], &[&["a"]]);
        let a = assign(&[("p", w)]);
        assert!(bounded_eval(&f.body, &a, 0));
        let g = parse_formula("forall p. a[p]").unwrap();
        assert!(!bounded_eval(&g.body, &a, 0));
        assert!(bounded_eval(&g.body, &a, 7));
    }

    #[test]
    fn until_needs_eventual_witness() {
        let f = parse_formula("forall p. a[p] U b[p]").unwrap();
        let never = LassoTrace::from_strs(&[], &[&["a"]]);
        let later = LassoTrace::from_strs(&[&["a"], &["a"]], &[&["b"]]);
        assert!(!bounded_eval(&f.body, &assign(&[("p", never)]), 0));
        assert!(bounded_eval(&f.body, &assign(&[("p", later)]), 0));
    }

    #[test]
    fn weak_until_accepts_forever_left() {
        let f = parse_formula("forall p. a[p] W b[p]").unwrap();
        let w = LassoTrace::from_strs(&[], &[&["a"]]);
        assert!(bounded_eval(&f.body, &assign(&[("p", w)]), 0));
    }

    #[test]
    fn two_traces_with_different_shapes() {
        let f = parse_formula("forall p. forall q. G (a[p] <-> a[q])").unwrap();
        let p = LassoTrace::from_strs(&[], &[&["a"], &[]]);
        let q = LassoTrace::from_strs(&[&["a"]], &[&[], &["a"]]);
        assert!(bounded_eval(&f.body, &assign(&[("p", p.clone()), ("q", q)]), 0));
        let r = LassoTrace::from_strs(&[], &[&["a"], &[], &[]]);
        assert!(!bounded_eval(&f.body, &assign(&[("p", p), ("q", r)]), 0));
    }
}
