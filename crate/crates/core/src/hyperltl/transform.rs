//! Syntactic transformations: desugaring, negation normal form and zipping.

use thiserror::Error;

use super::ast::{IndexedAtom, Ltl, QfFormula, TupleProp, ZippedFormula};

/// Rewrites `R`, `F`, `G`, `W`, `->`, `<->` and `false` into the core
/// operators `Atom`, `Not`, `And`, `Or`, `Next`, `Until` and `True`.
pub fn desugar<A: Clone>(f: &Ltl<A>) -> Ltl<A> {
    match f {
        Ltl::True => Ltl::True,
        Ltl::False => Ltl::not(Ltl::True),
        Ltl::Atom(a) => Ltl::Atom(a.clone()),
        Ltl::Not(x) => Ltl::not(desugar(x)),
        Ltl::And(l, r) => Ltl::and(desugar(l), desugar(r)),
        Ltl::Or(l, r) => Ltl::or(desugar(l), desugar(r)),
        Ltl::Implies(l, r) => Ltl::or(Ltl::not(desugar(l)), desugar(r)),
        Ltl::Iff(l, r) => {
            let (l, r) = (desugar(l), desugar(r));
            Ltl::and(
                Ltl::or(Ltl::not(l.clone()), r.clone()),
                Ltl::or(Ltl::not(r), l),
            )
        }
        Ltl::Next(x) => Ltl::next(desugar(x)),
        Ltl::Until(l, r) => Ltl::until(desugar(l), desugar(r)),
        Ltl::Release(l, r) => Ltl::not(Ltl::until(
            Ltl::not(desugar(l)),
            Ltl::not(desugar(r)),
        )),
        Ltl::Eventually(x) => Ltl::until(Ltl::True, desugar(x)),
        Ltl::Globally(x) => globally_core(desugar(x)),
        Ltl::WeakUntil(l, r) => {
            let (l, r) = (desugar(l), desugar(r));
            Ltl::or(globally_core(l.clone()), Ltl::until(l, r))
        }
    }
}

fn globally_core<A>(x: Ltl<A>) -> Ltl<A> {
    Ltl::not(Ltl::until(Ltl::True, Ltl::not(x)))
}

/// Negation normal form of `¬f`.
///
/// Negations end up directly above atoms; `Release` appears as the dual of
/// `Until`. Works on any input, desugared or not.
pub fn negate_nnf<A: Clone>(f: &Ltl<A>) -> Ltl<A> {
    nnf(f, true)
}

/// Negation normal form of `f` itself.
pub fn to_nnf<A: Clone>(f: &Ltl<A>) -> Ltl<A> {
    nnf(f, false)
}

fn nnf<A: Clone>(f: &Ltl<A>, neg: bool) -> Ltl<A> {
    match (f, neg) {
        (Ltl::True, false) | (Ltl::False, true) => Ltl::True,
        (Ltl::True, true) | (Ltl::False, false) => Ltl::False,
        (Ltl::Atom(a), false) => Ltl::Atom(a.clone()),
        (Ltl::Atom(a), true) => Ltl::not(Ltl::Atom(a.clone())),
        (Ltl::Not(x), _) => nnf(x, !neg),
        (Ltl::And(l, r), false) | (Ltl::Or(l, r), true) => Ltl::and(nnf(l, neg), nnf(r, neg)),
        (Ltl::Or(l, r), false) | (Ltl::And(l, r), true) => Ltl::or(nnf(l, neg), nnf(r, neg)),
        (Ltl::Implies(l, r), false) => Ltl::or(nnf(l, true), nnf(r, false)),
        (Ltl::Implies(l, r), true) => Ltl::and(nnf(l, false), nnf(r, true)),
        (Ltl::Iff(l, r), _) => {
            // l <-> r  ==  (l & r) | (!l & !r);  its negation swaps r's polarity.
            Ltl::or(
                Ltl::and(nnf(l, false), nnf(r, neg)),
                Ltl::and(nnf(l, true), nnf(r, !neg)),
            )
        }
        (Ltl::Next(x), _) => Ltl::next(nnf(x, neg)),
        (Ltl::Until(l, r), false) | (Ltl::Release(l, r), true) => {
            Ltl::until(nnf(l, neg), nnf(r, neg))
        }
        (Ltl::Release(l, r), false) | (Ltl::Until(l, r), true) => {
            Ltl::release(nnf(l, neg), nnf(r, neg))
        }
        (Ltl::Eventually(x), false) | (Ltl::Globally(x), true) => {
            Ltl::until(Ltl::True, nnf(x, neg))
        }
        (Ltl::Globally(x), false) | (Ltl::Eventually(x), true) => {
            Ltl::release(Ltl::False, nnf(x, neg))
        }
        (Ltl::WeakUntil(l, r), false) => {
            // a W b == b R (a | b)
            Ltl::release(nnf(r, false), Ltl::or(nnf(l, false), nnf(r, false)))
        }
        (Ltl::WeakUntil(l, r), true) => {
            // !(a W b) == !b U (!a & !b)
            Ltl::until(nnf(r, true), Ltl::and(nnf(l, true), nnf(r, true)))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("trace variable `{0}` is not in the zip order")]
pub struct ZipError(pub String);

/// Renames each atom `a[π_i]` to the tuple proposition `a@i`, where `i` is
/// the 1-based position of `π_i` in `order`.
pub fn zip_formula(f: &QfFormula, order: &[String]) -> Result<ZippedFormula, ZipError> {
    f.try_map_atoms(&mut |a: &IndexedAtom| {
        order
            .iter()
            .position(|v| *v == a.var)
            .map(|i| TupleProp::new(a.prop.clone(), i + 1))
            .ok_or_else(|| ZipError(a.var.clone()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperltl::parser::parse_formula;

    fn body(s: &str) -> QfFormula {
        parse_formula(s).unwrap().body
    }

    #[test]
    fn desugar_globally() {
        let g = desugar(&body("forall p. G a[p]"));
        assert_eq!(g, body("forall p. !(true U !a[p])"));
        assert!(g.is_core());
    }

    #[test]
    fn desugar_weak_until() {
        let w = desugar(&body("forall p. a[p] W b[p]"));
        assert_eq!(
            w,
            body("forall p. !(true U !a[p]) | (a[p] U b[p])")
        );
    }

    #[test]
    fn desugar_keeps_core() {
        let f = body("forall p. true U a[p]");
        assert_eq!(desugar(&f), f);
    }

    #[test]
    fn negation_examples() {
        assert_eq!(negate_nnf(&body("forall p. a[p]")), body("forall p. !a[p]"));
        assert_eq!(negate_nnf(&body("forall p. X a[p]")), body("forall p. X !a[p]"));
        assert_eq!(
            negate_nnf(&body("forall p. a[p] U b[p]")),
            body("forall p. !a[p] R !b[p]")
        );
    }

    #[test]
    fn zip_examples() {
        let order = vec!["p1".to_string(), "p2".to_string()];
        let z = zip_formula(&body("forall p1. forall p2. G (a[p1] <-> a[p2])"), &order).unwrap();
        assert_eq!(
            z,
            Ltl::globally(Ltl::iff(
                Ltl::Atom(TupleProp::new("a", 1)),
                Ltl::Atom(TupleProp::new("a", 2))
            ))
        );
        assert_eq!(
            zip_formula(&body("forall p1. forall p2. h[p2]"), &order[..1]),
            Err(ZipError("p2".into()))
        );
    }

    #[test]
    fn zip_gni() {
        let f = parse_formula(
            "forall p1. forall p2. exists p3. G (h[p1] <-> h[p3]) & G (o[p2] <-> o[p3])",
        )
        .unwrap();
        let z = zip_formula(&f.body, &f.vars()).unwrap();
        let names: Vec<String> = z.atoms().iter().map(|t| t.to_string()).collect();
        assert_eq!(names, ["h@1", "h@3", "o@2", "o@3"]);
    }
}
