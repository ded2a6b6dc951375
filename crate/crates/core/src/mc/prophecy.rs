use serde::Deserialize;

use super::McError;
use crate::hyperltl::{parse_body, FragmentClass, Formula, IndexedAtom, Ltl, QfFormula, Quantifier};
use crate::tsys::{add_prophecy, TransitionSystem};

/// A fresh input `prop` that is meant to predict `guard` on the first
/// universal trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProphecySpec {
    pub prop: String,
    pub guard: QfFormula,
}

#[derive(Deserialize)]
struct SpecJson {
    prop: String,
    guard: String,
}

/// Parses a JSON list `[{"prop": …, "guard": …}]`. Guards may mention any
/// variable of `f`; [`apply_prophecy`] rejects existential references.
pub fn prophecies_from_json(text: &str, f: &Formula) -> Result<Vec<ProphecySpec>, McError> {
    let raw: Vec<SpecJson> =
        serde_json::from_str(text).map_err(|e| McError::Prophecy(format!("invalid JSON: {e}")))?;
    let vars = f.vars();
    raw.into_iter()
        .map(|s| {
            let guard = parse_body(&s.guard, vars.iter().map(String::as_str))
                .map_err(|e| McError::Prophecy(format!("guard of `{}`: {e}", s.prop)))?;
            Ok(ProphecySpec { prop: s.prop, guard })
        })
        .collect()
}

/// Adds each prophecy as a fresh input and strengthens the formula to
/// `(⋀_j G(p_j[π1] ↔ ψ_j)) → φ`, where `π1` is the first universal
/// variable. Guards must only mention universal variables.
pub fn apply_prophecy(
    sys: &TransitionSystem,
    f: &Formula,
    specs: &[ProphecySpec],
) -> Result<(TransitionSystem, Formula), McError> {
    if specs.is_empty() {
        return Ok((sys.clone(), f.clone()));
    }
    if !matches!(f.classify(), FragmentClass::ForallExists(..)) {
        return Err(McError::Fragment(f.classify()));
    }
    let first = f.prefix[0].1.clone();
    let mut out = sys.clone();
    let mut guards = Vec::new();
    for spec in specs {
        for v in spec.guard.trace_vars() {
            if f.quantifier_of(&v) != Some(Quantifier::Forall) {
                return Err(McError::Prophecy(format!(
                    "guard of `{}` refers to `{v}`, which is not universally quantified",
                    spec.prop
                )));
            }
        }
        out = add_prophecy(&out, &spec.prop)
            .map_err(|_| McError::Prophecy(format!("prophecy `{}` is not fresh", spec.prop)))?;
        guards.push(Ltl::globally(Ltl::iff(
            Ltl::Atom(IndexedAtom::new(spec.prop.clone(), first.clone())),
            spec.guard.clone(),
        )));
    }
    let body = Ltl::implies(Ltl::conjunction(guards), f.body.clone());
    Ok((
        out,
        Formula {
            prefix: f.prefix.clone(),
            body,
        },
    ))
}
