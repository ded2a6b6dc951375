use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use super::accept::{check_accepting, Acceptance, Annotation, RunLasso};
use super::rungraph::{build_run_graph, RunGraph, DEFAULT_VERTEX_CAP};
use super::McError;
use crate::automata::{ucw_for, UniversalCoBuchi, DEFAULT_STATE_CAP};
use crate::hyperltl::{
    unzip_lasso, zip_formula, FragmentClass, Formula, LassoTrace, Letter, Ltl, ZippedFormula,
};
use crate::tsys::{
    compose_lookahead, self_composition_with, ExistentialPart, LookaheadSystem, TransitionSystem,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOptions {
    pub automaton_cap: usize,
    pub vertex_cap: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            automaton_cap: DEFAULT_STATE_CAP,
            vertex_cap: DEFAULT_VERTEX_CAP,
        }
    }
}

/// What a failed check refutes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FailScope {
    /// The formula itself is violated.
    Property,
    /// Only the given strategy is refuted; the formula may still hold.
    Strategy,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails {
        counterexample: BTreeMap<String, LassoTrace>,
        scope: FailScope,
    },
    Unknown(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Stats {
    pub vertices: usize,
    pub rejecting: usize,
    pub time_ms: u128,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub stats: Stats,
    pub annotation: Option<Annotation>,
}

pub const STRATEGY_REFUTED: &str = "strategy refuted (property may still hold)";

impl CheckReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn message(&self) -> &'static str {
        match &self.verdict {
            Verdict::Holds => "property holds",
            Verdict::Fails {
                scope: FailScope::Strategy,
                ..
            } => STRATEGY_REFUTED,
            Verdict::Fails { .. } => "property violated",
            Verdict::Unknown(_) => "unknown",
        }
    }

    /// Versioned JSON report.
    pub fn to_json(&self) -> serde_json::Value {
        let mut j = serde_json::json!({
            "schema": 1,
            "verdict": match self.verdict {
                Verdict::Holds => "holds",
                Verdict::Fails { .. } => "fails",
                Verdict::Unknown(_) => "unknown",
            },
            "message": self.message(),
            "stats": self.stats,
        });
        match &self.verdict {
            Verdict::Fails { counterexample, scope } => {
                j["scope"] = serde_json::to_value(scope).expect("serializable");
                j["counterexample"] = serde_json::to_value(counterexample).expect("serializable");
            }
            Verdict::Unknown(reason) => j["reason"] = reason.clone().into(),
            Verdict::Holds => {}
        }
        j
    }
}

/// A formula prepared for repeated checks: fragment, copy layout and the
/// universal co-Büchi automaton of the zipped body.
///
/// Copy `i` of the self-composition belongs to the `i`-th variable of the
/// prefix. For `∀^n ∃^m` the universal copies are `1..=n`, for `∃^m ∀^n`
/// the existential copies are `1..=m`.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub formula: Formula,
    pub class: FragmentClass,
    pub zipped: ZippedFormula,
    pub ucw: UniversalCoBuchi,
    pub universal_copies: Vec<usize>,
    pub existential_copies: Vec<usize>,
}

impl Prepared {
    pub fn new(f: &Formula, opts: &CheckOptions) -> Result<Self, McError> {
        let class = f.classify();
        let vars = f.vars();
        let zipped = zip_formula(&f.body, &vars)?;
        let (universal_copies, existential_copies) = match class {
            FragmentClass::UniversalOnly => ((1..=vars.len()).collect(), vec![]),
            FragmentClass::ForallExists(n, m) => ((1..=n).collect(), (n + 1..=n + m).collect()),
            FragmentClass::ExistsForall(m, n) => ((m + 1..=m + n).collect(), (1..=m).collect()),
            FragmentClass::ExistentialOnly => (vec![], (1..=vars.len()).collect()),
            FragmentClass::Other => return Err(McError::Fragment(class)),
        };
        let ucw = ucw_for(&zipped, opts.automaton_cap)?;
        Ok(Self {
            formula: f.clone(),
            class,
            zipped,
            ucw,
            universal_copies,
            existential_copies,
        })
    }

    pub fn n(&self) -> usize {
        self.universal_copies.len()
    }

    pub fn m(&self) -> usize {
        self.existential_copies.len()
    }

    fn check_strategy_shape(&self, sys: &TransitionSystem, strat: &LookaheadSystem) -> Result<(), McError> {
        let s = &strat.strategy;
        let want_in = match self.class {
            FragmentClass::ForallExists(n, _) => n,
            _ => 0,
        };
        if s.base_inputs != sys.inputs {
            return Err(McError::Arity(format!(
                "strategy inputs {:?} differ from system inputs {:?}",
                s.base_inputs, sys.inputs
            )));
        }
        if s.arity_in != want_in || s.arity_out != self.m() {
            return Err(McError::Arity(format!(
                "strategy has arity ({}, {}) but the formula needs ({want_in}, {})",
                s.arity_in,
                s.arity_out,
                self.m()
            )));
        }
        if want_in == 0 && strat.lookahead > 0 {
            return Err(McError::Arity("an input-free witness cannot use lookahead".into()));
        }
        Ok(())
    }

    /// Universal part `S^n` and, given a strategy, the existential part.
    pub fn components(
        &self,
        sys: &TransitionSystem,
        strat: Option<&LookaheadSystem>,
    ) -> Result<(TransitionSystem, Option<ExistentialPart>), McError> {
        let univ = self_composition_with(sys, &self.universal_copies)?;
        let ex = match (self.class, strat) {
            (FragmentClass::UniversalOnly, None) => None,
            (FragmentClass::UniversalOnly, Some(_)) => {
                return Err(McError::Arity("universal formulas take no strategy".into()))
            }
            (FragmentClass::ForallExists(..) | FragmentClass::ExistsForall(..), Some(st)) => {
                self.check_strategy_shape(sys, st)?;
                let sys_m = self_composition_with(sys, &self.existential_copies)?;
                Some(compose_lookahead(&sys_m, st)?)
            }
            (FragmentClass::ForallExists(..) | FragmentClass::ExistsForall(..), None) => {
                return Err(McError::StrategyRequired)
            }
            (class, _) => return Err(McError::Fragment(class)),
        };
        Ok((univ, ex))
    }

    /// Checks `sys` against the prepared formula, using `strat` for the
    /// existential copies.
    pub fn check(
        &self,
        sys: &TransitionSystem,
        strat: Option<&LookaheadSystem>,
        opts: &CheckOptions,
    ) -> Result<CheckReport, McError> {
        let start = Instant::now();
        let (univ, ex) = self.components(sys, strat)?;
        let g = build_run_graph(&univ, ex.as_ref(), &self.ucw, opts.vertex_cap)?;
        let acc = check_accepting(&g);
        let stats = Stats {
            vertices: g.num_vertices(),
            rejecting: g.num_rejecting(),
            time_ms: start.elapsed().as_millis(),
        };
        Ok(match acc {
            Acceptance::Accepting(a) => CheckReport {
                verdict: Verdict::Holds,
                stats,
                annotation: Some(a),
            },
            Acceptance::Rejecting(lasso) => {
                let traces = decode_lasso(&g, &univ, ex.as_ref(), &lasso);
                let vars = self.formula.vars();
                let counterexample = unzip_lasso(&traces, vars.len())
                    .into_iter()
                    .zip(vars)
                    .map(|(w, v)| (v, w))
                    .collect();
                let scope = if ex.is_some() {
                    FailScope::Strategy
                } else {
                    FailScope::Property
                };
                CheckReport {
                    verdict: Verdict::Fails {
                        counterexample,
                        scope,
                    },
                    stats,
                    annotation: None,
                }
            }
        })
    }

    /// Fast acceptance test without counterexample decoding.
    pub fn accepts(
        &self,
        sys: &TransitionSystem,
        strat: Option<&LookaheadSystem>,
        opts: &CheckOptions,
    ) -> Result<bool, McError> {
        let (univ, ex) = self.components(sys, strat)?;
        let g = build_run_graph(&univ, ex.as_ref(), &self.ucw, opts.vertex_cap)?;
        Ok(matches!(check_accepting(&g), Acceptance::Accepting(_)))
    }
}

/// Joint letter (over all copies) on each edge of a run-graph lasso.
pub fn decode_lasso(
    g: &RunGraph,
    univ: &TransitionSystem,
    ex: Option<&ExistentialPart>,
    lasso: &RunLasso,
) -> LassoTrace {
    let l = g.num_inputs as usize;
    let letter = |v: u32, fresh: u32| -> Letter {
        let vx = g.vertices[v as usize];
        let w = if g.lookahead > 0 {
            vx.buf as usize % l
        } else {
            fresh as usize
        };
        let mut out = univ.letter(vx.u as usize, w);
        if let Some(ex) = ex {
            let ve = if ex.system.inputs.is_empty() { 0 } else { fresh as usize };
            let own = ex.system.letter(vx.e as usize, ve);
            let inputs: std::collections::BTreeSet<&String> = ex.system.inputs.iter().collect();
            out.extend(own.into_iter().filter(|p| !inputs.contains(p)));
        }
        out
    };
    let stem = lasso.stem.iter().zip(&lasso.stem_letters).map(|(&v, &f)| letter(v, f)).collect();
    let cycle = lasso
        .cycle
        .iter()
        .zip(&lasso.cycle_letters)
        .map(|(&v, &f)| letter(v, f))
        .collect();
    LassoTrace::new(stem, cycle)
}

fn expect_class(f: &Formula, ok: impl Fn(FragmentClass) -> bool) -> Result<(), McError> {
    let c = f.classify();
    if ok(c) {
        Ok(())
    } else {
        Err(McError::Fragment(c))
    }
}

/// Checks a formula whose prefix is purely universal on the self-composition.
pub fn mc_universal(sys: &TransitionSystem, f: &Formula, opts: &CheckOptions) -> Result<CheckReport, McError> {
    expect_class(f, |c| c == FragmentClass::UniversalOnly)?;
    Prepared::new(f, opts)?.check(sys, None, opts)
}

/// Checks a purely existential formula via its universal dual. A witness
/// for the dual's failure is a witness for the formula.
pub fn mc_existential(sys: &TransitionSystem, f: &Formula, opts: &CheckOptions) -> Result<CheckReport, McError> {
    expect_class(f, |c| c == FragmentClass::ExistentialOnly)?;
    let dual = Formula {
        prefix: f
            .prefix
            .iter()
            .map(|(_, v)| (crate::hyperltl::Quantifier::Forall, v.clone()))
            .collect(),
        body: Ltl::not(f.body.clone()),
    };
    let mut r = mc_universal(sys, &dual, opts)?;
    r.verdict = match r.verdict {
        Verdict::Holds => Verdict::Fails {
            counterexample: BTreeMap::new(),
            scope: FailScope::Property,
        },
        Verdict::Fails { .. } => Verdict::Holds,
        u => u,
    };
    r.annotation = None;
    Ok(r)
}

/// `∀^n ∃^m` checking with a strategy for the existential copies. A failure
/// only refutes the strategy.
pub fn mc_forall_exists(
    sys: &TransitionSystem,
    f: &Formula,
    strat: &LookaheadSystem,
    opts: &CheckOptions,
) -> Result<CheckReport, McError> {
    expect_class(f, |c| matches!(c, FragmentClass::ForallExists(..)))?;
    Prepared::new(f, opts)?.check(sys, Some(strat), opts)
}

/// `∃^m ∀^n` checking with an input-free witness strategy.
pub fn mc_exists_forall(
    sys: &TransitionSystem,
    f: &Formula,
    witness: &LookaheadSystem,
    opts: &CheckOptions,
) -> Result<CheckReport, McError> {
    expect_class(f, |c| matches!(c, FragmentClass::ExistsForall(..)))?;
    Prepared::new(f, opts)?.check(sys, Some(witness), opts)
}
