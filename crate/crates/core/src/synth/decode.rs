//! Reading systems and strategies off a solver model.

use std::collections::HashMap;

use super::encode::ConstraintSystem;
use super::term::{Term, TermId};
use super::{SynthError, SystemSpec};
use crate::mc::{Annotation, CheckOptions, Prepared, Verdict};
use crate::tsys::{LookaheadSystem, StrategySystem, TransitionSystem};

/// A verified synthesis result.
#[derive(Debug, Clone)]
pub struct DecodedSolution {
    pub system: TransitionSystem,
    pub strategy: Option<LookaheadSystem>,
    pub annotation: Annotation,
}

fn value(cs: &ConstraintSystem, model: &HashMap<String, i64>, t: TermId) -> i64 {
    match cs.arena.get(t) {
        Term::Int(i) => *i,
        Term::Bool(b) => *b as i64,
        Term::Var(v) => model.get(&cs.arena.vars[*v as usize].name).copied().unwrap_or(0),
        _ => 0,
    }
}

/// Interprets the unknowns of `cs` under `model` without re-checking.
/// Missing entries default to state 0 and the empty valuation.
pub fn interpret(
    cs: &ConstraintSystem,
    spec: &SystemSpec,
    model: &HashMap<String, i64>,
) -> Result<(TransitionSystem, Option<LookaheadSystem>), SynthError> {
    let sh = &cs.shape;
    let system = match spec {
        SystemSpec::Given(sys) => sys.clone(),
        SystemSpec::Interface { .. } => {
            let nv = 1usize << cs.inputs.len();
            let no = cs.outputs.len();
            let succ = (0..sh.s * nv).map(|i| value(cs, model, cs.tau[i]) as usize).collect();
            let label = (0..sh.s)
                .map(|s| (0..no).fold(0u64, |m, o| m | ((value(cs, model, cs.out[s * no + o]) as u64) << o)))
                .collect();
            TransitionSystem::new(
                cs.inputs.clone(),
                cs.outputs.clone(),
                (0..sh.s).map(|i| format!("s{i}")).collect(),
                cs.initial_state,
                label,
                succ,
            )?
        }
    };
    let strategy = if sh.has_strategy {
        let ls = sh.ls();
        let cbits = sh.m * sh.input_bits;
        let cells = sh.x * ls;
        let succ: Vec<usize> = (0..cells).map(|c| value(cs, model, cs.mu[c]) as usize).collect();
        let choice: Vec<u64> = (0..cells)
            .map(|c| (0..cbits).fold(0u64, |m, b| m | ((value(cs, model, cs.choice[c * cbits + b]) as u64) << b)))
            .collect();
        let init: Vec<usize> = if sh.k == 0 {
            vec![0]
        } else {
            cs.init.iter().map(|&t| value(cs, model, t) as usize).collect()
        };
        let strategy = StrategySystem::new(
            cs.inputs.clone(),
            if sh.reads_input { sh.n } else { 0 },
            sh.m,
            (0..sh.x).map(|i| format!("x{i}")).collect(),
            init[0],
            succ,
            choice,
        )?;
        let la = LookaheadSystem {
            strategy,
            lookahead: sh.k,
            init,
        };
        la.validate()?;
        Some(la)
    } else {
        None
    };
    Ok((system, strategy))
}

/// Decodes a model and re-checks the result with the model checker. A
/// result that fails the re-check is reported as an internal error.
pub fn decode_solution(
    cs: &ConstraintSystem,
    spec: &SystemSpec,
    prepared: &Prepared,
    model: &HashMap<String, i64>,
    opts: &CheckOptions,
) -> Result<DecodedSolution, SynthError> {
    let (system, strategy) = interpret(cs, spec, model)?;
    let report = prepared.check(&system, strategy.as_ref(), opts)?;
    match (report.verdict, report.annotation) {
        (Verdict::Holds, Some(annotation)) => Ok(DecodedSolution {
            system,
            strategy,
            annotation,
        }),
        _ => Err(SynthError::Internal(
            "decoded solution failed re-verification".into(),
        )),
    }
}
