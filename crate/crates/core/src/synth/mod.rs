//! Bounded synthesis of strategies and systems through an external SMT
//! solver, with an enumeration oracle.

mod brute;
mod decode;
mod encode;
mod smtlib;
mod term;

pub use brute::{canonical_tables, search, CandidateSpace, DEFAULT_CANDIDATE_CAP};
pub use decode::{decode_solution, interpret, DecodedSolution};
pub use encode::{encode, ConstraintSystem, Shape, DEFAULT_CLAUSE_CAP};
pub use smtlib::{
    default_solver_cmd, emit_smtlib, parse_answer, run_solver, SolverAnswer, DEFAULT_SOLVER_CMD, SOLVER_ENV,
};
pub use term::{Sort, Term, TermArena, TermId, VarDecl};

use std::path::PathBuf;
use std::sync::atomic::AtomicBool;
use std::sync::Arc;
use std::time::Duration;

use thiserror::Error;

use crate::hyperltl::FragmentClass;
use crate::mc::{CheckOptions, McError, Prepared};
use crate::tsys::{SystemError, TransitionSystem};

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("formula fragment {0:?} cannot be synthesized")]
    Fragment(FragmentClass),
    #[error("invalid bounds: {0}")]
    Bounds(String),
    #[error("alphabet mismatch: {0}")]
    Alphabet(String),
    #[error("grounding needs {clauses} clauses, above the cap of {cap}")]
    ClauseCap { clauses: u128, cap: u64 },
    #[error("{candidates} candidates exceed the enumeration cap of {cap}")]
    CandidateCap { candidates: u128, cap: u128 },
    #[error("solver: {0}")]
    Solver(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("cannot write {0}: {1}")]
    Io(PathBuf, std::io::Error),
    #[error(transparent)]
    Mc(#[from] McError),
    #[error(transparent)]
    System(#[from] SystemError),
}

/// The system side of a synthesis problem.
#[derive(Debug, Clone)]
pub enum SystemSpec {
    /// A fixed system: only the strategy is synthesized.
    Given(TransitionSystem),
    /// Only the interface is fixed; transitions and labels are synthesized.
    Interface { inputs: Vec<String>, outputs: Vec<String> },
}

#[derive(Debug, Clone)]
pub struct SynthProblem {
    pub prepared: Prepared,
    pub system: SystemSpec,
}

/// One bound triple. `system` is `None` for a given system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SynthBounds {
    pub system: Option<usize>,
    pub strategy: usize,
    pub lookahead: usize,
}

/// Upper limits for the bound-raising loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MaxBounds {
    pub system: usize,
    pub strategy: usize,
    pub lookahead: usize,
}

#[derive(Debug, Clone)]
pub struct SynthConfig {
    pub solver_cmd: String,
    pub timeout: Duration,
    pub clause_cap: u64,
    pub candidate_cap: u128,
    pub check: CheckOptions,
    /// Each emitted script is written here before it is solved.
    pub dump_smt: Option<PathBuf>,
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Default for SynthConfig {
    fn default() -> Self {
        Self {
            solver_cmd: default_solver_cmd(),
            timeout: Duration::from_secs(600),
            clause_cap: DEFAULT_CLAUSE_CAP,
            candidate_cap: DEFAULT_CANDIDATE_CAP,
            check: CheckOptions::default(),
            dump_smt: None,
            cancel: None,
        }
    }
}

#[derive(Debug, Clone)]
pub enum SynthOutcome {
    Realizable {
        bounds: SynthBounds,
        solution: DecodedSolution,
    },
    Exhausted {
        note: String,
    },
    Unknown {
        bounds: SynthBounds,
        reason: String,
    },
}

impl SynthOutcome {
    pub fn is_realizable(&self) -> bool {
        matches!(self, SynthOutcome::Realizable { .. })
    }

    pub fn bounds(&self) -> Option<SynthBounds> {
        match self {
            SynthOutcome::Realizable { bounds, .. } => Some(*bounds),
            _ => None,
        }
    }
}

/// Result of solving a single bound triple.
#[derive(Debug, Clone)]
pub enum TripleResult {
    Sat(DecodedSolution),
    Unsat,
    Unknown(String),
}

impl SynthProblem {
    pub fn new(prepared: Prepared, system: SystemSpec) -> Result<Self, SynthError> {
        match prepared.class {
            FragmentClass::ForallExists(..) | FragmentClass::ExistsForall(..) => {}
            FragmentClass::UniversalOnly if matches!(system, SystemSpec::Interface { .. }) => {}
            c => return Err(SynthError::Fragment(c)),
        }
        Ok(Self { prepared, system })
    }

    fn has_strategy(&self) -> bool {
        !matches!(self.prepared.class, FragmentClass::UniversalOnly)
    }

    fn reads_input(&self) -> bool {
        matches!(self.prepared.class, FragmentClass::ForallExists(..))
    }

    /// Bound triples in the order the loop visits them.
    pub fn bound_sequence(&self, max: &MaxBounds) -> Vec<SynthBounds> {
        let systems: Vec<Option<usize>> = match self.system {
            SystemSpec::Given(_) => vec![None],
            SystemSpec::Interface { .. } => (1..=max.system).map(Some).collect(),
        };
        let strategies = if self.has_strategy() { max.strategy } else { 1 };
        let ks = if self.reads_input() { max.lookahead } else { 0 };
        let mut out = Vec::new();
        for &s in &systems {
            for x in 1..=strategies {
                for k in 0..=ks {
                    out.push(SynthBounds {
                        system: s,
                        strategy: x,
                        lookahead: k,
                    });
                }
            }
        }
        out
    }

    fn system_size(&self, b: &SynthBounds) -> usize {
        match &self.system {
            SystemSpec::Given(s) => s.num_states(),
            SystemSpec::Interface { .. } => b.system.unwrap_or(1),
        }
    }

    /// Grounds the constraint system for one bound triple.
    pub fn encode(&self, b: &SynthBounds, clause_cap: u64) -> Result<ConstraintSystem, SynthError> {
        encode(
            &self.prepared,
            &self.system,
            self.system_size(b),
            b.strategy,
            b.lookahead,
            clause_cap,
        )
    }

    /// Encodes, solves, decodes and re-verifies one bound triple.
    pub fn solve(&self, b: &SynthBounds, cfg: &SynthConfig) -> Result<TripleResult, SynthError> {
        let cs = self.encode(b, cfg.clause_cap)?;
        let script = emit_smtlib(&cs);
        if let Some(p) = &cfg.dump_smt {
            std::fs::write(p, &script).map_err(|e| SynthError::Io(p.clone(), e))?;
        }
        match run_solver(&cfg.solver_cmd, &script, cfg.timeout, cfg.cancel.clone())? {
            SolverAnswer::Unsat => Ok(TripleResult::Unsat),
            SolverAnswer::Unknown(r) => Ok(TripleResult::Unknown(r)),
            SolverAnswer::Sat(model) => Ok(TripleResult::Sat(decode_solution(
                &cs,
                &self.system,
                &self.prepared,
                &model,
                &cfg.check,
            )?)),
        }
    }

    /// Enumerates all candidates of one bound triple.
    pub fn solve_bruteforce_at(&self, b: &SynthBounds, cfg: &SynthConfig) -> Result<TripleResult, SynthError> {
        let size = self.system_size(b);
        let space = CandidateSpace::new(&self.prepared, &self.system, size, b.strategy, b.lookahead)?;
        match search(&self.prepared, &space, &cfg.check, cfg.candidate_cap)? {
            None => Ok(TripleResult::Unsat),
            Some((system, strategy)) => {
                let report = self.prepared.check(&system, strategy.as_ref(), &cfg.check)?;
                let annotation = report
                    .annotation
                    .ok_or_else(|| SynthError::Internal("accepted candidate has no annotation".into()))?;
                Ok(TripleResult::Sat(DecodedSolution {
                    system,
                    strategy,
                    annotation,
                }))
            }
        }
    }

    fn exhausted_note(&self) -> String {
        match self.prepared.class {
            FragmentClass::ExistsForall(_, 1) => "no solution within the bounds; the ∃*∀ case is decidable, \
                but only at bounds far beyond the ones explored"
                .into(),
            FragmentClass::ExistsForall(..) => "no solution within the bounds; with more than one universal \
                quantifier bounded synthesis is only a semi-decision procedure"
                .into(),
            _ => "no solution within the bounds; this does not show unrealizability".into(),
        }
    }

    fn run_loop(
        &self,
        max: &MaxBounds,
        mut step: impl FnMut(&SynthBounds) -> Result<TripleResult, SynthError>,
    ) -> Result<SynthOutcome, SynthError> {
        if max.system == 0 || max.strategy == 0 {
            return Err(SynthError::Bounds("maximum bounds must be positive".into()));
        }
        for b in self.bound_sequence(max) {
            match step(&b)? {
                TripleResult::Sat(solution) => return Ok(SynthOutcome::Realizable { bounds: b, solution }),
                TripleResult::Unsat => {}
                TripleResult::Unknown(reason) => return Ok(SynthOutcome::Unknown { bounds: b, reason }),
            }
        }
        Ok(SynthOutcome::Exhausted {
            note: self.exhausted_note(),
        })
    }

    /// Raises the bounds lexicographically in (system, strategy, lookahead)
    /// and returns the first verified solution.
    pub fn synthesis_loop(&self, max: &MaxBounds, cfg: &SynthConfig) -> Result<SynthOutcome, SynthError> {
        self.run_loop(max, |b| self.solve(b, cfg))
    }

    /// Same contract as [`Self::synthesis_loop`], by enumeration.
    pub fn solve_bruteforce(&self, max: &MaxBounds, cfg: &SynthConfig) -> Result<SynthOutcome, SynthError> {
        self.run_loop(max, |b| self.solve_bruteforce_at(b, cfg))
    }
}
