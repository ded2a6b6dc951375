//! Run graphs, acceptance certificates and model checking.

mod accept;
mod check;
mod prophecy;
mod rungraph;

pub use accept::{check_accepting, validate_annotation, Acceptance, Annotation, RunLasso};
pub use check::{
    decode_lasso, mc_existential, mc_exists_forall, mc_forall_exists, mc_universal, CheckOptions,
    CheckReport, FailScope, Prepared, Stats, Verdict, STRATEGY_REFUTED,
};
pub use prophecy::{apply_prophecy, prophecies_from_json, ProphecySpec};
pub use rungraph::{build_run_graph, RunGraph, Vertex, DEFAULT_VERTEX_CAP};

use thiserror::Error;

use crate::automata::AutomataError;
use crate::hyperltl::{FragmentClass, ZipError};
use crate::tsys::SystemError;

#[derive(Debug, Error)]
pub enum McError {
    #[error("formula fragment {0:?} is not supported here")]
    Fragment(FragmentClass),
    #[error("a strategy is required: existential quantifiers are checked by substituting a strategy for them")]
    StrategyRequired,
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("run graph exceeds the vertex cap of {0}")]
    VertexCap(usize),
    #[error("prophecy: {0}")]
    Prophecy(String),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error(transparent)]
    Automata(#[from] AutomataError),
    #[error(transparent)]
    Zip(#[from] ZipError),
}
