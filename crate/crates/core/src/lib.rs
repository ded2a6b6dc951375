//! Model checking and synthesis for HyperLTL with one quantifier alternation.

pub mod automata;
pub mod cli;
pub mod graph;
pub mod hyperltl;
pub mod tsys;
pub mod mc;
pub mod synth;
