//! Transition systems, strategies and their compositions.

mod compose;
mod io;
mod lassos;
mod strategy;
mod system;

pub use compose::{
    add_prophecy, compose_lookahead, compose_strategy, copy_of, product, self_composition,
    self_composition_with, ExistentialPart,
};
pub use io::{
    interface_from_json, load_interface, load_strategy, load_system, strategy_from_json, strategy_to_json, system_from_json,
    system_to_json, Interface, IoError,
};
pub use lassos::{enumerate_input_lassos, enumerate_lassos};
pub use strategy::{LookaheadSystem, StrategySystem};
pub use system::{SystemError, TransitionSystem};
