//! Büchi automata from LTL and their universal co-Büchi duals.

mod buchi;
mod tableau;

pub use buchi::{
    dualize_to_ucw, nba_accepts_lasso, ucw_accepts_lasso, Carrier, NondetBuchi, UniversalCoBuchi,
};
pub use tableau::{ltl_to_nba, AutomataError, DEFAULT_STATE_CAP};

use std::fmt::Display;

use crate::hyperltl::{negate_nnf, Ltl};

/// Universal co-Büchi automaton accepting exactly the models of `f`,
/// obtained by dualizing the Büchi automaton for `¬f`.
pub fn ucw_for<A: Ord + Clone + Display>(
    f: &Ltl<A>,
    state_cap: usize,
) -> Result<UniversalCoBuchi, AutomataError> {
    Ok(dualize_to_ucw(&ltl_to_nba(&negate_nnf(f), state_cap)?))
}
