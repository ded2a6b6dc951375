use super::strategy::{LookaheadSystem, StrategySystem};
use super::system::{SystemError, TransitionSystem, MAX_INPUTS};
use crate::hyperltl::TupleProp;

/// Synchronous product. State `(sa, sb)` has index `sa * |Sb| + sb`; the
/// joint input valuation is `va | vb << |Ia|`.
pub fn product(a: &TransitionSystem, b: &TransitionSystem) -> Result<TransitionSystem, SystemError> {
    let inputs: Vec<String> = a.inputs.iter().chain(&b.inputs).cloned().collect();
    if inputs.len() > MAX_INPUTS {
        return Err(SystemError::TooManyInputs(inputs.len()));
    }
    let (na, nb) = (a.num_states(), b.num_states());
    let (la, lb) = (a.num_valuations(), b.num_valuations());
    let (ia, oa, ma) = (a.inputs.len(), a.outputs.len(), a.mealy_props.len());
    let has_mealy = !a.mealy_props.is_empty() || !b.mealy_props.is_empty();
    let mut states = Vec::with_capacity(na * nb);
    let mut label = Vec::with_capacity(na * nb);
    for sa in 0..na {
        for sb in 0..nb {
            states.push(format!("{},{}", a.states[sa], b.states[sb]));
            label.push(a.label[sa] | b.label[sb] << oa);
        }
    }
    let cells = na * nb * la * lb;
    let mut succ = Vec::with_capacity(cells);
    let mut mealy = Vec::with_capacity(if has_mealy { cells } else { 0 });
    for sa in 0..na {
        for sb in 0..nb {
            for v in 0..la * lb {
                let (va, vb) = (v & (la - 1), v >> ia);
                succ.push(a.next(sa, va) * nb + b.next(sb, vb));
                if has_mealy {
                    mealy.push(a.mealy_out(sa, va) | b.mealy_out(sb, vb) << ma);
                }
            }
        }
    }
    let sys = TransitionSystem {
        inputs,
        outputs: a.outputs.iter().chain(&b.outputs).cloned().collect(),
        states,
        initial: a.initial * nb + b.initial,
        label,
        succ,
        mealy_props: a.mealy_props.iter().chain(&b.mealy_props).cloned().collect(),
        mealy,
    };
    sys.validate()?;
    Ok(sys)
}

/// Copy of `sys` with every proposition `a` renamed to `a@copy`.
pub fn copy_of(sys: &TransitionSystem, copy: usize) -> TransitionSystem {
    sys.rename(|p| TupleProp::new(p, copy).to_string())
}

/// `n`-fold self-composition with copies numbered `1..=n`.
pub fn self_composition(sys: &TransitionSystem, n: usize) -> Result<TransitionSystem, SystemError> {
    if n == 0 {
        return Err(SystemError::ZeroCopies);
    }
    self_composition_with(sys, &(1..=n).collect::<Vec<_>>())
}

/// Self-composition over the given copy indices, in order. The empty list
/// yields the single-state system without propositions.
pub fn self_composition_with(
    sys: &TransitionSystem,
    copies: &[usize],
) -> Result<TransitionSystem, SystemError> {
    let mut acc = TransitionSystem::epsilon();
    for (i, &c) in copies.iter().enumerate() {
        let next = copy_of(sys, c);
        acc = if i == 0 { next } else { product(&acc, &next)? };
    }
    Ok(acc)
}

/// Adds a fresh input `p` that does not influence the system.
pub fn add_prophecy(sys: &TransitionSystem, p: &str) -> Result<TransitionSystem, SystemError> {
    if sys.props().iter().any(|q| q == p) {
        return Err(SystemError::NamespaceClash(p.to_string()));
    }
    let mut inputs = sys.inputs.clone();
    inputs.push(p.to_string());
    if inputs.len() > MAX_INPUTS {
        return Err(SystemError::TooManyInputs(inputs.len()));
    }
    let l = sys.num_valuations();
    let mut succ = Vec::with_capacity(sys.succ.len() * 2);
    let mut mealy = Vec::new();
    for s in 0..sys.num_states() {
        for v in 0..2 * l {
            succ.push(sys.next(s, v % l));
            if !sys.mealy_props.is_empty() {
                mealy.push(sys.mealy_out(s, v % l));
            }
        }
    }
    let out = TransitionSystem {
        inputs,
        succ,
        mealy,
        ..sys.clone()
    };
    out.validate()?;
    Ok(out)
}

/// The existential side of a run graph: `S^m || σ` together with the
/// lookahead of `σ` and one initial state per initial input buffer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExistentialPart {
    pub system: TransitionSystem,
    pub lookahead: usize,
    pub initial_states: Vec<usize>,
}

/// Composes the existential copies `sys_m` with a strategy.
///
/// The result reads the universal inputs (`a@1 … a@n`), has states
/// `S_m × X` (index `s * |X| + x`) and keeps the outputs of `sys_m`. The
/// inputs of `sys_m` chosen by the strategy become Mealy propositions, so
/// a zipped formula can refer to them.
pub fn compose_strategy(
    sys_m: &TransitionSystem,
    strat: &StrategySystem,
) -> Result<TransitionSystem, SystemError> {
    if sys_m.inputs.len() != strat.out_bits() {
        return Err(SystemError::AlphabetMismatch(format!(
            "strategy chooses {} input bits but the existential copies have {}",
            strat.out_bits(),
            sys_m.inputs.len()
        )));
    }
    if !sys_m.mealy_props.is_empty() {
        return Err(SystemError::AlphabetMismatch(
            "existential copies already carry Mealy propositions".into(),
        ));
    }
    let inputs: Vec<String> = (1..=strat.arity_in)
        .flat_map(|c| {
            strat
                .base_inputs
                .iter()
                .map(move |a| TupleProp::new(a.clone(), c).to_string())
        })
        .collect();
    if inputs.len() > MAX_INPUTS {
        return Err(SystemError::TooManyInputs(inputs.len()));
    }
    let nx = strat.num_states();
    let l = strat.num_in();
    let n = sys_m.num_states() * nx;
    let mut states = Vec::with_capacity(n);
    let mut label = Vec::with_capacity(n);
    let mut succ = Vec::with_capacity(n * l);
    let mut mealy = Vec::with_capacity(n * l);
    for s in 0..sys_m.num_states() {
        for x in 0..nx {
            states.push(format!("{}|{}", sys_m.states[s], strat.states[x]));
            label.push(sys_m.label[s]);
            for v in 0..l {
                let c = strat.choose(x, v);
                succ.push(sys_m.next(s, c as usize) * nx + strat.next(x, v));
                mealy.push(c);
            }
        }
    }
    let sys = TransitionSystem {
        inputs,
        outputs: sys_m.outputs.clone(),
        states,
        initial: sys_m.initial * nx + strat.initial,
        label,
        succ,
        mealy_props: sys_m.inputs.clone(),
        mealy,
    };
    sys.validate()?;
    Ok(sys)
}

/// Like [`compose_strategy`], for a strategy with lookahead.
pub fn compose_lookahead(
    sys_m: &TransitionSystem,
    strat: &LookaheadSystem,
) -> Result<ExistentialPart, SystemError> {
    strat.validate()?;
    let system = compose_strategy(sys_m, &strat.strategy)?;
    let nx = strat.strategy.num_states();
    let initial_states = strat.init.iter().map(|&x| sys_m.initial * nx + x).collect();
    Ok(ExistentialPart {
        system,
        lookahead: strat.lookahead,
        initial_states,
    })
}
