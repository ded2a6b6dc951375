//! JSON formats for systems and strategies.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::strategy::{LookaheadSystem, StrategySystem};
use super::system::{mask_of, names_of, SystemError, TransitionSystem};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    System(#[from] SystemError),
}

#[derive(Serialize, Deserialize)]
struct SystemJson {
    inputs: Vec<String>,
    outputs: Vec<String>,
    states: Vec<String>,
    initial: String,
    #[serde(default)]
    label: BTreeMap<String, Vec<String>>,
    transitions: Vec<TransitionJson>,
}

#[derive(Serialize, Deserialize)]
struct TransitionJson {
    from: String,
    input: Vec<String>,
    to: String,
}

#[derive(Serialize, Deserialize)]
struct StrategyJson {
    inputs: Vec<String>,
    arity_in: usize,
    arity_out: usize,
    states: Vec<String>,
    initial: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    label: BTreeMap<String, Vec<Vec<String>>>,
    transitions: Vec<StrategyTransitionJson>,
    #[serde(default, skip_serializing_if = "is_zero")]
    lookahead: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    init: Vec<InitJson>,
}

fn is_zero(k: &usize) -> bool {
    *k == 0
}

#[derive(Serialize, Deserialize)]
struct StrategyTransitionJson {
    from: String,
    input: Vec<Vec<String>>,
    to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    choice: Option<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
struct InitJson {
    buffer: Vec<Vec<Vec<String>>>,
    state: String,
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })
}

fn state_index(states: &[String], name: &str) -> Result<usize, SystemError> {
    states
        .iter()
        .position(|s| s == name)
        .ok_or_else(|| SystemError::UnknownState(name.to_string()))
}

fn valuation(names: &[String], given: &[String]) -> Result<u64, SystemError> {
    let set: BTreeSet<String> = given.iter().cloned().collect();
    if let Some(bad) = set.iter().find(|p| !names.contains(p)) {
        return Err(SystemError::UnknownProp(bad.clone()));
    }
    Ok(mask_of(names, &set))
}

fn joint_valuation(names: &[String], arity: usize, given: &[Vec<String>]) -> Result<u64, SystemError> {
    if given.len() != arity {
        return Err(SystemError::Malformed(format!(
            "expected {arity} valuations, found {}",
            given.len()
        )));
    }
    let w = names.len();
    given.iter().enumerate().try_fold(0u64, |acc, (i, g)| {
        Ok(acc | valuation(names, g)? << (i * w))
    })
}

fn split_joint(names: &[String], arity: usize, mask: u64) -> Vec<Vec<String>> {
    let w = names.len();
    (0..arity)
        .map(|i| names_of(names, if w == 0 { 0 } else { mask >> (i * w) & ((1 << w) - 1) }))
        .collect()
}

pub fn system_from_json(text: &str) -> Result<TransitionSystem, IoError> {
    let j: SystemJson = serde_json::from_str(text)?;
    let n = j.states.len();
    let initial = state_index(&j.states, &j.initial)?;
    let outputs = j.outputs.clone();
    let mut label = vec![0u64; n];
    for (s, outs) in &j.label {
        label[state_index(&j.states, s)?] = valuation(&outputs, outs)?;
    }
    let l = 1usize << j.inputs.len().min(super::system::MAX_INPUTS + 1);
    let mut succ: Vec<Option<usize>> = vec![None; n * l];
    for t in &j.transitions {
        let from = state_index(&j.states, &t.from)?;
        let to = state_index(&j.states, &t.to)?;
        let v = valuation(&j.inputs, &t.input)? as usize;
        let cell = &mut succ[from * l + v];
        if cell.is_some() {
            return Err(SystemError::DuplicateTransition {
                state: t.from.clone(),
                valuation: names_of(&j.inputs, v as u64),
            }
            .into());
        }
        *cell = Some(to);
    }
    let missing: Vec<(String, Vec<String>)> = succ
        .iter()
        .enumerate()
        .filter(|(_, t)| t.is_none())
        .map(|(i, _)| (j.states[i / l].clone(), names_of(&j.inputs, (i % l) as u64)))
        .collect();
    if !missing.is_empty() {
        return Err(SystemError::Incomplete(missing).into());
    }
    Ok(TransitionSystem::new(
        j.inputs,
        j.outputs,
        j.states,
        initial,
        label,
        succ.into_iter().map(Option::unwrap).collect(),
    )?)
}

/// Serializes a system. Mealy propositions are not part of the format.
pub fn system_to_json(sys: &TransitionSystem) -> String {
    let l = sys.num_valuations();
    let j = SystemJson {
        inputs: sys.inputs.clone(),
        outputs: sys.outputs.clone(),
        states: sys.states.clone(),
        initial: sys.states[sys.initial].clone(),
        label: sys
            .states
            .iter()
            .zip(&sys.label)
            .map(|(s, &m)| (s.clone(), names_of(&sys.outputs, m)))
            .collect(),
        transitions: (0..sys.num_states())
            .flat_map(|s| {
                (0..l).map(move |v| TransitionJson {
                    from: sys.states[s].clone(),
                    input: sys.valuation_names(v),
                    to: sys.states[sys.next(s, v)].clone(),
                })
            })
            .collect(),
    };
    serde_json::to_string_pretty(&j).expect("serializable")
}

pub fn strategy_from_json(text: &str) -> Result<LookaheadSystem, IoError> {
    let j: StrategyJson = serde_json::from_str(text)?;
    let names = &j.inputs;
    let nx = j.states.len();
    let in_bits = j.arity_in * names.len();
    if in_bits > super::system::MAX_INPUTS {
        return Err(SystemError::TooManyInputs(in_bits).into());
    }
    let l = 1usize << in_bits;
    let initial = state_index(&j.states, &j.initial)?;
    let mut moore: Vec<Option<u64>> = vec![None; nx];
    for (s, vals) in &j.label {
        moore[state_index(&j.states, s)?] = Some(joint_valuation(names, j.arity_out, vals)?);
    }
    let mut succ: Vec<Option<usize>> = vec![None; nx * l];
    let mut choice: Vec<Option<u64>> = vec![None; nx * l];
    for t in &j.transitions {
        let from = state_index(&j.states, &t.from)?;
        let to = state_index(&j.states, &t.to)?;
        let v = joint_valuation(names, j.arity_in, &t.input)? as usize;
        let cell = from * l + v;
        if succ[cell].is_some() {
            return Err(SystemError::DuplicateTransition {
                state: t.from.clone(),
                valuation: names_of(names, v as u64),
            }
            .into());
        }
        succ[cell] = Some(to);
        choice[cell] = match &t.choice {
            Some(c) => Some(joint_valuation(names, j.arity_out, c)?),
            None => moore[from],
        };
    }
    let missing: Vec<(String, Vec<String>)> = (0..nx * l)
        .filter(|&i| succ[i].is_none() || choice[i].is_none())
        .map(|i| (j.states[i / l].clone(), names_of(names, (i % l) as u64)))
        .collect();
    if !missing.is_empty() {
        return Err(SystemError::Incomplete(missing).into());
    }
    let strategy = StrategySystem::new(
        j.inputs.clone(),
        j.arity_in,
        j.arity_out,
        j.states.clone(),
        initial,
        succ.into_iter().map(Option::unwrap).collect(),
        choice.into_iter().map(Option::unwrap).collect(),
    )?;
    let k = j.lookahead;
    let buffers = l.checked_pow(k as u32).filter(|&b| b <= 1 << 20).ok_or_else(|| {
        SystemError::Malformed("lookahead buffer space too large".into())
    })?;
    let mut init: Vec<Option<usize>> = vec![None; buffers];
    if k == 0 {
        init[0] = Some(initial);
    }
    for e in &j.init {
        if e.buffer.len() != k {
            return Err(SystemError::Malformed(format!(
                "init buffer of length {} for lookahead {k}",
                e.buffer.len()
            ))
            .into());
        }
        let mut b = 0usize;
        for (pos, letter) in e.buffer.iter().enumerate() {
            b += joint_valuation(names, j.arity_in, letter)? as usize * l.pow(pos as u32);
        }
        init[b] = Some(state_index(&j.states, &e.state)?);
    }
    if init.iter().any(Option::is_none) {
        return Err(SystemError::Malformed("init is not total on input buffers".into()).into());
    }
    let la = LookaheadSystem {
        strategy,
        lookahead: k,
        init: init.into_iter().map(Option::unwrap).collect(),
    };
    la.validate()?;
    Ok(la)
}

pub fn strategy_to_json(la: &LookaheadSystem) -> String {
    let s = &la.strategy;
    let names = &s.base_inputs;
    let l = s.num_in();
    let k = la.lookahead;
    let j = StrategyJson {
        inputs: names.clone(),
        arity_in: s.arity_in,
        arity_out: s.arity_out,
        states: s.states.clone(),
        initial: s.states[s.initial].clone(),
        label: BTreeMap::new(),
        transitions: (0..s.num_states())
            .flat_map(|x| {
                (0..l).map(move |v| StrategyTransitionJson {
                    from: s.states[x].clone(),
                    input: split_joint(names, s.arity_in, v as u64),
                    to: s.states[s.next(x, v)].clone(),
                    choice: Some(split_joint(names, s.arity_out, s.choose(x, v))),
                })
            })
            .collect(),
        lookahead: k,
        init: if k == 0 {
            vec![]
        } else {
            la.init
                .iter()
                .enumerate()
                .map(|(b, &x)| InitJson {
                    buffer: (0..k)
                        .map(|pos| split_joint(names, s.arity_in, (b / l.pow(pos as u32) % l) as u64))
                        .collect(),
                    state: s.states[x].clone(),
                })
                .collect()
        },
    };
    serde_json::to_string_pretty(&j).expect("serializable")
}

pub fn load_system(path: &Path) -> Result<TransitionSystem, IoError> {
    system_from_json(&read(path)?)
}

pub fn load_strategy(path: &Path) -> Result<LookaheadSystem, IoError> {
    strategy_from_json(&read(path)?)
}


/// The proposition interface of a system to be synthesized. Any system file
/// is also a valid interface file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interface {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

pub fn interface_from_json(text: &str) -> Result<Interface, IoError> {
    let i: Interface = serde_json::from_str(text)?;
    let probe = TransitionSystem {
        inputs: i.inputs.clone(),
        outputs: i.outputs.clone(),
        ..TransitionSystem::epsilon()
    };
    probe.check_namespace()?;
    if i.inputs.len() > super::system::MAX_INPUTS {
        return Err(SystemError::TooManyInputs(i.inputs.len()).into());
    }
    Ok(i)
}

pub fn load_interface(path: &Path) -> Result<Interface, IoError> {
    interface_from_json(&read(path)?)
}
