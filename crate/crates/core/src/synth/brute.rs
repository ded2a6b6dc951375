//! Exhaustive enumeration of candidate systems and strategies.

use std::sync::atomic::{AtomicUsize, Ordering};

use super::{SynthError, SystemSpec};
use crate::hyperltl::FragmentClass;
use crate::mc::{CheckOptions, McError, Prepared};
use crate::tsys::{LookaheadSystem, StrategySystem, TransitionSystem};

pub const DEFAULT_CANDIDATE_CAP: u128 = 1_000_000;

/// Successor tables over `n` states with `l` letters in canonical form:
/// state 0 is initial, states are numbered in order of first appearance
/// when scanning rows in order, and every state is reachable.
pub fn canonical_tables(n: usize, l: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, l: usize, cell: usize, seen: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cell == n * l {
            if seen == n {
                out.push(cur.clone());
            }
            return;
        }
        if cell % l == 0 && cell / l >= seen {
            return;
        }
        for v in 0..(seen + 1).min(n) {
            cur.push(v);
            go(n, l, cell + 1, seen.max(v + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, l, 0, 1, &mut Vec::new(), &mut out);
    out
}

/// All successor tables over `n` states with `l` letters.
fn all_tables(n: usize, l: usize) -> Vec<Vec<usize>> {
    let cells = n * l;
    let total = n.pow(cells as u32);
    (0..total)
        .map(|mut i| {
            (0..cells)
                .map(|_| {
                    let d = i % n;
                    i /= n;
                    d
                })
                .collect()
        })
        .collect()
}

/// The candidate space for one bound triple, indexed in mixed radix.
pub struct CandidateSpace {
    inputs: Vec<String>,
    outputs: Vec<String>,
    given: Option<TransitionSystem>,
    sys_tables: Vec<Vec<usize>>,
    sys_states: usize,
    label_radix: u64,
    strat: Option<StratSpace>,
}

struct StratSpace {
    arity_in: usize,
    arity_out: usize,
    states: usize,
    lookahead: usize,
    tables: Vec<Vec<usize>>,
    cells: usize,
    choice_radix: u64,
    buffers: usize,
}

impl CandidateSpace {
    /// Candidates with exactly `system_size` system states (unless the
    /// system is given) and exactly `strategy_size` strategy states.
    pub fn new(
        prepared: &Prepared,
        spec: &SystemSpec,
        system_size: usize,
        strategy_size: usize,
        lookahead: usize,
    ) -> Result<Self, SynthError> {
        let (inputs, outputs, given) = match spec {
            SystemSpec::Given(s) => (s.inputs.clone(), s.outputs.clone(), Some(s.clone())),
            SystemSpec::Interface { inputs, outputs } => (inputs.clone(), outputs.clone(), None),
        };
        let nv = 1usize << inputs.len();
        let (sys_tables, sys_states) = match &given {
            Some(s) => (vec![s.succ.clone()], s.num_states()),
            None => (canonical_tables(system_size, nv), system_size),
        };
        let label_radix = 1u64 << outputs.len();
        let strat = match prepared.class {
            FragmentClass::UniversalOnly => None,
            FragmentClass::ForallExists(n, m) | FragmentClass::ExistsForall(m, n) => {
                let arity_in = if matches!(prepared.class, FragmentClass::ForallExists(..)) { n } else { 0 };
                if arity_in == 0 && lookahead > 0 {
                    return Err(SynthError::Bounds("lookahead requires a ∀∃ formula".into()));
                }
                let ls = 1usize << (arity_in * inputs.len());
                let tables = if lookahead == 0 {
                    canonical_tables(strategy_size, ls)
                } else {
                    all_tables(strategy_size, ls)
                };
                Some(StratSpace {
                    arity_in,
                    arity_out: m,
                    states: strategy_size,
                    lookahead,
                    tables,
                    cells: strategy_size * ls,
                    choice_radix: 1u64 << (m * inputs.len()),
                    buffers: ls.pow(lookahead as u32),
                })
            }
            c => return Err(SynthError::Fragment(c)),
        };
        Ok(Self {
            inputs,
            outputs,
            given,
            sys_tables,
            sys_states,
            label_radix,
            strat,
        })
    }

    fn labels(&self) -> u128 {
        match self.given {
            Some(_) => 1,
            None => (self.label_radix as u128).pow(self.sys_states as u32),
        }
    }

    /// Number of candidates.
    pub fn len(&self) -> u128 {
        let sys = self.sys_tables.len() as u128 * self.labels();
        let strat = self.strat.as_ref().map_or(1, |s| {
            s.tables.len() as u128
                * (s.choice_radix as u128).pow(s.cells as u32)
                * if s.lookahead > 0 { (s.states as u128).pow(s.buffers as u32) } else { 1 }
        });
        sys * strat
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The candidate with index `i`.
    pub fn get(&self, mut i: u128) -> (TransitionSystem, Option<LookaheadSystem>) {
        let mut take = |radix: u128| {
            let d = i % radix;
            i /= radix;
            d
        };
        let system = match &self.given {
            Some(s) => s.clone(),
            None => {
                let t = take(self.sys_tables.len() as u128) as usize;
                let label = (0..self.sys_states).map(|_| take(self.label_radix as u128) as u64).collect();
                TransitionSystem::new(
                    self.inputs.clone(),
                    self.outputs.clone(),
                    (0..self.sys_states).map(|s| format!("s{s}")).collect(),
                    0,
                    label,
                    self.sys_tables[t].clone(),
                )
                .expect("canonical table is well formed")
            }
        };
        let strategy = self.strat.as_ref().map(|s| {
            let t = take(s.tables.len() as u128) as usize;
            let choice = (0..s.cells).map(|_| take(s.choice_radix as u128) as u64).collect();
            let init: Vec<usize> = if s.lookahead == 0 {
                vec![0]
            } else {
                (0..s.buffers).map(|_| take(s.states as u128) as usize).collect()
            };
            LookaheadSystem {
                strategy: StrategySystem {
                    base_inputs: self.inputs.clone(),
                    arity_in: s.arity_in,
                    arity_out: s.arity_out,
                    states: (0..s.states).map(|x| format!("x{x}")).collect(),
                    initial: init[0],
                    succ: s.tables[t].clone(),
                    choice,
                },
                lookahead: s.lookahead,
                init,
            }
        });
        (system, strategy)
    }
}

/// Returns the least-indexed accepted candidate of `space`, checking
/// candidates on all available threads.
pub fn search(
    prepared: &Prepared,
    space: &CandidateSpace,
    opts: &CheckOptions,
    cap: u128,
) -> Result<Option<(TransitionSystem, Option<LookaheadSystem>)>, SynthError> {
    let total = space.len();
    if total > cap {
        return Err(SynthError::CandidateCap { candidates: total, cap });
    }
    let total = total as usize;
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get()).min(total.max(1));
    let best = AtomicUsize::new(usize::MAX);
    let error: std::sync::Mutex<Option<McError>> = std::sync::Mutex::new(None);
    std::thread::scope(|sc| {
        for t in 0..threads {
            let (best, error) = (&best, &error);
            sc.spawn(move || {
                let mut i = t;
                while i < total && i < best.load(Ordering::Relaxed) {
                    let (sys, strat) = space.get(i as u128);
                    match prepared.accepts(&sys, strat.as_ref(), opts) {
                        Ok(true) => {
                            best.fetch_min(i, Ordering::Relaxed);
                            return;
                        }
                        Ok(false) => {}
                        Err(e) => {
                            *error.lock().unwrap() = Some(e);
                            best.fetch_min(0, Ordering::Relaxed);
                            return;
                        }
                    }
                    i += threads;
                }
            });
        }
    });
    if let Some(e) = error.into_inner().unwrap() {
        return Err(e.into());
    }
    let b = best.into_inner();
    Ok((b != usize::MAX).then(|| space.get(b as u128)))
}
