use std::collections::HashMap;

use super::McError;
use crate::automata::UniversalCoBuchi;
use crate::graph::Csr;
use crate::tsys::{ExistentialPart, TransitionSystem};

/// Components of a run-graph vertex: universal state, existential state
/// (`S^m || σ`), automaton state and lookahead buffer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub u: u32,
    pub e: u32,
    pub q: u32,
    pub buf: u32,
}

/// Reachable part of the run graph. `letters[i]` is the fresh universal
/// input read on the edge stored at `graph.targets[i]`.
#[derive(Debug, Clone, Default)]
pub struct RunGraph {
    pub graph: Csr,
    pub letters: Vec<u32>,
    pub initial: Vec<u32>,
    pub rejecting: Vec<bool>,
    pub vertices: Vec<Vertex>,
    pub lookahead: usize,
    /// Number of joint universal input valuations.
    pub num_inputs: u32,
}

impl RunGraph {
    /// A bare graph without system information (for testing the
    /// acceptance check).
    pub fn from_edges(n: usize, initial: &[u32], edges: &[(u32, u32)], rejecting: &[bool]) -> Self {
        let mut lists = vec![Vec::new(); n];
        for &(a, b) in edges {
            lists[a as usize].push(b);
        }
        let graph = Csr::from_lists(&lists);
        let letters = vec![0; graph.targets.len()];
        Self {
            graph,
            letters,
            initial: initial.to_vec(),
            rejecting: rejecting.to_vec(),
            vertices: vec![],
            lookahead: 0,
            num_inputs: 1,
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.graph.len()
    }

    pub fn num_rejecting(&self) -> usize {
        self.rejecting.iter().filter(|&&r| r).count()
    }
}

pub const DEFAULT_VERTEX_CAP: usize = 1 << 24;

/// Maps automaton propositions to bits of the system letters.
struct LetterMap {
    /// automaton bits contributed by state labels, per state
    label: Vec<u32>,
    /// automaton bits per (state, input valuation): inputs plus Mealy outputs
    cell: Vec<u32>,
}

/// With `with_inputs == false` the system's inputs are not mapped; the
/// existential side reads the universal inputs and must not contribute them.
fn letter_map(
    sys: &TransitionSystem,
    props: &[String],
    claimed: &mut [bool],
    with_inputs: bool,
) -> LetterMap {
    let find = |names: &[String]| -> Vec<(usize, usize)> {
        names
            .iter()
            .enumerate()
            .filter_map(|(bit, n)| props.iter().position(|p| p == n).map(|i| (bit, i)))
            .collect()
    };
    let ins = if with_inputs { find(&sys.inputs) } else { vec![] };
    let (outs, mealy) = (find(&sys.outputs), find(&sys.mealy_props));
    for &(_, i) in ins.iter().chain(&outs).chain(&mealy) {
        claimed[i] = true;
    }
    let project = |mask: u64, pairs: &[(usize, usize)]| -> u32 {
        pairs
            .iter()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .fold(0, |m, (_, i)| m | 1 << i)
    };
    let l = sys.num_valuations();
    let label = sys.label.iter().map(|&m| project(m, &outs)).collect();
    let mut cell = Vec::with_capacity(sys.num_states() * l);
    for s in 0..sys.num_states() {
        for v in 0..l {
            cell.push(project(v as u64, &ins) | project(sys.mealy_out(s, v), &mealy));
        }
    }
    LetterMap { label, cell }
}

/// Builds the reachable run graph of the universal copies, the existential
/// copies composed with a strategy (if any) and the automaton.
///
/// On an edge reading the fresh universal input `υ`, the universal copies
/// consume the oldest buffered input (or `υ` itself without lookahead),
/// the strategy consumes `υ`, and the automaton reads the joint letter.
pub fn build_run_graph(
    univ: &TransitionSystem,
    ex: Option<&ExistentialPart>,
    aut: &UniversalCoBuchi,
    vertex_cap: usize,
) -> Result<RunGraph, McError> {
    let eps;
    let ex = match ex {
        Some(e) => e,
        None => {
            eps = ExistentialPart {
                system: TransitionSystem::epsilon(),
                lookahead: 0,
                initial_states: vec![0],
            };
            &eps
        }
    };
    let esys = &ex.system;
    let reads_input = !esys.inputs.is_empty();
    if reads_input && esys.inputs != univ.inputs {
        return Err(McError::AlphabetMismatch(format!(
            "strategy reads {:?} but universal inputs are {:?}",
            esys.inputs, univ.inputs
        )));
    }
    let k = ex.lookahead;
    if k > 0 && !reads_input {
        return Err(McError::AlphabetMismatch(
            "lookahead requires a strategy that reads universal inputs".into(),
        ));
    }
    let props = &aut.carrier.props;
    if props.len() > 16 {
        return Err(McError::AlphabetMismatch("too many automaton propositions".into()));
    }
    let mut claimed = vec![false; props.len()];
    let um = letter_map(univ, props, &mut claimed, true);
    let em = letter_map(esys, props, &mut claimed, false);
    if let Some(i) = claimed.iter().position(|c| !c) {
        return Err(McError::AlphabetMismatch(format!(
            "proposition `{}` is not provided by the system",
            props[i]
        )));
    }
    let l = univ.num_valuations();
    let le = esys.num_valuations();
    let buffers = l
        .checked_pow(k as u32)
        .filter(|&b| b <= vertex_cap)
        .ok_or(McError::VertexCap(vertex_cap))?;
    if ex.initial_states.len() != buffers {
        return Err(McError::AlphabetMismatch("init does not match lookahead buffers".into()));
    }
    let top = if k > 0 { l.pow(k as u32 - 1) } else { 0 };
    let (nu, ne, nq) = (univ.num_states(), esys.num_states(), aut.num_states());
    let total = (nu as u128) * (ne as u128) * (nq as u128) * (buffers as u128);
    let key = |v: &Vertex| -> u64 {
        ((v.u as u64 * ne as u64 + v.e as u64) * nq as u64 + v.q as u64) * buffers as u64 + v.buf as u64
    };
    enum Index {
        Dense(Vec<u32>),
        Sparse(HashMap<u64, u32>),
    }
    let mut index = if total <= 1 << 22 {
        Index::Dense(vec![u32::MAX; total as usize])
    } else {
        Index::Sparse(HashMap::new())
    };
    let mut vertices: Vec<Vertex> = Vec::new();
    let mut lookup_or_insert = |v: Vertex, vertices: &mut Vec<Vertex>| -> Result<u32, McError> {
        let k = key(&v);
        let slot = match &mut index {
            Index::Dense(d) => {
                let s = &mut d[k as usize];
                if *s != u32::MAX {
                    return Ok(*s);
                }
                s
            }
            Index::Sparse(m) => m.entry(k).or_insert(u32::MAX),
        };
        if *slot != u32::MAX {
            return Ok(*slot);
        }
        if vertices.len() >= vertex_cap {
            return Err(McError::VertexCap(vertex_cap));
        }
        *slot = vertices.len() as u32;
        vertices.push(v);
        Ok(*slot)
    };
    let mut initial = Vec::with_capacity(buffers);
    for (b, &e0) in ex.initial_states.iter().enumerate() {
        let v = Vertex {
            u: univ.initial as u32,
            e: e0 as u32,
            q: aut.carrier.initial as u32,
            buf: b as u32,
        };
        let id = lookup_or_insert(v, &mut vertices)?;
        if !initial.contains(&id) {
            initial.push(id);
        }
    }
    let mut offsets = vec![0u32];
    let mut targets: Vec<u32> = Vec::new();
    let mut letters: Vec<u32> = Vec::new();
    let mut stamp: Vec<u32> = Vec::new();
    let mut cur = 0usize;
    while cur < vertices.len() {
        let v = vertices[cur];
        let (u, e) = (v.u as usize, v.e as usize);
        for fresh in 0..l {
            let w = if k > 0 { v.buf as usize % l } else { fresh };
            let ve = if reads_input { fresh } else { 0 };
            let letter = um.label[u] | um.cell[u * l + w] | em.label[e] | em.cell[e * le + ve];
            let nu_ = univ.next(u, w) as u32;
            let ne_ = esys.next(e, ve) as u32;
            let nbuf = if k > 0 { (v.buf as usize / l + fresh * top) as u32 } else { 0 };
            for &q2 in aut.carrier.succ(v.q as usize, letter as usize) {
                let t = lookup_or_insert(
                    Vertex {
                        u: nu_,
                        e: ne_,
                        q: q2,
                        buf: nbuf,
                    },
                    &mut vertices,
                )?;
                if stamp.len() <= t as usize {
                    stamp.resize(t as usize + 1, u32::MAX);
                }
                if stamp[t as usize] != cur as u32 {
                    stamp[t as usize] = cur as u32;
                    targets.push(t);
                    letters.push(fresh as u32);
                }
            }
        }
        offsets.push(targets.len() as u32);
        cur += 1;
    }
    let rejecting = vertices.iter().map(|v| aut.rejecting[v.q as usize]).collect();
    Ok(RunGraph {
        graph: Csr { offsets, targets },
        letters,
        initial,
        rejecting,
        vertices,
        lookahead: k,
        num_inputs: l as u32,
    })
}
