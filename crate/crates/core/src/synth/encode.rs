//! Grounding of the bounded-synthesis constraints into quantifier-free
//! clauses over a finite vertex domain.
//!
//! A vertex is `(s̄_n, s̄_m, x, q, buf)`: states of the universal copies, of
//! the existential copies, of the strategy, of the automaton, and the
//! lookahead buffer. Each vertex has a reachability flag `lb_v` and a
//! counter `ln_v`. For every vertex, fresh input and candidate successor
//! the encoder emits one clause
//!
//! ```text
//! lb_v ∧ [successor is taken] → lb_v' ∧ ln_v ▷ ln_v'
//! ```
//!
//! with `▷` strict iff the successor's automaton state is rejecting.

use std::collections::HashMap;

use super::term::{Sort, TermArena, TermId};
use super::{SynthError, SystemSpec};
use crate::hyperltl::{FragmentClass, TupleProp};
use crate::mc::Prepared;

pub const DEFAULT_CLAUSE_CAP: u64 = 10_000_000;

/// Domain sizes of a grounded instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    /// universal and existential copies
    pub n: usize,
    pub m: usize,
    /// system states; `symbolic` if transitions and labels are unknown
    pub s: usize,
    pub symbolic: bool,
    /// strategy states (1 without strategy)
    pub x: usize,
    pub has_strategy: bool,
    /// the strategy reads the universal inputs
    pub reads_input: bool,
    pub k: usize,
    pub q: usize,
    pub input_bits: usize,
    pub output_bits: usize,
}

impl Shape {
    /// Joint universal input valuations.
    pub fn lu(&self) -> usize {
        1 << (self.n * self.input_bits)
    }

    /// Valuations the strategy reads per step.
    pub fn ls(&self) -> usize {
        if self.reads_input {
            self.lu()
        } else {
            1
        }
    }

    pub fn buffers(&self) -> usize {
        self.ls().pow(self.k as u32)
    }

    pub fn num_vertices(&self) -> usize {
        self.s.pow(self.n as u32) * self.s.pow(self.m as u32) * self.x * self.q * self.buffers()
    }

    /// Number of clauses predicted from the constraint shape: initial
    /// clauses plus one edge clause per (buffer, fresh input, vertex,
    /// candidate successor) tuple.
    pub fn expected_clauses(&self) -> u128 {
        let p = |b: usize, e: usize| (b as u128).pow(e as u32);
        let initial = if self.k == 0 { 1 } else { self.buffers() as u128 * self.x as u128 };
        let sn = p(self.s, self.n);
        let sm = p(self.s, self.m);
        let (x, q) = (self.x as u128, self.q as u128);
        let sources = self.buffers() as u128 * self.lu() as u128 * sn * sm * x * q;
        let succ = if self.symbolic { sn } else { 1 } * sm * x * q;
        initial + sources * succ
    }
}

/// A grounded constraint system together with the handles needed to read
/// a model back.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub arena: TermArena,
    pub clauses: Vec<TermId>,
    pub shape: Shape,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub initial_state: usize,
    /// `tau[s * 2^|I| + v]`, `out[s * |O| + o]`
    pub tau: Vec<TermId>,
    pub out: Vec<TermId>,
    /// `mu[x * ls + r]`, `choice[(x * ls + r) * m·|I| + j·|I| + b]`
    pub mu: Vec<TermId>,
    pub choice: Vec<TermId>,
    /// `init[buf]` (lookahead only)
    pub init: Vec<TermId>,
    pub lb: Vec<TermId>,
    pub ln: Vec<TermId>,
}

#[derive(Debug, Clone, Copy)]
enum Source {
    UnivIn(usize, usize),
    UnivOut(usize, usize),
    ExIn(usize, usize),
    ExOut(usize, usize),
}

fn sources(prepared: &Prepared, inputs: &[String], outputs: &[String]) -> Result<Vec<Source>, SynthError> {
    prepared
        .ucw
        .carrier
        .props
        .iter()
        .map(|name| {
            let tp = TupleProp::parse(name)
                .ok_or_else(|| SynthError::Alphabet(format!("`{name}` is not a copy proposition")))?;
            let ui = prepared.universal_copies.iter().position(|&c| c == tp.copy);
            let ei = prepared.existential_copies.iter().position(|&c| c == tp.copy);
            let ib = inputs.iter().position(|p| *p == tp.prop);
            let ob = outputs.iter().position(|p| *p == tp.prop);
            match (ui, ei, ib, ob) {
                (Some(i), _, Some(b), _) => Ok(Source::UnivIn(i, b)),
                (Some(i), _, _, Some(b)) => Ok(Source::UnivOut(i, b)),
                (_, Some(j), Some(b), _) => Ok(Source::ExIn(j, b)),
                (_, Some(j), _, Some(b)) => Ok(Source::ExOut(j, b)),
                _ => Err(SynthError::Alphabet(format!(
                    "proposition `{name}` is not provided by the system"
                ))),
            }
        })
        .collect()
}

fn digits(mut v: usize, base: usize, len: usize) -> Vec<usize> {
    (0..len)
        .map(|_| {
            let d = v % base;
            v /= base;
            d
        })
        .collect()
}

/// Builds the constraint system for one bound triple.
pub fn encode(
    prepared: &Prepared,
    system: &SystemSpec,
    system_size: usize,
    strategy_size: usize,
    lookahead: usize,
    clause_cap: u64,
) -> Result<ConstraintSystem, SynthError> {
    let (has_strategy, reads_input) = match prepared.class {
        FragmentClass::ForallExists(..) => (true, true),
        FragmentClass::ExistsForall(..) => (true, false),
        FragmentClass::UniversalOnly => (false, false),
        c => return Err(SynthError::Fragment(c)),
    };
    if lookahead > 0 && !reads_input {
        return Err(SynthError::Bounds("lookahead requires a ∀∃ formula".into()));
    }
    if strategy_size == 0 || system_size == 0 {
        return Err(SynthError::Bounds("bounds must be positive".into()));
    }
    let (inputs, outputs, symbolic, s) = match system {
        SystemSpec::Given(sys) => (sys.inputs.clone(), sys.outputs.clone(), false, sys.num_states()),
        SystemSpec::Interface { inputs, outputs } => (inputs.clone(), outputs.clone(), true, system_size),
    };
    let shape = Shape {
        n: prepared.n(),
        m: prepared.m(),
        s,
        symbolic,
        x: if has_strategy { strategy_size } else { 1 },
        has_strategy,
        reads_input,
        k: lookahead,
        q: prepared.ucw.num_states(),
        input_bits: inputs.len(),
        output_bits: outputs.len(),
    };
    if shape.n * shape.input_bits > 16 || shape.m * shape.input_bits > 32 {
        return Err(SynthError::Bounds("input alphabet too large to ground".into()));
    }
    let expected = shape.expected_clauses();
    if expected > clause_cap as u128 {
        return Err(SynthError::ClauseCap {
            clauses: expected,
            cap: clause_cap,
        });
    }
    let srcs = sources(prepared, &inputs, &outputs)?;
    let mut a = TermArena::default();
    let lb_base = 1usize << inputs.len();

    // Unknowns (or constants for a given system).
    let mut tau = Vec::with_capacity(s * lb_base);
    let mut out = Vec::with_capacity(s * outputs.len());
    let mut initial_state = 0;
    match system {
        SystemSpec::Given(sys) => {
            initial_state = sys.initial;
            for st in 0..s {
                for v in 0..lb_base {
                    tau.push(a.int(sys.next(st, v) as i64));
                }
                for o in 0..outputs.len() {
                    out.push(a.bool(sys.label[st] >> o & 1 == 1));
                }
            }
        }
        SystemSpec::Interface { .. } => {
            for st in 0..s {
                for v in 0..lb_base {
                    tau.push(a.declare(format!("tau_{st}_{v}"), Sort::Int { lo: 0, hi: s as i64 - 1 }));
                }
                for o in 0..outputs.len() {
                    out.push(a.declare(format!("out_{st}_{o}"), Sort::Bool));
                }
            }
        }
    }
    let ls = shape.ls();
    let xs = shape.x;
    let cbits = shape.m * shape.input_bits;
    let mut mu = Vec::new();
    let mut choice = Vec::new();
    if has_strategy {
        for x in 0..xs {
            for r in 0..ls {
                mu.push(a.declare(format!("mu_{x}_{r}"), Sort::Int { lo: 0, hi: xs as i64 - 1 }));
            }
        }
        for x in 0..xs {
            for r in 0..ls {
                for j in 0..shape.m {
                    for b in 0..shape.input_bits {
                        choice.push(a.declare(format!("ch_{x}_{r}_{j}_{b}"), Sort::Bool));
                    }
                }
            }
        }
    }
    let buffers = shape.buffers();
    let init: Vec<TermId> = if lookahead > 0 {
        (0..buffers)
            .map(|b| a.declare(format!("init_{b}"), Sort::Int { lo: 0, hi: xs as i64 - 1 }))
            .collect()
    } else {
        vec![]
    };
    let nv = shape.num_vertices();
    let lb: Vec<TermId> = (0..nv).map(|v| a.declare(format!("lb_{v}"), Sort::Bool)).collect();
    let ln: Vec<TermId> = (0..nv)
        .map(|v| a.declare(format!("ln_{v}"), Sort::Int { lo: 0, hi: nv as i64 }))
        .collect();

    let (n, m, nq) = (shape.n, shape.m, shape.q);
    let sn_count = s.pow(n as u32);
    let sm_count = s.pow(m as u32);
    let vid = |sn: usize, sm: usize, x: usize, q: usize, buf: usize| -> usize {
        (((sn * sm_count + sm) * xs + x) * nq + q) * buffers + buf
    };
    let rejecting = prepared.ucw.rejecting.clone();
    let carrier = &prepared.ucw.carrier;
    let imask = (1usize << inputs.len()) - 1;
    let mut clauses: Vec<TermId> = Vec::with_capacity(expected.min(1 << 26) as usize);

    // Initial vertices.
    let s0n: usize = (0..n).fold(0, |acc, _| acc * s + initial_state);
    let s0m: usize = (0..m).fold(0, |acc, _| acc * s + initial_state);
    let q0 = carrier.initial;
    if lookahead == 0 {
        clauses.push(lb[vid(s0n, s0m, 0, q0, 0)]);
    } else {
        for b in 0..buffers {
            for x in 0..xs {
                let x_t = a.int(x as i64);
                let guard = a.eq(init[b], x_t);
                let c = a.implies(guard, lb[vid(s0n, s0m, x, q0, b)]);
                clauses.push(c);
            }
        }
    }

    let state_terms: Vec<TermId> = (0..s).map(|i| a.int(i as i64)).collect();
    let x_terms: Vec<TermId> = (0..xs).map(|i| a.int(i as i64)).collect();
    let false_t = a.bool(false);
    let true_t = a.bool(true);
    let mut gq_memo: HashMap<(usize, usize, Vec<TermId>), Vec<TermId>> = HashMap::new();
    let lu = shape.lu();
    let top = if lookahead > 0 { ls.pow(lookahead as u32 - 1) } else { 0 };

    for buf in 0..buffers {
        for fresh in 0..lu {
            let w = if lookahead > 0 { buf % lu } else { fresh };
            let r = if reads_input { fresh } else { 0 };
            let nbuf = if lookahead > 0 { buf / ls + fresh * top } else { 0 };
            let wv: Vec<usize> = (0..n).map(|i| (w >> (i * inputs.len())) & imask).collect();
            for sn in 0..sn_count {
                let sv = digits(sn, s, n);
                // digits are little-endian; copy i is digit n-1-i
                let su: Vec<usize> = (0..n).map(|i| sv[n - 1 - i]).collect();
                for sm in 0..sm_count {
                    let mv = digits(sm, s, m);
                    let se: Vec<usize> = (0..m).map(|j| mv[m - 1 - j]).collect();
                    for x in 0..xs {
                        // Letter bits: known constants plus symbolic terms.
                        let mut known = 0usize;
                        let mut syms: Vec<(usize, TermId)> = Vec::new();
                        for (bit, src) in srcs.iter().enumerate() {
                            let t = match *src {
                                Source::UnivIn(i, b) => {
                                    if wv[i] >> b & 1 == 1 {
                                        known |= 1 << bit;
                                    }
                                    continue;
                                }
                                Source::UnivOut(i, o) => out[su[i] * outputs.len() + o],
                                Source::ExOut(j, o) => out[se[j] * outputs.len() + o],
                                Source::ExIn(j, b) => choice[(x * ls + r) * cbits + j * inputs.len() + b],
                            };
                            match a.as_bool(t) {
                                Some(true) => known |= 1 << bit,
                                Some(false) => {}
                                None => syms.push((bit, t)),
                            }
                        }
                        let sym_terms: Vec<TermId> = syms.iter().map(|&(_, t)| t).collect();
                        // Successor candidates of the universal copies.
                        let un_succ: Vec<(usize, TermId)> = if symbolic {
                            (0..sn_count)
                                .map(|sn2| {
                                    let d = digits(sn2, s, n);
                                    let parts: Vec<TermId> = (0..n)
                                        .map(|i| {
                                            let t = tau[su[i] * lb_base + wv[i]];
                                            a.eq(t, state_terms[d[n - 1 - i]])
                                        })
                                        .collect();
                                    (sn2, a.and(parts))
                                })
                                .collect()
                        } else {
                            let sn2 = (0..n).fold(0, |acc, i| {
                                let t = tau[su[i] * lb_base + wv[i]];
                                let val = match a.get(t) {
                                    super::term::Term::Int(v) => *v as usize,
                                    _ => unreachable!("given system"),
                                };
                                acc * s + val
                            });
                            vec![(sn2, true_t)]
                        };
                        // Successor candidates of the existential copies.
                        let mut ex_succ: Vec<TermId> = Vec::with_capacity(sm_count);
                        for sm2 in 0..sm_count {
                            let d = digits(sm2, s, m);
                            let mut parts = Vec::with_capacity(m);
                            for j in 0..m {
                                let target = state_terms[d[m - 1 - j]];
                                let base = (x * ls + r) * cbits + j * inputs.len();
                                let bits: Vec<TermId> = choice[base..base + inputs.len()].to_vec();
                                let leaves: Vec<TermId> = (0..lb_base)
                                    .map(|v| {
                                        let t = tau[se[j] * lb_base + v];
                                        a.eq(t, target)
                                    })
                                    .collect();
                                parts.push(shannon(&mut a, &bits, &leaves));
                            }
                            ex_succ.push(a.and(parts));
                        }
                        for q in 0..nq {
                            let v = vid(sn, sm, x, q, buf);
                            let key = (q, known, sym_terms.clone());
                            let gq = match gq_memo.get(&key) {
                                Some(g) => g.clone(),
                                None => {
                                    let g = automaton_guards(&mut a, carrier, q, known, &syms, nq);
                                    gq_memo.insert(key, g.clone());
                                    g
                                }
                            };
                            for &(sn2, gn) in &un_succ {
                                for (sm2, &gm) in ex_succ.iter().enumerate() {
                                    for x2 in 0..xs {
                                        let gx = if has_strategy {
                                            a.eq(mu[x * ls + r], x_terms[x2])
                                        } else {
                                            true_t
                                        };
                                        for q2 in 0..nq {
                                            let gqq = gq[q2];
                                            if gqq == false_t || gn == false_t || gm == false_t || gx == false_t {
                                                clauses.push(true_t);
                                                continue;
                                            }
                                            let v2 = vid(sn2, sm2, x2, q2, nbuf);
                                            let ante = a.and([lb[v], gn, gm, gx, gqq]);
                                            let cmp = if rejecting[q2] {
                                                a.gt(ln[v], ln[v2])
                                            } else {
                                                a.ge(ln[v], ln[v2])
                                            };
                                            let cons = a.and([lb[v2], cmp]);
                                            let c = a.implies(ante, cons);
                                            clauses.push(c);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    debug_assert_eq!(clauses.len() as u128, expected);
    Ok(ConstraintSystem {
        arena: a,
        clauses,
        shape,
        inputs,
        outputs,
        initial_state,
        tau,
        out,
        mu,
        choice,
        init,
        lb,
        ln,
    })
}

/// `ite` tree over `bits` (first bit outermost) selecting `leaves[v]`, where
/// `v` is the valuation with bit `i` of `v` given by `bits[i]`.
fn shannon(a: &mut TermArena, bits: &[TermId], leaves: &[TermId]) -> TermId {
    fn go(a: &mut TermArena, bits: &[TermId], leaves: &[TermId], level: usize, acc: usize) -> TermId {
        if level == bits.len() {
            return leaves[acc];
        }
        let hi = go(a, bits, leaves, level + 1, acc | 1 << level);
        let lo = go(a, bits, leaves, level + 1, acc);
        a.ite(bits[level], hi, lo)
    }
    go(a, bits, leaves, 0, 0)
}

/// For each successor `q'`, the condition on the symbolic letter bits under
/// which `q' ∈ δ(q, σ)`.
fn automaton_guards(
    a: &mut TermArena,
    carrier: &crate::automata::Carrier,
    q: usize,
    known: usize,
    syms: &[(usize, TermId)],
    nq: usize,
) -> Vec<TermId> {
    let combos = 1usize << syms.len();
    let mut member = vec![vec![false; combos]; nq];
    for c in 0..combos {
        let letter = syms
            .iter()
            .enumerate()
            .filter(|(i, _)| c >> i & 1 == 1)
            .fold(known, |l, (_, &(bit, _))| l | 1 << bit);
        for &t in carrier.succ(q, letter) {
            member[t as usize][c] = true;
        }
    }
    let bits: Vec<TermId> = syms.iter().map(|&(_, t)| t).collect();
    (0..nq)
        .map(|q2| {
            let leaves: Vec<TermId> = member[q2].iter().map(|&b| a.bool(b)).collect();
            shannon(a, &bits, &leaves)
        })
        .collect()
}
