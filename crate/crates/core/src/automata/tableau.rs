//! Tableau construction of a generalized Büchi automaton from an LTL formula
//! in negation normal form, followed by counter-based degeneralization.
//!
//! A state is a set of obligations `Γ` together with a level `j ≤ K`, where
//! `K` is the number of until subformulas. Expanding `Γ` yields covers: a
//! letter constraint, the obligations for the next position and the set of
//! untils postponed in this step. A transition that does not postpone the
//! until with index `j` raises the level; states at level `K` are accepting.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Display;

use thiserror::Error;

use super::buchi::{Carrier, NondetBuchi};
use crate::hyperltl::{to_nnf, Ltl};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomataError {
    #[error("automaton exceeds the state cap of {0}")]
    StateCap(usize),
    #[error("formula has {0} propositions; at most 16 are supported")]
    TooManyProps(usize),
    #[error("formula has {0} until subformulas; at most 63 are supported")]
    TooManyUntils(usize),
}

pub const DEFAULT_STATE_CAP: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    True,
    False,
    Lit(u32, bool),
    And(u32, u32),
    Or(u32, u32),
    Next(u32),
    Until(u32, u32),
    Release(u32, u32),
}

#[derive(Default)]
struct Arena {
    nodes: Vec<Node>,
    ids: HashMap<Node, u32>,
    until_index: HashMap<u32, u32>,
}

impl Arena {
    fn intern(&mut self, n: Node) -> u32 {
        if let Some(&id) = self.ids.get(&n) {
            return id;
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(n);
        self.ids.insert(n, id);
        if let Node::Until(..) = n {
            let k = self.until_index.len() as u32;
            self.until_index.insert(id, k);
        }
        id
    }

    fn build<A: Ord + Display>(&mut self, f: &Ltl<A>, props: &[String]) -> u32 {
        let lit = |a: &A| props.binary_search(&a.to_string()).expect("prop collected") as u32;
        let n = match f {
            Ltl::True => Node::True,
            Ltl::False => Node::False,
            Ltl::Atom(a) => Node::Lit(lit(a), true),
            Ltl::Not(x) => match x.as_ref() {
                Ltl::Atom(a) => Node::Lit(lit(a), false),
                _ => unreachable!("input is in negation normal form"),
            },
            Ltl::And(l, r) => Node::And(self.build(l, props), self.build(r, props)),
            Ltl::Or(l, r) => Node::Or(self.build(l, props), self.build(r, props)),
            Ltl::Next(x) => Node::Next(self.build(x, props)),
            Ltl::Until(l, r) => Node::Until(self.build(l, props), self.build(r, props)),
            Ltl::Release(l, r) => Node::Release(self.build(l, props), self.build(r, props)),
            _ => unreachable!("input is in negation normal form"),
        };
        self.intern(n)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Cover {
    pos: u64,
    neg: u64,
    next: Vec<u32>,
    pending: u64,
}

struct Branch {
    todo: Vec<u32>,
    seen: BTreeSet<u32>,
    pos: u64,
    neg: u64,
    next: BTreeSet<u32>,
    pending: u64,
}

fn expand(arena: &Arena, gamma: &[u32]) -> Vec<Cover> {
    let mut out = BTreeSet::new();
    let mut work = vec![Branch {
        todo: gamma.to_vec(),
        seen: BTreeSet::new(),
        pos: 0,
        neg: 0,
        next: BTreeSet::new(),
        pending: 0,
    }];
    'branches: while let Some(mut b) = work.pop() {
        while let Some(f) = b.todo.pop() {
            if !b.seen.insert(f) {
                continue;
            }
            match arena.nodes[f as usize] {
                Node::True => {}
                Node::False => continue 'branches,
                Node::Lit(p, positive) => {
                    let bit = 1u64 << p;
                    if positive {
                        b.pos |= bit;
                    } else {
                        b.neg |= bit;
                    }
                    if b.pos & b.neg != 0 {
                        continue 'branches;
                    }
                }
                Node::And(l, r) => {
                    b.todo.push(l);
                    b.todo.push(r);
                }
                Node::Or(l, r) => {
                    let mut other = clone_branch(&b);
                    other.todo.push(r);
                    work.push(other);
                    b.todo.push(l);
                }
                Node::Next(x) => {
                    b.next.insert(x);
                }
                Node::Until(l, r) => {
                    let mut postpone = clone_branch(&b);
                    postpone.todo.push(l);
                    postpone.next.insert(f);
                    postpone.pending |= 1 << arena.until_index[&f];
                    work.push(postpone);
                    b.todo.push(r);
                }
                Node::Release(l, r) => {
                    let mut postpone = clone_branch(&b);
                    postpone.todo.push(r);
                    postpone.next.insert(f);
                    work.push(postpone);
                    b.todo.push(l);
                    b.todo.push(r);
                }
            }
        }
        out.insert(Cover {
            pos: b.pos,
            neg: b.neg,
            next: b.next.into_iter().collect(),
            pending: b.pending,
        });
    }
    out.into_iter().collect()
}

fn clone_branch(b: &Branch) -> Branch {
    Branch {
        todo: b.todo.clone(),
        seen: b.seen.clone(),
        pos: b.pos,
        neg: b.neg,
        next: b.next.clone(),
        pending: b.pending,
    }
}

/// Builds a nondeterministic Büchi automaton accepting exactly the words
/// that satisfy `f`. Atoms are named by their `Display` form.
pub fn ltl_to_nba<A: Ord + Clone + Display>(
    f: &Ltl<A>,
    state_cap: usize,
) -> Result<NondetBuchi, AutomataError> {
    let nnf = to_nnf(f);
    let props: Vec<String> = {
        let mut s = BTreeSet::new();
        nnf.for_each_atom(&mut |a| {
            s.insert(a.to_string());
        });
        s.into_iter().collect()
    };
    if props.len() > 16 {
        return Err(AutomataError::TooManyProps(props.len()));
    }
    let mut arena = Arena::default();
    let root = arena.build(&nnf, &props);
    let k = arena.until_index.len();
    if k > 63 {
        return Err(AutomataError::TooManyUntils(k));
    }
    let letters = 1usize << props.len();
    let full = (letters - 1) as u64;

    let mut ids: HashMap<(Vec<u32>, usize), u32> = HashMap::new();
    let mut states: Vec<(Vec<u32>, usize)> = Vec::new();
    let mut queue = VecDeque::new();
    let mut cover_cache: HashMap<Vec<u32>, Vec<Cover>> = HashMap::new();
    let is_true = |id: &u32| arena.nodes[*id as usize] == Node::True;
    let init = (if is_true(&root) { vec![] } else { vec![root] }, 0usize);
    ids.insert(init.clone(), 0);
    states.push(init);
    queue.push_back(0u32);
    let mut lists: Vec<Vec<Vec<u32>>> = Vec::new();
    while let Some(q) = queue.pop_front() {
        let (gamma, level) = states[q as usize].clone();
        let covers = cover_cache
            .entry(gamma.clone())
            .or_insert_with(|| expand(&arena, &gamma))
            .clone();
        let mut per_letter: Vec<Vec<u32>> = vec![Vec::new(); letters];
        for c in covers {
            let mut j = if level == k { 0 } else { level };
            while j < k && c.pending >> j & 1 == 0 {
                j += 1;
            }
            let next: Vec<u32> = c.next.iter().copied().filter(|x| !is_true(x)).collect();
            let key = (next, j);
            let t = match ids.get(&key) {
                Some(&t) => t,
                None => {
                    let t = states.len() as u32;
                    if states.len() >= state_cap {
                        return Err(AutomataError::StateCap(state_cap));
                    }
                    ids.insert(key.clone(), t);
                    states.push(key);
                    queue.push_back(t);
                    t
                }
            };
            let free = full & !(c.pos | c.neg);
            let mut sub = free;
            loop {
                per_letter[(c.pos | sub) as usize].push(t);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
        }
        for l in per_letter.iter_mut() {
            l.sort_unstable();
            l.dedup();
        }
        debug_assert_eq!(lists.len(), q as usize);
        lists.push(per_letter);
    }
    let mut offsets = Vec::with_capacity(states.len() * letters + 1);
    let mut targets = Vec::new();
    offsets.push(0);
    for per_letter in &lists {
        for l in per_letter {
            targets.extend_from_slice(l);
            offsets.push(targets.len() as u32);
        }
    }
    Ok(NondetBuchi {
        carrier: Carrier {
            props,
            num_states: states.len(),
            initial: 0,
            offsets,
            targets,
        },
        accepting: states.iter().map(|(_, j)| *j == k).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{dualize_to_ucw, nba_accepts_lasso, ucw_accepts_lasso};
    use crate::hyperltl::{negate_nnf, LassoTrace};

    fn atom(a: &str) -> Ltl<String> {
        Ltl::Atom(a.to_string())
    }

    #[test]
    fn true_is_one_accepting_state() {
        let a = ltl_to_nba(&Ltl::<String>::True, DEFAULT_STATE_CAP).unwrap();
        assert_eq!(a.carrier.num_states, 1);
        assert!(a.accepting[0]);
        assert!(nba_accepts_lasso(&a, &LassoTrace::empty_word()));
    }

    #[test]
    fn globally_a_is_a_safety_automaton() {
        let a = ltl_to_nba(&Ltl::globally(atom("a")), DEFAULT_STATE_CAP).unwrap();
        assert_eq!(a.carrier.num_states, 1);
        assert!(a.accepting[0]);
        assert_eq!(a.carrier.succ(0, 1), &[0]);
        assert!(a.carrier.succ(0, 0).is_empty());
    }

    #[test]
    fn eventually_needs_fulfilment() {
        let a = ltl_to_nba(&Ltl::eventually(atom("a")), DEFAULT_STATE_CAP).unwrap();
        assert!(!nba_accepts_lasso(&a, &LassoTrace::from_strs(&[], &[&[]])));
        assert!(nba_accepts_lasso(&a, &LassoTrace::from_strs(&[&[], &[]], &[&["a"], &[]])));
        let gf = ltl_to_nba(&Ltl::globally(Ltl::eventually(atom("a"))), DEFAULT_STATE_CAP).unwrap();
        assert!(!nba_accepts_lasso(&gf, &LassoTrace::from_strs(&[&["a"]], &[&[]])));
        assert!(nba_accepts_lasso(&gf, &LassoTrace::from_strs(&[], &[&[], &[], &["a"]])));
    }

    #[test]
    fn dual_of_false_accepts_everything() {
        let a = ltl_to_nba(&negate_nnf(&Ltl::<String>::True), DEFAULT_STATE_CAP).unwrap();
        let u = dualize_to_ucw(&a);
        assert!(ucw_accepts_lasso(&u, &LassoTrace::empty_word()));
        assert!(ucw_accepts_lasso(&u, &LassoTrace::from_strs(&[&["x"]], &[&["y"]])));
    }

    #[test]
    fn ucw_for_globally_rejects_violation() {
        let g = Ltl::globally(atom("a"));
        let u = dualize_to_ucw(&ltl_to_nba(&negate_nnf(&g), DEFAULT_STATE_CAP).unwrap());
        assert!(ucw_accepts_lasso(&u, &LassoTrace::from_strs(&[], &[&["a"]])));
        assert!(!ucw_accepts_lasso(&u, &LassoTrace::from_strs(&[&["a"]], &[&["a"], &[]])));
    }

    #[test]
    fn state_cap_is_enforced() {
        let f = Ltl::and(Ltl::eventually(atom("a")), Ltl::eventually(atom("b")));
        assert_eq!(ltl_to_nba(&f, 1), Err(AutomataError::StateCap(1)));
    }
}
