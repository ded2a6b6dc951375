use std::collections::VecDeque;

use serde::Serialize;

use crate::hyperltl::LassoTrace;

/// States, initial state and per-letter successor sets shared by both
/// automaton kinds. Letters are bit masks over `props` (sorted); the
/// successors of `q` on letter `σ` are `succ(q, σ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Carrier {
    pub props: Vec<String>,
    pub num_states: usize,
    pub initial: usize,
    pub offsets: Vec<u32>,
    pub targets: Vec<u32>,
}

impl Carrier {
    pub fn num_letters(&self) -> usize {
        1 << self.props.len()
    }

    pub fn succ(&self, q: usize, letter: usize) -> &[u32] {
        let i = q * self.num_letters() + letter;
        &self.targets[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }

    /// Letter index of a lasso position. Propositions unknown to the
    /// automaton are ignored.
    pub fn letter_of(&self, w: &LassoTrace, pos: usize) -> usize {
        let l = w.letter_at(pos);
        self.props
            .iter()
            .enumerate()
            .filter(|(_, p)| l.contains(*p))
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    /// Whether some run on `w` visits a marked state infinitely often.
    fn has_marked_cycle(&self, marked: &[bool], w: &LassoTrace) -> bool {
        // Product of states with lasso positions; search for a reachable
        // marked vertex that can reach itself.
        let npos = w.stem.len() + w.cycle.len();
        let next_pos = |p: usize| if p + 1 < npos { p + 1 } else { w.stem.len() };
        let letters: Vec<usize> = (0..npos).map(|p| self.letter_of(w, p)).collect();
        let id = |q: usize, p: usize| q * npos + p;
        let succs = |v: usize| -> Vec<usize> {
            let (q, p) = (v / npos, v % npos);
            self.succ(q, letters[p])
                .iter()
                .map(|&t| id(t as usize, next_pos(p)))
                .collect()
        };
        let total = self.num_states * npos;
        let reach = |from: &[usize]| -> Vec<bool> {
            let mut seen = vec![false; total];
            let mut queue: VecDeque<usize> = from.iter().copied().collect();
            for &v in from {
                seen[v] = true;
            }
            while let Some(v) = queue.pop_front() {
                for t in succs(v) {
                    if !seen[t] {
                        seen[t] = true;
                        queue.push_back(t);
                    }
                }
            }
            seen
        };
        let reachable = reach(&[id(self.initial, 0)]);
        (0..total)
            .filter(|&v| reachable[v] && marked[v / npos])
            .any(|v| reach(&succs(v))[v])
    }
}

/// Nondeterministic Büchi automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NondetBuchi {
    pub carrier: Carrier,
    pub accepting: Vec<bool>,
}

/// Universal co-Büchi automaton: a word is accepted iff every run visits
/// `rejecting` states only finitely often.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalCoBuchi {
    pub carrier: Carrier,
    pub rejecting: Vec<bool>,
}

/// Same carrier, read universally with the Büchi set as co-Büchi set. The
/// result accepts exactly the words `a` rejects.
pub fn dualize_to_ucw(a: &NondetBuchi) -> UniversalCoBuchi {
    UniversalCoBuchi {
        carrier: a.carrier.clone(),
        rejecting: a.accepting.clone(),
    }
}

pub fn nba_accepts_lasso(a: &NondetBuchi, w: &LassoTrace) -> bool {
    a.carrier.has_marked_cycle(&a.accepting, w)
}

pub fn ucw_accepts_lasso(a: &UniversalCoBuchi, w: &LassoTrace) -> bool {
    !a.carrier.has_marked_cycle(&a.rejecting, w)
}

#[derive(Serialize)]
struct EdgeJson {
    from: usize,
    letter: Vec<String>,
    to: Vec<u32>,
}

#[derive(Serialize)]
struct AutomatonJson<'a> {
    kind: &'a str,
    props: &'a [String],
    states: usize,
    initial: usize,
    edges: Vec<EdgeJson>,
    marked: Vec<usize>,
}

fn dump(c: &Carrier, kind: &str, marked: &[bool]) -> String {
    let edges = (0..c.num_states)
        .flat_map(|q| {
            (0..c.num_letters()).filter_map(move |l| {
                let to = c.succ(q, l);
                (!to.is_empty()).then(|| EdgeJson {
                    from: q,
                    letter: c
                        .props
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| l >> i & 1 == 1)
                        .map(|(_, p)| p.clone())
                        .collect(),
                    to: to.to_vec(),
                })
            })
        })
        .collect();
    let j = AutomatonJson {
        kind,
        props: &c.props,
        states: c.num_states,
        initial: c.initial,
        edges,
        marked: (0..c.num_states).filter(|&q| marked[q]).collect(),
    };
    serde_json::to_string_pretty(&j).expect("serializable")
}

impl NondetBuchi {
    /// Debug dump; `marked` lists the accepting states.
    pub fn to_json(&self) -> String {
        dump(&self.carrier, "nba", &self.accepting)
    }
}

impl UniversalCoBuchi {
    /// Debug dump; `marked` lists the rejecting states.
    pub fn to_json(&self) -> String {
        dump(&self.carrier, "ucw", &self.rejecting)
    }

    pub fn num_states(&self) -> usize {
        self.carrier.num_states
    }
}
