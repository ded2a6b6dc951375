use std::collections::BTreeSet;

use thiserror::Error;

use crate::hyperltl::{LassoTrace, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("proposition `{0}` is used more than once")]
    NamespaceClash(String),
    #[error("n must be at least 1")]
    ZeroCopies,
    #[error("too many input propositions ({0}); at most 20 are supported")]
    TooManyInputs(usize),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown proposition `{0}`")]
    UnknownProp(String),
    #[error("duplicate state name `{0}`")]
    DuplicateState(String),
    #[error("transition for state `{state}` on {valuation:?} given twice")]
    DuplicateTransition { state: String, valuation: Vec<String> },
    #[error("transition relation is not total; missing: {}", fmt_missing(.0))]
    Incomplete(Vec<(String, Vec<String>)>),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("malformed system: {0}")]
    Malformed(String),
}

fn fmt_missing(m: &[(String, Vec<String>)]) -> String {
    m.iter()
        .map(|(s, v)| format!("({s}, {{{}}})", v.join(",")))
        .collect::<Vec<_>>()
        .join(", ")
}

pub(crate) const MAX_INPUTS: usize = 20;

/// A deterministic, input-enabled transition system with Moore labels.
///
/// Input valuations are bit masks over `inputs`, labels are bit masks over
/// `outputs`. The successor of state `s` on valuation `v` is
/// `succ[s * 2^|inputs| + v]`. The `i`-th letter of a trace is
/// `υ_i ∪ l(s_i)` where `s_i` is the state reached after `υ_0 … υ_{i-1}`.
///
/// Systems obtained by composing with a strategy additionally carry
/// *Mealy propositions*: their value depends on the current state and the
/// current input, `mealy[s * 2^|inputs| + v]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionSystem {
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
    pub states: Vec<String>,
    pub initial: usize,
    pub label: Vec<u64>,
    pub succ: Vec<usize>,
    pub mealy_props: Vec<String>,
    pub mealy: Vec<u64>,
}

impl TransitionSystem {
    /// Builds and validates a Moore system.
    pub fn new(
        inputs: Vec<String>,
        outputs: Vec<String>,
        states: Vec<String>,
        initial: usize,
        label: Vec<u64>,
        succ: Vec<usize>,
    ) -> Result<Self, SystemError> {
        let sys = Self {
            inputs,
            outputs,
            states,
            initial,
            label,
            succ,
            mealy_props: vec![],
            mealy: vec![],
        };
        sys.validate()?;
        Ok(sys)
    }

    /// The single-state system without propositions. Its only trace is `∅^ω`.
    pub fn epsilon() -> Self {
        Self {
            inputs: vec![],
            outputs: vec![],
            states: vec!["e".into()],
            initial: 0,
            label: vec![0],
            succ: vec![0],
            mealy_props: vec![],
            mealy: vec![],
        }
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    /// Number of input valuations, `2^|inputs|`.
    pub fn num_valuations(&self) -> usize {
        1 << self.inputs.len()
    }

    pub fn next(&self, s: usize, v: usize) -> usize {
        self.succ[s * self.num_valuations() + v]
    }

    pub fn mealy_out(&self, s: usize, v: usize) -> u64 {
        if self.mealy_props.is_empty() {
            0
        } else {
            self.mealy[s * self.num_valuations() + v]
        }
    }

    /// All propositions, inputs first, then outputs, then Mealy propositions.
    pub fn props(&self) -> Vec<String> {
        self.inputs
            .iter()
            .chain(&self.outputs)
            .chain(&self.mealy_props)
            .cloned()
            .collect()
    }

    /// The letter emitted in state `s` under input valuation `v`.
    pub fn letter(&self, s: usize, v: usize) -> Letter {
        let mut out = Letter::new();
        set_names(&mut out, &self.inputs, v as u64);
        set_names(&mut out, &self.outputs, self.label[s]);
        set_names(&mut out, &self.mealy_props, self.mealy_out(s, v));
        out
    }

    /// Encodes a set of input names as a valuation index.
    pub fn valuation_of(&self, names: &BTreeSet<String>) -> usize {
        mask_of(&self.inputs, names) as usize
    }

    /// Names of the inputs set in valuation `v`.
    pub fn valuation_names(&self, v: usize) -> Vec<String> {
        names_of(&self.inputs, v as u64)
    }

    pub fn check_namespace(&self) -> Result<(), SystemError> {
        let mut seen = BTreeSet::new();
        for p in self.props() {
            if !seen.insert(p.clone()) {
                return Err(SystemError::NamespaceClash(p));
            }
        }
        Ok(())
    }

    /// Checks shapes, namespace disjointness and totality.
    pub fn validate(&self) -> Result<(), SystemError> {
        self.check_namespace()?;
        if self.inputs.len() > MAX_INPUTS {
            return Err(SystemError::TooManyInputs(self.inputs.len()));
        }
        if self.outputs.len() > 64 || self.mealy_props.len() > 64 {
            return Err(SystemError::Malformed("more than 64 outputs".into()));
        }
        let n = self.num_states();
        if n == 0 || self.initial >= n {
            return Err(SystemError::Malformed("initial state out of range".into()));
        }
        let mut names = BTreeSet::new();
        for s in &self.states {
            if !names.insert(s) {
                return Err(SystemError::DuplicateState(s.clone()));
            }
        }
        if self.label.len() != n {
            return Err(SystemError::Malformed("label table has wrong size".into()));
        }
        if self.succ.len() != n * self.num_valuations() || self.succ.iter().any(|&t| t >= n) {
            return Err(SystemError::Malformed("transition table is not total".into()));
        }
        if !self.mealy_props.is_empty() && self.mealy.len() != self.succ.len() {
            return Err(SystemError::Malformed("Mealy table has wrong size".into()));
        }
        Ok(())
    }

    /// Renames every proposition.
    pub fn rename(&self, mut f: impl FnMut(&str) -> String) -> Self {
        let mut g = |xs: &[String]| xs.iter().map(|x| f(x)).collect::<Vec<_>>();
        Self {
            inputs: g(&self.inputs),
            outputs: g(&self.outputs),
            mealy_props: g(&self.mealy_props),
            ..self.clone()
        }
    }

    /// Input-driven run: the letters produced by the finite input sequence.
    pub fn run(&self, inputs: &[usize]) -> Vec<Letter> {
        let mut s = self.initial;
        inputs
            .iter()
            .map(|&v| {
                let l = self.letter(s, v);
                s = self.next(s, v);
                l
            })
            .collect()
    }

    /// Trace lasso produced by the input lasso `stem · cycle^ω`.
    pub fn trace_of(&self, stem: &[usize], cycle: &[usize]) -> LassoTrace {
        assert!(!cycle.is_empty());
        let mut s = self.initial;
        let mut out_stem = Vec::new();
        for &v in stem {
            out_stem.push(self.letter(s, v));
            s = self.next(s, v);
        }
        // States at loop boundaries eventually repeat.
        let mut boundary = vec![s];
        let mut unrolled: Vec<Vec<Letter>> = Vec::new();
        loop {
            let mut block = Vec::with_capacity(cycle.len());
            for &v in cycle {
                block.push(self.letter(s, v));
                s = self.next(s, v);
            }
            unrolled.push(block);
            if let Some(first) = boundary.iter().position(|&b| b == s) {
                for b in &unrolled[..first] {
                    out_stem.extend(b.iter().cloned());
                }
                let cyc: Vec<Letter> = unrolled[first..].iter().flatten().cloned().collect();
                return LassoTrace::new(out_stem, cyc).canonical();
            }
            boundary.push(s);
        }
    }

    /// Whether the lasso is a trace of this system.
    pub fn generates(&self, w: &LassoTrace) -> bool {
        let props: BTreeSet<String> = self.props().into_iter().collect();
        if w.stem.iter().chain(&w.cycle).any(|l| !l.is_subset(&props)) {
            return false;
        }
        let input_set: BTreeSet<String> = self.inputs.iter().cloned().collect();
        let val = |l: &Letter| -> usize {
            self.valuation_of(&l.intersection(&input_set).cloned().collect())
        };
        let mut s = self.initial;
        for l in &w.stem {
            let v = val(l);
            if self.letter(s, v) != *l {
                return false;
            }
            s = self.next(s, v);
        }
        let mut seen = vec![false; self.num_states()];
        while !seen[s] {
            seen[s] = true;
            for l in &w.cycle {
                let v = val(l);
                if self.letter(s, v) != *l {
                    return false;
                }
                s = self.next(s, v);
            }
        }
        true
    }
}

pub(crate) fn set_names(out: &mut Letter, names: &[String], mask: u64) {
    for (i, n) in names.iter().enumerate() {
        if mask >> i & 1 == 1 {
            out.insert(n.clone());
        }
    }
}

pub(crate) fn mask_of(names: &[String], set: &BTreeSet<String>) -> u64 {
    names
        .iter()
        .enumerate()
        .filter(|(_, n)| set.contains(*n))
        .fold(0, |m, (i, _)| m | 1 << i)
}

pub(crate) fn names_of(names: &[String], mask: u64) -> Vec<String> {
    names
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, n)| n.clone())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn toggle() -> TransitionSystem {
        TransitionSystem::new(
            vec![],
            vec!["a".into()],
            vec!["s0".into(), "s1".into()],
            0,
            vec![1, 0],
            vec![1, 0],
        )
        .unwrap()
    }

    #[test]
    fn moore_convention() {
        // echo: o holds iff the previous input a held
        let echo = TransitionSystem::new(
            vec!["a".into()],
            vec!["o".into()],
            vec!["lo".into(), "hi".into()],
            0,
            vec![0, 1],
            vec![0, 1, 0, 1],
        )
        .unwrap();
        let letters = echo.run(&[1, 0, 0]);
        let names: Vec<Vec<&str>> = letters
            .iter()
            .map(|l| l.iter().map(String::as_str).collect())
            .collect();
        assert_eq!(names, vec![vec!["a"], vec!["o"], vec![]]);
    }

    #[test]
    fn trace_of_toggle() {
        let w = toggle().trace_of(&[], &[0]);
        assert_eq!(w, LassoTrace::from_strs(&[], &[&["a"], &[]]));
        assert!(toggle().generates(&w));
        assert!(!toggle().generates(&LassoTrace::from_strs(&[], &[&["a"]])));
    }

    #[test]
    fn validation_catches_clash_and_size() {
        let mut t = toggle();
        t.inputs = vec!["a".into()];
        assert!(matches!(t.validate(), Err(SystemError::NamespaceClash(_))));
        let mut t = toggle();
        t.succ.pop();
        assert!(t.validate().is_err());
    }
}
