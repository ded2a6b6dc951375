use super::system::{SystemError, MAX_INPUTS};

/// A finite-state strategy for the existential player.
///
/// The strategy reads the joint input of `arity_in` universal copies (a mask
/// of `arity_in * |base_inputs|` bits, copy-major) and, in the same step,
/// chooses the joint input of `arity_out` existential copies. Both the
/// choice and the successor are indexed by `x * 2^(arity_in·|I|) + υ`.
/// A strategy that ignores `υ` in its choice is Moore-style.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategySystem {
    pub base_inputs: Vec<String>,
    pub arity_in: usize,
    pub arity_out: usize,
    pub states: Vec<String>,
    pub initial: usize,
    pub succ: Vec<usize>,
    pub choice: Vec<u64>,
}

impl StrategySystem {
    pub fn new(
        base_inputs: Vec<String>,
        arity_in: usize,
        arity_out: usize,
        states: Vec<String>,
        initial: usize,
        succ: Vec<usize>,
        choice: Vec<u64>,
    ) -> Result<Self, SystemError> {
        let s = Self {
            base_inputs,
            arity_in,
            arity_out,
            states,
            initial,
            succ,
            choice,
        };
        s.validate()?;
        Ok(s)
    }

    /// Number of joint universal input valuations read per step.
    pub fn num_in(&self) -> usize {
        1 << (self.arity_in * self.base_inputs.len())
    }

    /// Bits in one choice mask.
    pub fn out_bits(&self) -> usize {
        self.arity_out * self.base_inputs.len()
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn next(&self, x: usize, v: usize) -> usize {
        self.succ[x * self.num_in() + v]
    }

    pub fn choose(&self, x: usize, v: usize) -> u64 {
        self.choice[x * self.num_in() + v]
    }

    pub fn validate(&self) -> Result<(), SystemError> {
        if self.arity_in * self.base_inputs.len() > MAX_INPUTS {
            return Err(SystemError::TooManyInputs(self.arity_in * self.base_inputs.len()));
        }
        if self.out_bits() > 64 {
            return Err(SystemError::Malformed("choice wider than 64 bits".into()));
        }
        let n = self.num_states();
        if n == 0 || self.initial >= n {
            return Err(SystemError::Malformed("strategy initial state out of range".into()));
        }
        let cells = n * self.num_in();
        if self.succ.len() != cells || self.choice.len() != cells {
            return Err(SystemError::Malformed("strategy tables are not total".into()));
        }
        if self.succ.iter().any(|&x| x >= n) {
            return Err(SystemError::Malformed("strategy successor out of range".into()));
        }
        let limit = if self.out_bits() == 64 { u64::MAX } else { (1u64 << self.out_bits()) - 1 };
        if self.choice.iter().any(|&c| c & !limit != 0) {
            return Err(SystemError::Malformed("strategy choice out of range".into()));
        }
        Ok(())
    }

    /// Runs the strategy on a finite sequence of joint inputs.
    pub fn outputs(&self, inputs: &[usize]) -> Vec<u64> {
        let mut x = self.initial;
        inputs
            .iter()
            .map(|&v| {
                let c = self.choose(x, v);
                x = self.next(x, v);
                c
            })
            .collect()
    }
}

/// A strategy with lookahead `k`: its initial state is chosen after seeing
/// the first `k` joint inputs, and at step `i` it reads input `i + k`.
///
/// Buffers `b_0 … b_{k-1}` (oldest first) are indexed as `Σ b_j · L^j` with
/// `L = 2^(arity_in·|I|)`; `init` has one entry per buffer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LookaheadSystem {
    pub strategy: StrategySystem,
    pub lookahead: usize,
    pub init: Vec<usize>,
}

impl From<StrategySystem> for LookaheadSystem {
    fn from(strategy: StrategySystem) -> Self {
        let init = vec![strategy.initial];
        Self {
            strategy,
            lookahead: 0,
            init,
        }
    }
}

impl LookaheadSystem {
    pub fn num_buffers(&self) -> usize {
        self.strategy.num_in().pow(self.lookahead as u32)
    }

    pub fn validate(&self) -> Result<(), SystemError> {
        self.strategy.validate()?;
        if self.init.len() != self.num_buffers() {
            return Err(SystemError::Malformed("init is not total on buffers".into()));
        }
        if self.init.iter().any(|&x| x >= self.strategy.num_states()) {
            return Err(SystemError::Malformed("init state out of range".into()));
        }
        Ok(())
    }

    /// Choices made on the full input sequence. Only the first
    /// `inputs.len() - k` choices are determined.
    pub fn outputs(&self, inputs: &[usize]) -> Vec<u64> {
        let k = self.lookahead;
        if inputs.len() < k {
            return vec![];
        }
        let l = self.strategy.num_in();
        let buf = inputs[..k].iter().rev().fold(0, |acc, &v| acc * l + v);
        let mut x = self.init[buf];
        inputs[k..]
            .iter()
            .map(|&v| {
                let c = self.strategy.choose(x, v);
                x = self.strategy.next(x, v);
                c
            })
            .collect()
    }

    /// An equivalent strategy with lookahead `k + 1`. It stores the most
    /// recent input and acts on it one step late.
    pub fn pad(&self) -> LookaheadSystem {
        let s = &self.strategy;
        let l = s.num_in();
        let n = s.num_states() * l;
        let mut succ = vec![0; n * l];
        let mut choice = vec![0; n * l];
        let mut states = Vec::with_capacity(n);
        for x in 0..s.num_states() {
            for held in 0..l {
                states.push(format!("{}/{}", s.states[x], held));
                let y = x * l + held;
                for v in 0..l {
                    succ[y * l + v] = s.next(x, held) * l + v;
                    choice[y * l + v] = s.choose(x, held);
                }
            }
        }
        let top = l.pow(self.lookahead as u32);
        let init = (0..top * l)
            .map(|b| self.init[b % top] * l + b / top)
            .collect();
        LookaheadSystem {
            strategy: StrategySystem {
                base_inputs: s.base_inputs.clone(),
                arity_in: s.arity_in,
                arity_out: s.arity_out,
                states,
                initial: self.init[0] * l,
                succ,
                choice,
            },
            lookahead: self.lookahead + 1,
            init,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// One input `a`; at step i chooses `a` iff input i+1 has `a`.
    fn peek_ahead() -> LookaheadSystem {
        let s = StrategySystem::new(vec!["a".into()], 1, 1, vec!["x".into()], 0, vec![0, 0], vec![0, 1])
            .unwrap();
        LookaheadSystem {
            strategy: s,
            lookahead: 1,
            init: vec![0, 0],
        }
    }

    #[test]
    fn lookahead_outputs_shift() {
        let la = peek_ahead();
        assert_eq!(la.outputs(&[0, 1, 1, 0]), vec![1, 1, 0]);
    }

    #[test]
    fn padding_preserves_outputs() {
        let la = peek_ahead();
        let p = la.pad();
        p.validate().unwrap();
        let seq = [1, 0, 1, 1, 0, 0, 1];
        let a = la.outputs(&seq);
        let b = p.outputs(&seq);
        assert_eq!(&a[..b.len()], &b[..]);
        assert_eq!(b.len(), a.len() - 1);
    }
}
