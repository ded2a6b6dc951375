//! Ultimately periodic words `stem · loop^ω`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ast::TupleProp;

/// A letter: the set of propositions that hold.
pub type Letter = BTreeSet<String>;

/// The word `stem · cycle^ω`. `cycle` must be nonempty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LassoTrace {
    pub stem: Vec<Letter>,
    #[serde(rename = "loop")]
    pub cycle: Vec<Letter>,
}

impl LassoTrace {
    pub fn new(stem: Vec<Letter>, cycle: Vec<Letter>) -> Self {
        assert!(!cycle.is_empty(), "lasso loop must be nonempty");
        Self { stem, cycle }
    }

    /// Builds a lasso from string slices, handy in tests and examples.
    pub fn from_strs(stem: &[&[&str]], cycle: &[&[&str]]) -> Self {
        let conv = |xs: &[&[&str]]| -> Vec<Letter> {
            xs.iter()
                .map(|l| l.iter().map(|s| s.to_string()).collect())
                .collect()
        };
        Self::new(conv(stem), conv(cycle))
    }

    /// The word `∅^ω`.
    pub fn empty_word() -> Self {
        Self::new(vec![], vec![Letter::new()])
    }

    pub fn letter_at(&self, pos: usize) -> &Letter {
        if pos < self.stem.len() {
            &self.stem[pos]
        } else {
            &self.cycle[(pos - self.stem.len()) % self.cycle.len()]
        }
    }

    /// Shortest representation of the same infinite word.
    pub fn canonical(&self) -> Self {
        let n = self.cycle.len();
        let period = (1..=n)
            .find(|&p| n % p == 0 && (p..n).all(|i| self.cycle[i] == self.cycle[i - p]))
            .unwrap_or(n);
        let mut stem = self.stem.clone();
        let mut cycle: Vec<Letter> = self.cycle[..period].to_vec();
        while let Some(last) = stem.last() {
            if *last != cycle[cycle.len() - 1] {
                break;
            }
            stem.pop();
            cycle.rotate_right(1);
        }
        Self { stem, cycle }
    }

    /// Same word, restricted to the propositions in `keep`.
    pub fn project(&self, keep: &BTreeSet<String>) -> Self {
        let f = |l: &Letter| -> Letter { l.intersection(keep).cloned().collect() };
        Self {
            stem: self.stem.iter().map(f).collect(),
            cycle: self.cycle.iter().map(f).collect(),
        }
        .canonical()
    }

    /// Same word with each proposition renamed.
    pub fn rename(&self, mut f: impl FnMut(&str) -> String) -> Self {
        let mut g = |l: &Letter| -> Letter { l.iter().map(|s| f(s)).collect() };
        Self {
            stem: self.stem.iter().map(&mut g).collect(),
            cycle: self.cycle.iter().map(&mut g).collect(),
        }
    }
}

impl fmt::Display for LassoTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |f: &mut fmt::Formatter<'_>, ls: &[Letter]| -> fmt::Result {
            for (i, l) in ls.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{{")?;
                for (j, p) in l.iter().enumerate() {
                    if j > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, "}}")?;
            }
            Ok(())
        };
        show(f, &self.stem)?;
        if !self.stem.is_empty() {
            write!(f, " ")?;
        }
        write!(f, "(")?;
        show(f, &self.cycle)?;
        write!(f, ")^w")
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Common shape `(stem, loop)` under which every given lasso is periodic.
pub fn common_shape<'a>(ws: impl IntoIterator<Item = &'a LassoTrace>) -> (usize, usize) {
    ws.into_iter().fold((0, 1), |(s, l), w| {
        let wl = w.cycle.len();
        (s.max(w.stem.len()), l / gcd(l, wl) * wl)
    })
}

/// Zips lassos into one lasso over tuple propositions: proposition `a` of the
/// `i`-th word becomes `a@i` (1-based).
pub fn zip_lassos(ws: &[LassoTrace]) -> LassoTrace {
    let (s, l) = common_shape(ws);
    let letter = |pos: usize| -> Letter {
        let mut out = Letter::new();
        for (i, w) in ws.iter().enumerate() {
            for p in w.letter_at(pos) {
                out.insert(TupleProp::new(p.clone(), i + 1).to_string());
            }
        }
        out
    };
    LassoTrace {
        stem: (0..s).map(letter).collect(),
        cycle: (s..s + l).map(letter).collect(),
    }
}

/// Splits a lasso over tuple propositions into `n` lassos. Propositions that
/// are not of the form `a@i` with `1 ≤ i ≤ n` are dropped.
pub fn unzip_lasso(w: &LassoTrace, n: usize) -> Vec<LassoTrace> {
    (1..=n)
        .map(|copy| {
            let f = |l: &Letter| -> Letter {
                l.iter()
                    .filter_map(|name| TupleProp::parse(name))
                    .filter(|t| t.copy == copy)
                    .map(|t| t.prop)
                    .collect()
            };
            LassoTrace {
                stem: w.stem.iter().map(f).collect(),
                cycle: w.cycle.iter().map(f).collect(),
            }
            .canonical()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_collapses_period_and_stem() {
        let w = LassoTrace::from_strs(&[&["a"], &[], &["a"]], &[&[], &["a"], &[], &["a"]]);
        let c = w.canonical();
        assert_eq!(c, LassoTrace::from_strs(&[], &[&["a"], &[]]));
        for i in 0..12 {
            assert_eq!(w.letter_at(i), c.letter_at(i));
        }
    }

    #[test]
    fn zip_then_unzip() {
        let a = LassoTrace::from_strs(&[&["x"]], &[&[]]);
        let b = LassoTrace::from_strs(&[], &[&["y"], &[]]);
        let z = zip_lassos(&[a.clone(), b.clone()]);
        assert_eq!(z.stem.len(), 1);
        assert_eq!(z.cycle.len(), 2);
        assert!(z.letter_at(0).contains("x@1"));
        let back = unzip_lasso(&z, 2);
        assert_eq!(back, vec![a.canonical(), b.canonical()]);
    }

    #[test]
    fn display() {
        let w = LassoTrace::from_strs(&[&["a", "b"]], &[&[]]);
        assert_eq!(w.to_string(), "{a,b} ({})^w");
    }
}
