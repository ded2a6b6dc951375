use std::collections::BTreeSet;
use std::fmt;

/// Quantifier of a trace variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Quantifier {
    Forall,
    Exists,
}

impl fmt::Display for Quantifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantifier::Forall => write!(f, "forall"),
            Quantifier::Exists => write!(f, "exists"),
        }
    }
}

/// An atomic proposition indexed by a trace variable, written `a[p]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexedAtom {
    pub prop: String,
    pub var: String,
}

impl IndexedAtom {
    pub fn new(prop: impl Into<String>, var: impl Into<String>) -> Self {
        Self {
            prop: prop.into(),
            var: var.into(),
        }
    }
}

impl fmt::Display for IndexedAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.prop, self.var)
    }
}

/// Proposition of a zipped formula: proposition `prop` of system copy `copy`
/// (1-based). Serialized as `prop@copy`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleProp {
    pub prop: String,
    pub copy: usize,
}

impl TupleProp {
    pub fn new(prop: impl Into<String>, copy: usize) -> Self {
        Self {
            prop: prop.into(),
            copy,
        }
    }

    /// Splits `a@3` into `("a", 3)`.
    pub fn parse(name: &str) -> Option<Self> {
        let (prop, copy) = name.rsplit_once('@')?;
        let copy = copy.parse().ok()?;
        if prop.is_empty() || copy == 0 {
            return None;
        }
        Some(Self::new(prop, copy))
    }
}

impl fmt::Display for TupleProp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.prop, self.copy)
    }
}

/// Quantifier-free LTL over atoms of type `A`.
///
/// The same tree is used for HyperLTL bodies (`A = IndexedAtom`) and for
/// zipped single-trace formulas (`A = TupleProp`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ltl<A> {
    True,
    False,
    Atom(A),
    Not(Box<Ltl<A>>),
    And(Box<Ltl<A>>, Box<Ltl<A>>),
    Or(Box<Ltl<A>>, Box<Ltl<A>>),
    Implies(Box<Ltl<A>>, Box<Ltl<A>>),
    Iff(Box<Ltl<A>>, Box<Ltl<A>>),
    Next(Box<Ltl<A>>),
    Until(Box<Ltl<A>>, Box<Ltl<A>>),
    Release(Box<Ltl<A>>, Box<Ltl<A>>),
    WeakUntil(Box<Ltl<A>>, Box<Ltl<A>>),
    Eventually(Box<Ltl<A>>),
    Globally(Box<Ltl<A>>),
}

pub type QfFormula = Ltl<IndexedAtom>;
pub type ZippedFormula = Ltl<TupleProp>;

#[allow(clippy::should_implement_trait)]
impl<A> Ltl<A> {
    pub fn atom(a: A) -> Self {
        Ltl::Atom(a)
    }
    pub fn not(f: Self) -> Self {
        Ltl::Not(Box::new(f))
    }
    pub fn and(l: Self, r: Self) -> Self {
        Ltl::And(Box::new(l), Box::new(r))
    }
    pub fn or(l: Self, r: Self) -> Self {
        Ltl::Or(Box::new(l), Box::new(r))
    }
    pub fn implies(l: Self, r: Self) -> Self {
        Ltl::Implies(Box::new(l), Box::new(r))
    }
    pub fn iff(l: Self, r: Self) -> Self {
        Ltl::Iff(Box::new(l), Box::new(r))
    }
    pub fn next(f: Self) -> Self {
        Ltl::Next(Box::new(f))
    }
    pub fn until(l: Self, r: Self) -> Self {
        Ltl::Until(Box::new(l), Box::new(r))
    }
    pub fn release(l: Self, r: Self) -> Self {
        Ltl::Release(Box::new(l), Box::new(r))
    }
    pub fn weak_until(l: Self, r: Self) -> Self {
        Ltl::WeakUntil(Box::new(l), Box::new(r))
    }
    pub fn eventually(f: Self) -> Self {
        Ltl::Eventually(Box::new(f))
    }
    pub fn globally(f: Self) -> Self {
        Ltl::Globally(Box::new(f))
    }

    /// Conjunction of all formulas; `true` for an empty iterator.
    pub fn conjunction(parts: impl IntoIterator<Item = Self>) -> Self {
        parts
            .into_iter()
            .reduce(Ltl::and)
            .unwrap_or(Ltl::True)
    }

    /// Visits every atom in left-to-right order.
    pub fn for_each_atom<'a>(&'a self, f: &mut impl FnMut(&'a A)) {
        match self {
            Ltl::True | Ltl::False => {}
            Ltl::Atom(a) => f(a),
            Ltl::Not(x) | Ltl::Next(x) | Ltl::Eventually(x) | Ltl::Globally(x) => {
                x.for_each_atom(f)
            }
            Ltl::And(l, r)
            | Ltl::Or(l, r)
            | Ltl::Implies(l, r)
            | Ltl::Iff(l, r)
            | Ltl::Until(l, r)
            | Ltl::Release(l, r)
            | Ltl::WeakUntil(l, r) => {
                l.for_each_atom(f);
                r.for_each_atom(f);
            }
        }
    }

    /// Rebuilds the tree with atoms mapped through `f`.
    pub fn try_map_atoms<B, E>(&self, f: &mut impl FnMut(&A) -> Result<B, E>) -> Result<Ltl<B>, E> {
        self.try_map_dyn(f)
    }

    fn try_map_dyn<B, E>(&self, f: &mut dyn FnMut(&A) -> Result<B, E>) -> Result<Ltl<B>, E> {
        if let Ltl::Atom(a) = self {
            return Ok(Ltl::Atom(f(a)?));
        }
        let mut un = |x: &Ltl<A>| -> Result<Box<Ltl<B>>, E> { Ok(Box::new(x.try_map_dyn(&mut *f)?)) };
        Ok(match self {
            Ltl::True => Ltl::True,
            Ltl::False => Ltl::False,
            Ltl::Atom(_) => unreachable!(),
            Ltl::Not(x) => Ltl::Not(un(x)?),
            Ltl::Next(x) => Ltl::Next(un(x)?),
            Ltl::Eventually(x) => Ltl::Eventually(un(x)?),
            Ltl::Globally(x) => Ltl::Globally(un(x)?),
            Ltl::And(l, r) => Ltl::And(un(l)?, un(r)?),
            Ltl::Or(l, r) => Ltl::Or(un(l)?, un(r)?),
            Ltl::Implies(l, r) => Ltl::Implies(un(l)?, un(r)?),
            Ltl::Iff(l, r) => Ltl::Iff(un(l)?, un(r)?),
            Ltl::Until(l, r) => Ltl::Until(un(l)?, un(r)?),
            Ltl::Release(l, r) => Ltl::Release(un(l)?, un(r)?),
            Ltl::WeakUntil(l, r) => Ltl::WeakUntil(un(l)?, un(r)?),
        })
    }

    pub fn map_atoms<B>(&self, f: &mut impl FnMut(&A) -> B) -> Ltl<B> {
        self.try_map_atoms::<B, std::convert::Infallible>(&mut |a| Ok(f(a)))
            .unwrap_or_else(|e| match e {})
    }

    /// Number of nodes in the syntax tree.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    fn visit(&self, f: &mut impl FnMut(&Ltl<A>)) {
        f(self);
        match self {
            Ltl::True | Ltl::False | Ltl::Atom(_) => {}
            Ltl::Not(x) | Ltl::Next(x) | Ltl::Eventually(x) | Ltl::Globally(x) => x.visit(f),
            Ltl::And(l, r)
            | Ltl::Or(l, r)
            | Ltl::Implies(l, r)
            | Ltl::Iff(l, r)
            | Ltl::Until(l, r)
            | Ltl::Release(l, r)
            | Ltl::WeakUntil(l, r) => {
                l.visit(f);
                r.visit(f);
            }
        }
    }

    /// True if the formula only uses Atom, Not, And, Or, Next, Until and True.
    pub fn is_core(&self) -> bool {
        let mut ok = true;
        self.visit(&mut |n| {
            if !matches!(
                n,
                Ltl::True
                    | Ltl::Atom(_)
                    | Ltl::Not(_)
                    | Ltl::And(..)
                    | Ltl::Or(..)
                    | Ltl::Next(_)
                    | Ltl::Until(..)
            ) {
                ok = false;
            }
        });
        ok
    }
}

impl<A: Ord + Clone> Ltl<A> {
    pub fn atoms(&self) -> BTreeSet<A> {
        let mut out = BTreeSet::new();
        self.for_each_atom(&mut |a| {
            out.insert(a.clone());
        });
        out
    }
}

impl QfFormula {
    /// Trace variables occurring in the formula.
    pub fn trace_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.for_each_atom(&mut |a| {
            out.insert(a.var.clone());
        });
        out
    }
}

impl<A: fmt::Display> fmt::Display for Ltl<A> {
    /// Binary operators are always parenthesized so that the output parses
    /// back to the same tree.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ltl::True => write!(f, "true"),
            Ltl::False => write!(f, "false"),
            Ltl::Atom(a) => write!(f, "{a}"),
            Ltl::Not(x) => write!(f, "!{x}"),
            Ltl::Next(x) => write!(f, "X {x}"),
            Ltl::Eventually(x) => write!(f, "F {x}"),
            Ltl::Globally(x) => write!(f, "G {x}"),
            Ltl::And(l, r) => write!(f, "({l} & {r})"),
            Ltl::Or(l, r) => write!(f, "({l} | {r})"),
            Ltl::Implies(l, r) => write!(f, "({l} -> {r})"),
            Ltl::Iff(l, r) => write!(f, "({l} <-> {r})"),
            Ltl::Until(l, r) => write!(f, "({l} U {r})"),
            Ltl::Release(l, r) => write!(f, "({l} R {r})"),
            Ltl::WeakUntil(l, r) => write!(f, "({l} W {r})"),
        }
    }
}

/// A HyperLTL formula: quantifier prefix plus quantifier-free body.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Formula {
    pub prefix: Vec<(Quantifier, String)>,
    pub body: QfFormula,
}

/// Shape of the quantifier prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FragmentClass {
    UniversalOnly,
    ExistentialOnly,
    /// `∀^n ∃^m` with `n, m ≥ 1`.
    ForallExists(usize, usize),
    /// `∃^m ∀^n` with `m, n ≥ 1`.
    ExistsForall(usize, usize),
    Other,
}

impl Formula {
    /// Trace variables in prefix order. Copy `i + 1` of a self-composition
    /// belongs to the `i`-th variable.
    pub fn vars(&self) -> Vec<String> {
        self.prefix.iter().map(|(_, v)| v.clone()).collect()
    }

    pub fn quantifier_of(&self, var: &str) -> Option<Quantifier> {
        self.prefix.iter().find(|(_, v)| v == var).map(|(q, _)| *q)
    }

    /// Number of quantifier changes along the prefix.
    pub fn alternations(&self) -> usize {
        self.prefix.windows(2).filter(|w| w[0].0 != w[1].0).count()
    }

    pub fn classify(&self) -> FragmentClass {
        classify_prefix(self)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (q, v) in &self.prefix {
            write!(f, "{q} {v}. ")?;
        }
        write!(f, "{}", self.body)
    }
}

pub fn classify_prefix(f: &Formula) -> FragmentClass {
    let blocks: Vec<(Quantifier, usize)> = f.prefix.iter().fold(Vec::new(), |mut acc, (q, _)| {
        match acc.last_mut() {
            Some((last, n)) if last == q => *n += 1,
            _ => acc.push((*q, 1)),
        }
        acc
    });
    match blocks.as_slice() {
        [] | [(Quantifier::Forall, _)] => FragmentClass::UniversalOnly,
        [(Quantifier::Exists, _)] => FragmentClass::ExistentialOnly,
        [(Quantifier::Forall, n), (Quantifier::Exists, m)] => FragmentClass::ForallExists(*n, *m),
        [(Quantifier::Exists, m), (Quantifier::Forall, n)] => FragmentClass::ExistsForall(*m, *n),
        _ => FragmentClass::Other,
    }
}
