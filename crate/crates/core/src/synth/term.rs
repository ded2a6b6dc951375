//! Hash-consed, constant-folded boolean/integer terms.

use std::collections::HashMap;

pub type TermId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Bool(bool),
    Int(i64),
    Var(u32),
    Not(TermId),
    And(Vec<TermId>),
    Or(Vec<TermId>),
    Implies(TermId, TermId),
    Eq(TermId, TermId),
    Ge(TermId, TermId),
    Gt(TermId, TermId),
    Ite(TermId, TermId, TermId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sort {
    Bool,
    /// Integers in `[lo, hi]`.
    Int { lo: i64, hi: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarDecl {
    pub name: String,
    pub sort: Sort,
}

#[derive(Debug, Clone, Default)]
pub struct TermArena {
    terms: Vec<Term>,
    ids: HashMap<Term, TermId>,
    pub vars: Vec<VarDecl>,
    var_terms: Vec<TermId>,
}

impl TermArena {
    pub fn get(&self, id: TermId) -> &Term {
        &self.terms[id as usize]
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn intern(&mut self, t: Term) -> TermId {
        if let Some(&id) = self.ids.get(&t) {
            return id;
        }
        let id = self.terms.len() as TermId;
        self.terms.push(t.clone());
        self.ids.insert(t, id);
        id
    }

    pub fn declare(&mut self, name: String, sort: Sort) -> TermId {
        let v = self.vars.len() as u32;
        self.vars.push(VarDecl { name, sort });
        let id = self.intern(Term::Var(v));
        self.var_terms.push(id);
        id
    }

    pub fn var_term(&self, v: u32) -> TermId {
        self.var_terms[v as usize]
    }

    pub fn bool(&mut self, b: bool) -> TermId {
        self.intern(Term::Bool(b))
    }

    pub fn int(&mut self, i: i64) -> TermId {
        self.intern(Term::Int(i))
    }

    pub fn as_bool(&self, t: TermId) -> Option<bool> {
        match self.get(t) {
            Term::Bool(b) => Some(*b),
            _ => None,
        }
    }

    fn as_int(&self, t: TermId) -> Option<i64> {
        match self.get(t) {
            Term::Int(i) => Some(*i),
            _ => None,
        }
    }

    pub fn not(&mut self, a: TermId) -> TermId {
        match self.get(a) {
            Term::Bool(b) => {
                let b = !*b;
                self.bool(b)
            }
            Term::Not(x) => *x,
            _ => self.intern(Term::Not(a)),
        }
    }

    pub fn and(&mut self, xs: impl IntoIterator<Item = TermId>) -> TermId {
        let mut out = Vec::new();
        for x in xs {
            match self.as_bool(x) {
                Some(true) => {}
                Some(false) => return self.bool(false),
                None => {
                    if !out.contains(&x) {
                        out.push(x);
                    }
                }
            }
        }
        match out.len() {
            0 => self.bool(true),
            1 => out[0],
            _ => self.intern(Term::And(out)),
        }
    }

    pub fn or(&mut self, xs: impl IntoIterator<Item = TermId>) -> TermId {
        let mut out = Vec::new();
        for x in xs {
            match self.as_bool(x) {
                Some(false) => {}
                Some(true) => return self.bool(true),
                None => {
                    if !out.contains(&x) {
                        out.push(x);
                    }
                }
            }
        }
        match out.len() {
            0 => self.bool(false),
            1 => out[0],
            _ => self.intern(Term::Or(out)),
        }
    }

    pub fn implies(&mut self, a: TermId, b: TermId) -> TermId {
        match (self.as_bool(a), self.as_bool(b)) {
            (Some(false), _) | (_, Some(true)) => self.bool(true),
            (Some(true), _) => b,
            (_, Some(false)) => self.not(a),
            _ => self.intern(Term::Implies(a, b)),
        }
    }

    pub fn eq(&mut self, a: TermId, b: TermId) -> TermId {
        if a == b {
            return self.bool(true);
        }
        if let (Some(x), Some(y)) = (self.as_int(a), self.as_int(b)) {
            return self.bool(x == y);
        }
        self.intern(Term::Eq(a, b))
    }

    pub fn ge(&mut self, a: TermId, b: TermId) -> TermId {
        if a == b {
            return self.bool(true);
        }
        if let (Some(x), Some(y)) = (self.as_int(a), self.as_int(b)) {
            return self.bool(x >= y);
        }
        self.intern(Term::Ge(a, b))
    }

    pub fn gt(&mut self, a: TermId, b: TermId) -> TermId {
        if a == b {
            return self.bool(false);
        }
        if let (Some(x), Some(y)) = (self.as_int(a), self.as_int(b)) {
            return self.bool(x > y);
        }
        self.intern(Term::Gt(a, b))
    }

    /// Boolean if-then-else.
    pub fn ite(&mut self, c: TermId, t: TermId, e: TermId) -> TermId {
        if t == e {
            return t;
        }
        match self.as_bool(c) {
            Some(true) => return t,
            Some(false) => return e,
            None => {}
        }
        match (self.as_bool(t), self.as_bool(e)) {
            (Some(true), Some(false)) => c,
            (Some(false), Some(true)) => self.not(c),
            (Some(true), None) => self.or([c, e]),
            (Some(false), None) => {
                let nc = self.not(c);
                self.and([nc, e])
            }
            (None, Some(false)) => self.and([c, t]),
            (None, Some(true)) => {
                let nc = self.not(c);
                self.or([nc, t])
            }
            _ => self.intern(Term::Ite(c, t, e)),
        }
    }

    /// Evaluates a term under an assignment of variable values
    /// (booleans as 0/1).
    pub fn eval(&self, t: TermId, val: &dyn Fn(u32) -> i64) -> i64 {
        let b = |x: bool| x as i64;
        match self.get(t) {
            Term::Bool(x) => b(*x),
            Term::Int(i) => *i,
            Term::Var(v) => val(*v),
            Term::Not(a) => b(self.eval(*a, val) == 0),
            Term::And(xs) => b(xs.iter().all(|&x| self.eval(x, val) != 0)),
            Term::Or(xs) => b(xs.iter().any(|&x| self.eval(x, val) != 0)),
            Term::Implies(x, y) => b(self.eval(*x, val) == 0 || self.eval(*y, val) != 0),
            Term::Eq(x, y) => b(self.eval(*x, val) == self.eval(*y, val)),
            Term::Ge(x, y) => b(self.eval(*x, val) >= self.eval(*y, val)),
            Term::Gt(x, y) => b(self.eval(*x, val) > self.eval(*y, val)),
            Term::Ite(c, x, y) => {
                if self.eval(*c, val) != 0 {
                    self.eval(*x, val)
                } else {
                    self.eval(*y, val)
                }
            }
        }
    }
}
