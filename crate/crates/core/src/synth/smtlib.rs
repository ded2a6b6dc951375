//! SMT-LIB 2 emission, external solver invocation and model parsing.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::process::{Command, Stdio};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use super::encode::ConstraintSystem;
use super::term::{Sort, Term, TermArena, TermId};
use super::SynthError;

pub const DEFAULT_SOLVER_CMD: &str = "z3 -in";
pub const SOLVER_ENV: &str = "HLV_SOLVER_CMD";

/// Solver command from the environment, or the default.
pub fn default_solver_cmd() -> String {
    std::env::var(SOLVER_ENV).unwrap_or_else(|_| DEFAULT_SOLVER_CMD.to_string())
}

fn is_leaf(t: &Term) -> bool {
    matches!(t, Term::Bool(_) | Term::Int(_) | Term::Var(_))
}

fn children(t: &Term) -> Vec<TermId> {
    match t {
        Term::Bool(_) | Term::Int(_) | Term::Var(_) => vec![],
        Term::Not(a) => vec![*a],
        Term::And(xs) | Term::Or(xs) => xs.clone(),
        Term::Implies(a, b) | Term::Eq(a, b) | Term::Ge(a, b) | Term::Gt(a, b) => vec![*a, *b],
        Term::Ite(c, a, b) => vec![*c, *a, *b],
    }
}

struct Printer<'a> {
    arena: &'a TermArena,
    defined: Vec<bool>,
}

impl Printer<'_> {
    fn write(&self, out: &mut String, id: TermId, top: bool) {
        if !top && self.defined[id as usize] {
            let _ = write!(out, "t{id}");
            return;
        }
        match self.arena.get(id) {
            Term::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Term::Int(i) if *i < 0 => {
                let _ = write!(out, "(- {})", -i);
            }
            Term::Int(i) => {
                let _ = write!(out, "{i}");
            }
            Term::Var(v) => out.push_str(&self.arena.vars[*v as usize].name),
            t => {
                let op = match t {
                    Term::Not(_) => "not",
                    Term::And(_) => "and",
                    Term::Or(_) => "or",
                    Term::Implies(..) => "=>",
                    Term::Eq(..) => "=",
                    Term::Ge(..) => ">=",
                    Term::Gt(..) => ">",
                    Term::Ite(..) => "ite",
                    _ => unreachable!(),
                };
                out.push('(');
                out.push_str(op);
                for c in children(t) {
                    out.push(' ');
                    self.write(out, c, false);
                }
                out.push(')');
            }
        }
    }
}

/// Renders the constraint system as an SMT-LIB script ending in
/// `(check-sat)` and `(get-model)`. Composite subterms used more than once
/// are shared through `define-fun`. The output is a pure function of the
/// constraint system.
pub fn emit_smtlib(cs: &ConstraintSystem) -> String {
    let a = &cs.arena;
    let n = a.len();
    let mut refs = vec![0u32; n];
    let mut seen = vec![false; n];
    let roots: Vec<TermId> = cs.clauses.iter().copied().filter(|&c| a.as_bool(c) != Some(true)).collect();
    let mut stack: Vec<TermId> = Vec::new();
    for &r in &roots {
        refs[r as usize] += 1;
        if !seen[r as usize] {
            seen[r as usize] = true;
            stack.push(r);
        }
        while let Some(t) = stack.pop() {
            for c in children(a.get(t)) {
                refs[c as usize] += 1;
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    stack.push(c);
                }
            }
        }
    }
    let defined: Vec<bool> = (0..n)
        .map(|i| {
            let t = a.get(i as TermId);
            refs[i] >= 2 && !is_leaf(t) && children(t).iter().any(|&c| !is_leaf(a.get(c)))
        })
        .collect();
    let p = Printer { arena: a, defined };
    let mut out = String::new();
    out.push_str("(set-option :produce-models true)\n(set-logic QF_UFLIA)\n");
    for v in &a.vars {
        match v.sort {
            Sort::Bool => {
                let _ = writeln!(out, "(declare-const {} Bool)", v.name);
            }
            Sort::Int { lo, hi } => {
                let _ = writeln!(out, "(declare-const {} Int)", v.name);
                let _ = writeln!(out, "(assert (and (<= {lo} {0}) (<= {0} {hi})))", v.name);
            }
        }
    }
    for i in 0..n {
        if p.defined[i] {
            let _ = write!(out, "(define-fun t{i} () Bool ");
            p.write(&mut out, i as TermId, true);
            out.push_str(")\n");
        }
    }
    for &r in &roots {
        out.push_str("(assert ");
        p.write(&mut out, r, false);
        out.push_str(")\n");
    }
    out.push_str("(check-sat)\n(get-model)\n");
    out
}

/// Raw result of a solver call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolverAnswer {
    Sat(HashMap<String, i64>),
    Unsat,
    Unknown(String),
}

/// Runs `cmd` through `sh -c` with the script on stdin. The call is aborted
/// when `timeout` elapses or `cancel` is raised.
pub fn run_solver(
    cmd: &str,
    script: &str,
    timeout: Duration,
    cancel: Option<Arc<AtomicBool>>,
) -> Result<SolverAnswer, SynthError> {
    let mut child = Command::new("sh")
        .arg("-c")
        .arg(cmd)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| SynthError::Solver(format!("cannot start `{cmd}`: {e}")))?;
    let mut stdin = child.stdin.take().expect("piped stdin");
    let script = script.to_string();
    let writer = std::thread::spawn(move || {
        let _ = stdin.write_all(script.as_bytes());
    });
    let mut stdout = child.stdout.take().expect("piped stdout");
    let reader = std::thread::spawn(move || {
        let mut s = String::new();
        let _ = stdout.read_to_string(&mut s);
        s
    });
    let mut stderr = child.stderr.take().expect("piped stderr");
    let err_reader = std::thread::spawn(move || {
        let mut s = String::new();
        let _ = stderr.read_to_string(&mut s);
        s
    });
    let start = Instant::now();
    let status = loop {
        if let Some(st) = child.try_wait().map_err(|e| SynthError::Solver(e.to_string()))? {
            break Some(st);
        }
        let cancelled = cancel.as_ref().is_some_and(|c| c.load(Ordering::Relaxed));
        if cancelled || start.elapsed() >= timeout {
            let _ = child.kill();
            let _ = child.wait();
            break None;
        }
        std::thread::sleep(Duration::from_millis(5));
    };
    let _ = writer.join();
    let text = reader.join().unwrap_or_default();
    let err = err_reader.join().unwrap_or_default();
    if status.is_none() {
        return Ok(SolverAnswer::Unknown("solver timed out or was cancelled".into()));
    }
    parse_answer(&text).map_err(|e| {
        let mut msg = e;
        if !err.trim().is_empty() {
            msg.push_str(": ");
            msg.push_str(err.trim());
        }
        SynthError::Solver(msg)
    })
}

#[derive(Debug, Clone, PartialEq)]
enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

fn parse_sexps(text: &str) -> Result<Vec<Sexp>, String> {
    let mut stack: Vec<Vec<Sexp>> = vec![vec![]];
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '(' => stack.push(vec![]),
            ')' => {
                let list = stack.pop().ok_or("unbalanced `)`")?;
                stack.last_mut().ok_or("unbalanced `)`")?.push(Sexp::List(list));
            }
            ';' => {
                for d in chars.by_ref() {
                    if d == '\n' {
                        break;
                    }
                }
            }
            '"' => {
                let mut s = String::new();
                for d in chars.by_ref() {
                    if d == '"' {
                        break;
                    }
                    s.push(d);
                }
                stack.last_mut().ok_or("unbalanced")?.push(Sexp::Atom(s));
            }
            c if c.is_whitespace() => {}
            c => {
                let mut s = String::from(c);
                while let Some(&d) = chars.peek() {
                    if d.is_whitespace() || d == '(' || d == ')' {
                        break;
                    }
                    s.push(d);
                    chars.next();
                }
                stack.last_mut().ok_or("unbalanced")?.push(Sexp::Atom(s));
            }
        }
    }
    if stack.len() != 1 {
        return Err("unbalanced `(`".into());
    }
    Ok(stack.pop().unwrap())
}

fn value_of(e: &Sexp) -> Option<i64> {
    match e {
        Sexp::Atom(a) if a == "true" => Some(1),
        Sexp::Atom(a) if a == "false" => Some(0),
        Sexp::Atom(a) => a.parse().ok(),
        Sexp::List(xs) => match xs.as_slice() {
            [Sexp::Atom(m), x] if m == "-" => value_of(x).map(|v| -v),
            _ => None,
        },
    }
}

/// Parses `sat`/`unsat`/`unknown` followed by an optional model.
pub fn parse_answer(text: &str) -> Result<SolverAnswer, String> {
    let items = parse_sexps(text)?;
    let head = match items.first() {
        Some(Sexp::Atom(a)) => a.as_str(),
        _ => return Err(format!("unexpected solver output `{}`", text.trim())),
    };
    match head {
        "unsat" => Ok(SolverAnswer::Unsat),
        "unknown" => Ok(SolverAnswer::Unknown("solver answered unknown".into())),
        "sat" => {
            let mut model = HashMap::new();
            for item in &items[1..] {
                let Sexp::List(defs) = item else { continue };
                for d in defs {
                    if let Sexp::List(parts) = d {
                        if let [Sexp::Atom(kw), Sexp::Atom(name), Sexp::List(args), _sort, body] = parts.as_slice() {
                            if kw == "define-fun" && args.is_empty() {
                                if let Some(v) = value_of(body) {
                                    model.insert(name.clone(), v);
                                }
                            }
                        }
                    }
                }
            }
            Ok(SolverAnswer::Sat(model))
        }
        other => Err(format!("unexpected solver answer `{other}`")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_models() {
        let text = "sat\n(\n  (define-fun x () Int\n    (- 3))\n  (define-fun b () Bool true)\n)\n";
        let SolverAnswer::Sat(m) = parse_answer(text).unwrap() else { panic!() };
        assert_eq!(m["x"], -3);
        assert_eq!(m["b"], 1);
        assert_eq!(parse_answer("unsat\n").unwrap(), SolverAnswer::Unsat);
        assert!(parse_answer("(error \"x\")").is_err());
    }
}
