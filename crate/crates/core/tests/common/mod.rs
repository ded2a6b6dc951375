#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hyperlive::automata::{ltl_to_nba, nba_accepts_lasso, ucw_accepts_lasso, ucw_for, DEFAULT_STATE_CAP};
use hyperlive::hyperltl::{
    eval_plain, parse_formula, unzip_lasso, zip_lassos, Formula, LassoTrace, Letter, Ltl, QfFormula, Quantifier,
};
use hyperlive::mc::{check_accepting, validate_annotation, Acceptance, RunGraph};
use hyperlive::tsys::{
    add_prophecy, compose_strategy, enumerate_lassos, load_strategy, load_system, self_composition,
    LookaheadSystem, StrategySystem, TransitionSystem,
};

pub fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

pub fn system(name: &str) -> TransitionSystem {
    load_system(&corpus(name)).unwrap()
}

pub fn formula(name: &str) -> Formula {
    parse_formula(&std::fs::read_to_string(corpus(name)).unwrap()).unwrap()
}

pub fn strategy(name: &str) -> LookaheadSystem {
    load_strategy(&corpus(name)).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------------------
// Naive LTL semantics on lassos.

fn lcm(a: usize, b: usize) -> usize {
    let mut x = a;
    let mut y = b;
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Direct recursive evaluation at position `i` of a word whose positions
/// repeat with period `p` after `s`. Each temporal operator scans the
/// `s + p + 1` positions starting at `i`, which covers every distinct suffix.
pub fn naive<A>(f: &Ltl<A>, atom: &dyn Fn(&A, usize) -> bool, s: usize, p: usize, i: usize) -> bool {
    let window = i..=i + s + p;
    let ev = |g: &Ltl<A>, j: usize| naive(g, atom, s, p, j);
    match f {
        Ltl::True => true,
        Ltl::False => false,
        Ltl::Atom(a) => atom(a, i),
        Ltl::Not(g) => !ev(g, i),
        Ltl::And(a, b) => ev(a, i) && ev(b, i),
        Ltl::Or(a, b) => ev(a, i) || ev(b, i),
        Ltl::Implies(a, b) => !ev(a, i) || ev(b, i),
        Ltl::Iff(a, b) => ev(a, i) == ev(b, i),
        Ltl::Next(g) => ev(g, i + 1),
        Ltl::Eventually(g) => window.into_iter().any(|j| ev(g, j)),
        Ltl::Globally(g) => window.into_iter().all(|j| ev(g, j)),
        Ltl::Until(a, b) => {
            for j in window {
                if ev(b, j) {
                    return true;
                }
                if !ev(a, j) {
                    return false;
                }
            }
            false
        }
        Ltl::WeakUntil(a, b) => {
            for j in window {
                if ev(b, j) {
                    return true;
                }
                if !ev(a, j) {
                    return false;
                }
            }
            true
        }
        Ltl::Release(a, b) => {
            for j in window {
                if !ev(b, j) {
                    return false;
                }
                if ev(a, j) {
                    return true;
                }
            }
            true
        }
    }
}

fn letter(w: &LassoTrace, i: usize) -> &Letter {
    if i < w.stem.len() {
        &w.stem[i]
    } else {
        &w.cycle[(i - w.stem.len()) % w.cycle.len()]
    }
}

/// Naive evaluation of a plain LTL formula on one lasso.
pub fn naive_plain(f: &Ltl<String>, w: &LassoTrace) -> bool {
    naive(f, &|a: &String, i| letter(w, i).contains(a), w.stem.len(), w.cycle.len(), 0)
}

/// Naive evaluation of a HyperLTL body under a trace assignment.
pub fn naive_env(f: &QfFormula, env: &BTreeMap<String, LassoTrace>) -> bool {
    let s = env.values().map(|w| w.stem.len()).max().unwrap_or(0);
    let p = env.values().fold(1, |acc, w| lcm(acc, w.cycle.len()));
    naive(f, &|a, i| letter(&env[&a.var], i).contains(&a.prop), s, p, 0)
}

// ---------------------------------------------------------------------------
// Random formulas and lassos.

pub fn random_ltl<A: Clone>(r: &mut impl Rng, depth: usize, atoms: &[A]) -> Ltl<A> {
    if depth == 0 || r.gen_ratio(1, 5) {
        return match r.gen_range(0..8) {
            0 => Ltl::True,
            1 => Ltl::False,
            _ => Ltl::Atom(atoms[r.gen_range(0..atoms.len())].clone()),
        };
    }
    let sub = |r: &mut _| Box::new(random_ltl(r, depth - 1, atoms));
    match r.gen_range(0..13) {
        0 => Ltl::Not(sub(r)),
        1 => Ltl::And(sub(r), sub(r)),
        2 => Ltl::Or(sub(r), sub(r)),
        3 => Ltl::Implies(sub(r), sub(r)),
        4 => Ltl::Iff(sub(r), sub(r)),
        5 => Ltl::Next(sub(r)),
        6 => Ltl::Until(sub(r), sub(r)),
        7 => Ltl::Release(sub(r), sub(r)),
        8 => Ltl::WeakUntil(sub(r), sub(r)),
        9 => Ltl::Eventually(sub(r)),
        10 => Ltl::Globally(sub(r)),
        11 => Ltl::Not(sub(r)),
        _ => Ltl::And(sub(r), sub(r)),
    }
}

pub fn random_lasso(r: &mut impl Rng, props: &[&str], max_stem: usize, max_loop: usize) -> LassoTrace {
    let stem_len = r.gen_range(0..=max_stem);
    let loop_len = r.gen_range(1..=max_loop);
    let mut letters = (0..stem_len + loop_len)
        .map(|_| props.iter().filter(|_| r.gen_bool(0.5)).map(|p| p.to_string()).collect::<Letter>())
        .collect::<Vec<_>>();
    let cycle = letters.split_off(stem_len);
    LassoTrace::new(letters, cycle)
}

// ---------------------------------------------------------------------------
// Suite 1: automata against the semantics.

/// Checks NBA and UCW membership of random lassos against both the library
/// evaluator and the naive semantics. Returns the number of checks.
pub fn automaton_suite(seed: u64, formulas: usize, lassos: usize) -> Result<usize, String> {
    let mut r = rng(seed);
    let atoms = ["a".to_string(), "b".to_string()];
    let mut checks = 0;
    for _ in 0..formulas {
        let f = random_ltl(&mut r, 4, &atoms);
        let nba = ltl_to_nba(&f, DEFAULT_STATE_CAP).map_err(|e| format!("{f}: {e}"))?;
        let ucw = ucw_for(&f, DEFAULT_STATE_CAP).map_err(|e| format!("{f}: {e}"))?;
        for _ in 0..lassos {
            let w = random_lasso(&mut r, &["a", "b"], 3, 3);
            let truth = naive_plain(&f, &w);
            let lib = eval_plain(&f, &w);
            let n = nba_accepts_lasso(&nba, &w);
            let u = ucw_accepts_lasso(&ucw, &w);
            if truth != lib || truth != n || truth != u {
                return Err(format!("{f} on {w}: naive {truth}, eval {lib}, nba {n}, ucw {u}"));
            }
            checks += 1;
        }
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// Suite 2: acceptance check against a rejecting-cycle oracle.

/// A reachable rejecting vertex that lies on a cycle, via transitive
/// closure on bit masks.
pub fn rejecting_cycle_oracle(n: usize, initial: &[u32], edges: &[(u32, u32)], rejecting: &[bool]) -> bool {
    let mut succ = vec![0u32; n];
    for &(a, b) in edges {
        succ[a as usize] |= 1 << b;
    }
    // plus[v]: vertices reachable from v in one or more steps
    let mut plus = succ.clone();
    loop {
        let mut changed = false;
        for v in 0..n {
            let mut acc = plus[v];
            for u in 0..n {
                if plus[v] >> u & 1 == 1 {
                    acc |= plus[u];
                }
            }
            if acc != plus[v] {
                plus[v] = acc;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let reach = initial.iter().fold(0u32, |m, &i| m | 1 << i | plus[i as usize]);
    (0..n).any(|v| reach >> v & 1 == 1 && rejecting[v] && plus[v] >> v & 1 == 1)
}

fn check_graph(n: usize, initial: &[u32], edges: &[(u32, u32)], rejecting: &[bool]) -> Result<(), String> {
    let g = RunGraph::from_edges(n, initial, edges, rejecting);
    let expect_reject = rejecting_cycle_oracle(n, initial, edges, rejecting);
    let edge_set: BTreeSet<(u32, u32)> = edges.iter().copied().collect();
    let ctx = || format!("n={n} init={initial:?} edges={edges:?} rej={rejecting:?}");
    match check_accepting(&g) {
        Acceptance::Accepting(a) => {
            if expect_reject {
                return Err(format!("accepted a rejecting graph: {}", ctx()));
            }
            validate_annotation(&g, &a).map_err(|e| format!("{e}: {}", ctx()))?;
        }
        Acceptance::Rejecting(l) => {
            if !expect_reject {
                return Err(format!("rejected an accepting graph: {}", ctx()));
            }
            let path: Vec<u32> = l.stem.iter().chain(&l.cycle).copied().collect();
            let head = l.cycle.first().ok_or("empty cycle")?;
            let ok = initial.contains(&path[0])
                && rejecting[*head as usize]
                && path.windows(2).all(|e| edge_set.contains(&(e[0], e[1])))
                && edge_set.contains(&(*l.cycle.last().unwrap(), *head));
            if !ok {
                return Err(format!("invalid lasso {l:?}: {}", ctx()));
            }
        }
    }
    Ok(())
}

/// Exhaustive over all graphs with at most `exhaustive_max` vertices (edge
/// sets and rejecting sets; initial sets up to relabeling) and `random`
/// random graphs with 5–6 vertices.
pub fn annotation_suite(seed: u64, exhaustive_max: usize, random: usize) -> Result<usize, String> {
    let mut count = 0;
    for n in 1..=exhaustive_max {
        let pairs: Vec<(u32, u32)> = (0..n as u32).flat_map(|a| (0..n as u32).map(move |b| (a, b))).collect();
        for em in 0u32..1 << pairs.len() {
            let edges: Vec<(u32, u32)> =
                pairs.iter().enumerate().filter(|(i, _)| em >> i & 1 == 1).map(|(_, &e)| e).collect();
            for rm in 0u32..1 << n {
                let rej: Vec<bool> = (0..n).map(|v| rm >> v & 1 == 1).collect();
                for k in 1..=n as u32 {
                    let init: Vec<u32> = (0..k).collect();
                    check_graph(n, &init, &edges, &rej)?;
                    count += 1;
                }
            }
        }
    }
    let mut r = rng(seed);
    for _ in 0..random {
        let n = r.gen_range(5..=6);
        let density = r.gen_range(0.1..0.5);
        let edges: Vec<(u32, u32)> = (0..n as u32)
            .flat_map(|a| (0..n as u32).map(move |b| (a, b)))
            .filter(|_| r.gen_bool(density))
            .collect();
        let rej: Vec<bool> = (0..n).map(|_| r.gen_bool(0.3)).collect();
        let mut init: Vec<u32> = (0..n as u32).filter(|_| r.gen_bool(0.3)).collect();
        if init.is_empty() {
            init.push(r.gen_range(0..n as u32));
        }
        check_graph(n, &init, &edges, &rej)?;
        count += 1;
    }
    Ok(count)
}

// ---------------------------------------------------------------------------
// Suite 5: zipping and composition on all small systems.

/// Every system with states `0..n` (initial 0), one input `i` and one
/// output `o`.
pub fn all_systems(n: usize) -> Vec<TransitionSystem> {
    let cells = 2 * n;
    let mut out = Vec::new();
    for t in 0..n.pow(cells as u32) {
        let succ: Vec<usize> = (0..cells).map(|c| t / n.pow(c as u32) % n).collect();
        for lab in 0..1u64 << n {
            let label = (0..n).map(|s| lab >> s & 1).collect();
            out.push(
                TransitionSystem::new(
                    vec!["i".into()],
                    vec!["o".into()],
                    (0..n).map(|s| format!("s{s}")).collect(),
                    0,
                    label,
                    succ.clone(),
                )
                .unwrap(),
            );
        }
    }
    out
}

fn with_prop(w: &LassoTrace, p: &str, on: impl Fn(usize) -> bool) -> LassoTrace {
    let add = |l: &Letter, i: usize| {
        let mut l = l.clone();
        if on(i) {
            l.insert(p.to_string());
        }
        l
    };
    LassoTrace::new(
        w.stem.iter().enumerate().map(|(i, l)| add(l, i)).collect(),
        w.cycle.iter().enumerate().map(|(i, l)| add(l, w.stem.len() + i)).collect(),
    )
}

/// Trace-set properties of self-composition, zipping, prophecy inputs and
/// strategy composition on every system with at most `max_states` states.
pub fn composition_suite(max_states: usize) -> Result<usize, String> {
    let mut checks = 0;
    for n in 1..=max_states {
        for sys in all_systems(n) {
            let traces: Vec<LassoTrace> = enumerate_lassos(&sys, 1, 2).into_iter().collect();
            let s2 = self_composition(&sys, 2).map_err(|e| e.to_string())?;
            for w1 in &traces {
                if !sys.generates(w1) {
                    return Err(format!("{w1} enumerated but not generated"));
                }
                for w2 in &traces {
                    let z = zip_lassos(&[w1.clone(), w2.clone()]);
                    if !s2.generates(&z) {
                        return Err(format!("pair ({w1}, {w2}) missing from the self-composition"));
                    }
                    if unzip_lasso(&z, 2) != vec![w1.canonical(), w2.canonical()] {
                        return Err(format!("unzip(zip({w1}, {w2})) differs"));
                    }
                    checks += 2;
                }
            }
            for w in enumerate_lassos(&s2, 1, 2) {
                for part in unzip_lasso(&w, 2) {
                    if !sys.generates(&part) {
                        return Err(format!("projection {part} of {w} is not a trace"));
                    }
                    checks += 1;
                }
            }
            let sp = add_prophecy(&sys, "pp").map_err(|e| e.to_string())?;
            let keep: BTreeSet<String> = ["i".to_string(), "o".to_string()].into();
            for w in enumerate_lassos(&sp, 1, 2) {
                if !sys.generates(&w.project(&keep)) {
                    return Err(format!("prophecy trace {w} changes the behavior"));
                }
                checks += 1;
            }
            for w in &traces {
                for phase in 0..2 {
                    let wp = with_prop(w, "pp", |i| i % 2 == phase);
                    if !sp.generates(&wp) {
                        return Err(format!("prophecy system misses {wp}"));
                    }
                    checks += 1;
                }
            }
        }
    }
    checks += strategy_composition_suite(max_states.min(2))?;
    Ok(checks)
}

/// Composition with every strategy of at most two states, compared with a
/// direct step-by-step simulation on all input words of length 4.
fn strategy_composition_suite(max_states: usize) -> Result<usize, String> {
    let mut checks = 0;
    for n in 1..=max_states {
        for sys in all_systems(n) {
            for nx in 1..=2usize {
                let cells = nx * 2;
                for t in 0..nx.pow(cells as u32) {
                    for ch in 0..1u64 << cells {
                        let succ: Vec<usize> = (0..cells).map(|c| t / nx.pow(c as u32) % nx).collect();
                        let choice: Vec<u64> = (0..cells).map(|c| ch >> c & 1).collect();
                        let st = StrategySystem::new(
                            vec!["i".into()],
                            1,
                            1,
                            (0..nx).map(|x| format!("x{x}")).collect(),
                            0,
                            succ.clone(),
                            choice.clone(),
                        )
                        .map_err(|e| e.to_string())?;
                        let comp = compose_strategy(&sys, &st).map_err(|e| e.to_string())?;
                        for word in 0..16usize {
                            let inputs: Vec<usize> = (0..4).map(|b| word >> b & 1).collect();
                            let got = comp.run(&inputs);
                            let (mut s, mut x) = (sys.initial, 0usize);
                            for (step, &u) in inputs.iter().enumerate() {
                                let c = choice[x * 2 + u] as usize;
                                let mut want: Letter = Letter::new();
                                if u == 1 {
                                    want.insert("i@1".into());
                                }
                                if c == 1 {
                                    want.insert("i".into());
                                }
                                if sys.label[s] == 1 {
                                    want.insert("o".into());
                                }
                                if got[step] != want {
                                    return Err(format!(
                                        "composition step {step}: got {:?}, want {want:?}",
                                        got[step]
                                    ));
                                }
                                s = sys.succ[s * 2 + c];
                                x = succ[x * 2 + u];
                                checks += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(checks)
}

// ---------------------------------------------------------------------------
// ∃-witness oracle.

/// Decides a `∀^n ∃^m` formula over the traces of `sys` generated by input
/// lassos within the bounds: every assignment of the universal variables
/// must be matched by some assignment of the existential ones.
pub fn exists_witness_oracle(sys: &TransitionSystem, f: &Formula, stem_max: usize, loop_max: usize) -> bool {
    let traces: Vec<LassoTrace> = enumerate_lassos(sys, stem_max, loop_max).into_iter().collect();
    let univ: Vec<&String> = f.prefix.iter().filter(|(q, _)| *q == Quantifier::Forall).map(|(_, v)| v).collect();
    let ex: Vec<&String> = f.prefix.iter().filter(|(q, _)| *q == Quantifier::Exists).map(|(_, v)| v).collect();
    let tuples = |k: usize| -> Vec<Vec<usize>> {
        (0..traces.len().pow(k as u32))
            .map(|mut i| {
                (0..k)
                    .map(|_| {
                        let d = i % traces.len();
                        i /= traces.len();
                        d
                    })
                    .collect()
            })
            .collect()
    };
    let ex_tuples = tuples(ex.len());
    tuples(univ.len()).into_iter().all(|u| {
        let mut env: BTreeMap<String, LassoTrace> =
            univ.iter().zip(&u).map(|(v, &i)| ((*v).clone(), traces[i].clone())).collect();
        ex_tuples.iter().any(|e| {
            for (v, &i) in ex.iter().zip(e) {
                env.insert((*v).clone(), traces[i].clone());
            }
            naive_env(&f.body, &env)
        })
    })
}

// ---------------------------------------------------------------------------
// Synthesis instances shared by the oracle tests and the acceptance suite.

use hyperlive::mc::{CheckOptions, Prepared};
use hyperlive::synth::{MaxBounds, SynthProblem, SystemSpec};
use hyperlive::tsys::load_interface;

#[derive(Debug, Clone, Copy)]
pub enum SysRef {
    Given(&'static str),
    Interface(&'static str),
}

#[derive(Debug, Clone, Copy)]
pub struct Instance {
    pub formula: &'static str,
    pub system: SysRef,
    pub max: MaxBounds,
    /// Expected realizing bound triple `(system, strategy, lookahead)`.
    pub expect: Option<(usize, usize, usize)>,
    /// Enumeration takes more than a few seconds.
    pub heavy: bool,
}

const fn inst(
    formula: &'static str,
    system: SysRef,
    max: (usize, usize, usize),
    expect: Option<(usize, usize, usize)>,
) -> Instance {
    Instance {
        formula,
        system,
        max: MaxBounds {
            system: max.0,
            strategy: max.1,
            lookahead: max.2,
        },
        expect,
        heavy: false,
    }
}

/// Corpus instances whose candidate spaces stay within the enumeration cap
/// at every bound triple.
pub fn synth_instances() -> Vec<Instance> {
    use SysRef::*;
    vec![
        inst("trivial_fe.hltl", Given("free_a.json"), (1, 1, 0), Some((1, 1, 0))),
        inst("copy.hltl", Given("free_a.json"), (1, 2, 1), Some((1, 1, 0))),
        inst("x_example.hltl", Given("free_a.json"), (1, 2, 0), None),
        inst("x_example.hltl", Given("free_a.json"), (1, 2, 1), Some((1, 1, 1))),
        inst("x_example_depth2.hltl", Given("free_a.json"), (1, 2, 2), Some((1, 1, 2))),
        inst("x_example_false.hltl", Given("free_a.json"), (1, 2, 1), None),
        inst("mutex_symmetry.hltl", Given("mutex_arbiter3.json"), (1, 1, 0), Some((3, 1, 0))),
        inst("mutex_ltl.hltl", Interface("mutex_interface.json"), (2, 1, 0), Some((2, 1, 0))),
        inst("trivial_ef.hltl", Interface("io_interface.json"), (1, 1, 0), Some((1, 1, 0))),
        inst("same_output.hltl", Interface("io_interface.json"), (2, 2, 0), Some((1, 1, 0))),
        inst("uniform_output.hltl", Interface("io_interface.json"), (3, 3, 0), None),
        Instance {
            heavy: true,
            ..inst("mutex_symmetry.hltl", Interface("mutex_interface.json"), (2, 1, 0), None)
        },
    ]
}

pub fn problem(i: &Instance) -> SynthProblem {
    let f = formula(i.formula);
    let spec = match i.system {
        SysRef::Given(s) => SystemSpec::Given(system(s)),
        SysRef::Interface(s) => {
            let iface = load_interface(&corpus(s)).unwrap();
            SystemSpec::Interface {
                inputs: iface.inputs,
                outputs: iface.outputs,
            }
        }
    };
    SynthProblem::new(Prepared::new(&f, &CheckOptions::default()).unwrap(), spec).unwrap()
}

/// `(system, strategy, lookahead)` of a realizing result, with the given
/// system's size filled in.
pub fn triple(o: &hyperlive::synth::SynthOutcome) -> Option<(usize, usize, usize)> {
    match o {
        hyperlive::synth::SynthOutcome::Realizable { bounds, solution } => Some((
            bounds.system.unwrap_or(solution.system.num_states()),
            bounds.strategy,
            bounds.lookahead,
        )),
        _ => None,
    }
}

/// Solves every bound triple of `instances`, checks that the model satisfies
/// each grounded clause and that its decoding passes the model checker.
/// Returns the number of satisfiable triples.
pub fn soundness_suite(instances: &[Instance]) -> Result<usize, String> {
    use hyperlive::synth::{emit_smtlib, interpret, run_solver, SolverAnswer, SynthConfig};
    let cfg = SynthConfig::default();
    let opts = CheckOptions::default();
    let mut sat = 0;
    for inst in instances {
        let p = problem(inst);
        for b in p.bound_sequence(&inst.max) {
            let cs = p.encode(&b, u64::MAX).map_err(|e| e.to_string())?;
            let answer = run_solver(&cfg.solver_cmd, &emit_smtlib(&cs), cfg.timeout, None).map_err(|e| e.to_string())?;
            let model = match answer {
                SolverAnswer::Sat(m) => m,
                SolverAnswer::Unsat => continue,
                SolverAnswer::Unknown(r) => return Err(format!("{} at {b:?}: solver unknown: {r}", inst.formula)),
            };
            let vals: Vec<i64> = cs.arena.vars.iter().map(|v| model.get(&v.name).copied().unwrap_or(0)).collect();
            for (v, &x) in cs.arena.vars.iter().zip(&vals) {
                if let hyperlive::synth::Sort::Int { lo, hi } = v.sort {
                    if x < lo || x > hi {
                        return Err(format!("{} = {x} outside [{lo}, {hi}]", v.name));
                    }
                }
            }
            if let Some(i) = cs.clauses.iter().position(|&cl| cs.arena.eval(cl, &|i| vals[i as usize]) != 1) {
                return Err(format!("{} at {b:?}: model violates clause {i}", inst.formula));
            }
            let (sys, strat) = interpret(&cs, &p.system, &model).map_err(|e| e.to_string())?;
            let r = p.prepared.check(&sys, strat.as_ref(), &opts).map_err(|e| e.to_string())?;
            if !r.holds() {
                return Err(format!("{} at {b:?}: decoded solution fails: {:?}", inst.formula, r.verdict));
            }
            sat += 1;
        }
    }
    Ok(sat)
}

/// Runs the SMT loop and enumeration on every instance and compares the
/// first realizing triple of both with the expected one.
pub fn completeness_suite(instances: &[Instance]) -> Result<usize, String> {
    use hyperlive::synth::SynthConfig;
    let cfg = SynthConfig::default();
    for inst in instances {
        let p = problem(inst);
        let smt = p.synthesis_loop(&inst.max, &cfg).map_err(|e| e.to_string())?;
        if let hyperlive::synth::SynthOutcome::Unknown { reason, .. } = &smt {
            return Err(format!("{}: solver unknown: {reason}", inst.formula));
        }
        let brute = p.solve_bruteforce(&inst.max, &cfg).map_err(|e| e.to_string())?;
        let (a, b) = (triple(&smt), triple(&brute));
        if a != b || a != inst.expect {
            return Err(format!("{}: smt {a:?}, enumeration {b:?}, expected {:?}", inst.formula, inst.expect));
        }
    }
    Ok(instances.len())
}
