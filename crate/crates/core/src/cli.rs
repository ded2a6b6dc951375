//! The `hlv` command line: parse, check and synthesize.
//!
//! Exit codes: 0 holds / realizable, 1 fails (for `∀∃` only the strategy is
//! refuted), 2 unknown or bounds exhausted, 3 usage or I/O error.

use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::hyperltl::{parse_formula, FragmentClass, Formula};
use crate::mc::{
    apply_prophecy, prophecies_from_json, CheckOptions, CheckReport, McError, Prepared, Stats, Verdict,
};
use crate::synth::{
    default_solver_cmd, DecodedSolution, MaxBounds, SynthConfig, SynthError, SynthOutcome, SynthProblem,
    SystemSpec, SOLVER_ENV,
};
use crate::tsys::{
    load_interface, load_strategy, load_system, strategy_to_json, system_to_json, LookaheadSystem,
    TransitionSystem,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hlv", version, about = "Model checking and bounded synthesis for ∀∃/∃∀ HyperLTL")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a formula and, optionally, system, strategy and prophecy files.
    Parse(JobConfig),
    /// Model check a system against a formula.
    Check(JobConfig),
    /// Synthesize a strategy for the existential copies of a given system.
    SynthStrategy(JobConfig),
    /// Synthesize a system (and strategy) for an interface file.
    SynthSystem(JobConfig),
}

#[derive(Debug, Clone, Args)]
pub struct JobConfig {
    /// System file (JSON); an interface file for synth-system.
    #[arg(long)]
    pub system: Option<PathBuf>,
    /// Formula file.
    #[arg(long)]
    pub formula: PathBuf,
    /// Strategy file (JSON).
    #[arg(long)]
    pub strategy: Option<PathBuf>,
    /// Prophecy specification file (JSON).
    #[arg(long)]
    pub prophecy: Option<PathBuf>,
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_system: u32,
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    pub max_strategy: u32,
    #[arg(long, default_value_t = 0)]
    pub max_lookahead: u32,
    /// Solver command, run through `sh -c` with the script on stdin.
    #[arg(long, env = SOLVER_ENV)]
    pub solver_cmd: Option<String>,
    /// Solver timeout in seconds, per bound triple.
    #[arg(long, default_value_t = 600)]
    pub timeout: u64,
    /// Where to write the JSON report (default: stdout).
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Write each emitted SMT-LIB script to this file before solving it.
    #[arg(long)]
    pub dump_smt: Option<PathBuf>,
    /// Write the specification automaton (JSON) to this file.
    #[arg(long)]
    pub dump_automaton: Option<PathBuf>,
    /// Directory for synthesized artifacts.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

/// An error that ends the job with exit code 3.
#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

type Job<T> = Result<T, UsageError>;

/// Parses `args` (including the program name) and runs the job.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_ERROR,
            };
        }
    };
    let result = match &cli.command {
        Command::Parse(cfg) => cmd_parse(cfg),
        Command::Check(cfg) => cmd_check(cfg),
        Command::SynthStrategy(cfg) => cmd_synth_strategy(cfg),
        Command::SynthSystem(cfg) => cmd_synth_system(cfg),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            EXIT_ERROR
        }
    }
}

fn read_formula(path: &Path) -> Job<Formula> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_formula(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn require<'a>(p: &'a Option<PathBuf>, what: &str) -> Job<&'a PathBuf> {
    p.as_ref().ok_or_else(|| UsageError(format!("--{what} is required")))
}

fn emit_report(cfg: &JobConfig, report: &serde_json::Value) -> Job<()> {
    let text = serde_json::to_string_pretty(report)?;
    match &cfg.report {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| format!("cannot write {}: {e}", p.display()))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn write_file(path: &Path, text: &str) -> Job<()> {
    std::fs::write(path, text).map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))
}

/// Loads the system and formula and applies the prophecy file, if any.
fn load_problem(cfg: &JobConfig) -> Job<(TransitionSystem, Formula)> {
    let f = read_formula(&cfg.formula)?;
    let sys = load_system(require(&cfg.system, "system")?)?;
    match &cfg.prophecy {
        None => Ok((sys, f)),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
            let specs = prophecies_from_json(&text, &f)?;
            Ok(apply_prophecy(&sys, &f, &specs)?)
        }
    }
}

fn prepare(cfg: &JobConfig, f: &Formula, opts: &CheckOptions) -> Job<Prepared> {
    let p = Prepared::new(f, opts)?;
    if let Some(path) = &cfg.dump_automaton {
        write_file(path, &p.ucw.to_json())?;
    }
    Ok(p)
}

pub fn cmd_parse(cfg: &JobConfig) -> Job<i32> {
    let f = read_formula(&cfg.formula)?;
    let mut report = json!({
        "schema": 1,
        "formula": f.to_string(),
        "fragment": format!("{:?}", f.classify()),
        "alternations": f.alternations(),
    });
    if let Some(p) = &cfg.system {
        let sys = load_system(p)?;
        report["system"] = json!({ "states": sys.num_states(), "inputs": sys.inputs, "outputs": sys.outputs });
    }
    if let Some(p) = &cfg.strategy {
        let st = load_strategy(p)?;
        report["strategy"] = json!({ "states": st.strategy.num_states(), "lookahead": st.lookahead });
    }
    if let Some(p) = &cfg.prophecy {
        let text = std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
        report["prophecies"] = prophecies_from_json(&text, &f)?.len().into();
    }
    if cfg.dump_automaton.is_some() && f.classify() != FragmentClass::Other {
        let p = prepare(cfg, &f, &CheckOptions::default())?;
        report["automaton_states"] = p.ucw.num_states().into();
    }
    emit_report(cfg, &report)?;
    Ok(EXIT_OK)
}

fn verdict_code(r: &CheckReport) -> i32 {
    match r.verdict {
        Verdict::Holds => EXIT_OK,
        Verdict::Fails { .. } => EXIT_FAIL,
        Verdict::Unknown(_) => EXIT_UNKNOWN,
    }
}

pub fn cmd_check(cfg: &JobConfig) -> Job<i32> {
    let (sys, f) = load_problem(cfg)?;
    let opts = CheckOptions::default();
    let class = f.classify();
    let strat: Option<LookaheadSystem> = cfg.strategy.as_ref().map(|p| load_strategy(p)).transpose()?;
    let result = match class {
        FragmentClass::ExistentialOnly => {
            if let Some(path) = &cfg.dump_automaton {
                let dual = Formula {
                    prefix: f.prefix.iter().map(|(_, v)| (crate::hyperltl::Quantifier::Forall, v.clone())).collect(),
                    body: crate::hyperltl::Ltl::not(f.body.clone()),
                };
                write_file(path, &Prepared::new(&dual, &opts)?.ucw.to_json())?;
            }
            crate::mc::mc_existential(&sys, &f, &opts)
        }
        FragmentClass::UniversalOnly | FragmentClass::ForallExists(..) | FragmentClass::ExistsForall(..) => {
            if strat.is_none() && class != FragmentClass::UniversalOnly {
                return Err(McError::StrategyRequired.into());
            }
            let p = prepare(cfg, &f, &opts)?;
            p.check(&sys, strat.as_ref(), &opts)
        }
        c => return Err(McError::Fragment(c).into()),
    };
    let report = match result {
        Ok(r) => r,
        Err(McError::VertexCap(cap)) => CheckReport {
            verdict: Verdict::Unknown(format!("run graph exceeds {cap} vertices")),
            stats: Stats {
                vertices: cap,
                rejecting: 0,
                time_ms: 0,
            },
            annotation: None,
        },
        Err(e) => return Err(e.into()),
    };
    eprintln!("{}", report.message());
    emit_report(cfg, &report.to_json())?;
    Ok(verdict_code(&report))
}

fn synth_config(cfg: &JobConfig) -> SynthConfig {
    SynthConfig {
        solver_cmd: cfg.solver_cmd.clone().unwrap_or_else(default_solver_cmd),
        timeout: Duration::from_secs(cfg.timeout),
        dump_smt: cfg.dump_smt.clone(),
        ..SynthConfig::default()
    }
}

fn max_bounds(cfg: &JobConfig) -> MaxBounds {
    MaxBounds {
        system: cfg.max_system as usize,
        strategy: cfg.max_strategy as usize,
        lookahead: cfg.max_lookahead as usize,
    }
}

fn write_solution(cfg: &JobConfig, sol: &DecodedSolution, with_system: bool) -> Job<serde_json::Value> {
    std::fs::create_dir_all(&cfg.out_dir).map_err(|e| format!("cannot create {}: {e}", cfg.out_dir.display()))?;
    let mut files = serde_json::Map::new();
    if with_system {
        let p = cfg.out_dir.join("system.json");
        write_file(&p, &system_to_json(&sol.system))?;
        files.insert("system".into(), p.display().to_string().into());
    }
    if let Some(st) = &sol.strategy {
        let p = cfg.out_dir.join("strategy.json");
        write_file(&p, &strategy_to_json(st))?;
        files.insert("strategy".into(), p.display().to_string().into());
    }
    let p = cfg.out_dir.join("annotation.json");
    let ann = json!({ "schema": 1, "reach": sol.annotation.reach, "count": sol.annotation.count });
    write_file(&p, &serde_json::to_string(&ann)?)?;
    files.insert("annotation".into(), p.display().to_string().into());
    Ok(serde_json::Value::Object(files))
}

fn finish_synth(cfg: &JobConfig, outcome: Result<SynthOutcome, SynthError>, with_system: bool) -> Job<i32> {
    let outcome = outcome?;
    let (code, report) = match &outcome {
        SynthOutcome::Realizable { bounds, solution } => {
            let files = write_solution(cfg, solution, with_system)?;
            eprintln!("realizable");
            (
                EXIT_OK,
                json!({
                    "schema": 1,
                    "result": "realizable",
                    "bounds": {
                        "system": bounds.system.unwrap_or(solution.system.num_states()),
                        "strategy": bounds.strategy,
                        "lookahead": bounds.lookahead,
                    },
                    "files": files,
                }),
            )
        }
        SynthOutcome::Exhausted { note } => {
            eprintln!("bounds exhausted: {note}");
            (EXIT_UNKNOWN, json!({ "schema": 1, "result": "exhausted", "note": note }))
        }
        SynthOutcome::Unknown { bounds, reason } => {
            eprintln!("unknown: {reason}");
            (
                EXIT_UNKNOWN,
                json!({
                    "schema": 1,
                    "result": "unknown",
                    "reason": reason,
                    "bounds": { "system": bounds.system, "strategy": bounds.strategy, "lookahead": bounds.lookahead },
                }),
            )
        }
    };
    emit_report(cfg, &report)?;
    Ok(code)
}

fn synth_fragment(f: &Formula, universal_ok: bool) -> Job<()> {
    match f.classify() {
        FragmentClass::ForallExists(..) | FragmentClass::ExistsForall(..) => Ok(()),
        FragmentClass::UniversalOnly if universal_ok => Ok(()),
        c => Err(UsageError(format!("cannot synthesize for fragment {c:?}"))),
    }
}

pub fn cmd_synth_strategy(cfg: &JobConfig) -> Job<i32> {
    let (sys, f) = load_problem(cfg)?;
    synth_fragment(&f, false)?;
    let scfg = synth_config(cfg);
    let p = prepare(cfg, &f, &scfg.check)?;
    let problem = SynthProblem::new(p, SystemSpec::Given(sys))?;
    finish_synth(cfg, problem.synthesis_loop(&max_bounds(cfg), &scfg), false)
}

pub fn cmd_synth_system(cfg: &JobConfig) -> Job<i32> {
    if cfg.prophecy.is_some() {
        return Err(UsageError("prophecies are not supported for system synthesis".into()));
    }
    let f = read_formula(&cfg.formula)?;
    synth_fragment(&f, true)?;
    let iface = load_interface(require(&cfg.system, "system")?)?;
    let scfg = synth_config(cfg);
    let p = prepare(cfg, &f, &scfg.check)?;
    let problem = SynthProblem::new(
        p,
        SystemSpec::Interface {
            inputs: iface.inputs,
            outputs: iface.outputs,
        },
    )?;
    finish_synth(cfg, problem.synthesis_loop(&max_bounds(cfg), &scfg), true)
}
