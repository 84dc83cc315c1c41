//! The `fuzzproc` command line: `check`, `eval`, `classify`, and `laws`.
//!
//! Reports go to stdout and diagnostics to stderr. Exit status is 0 on
//! success, 1 when an assertion or law fails, and 2 for usage, parse, or
//! input errors.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::classify::{classify, process_flags};
use crate::laws::{Checker, Grid, LawId, LawVerdict, Scope, SuiteConfig, SuiteReport, VerdictResult, DEFAULT_BUDGET};
use crate::lang::{evaluate, evaluate_env, format_process, parse_expression, parse_script, Script, ScriptError};
use crate::process::{EqualityMode, FuzzyProcess};

/// Universe sizes up to this are checked exhaustively unless told otherwise.
const EXHAUSTIVE_UP_TO: usize = 2;
const DEFAULT_SAMPLES: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Failure = 1,
    Usage = 2,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Parser)]
#[command(name = "fuzzproc", version, about = "Fuzzy process contracts: compose, refine, and check algebraic laws")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a script and report every assertion.
    Check { file: PathBuf },
    /// Evaluate one expression over a script's bindings.
    Eval { file: PathBuf, expr: String },
    /// Show the execution classes and robust/chaotic flags of a bound process.
    Classify { file: PathBuf, name: String },
    /// Run the law suite over a finite scope.
    Laws(LawsArgs),
}

#[derive(Debug, Args)]
struct LawsArgs {
    #[arg(long, default_value_t = 1)]
    universe_size: usize,
    /// Comma-separated grades; must include 0 and 1.
    #[arg(long, default_value = "0,1/2,1")]
    grid: String,
    /// Comma-separated law ids (default: all).
    #[arg(long)]
    laws: Option<String>,
    /// Comma-separated equality modes: value, support (default: both).
    #[arg(long)]
    modes: Option<String>,
    /// Sample this many random tuples instead of enumerating.
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Enumerate even when the universe is large (subject to the budget).
    #[arg(long, conflicts_with = "samples")]
    exhaustive: bool,
    /// Maximum tuples per exhaustive law check.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// JSON file mapping `LAW` or `LAW:MODE` to "verified" or "counterexample".
    #[arg(long)]
    expectations: Option<PathBuf>,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    json: bool,
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = if informational { write!(out, "{e}") } else { write!(err, "{e}") };
            return if informational { ExitStatus::Success } else { ExitStatus::Usage };
        }
    };
    let mut io = Io { out, err, json: cli.json };
    let result = match cli.command {
        Command::Check { file } => cmd_check(&mut io, &file),
        Command::Eval { file, expr } => cmd_eval(&mut io, &file, &expr),
        Command::Classify { file, name } => cmd_classify(&mut io, &file, &name),
        Command::Laws(args) => cmd_laws(&mut io, &args),
    };
    match result {
        Ok(status) => status,
        Err(message) => {
            let _ = writeln!(io.err, "error: {message}");
            ExitStatus::Usage
        }
    }
}

type CmdResult = Result<ExitStatus, String>;

fn load_script(path: &Path) -> Result<Script, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_script(&text).map_err(|e| script_error(path, &e))
}

fn script_error(path: &Path, e: &ScriptError) -> String {
    format!("{}: {e}", path.display())
}

fn emit_json(io: &mut Io, value: &impl serde::Serialize) -> Result<(), String> {
    let text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    writeln!(io.out, "{text}").map_err(|e| e.to_string())
}

fn cmd_check(io: &mut Io, path: &Path) -> CmdResult {
    let script = load_script(path)?;
    let report = evaluate(&script).map_err(|e| script_error(path, &e))?;
    if io.json {
        emit_json(io, &report)?;
    } else {
        let texts: Vec<String> = script
            .assertions()
            .map(|a| match &a.check {
                Some((rel, rhs)) => format!("{} {} {}", a.lhs, rel.symbol(), rhs),
                None => a.lhs.to_string(),
            })
            .collect();
        let w = &mut io.out;
        let mut failed = 0;
        for (outcome, text) in report.assertions.iter().zip(&texts) {
            let verdict = match (&outcome.holds, &outcome.witness) {
                (true, _) => "holds".to_string(),
                (false, Some(label)) => {
                    failed += 1;
                    format!("FAILS (witness: {label})")
                }
                (false, None) => {
                    failed += 1;
                    "FAILS".to_string()
                }
            };
            writeln!(w, "assertion {} (line {}): {text} ... {verdict}", outcome.index, outcome.line)
                .map_err(|e| e.to_string())?;
        }
        writeln!(w, "{} assertion(s), {failed} failed", report.assertions.len()).map_err(|e| e.to_string())?;
    }
    Ok(if report.all_hold() { ExitStatus::Success } else { ExitStatus::Failure })
}

fn cmd_eval(io: &mut Io, path: &Path, expr_text: &str) -> CmdResult {
    let script = load_script(path)?;
    let (_, env) = evaluate_env(&script).map_err(|e| script_error(path, &e))?;
    let expr = parse_expression(expr_text, &script).map_err(|e| format!("expression: {e}"))?;
    let p = env.eval(&expr).map_err(|e| format!("expression: {e}"))?;
    if io.json {
        emit_json(io, &p)?;
    } else {
        writeln!(io.out, "{}", format_process("result", &p)).map_err(|e| e.to_string())?;
    }
    Ok(ExitStatus::Success)
}

fn cmd_classify(io: &mut Io, path: &Path, name: &str) -> CmdResult {
    let script = load_script(path)?;
    let report = evaluate(&script).map_err(|e| script_error(path, &e))?;
    let p = report
        .binding(name)
        .ok_or_else(|| format!("{}: no process named `{name}`", path.display()))?;
    let c = classify(p);
    let flags = process_flags(p);
    if io.json {
        emit_json(
            io,
            &json!({
                "name": name,
                "goals": c.goals,
                "escapes": c.escapes,
                "rejects": c.rejects,
                "blockings": c.blockings,
                "violations": c.violations,
                "contract_set": c.contract_set,
                "robust": flags.is_robust,
                "chaotic": flags.is_chaotic,
            }),
        )?;
    } else {
        let set = |xs: &[String]| format!("{{{}}}", xs.join(", "));
        let yes = |b: bool| if b { "yes" } else { "no" };
        let w = &mut io.out;
        let text = format!(
            "process {name}\n  goals:      {}\n  escapes:    {}\n  rejects:    {}\n  blockings:  {}\n  violations: {}\n  robust: {}, chaotic: {}\n",
            set(&c.goals),
            set(&c.escapes),
            set(&c.rejects),
            set(&c.blockings),
            set(&c.violations),
            yes(flags.is_robust),
            yes(flags.is_chaotic),
        );
        w.write_all(text.as_bytes()).map_err(|e| e.to_string())?;
    }
    Ok(ExitStatus::Success)
}

fn split_list<T, E: std::fmt::Display>(text: &str, parse: impl Fn(&str) -> Result<T, E>) -> Result<Vec<T>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse(s).map_err(|e| e.to_string()))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Expected {
    Verified,
    Counterexample,
}

/// Key used in expectation files: `LAW` for modeless laws, `LAW:MODE` otherwise.
pub fn expectation_key(verdict: &LawVerdict) -> String {
    match verdict.mode {
        Some(mode) => format!("{}:{}", verdict.law, mode),
        None => verdict.law.to_string(),
    }
}

fn load_expectations(path: &Path) -> Result<BTreeMap<String, Expected>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let raw: BTreeMap<String, String> =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    raw.into_iter()
        .map(|(key, value)| {
            let (law, mode) = match key.split_once(':') {
                Some((law, mode)) => (law, Some(mode)),
                None => (key.as_str(), None),
            };
            let law: LawId = law.parse().map_err(|e| format!("{}: {e}", path.display()))?;
            let mode = mode
                .map(str::parse::<EqualityMode>)
                .transpose()
                .map_err(|e| format!("{}: {e}", path.display()))?;
            let canonical = match mode {
                Some(m) => format!("{law}:{m}"),
                None => law.to_string(),
            };
            let expected = match value.as_str() {
                "verified" => Expected::Verified,
                "counterexample" => Expected::Counterexample,
                other => return Err(format!("{}: `{other}` is not verified or counterexample", path.display())),
            };
            Ok((canonical, expected))
        })
        .collect()
}

fn laws_scope(args: &LawsArgs) -> Result<Scope, String> {
    let grid: Grid = args.grid.parse().map_err(|e| format!("--grid: {e}"))?;
    if args.universe_size == 0 {
        return Err("--universe-size must be at least 1".into());
    }
    Ok(match args.samples {
        Some(0) => return Err("--samples must be at least 1".into()),
        Some(samples) => Scope::randomized(args.universe_size, grid, samples, args.seed),
        None if args.exhaustive || args.universe_size <= EXHAUSTIVE_UP_TO => Scope::exhaustive(args.universe_size, grid),
        None => Scope::randomized(args.universe_size, grid, DEFAULT_SAMPLES, args.seed),
    })
}

fn cmd_laws(io: &mut Io, args: &LawsArgs) -> CmdResult {
    let scope = laws_scope(args)?;
    let laws = match &args.laws {
        Some(list) => split_list(list, str::parse::<LawId>).map_err(|e| format!("--laws: {e}"))?,
        None => LawId::ALL.to_vec(),
    };
    let modes = match &args.modes {
        Some(list) => split_list(list, str::parse::<EqualityMode>).map_err(|e| format!("--modes: {e}"))?,
        None => EqualityMode::ALL.to_vec(),
    };
    if laws.is_empty() || modes.is_empty() {
        return Err("nothing to check: --laws and --modes must not be empty".into());
    }
    let expectations = args.expectations.as_deref().map(load_expectations).transpose()?;

    let config = SuiteConfig { scopes: vec![scope], laws, modes };
    let report = Checker::new(args.budget).run_suite(&config).map_err(|e| e.to_string())?;

    let matches = |v: &LawVerdict| -> bool {
        let expected = expectations
            .as_ref()
            .and_then(|ex| ex.get(&expectation_key(v)).copied())
            .unwrap_or(Expected::Verified);
        (expected == Expected::Verified) == v.is_verified()
    };

    if io.json {
        emit_json(io, &report)?;
    } else {
        write_law_table(io, &report, expectations.is_some().then_some(&matches))?;
    }
    let ok = report.verdicts.iter().all(matches);
    Ok(if ok { ExitStatus::Success } else { ExitStatus::Failure })
}

/// Compact `[label:(delta,gamma) ...]` rendering for table cells.
fn compact(p: &FuzzyProcess) -> String {
    let cells: Vec<String> = p
        .universe()
        .labels()
        .iter()
        .enumerate()
        .map(|(i, label)| {
            let (d, g) = p.grades_at(i);
            format!("{label}:({d},{g})")
        })
        .collect();
    format!("[{}]", cells.join(" "))
}

fn write_law_table(io: &mut Io, report: &SuiteReport, expectation: Option<&dyn Fn(&LawVerdict) -> bool>) -> Result<(), String> {
    let w = &mut io.out;
    let line = |w: &mut &mut dyn Write, s: String| writeln!(w, "{}", s.trim_end()).map_err(|e| e.to_string());
    if let Some(scope) = report.verdicts.first().map(|v| &v.scope) {
        let search = match scope.mode {
            crate::laws::SearchMode::Exhaustive => "exhaustive".to_string(),
            crate::laws::SearchMode::Randomized { samples, seed } => format!("randomized, {samples} samples, seed {seed}"),
        };
        line(w, format!("scope: |E| = {}, grid {}, {search}", scope.universe_size, scope.grid))?;
    }
    line(w, format!("{:<22} {:<8} {:<15} {}", "law", "mode", "verdict", "detail"))?;
    for v in &report.verdicts {
        let mode = v.mode.map_or("-", EqualityMode::name);
        let (verdict, detail) = match &v.result {
            VerdictResult::Verified { cases_checked } => ("verified", format!("{cases_checked} cases")),
            VerdictResult::Counterexample(c) => {
                let names = ["p", "q", "r"];
                let witnesses: Vec<String> = c
                    .witnesses
                    .iter()
                    .zip(names)
                    .map(|(w, n)| format!("{n}={}", compact(w)))
                    .collect();
                (
                    "COUNTEREXAMPLE",
                    format!(
                        "{} at {}; lhs={} rhs={}",
                        witnesses.join(" "),
                        c.first_differing_label(),
                        compact(c.lhs()),
                        compact(c.rhs())
                    ),
                )
            }
        };
        let mark = match expectation {
            Some(check) if check(v) => "  [as expected]",
            Some(_) => "  [UNEXPECTED]",
            None => "",
        };
        line(w, format!("{:<22} {:<8} {:<15} {detail}{mark}", v.law.name(), mode, verdict))?;
    }
    let failed = report.counterexamples().count();
    line(w, format!("{} verdict(s), {failed} counterexample(s)", report.verdicts.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (ExitStatus, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let status = run(std::iter::once("fuzzproc").chain(args.iter().copied()), &mut out, &mut err);
        (status, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_args(&[]).0, ExitStatus::Usage);
        assert_eq!(run_args(&["frobnicate"]).0, ExitStatus::Usage);
        let (status, out, err) = run_args(&["laws", "--grid", "0,0.5,1.5"]);
        assert_eq!(status, ExitStatus::Usage);
        assert!(out.is_empty());
        assert!(err.contains("outside"));
        assert_eq!(run_args(&["laws", "--laws", "P7.x"]).0, ExitStatus::Usage);
        assert_eq!(run_args(&["laws", "--modes", "fuzzy"]).0, ExitStatus::Usage);
        assert_eq!(run_args(&["laws", "--universe-size", "3", "--exhaustive", "--budget", "100"]).0, ExitStatus::Usage);
    }

    #[test]
    fn help_exits_0() {
        let (status, out, _) = run_args(&["--help"]);
        assert_eq!(status, ExitStatus::Success);
        assert!(out.contains("laws"));
    }

    #[test]
    fn single_law_text() {
        let (status, out, _) = run_args(&["laws", "--laws", "P2.i", "--universe-size", "2", "--modes", "value"]);
        assert_eq!(status, ExitStatus::Success);
        assert!(out.contains("P2.i"));
        assert!(out.contains("64 cases"));
    }

    #[test]
    fn large_universe_defaults_to_sampling() {
        let args = LawsArgs {
            universe_size: 4,
            grid: "0,1/2,1".into(),
            laws: None,
            modes: None,
            samples: None,
            seed: 3,
            exhaustive: false,
            budget: DEFAULT_BUDGET,
            expectations: None,
        };
        assert_eq!(laws_scope(&args).unwrap().mode, crate::laws::SearchMode::Randomized { samples: DEFAULT_SAMPLES, seed: 3 });
    }
}
