//! The `sym2` command line: analysis of `Sym(G)` for a single group, of
//! `Sym` of a finite-type groupoid, family tables, and seeded self-checks.
//!
//! Exit codes: 0 split (or success), 3 non-split, 4 inconclusive, 1 failed
//! self-check, 2 error.

pub mod report;
pub mod suites;
pub mod text;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sym2_core::caps;
use sym2_core::expr::GroupExpr;
use sym2_core::group::{cyclic, dihedral, symmetric};
use sym2_core::groupoid::{GroupoidSpec, InvariantCache};
use sym2_core::perm::Method;
use thiserror::Error;

use report::{CheckReport, TableReport, SCHEMA};

pub const EXIT_SPLIT: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;
pub const EXIT_NONSPLIT: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Error, Debug)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] sym2_core::Error),
    #[error("methods disagree: {0}")]
    Disagreement(String),
    #[error("{0}")]
    Usage(String),
    #[error("output: {0}")]
    Output(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(name = "sym2", version, about = "Permutation 2-groups of finite groups and groupoids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Largest group order any constructor will tabulate.
    #[arg(long, global = true, value_name = "N")]
    pub cap_order: Option<usize>,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Splitness decider; `all` runs every method and requires agreement.
    #[arg(long, global = true, value_enum, default_value = "coboundary")]
    pub method: MethodArg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Coboundary,
    SectionSearch,
    Witness,
    All,
}

impl MethodArg {
    pub fn methods(self) -> Vec<Method> {
        match self {
            MethodArg::Coboundary => vec![Method::Coboundary],
            MethodArg::SectionSearch => vec![Method::SectionSearch],
            MethodArg::Witness => vec![Method::NonsplitWitness],
            MethodArg::All => Method::ALL.to_vec(),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Symmetric,
    Dihedral,
    Cyclic,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Analyse Sym(G) for a group expression such as `dihedral:8` or `product(cyclic:2, symmetric:3)`.
    Analyze { expr: String },
    /// Analyse Sym of a groupoid given as `2×dihedral:4, 1×symmetric:0..6` or as JSON.
    Groupoid { spec: String },
    /// One row per n in a range `a..b` of a family.
    Table {
        #[arg(value_enum)]
        family: Family,
        range: String,
        #[arg(value_enum)]
        parity: Option<Parity>,
    },
    /// Run the seeded property suites.
    Check {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

/// Parse arguments, run, write the report to `out` and diagnostics to `err`.
/// Returns the process exit code.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_SPLIT };
            let _ = if e.use_stderr() { write!(err, "{}", e.render()) } else { write!(out, "{}", e.render()) };
            return code;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let CliError::Core(sym2_core::Error::Parse { pos, .. }) = &e {
                if let Some(src) = source_text(&cli.command) {
                    let col = src[..(*pos).min(src.len())].chars().count();
                    let _ = writeln!(err, "  {src}\n  {}^", " ".repeat(col));
                }
            }
            EXIT_ERROR
        }
    }
}

fn source_text(c: &Command) -> Option<&str> {
    match c {
        Command::Analyze { expr } => Some(expr),
        Command::Groupoid { spec } => Some(spec),
        _ => None,
    }
}

fn verdict_code(split: Option<bool>) -> i32 {
    match split {
        Some(true) => EXIT_SPLIT,
        Some(false) => EXIT_NONSPLIT,
        None => EXIT_INCONCLUSIVE,
    }
}

fn emit<T: serde::Serialize>(out: &mut dyn Write, json: bool, value: &T, text: impl FnOnce(&T) -> String) -> Result<(), CliError> {
    if json {
        let s = serde_json::to_string_pretty(value).map_err(sym2_core::Error::from)?;
        writeln!(out, "{s}")?;
    } else {
        write!(out, "{}", text(value))?;
    }
    Ok(())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    if let Some(n) = cli.cap_order {
        caps::set(caps::Caps { group_order: n, ..caps::current() });
    }
    let start = Instant::now();
    let elapsed = |on: bool| on.then(|| start.elapsed().as_millis() as u64);
    let methods = cli.method.methods();
    match &cli.command {
        Command::Analyze { expr } => {
            let g = GroupExpr::parse(expr)?.build()?;
            let inv = sym2_core::perm::sym_invariants(&g)?;
            let mut r = report::analysis(expr, &inv, &methods)?;
            r.timing_ms = elapsed(cli.timing);
            emit(out, cli.json, &r, text::analysis)?;
            Ok(verdict_code(r.split))
        }
        Command::Groupoid { spec } => {
            let parsed = GroupoidSpec::parse(spec)?;
            let mut cache = InvariantCache::new();
            let mut r = report::groupoid(spec, &parsed, &methods, &mut cache)?;
            r.timing_ms = elapsed(cli.timing);
            emit(out, cli.json, &r, text::groupoid)?;
            Ok(verdict_code(r.split))
        }
        Command::Table { family, range, parity } => {
            let (a, b) = parse_range(range)?;
            let mut cache = InvariantCache::new();
            let mut rows = Vec::new();
            for n in a..=b {
                let keep = match parity {
                    Some(Parity::Even) => n % 2 == 0,
                    Some(Parity::Odd) => n % 2 == 1,
                    None => true,
                };
                if !keep {
                    continue;
                }
                let g = match family {
                    Family::Symmetric => symmetric(n)?,
                    Family::Dihedral => dihedral(n)?,
                    Family::Cyclic => cyclic(n)?,
                };
                rows.push(report::table_row(n, &g, &mut cache, &methods)?);
            }
            let name = format!("{family:?}").to_lowercase();
            let r = TableReport { schema: SCHEMA, command: "table".into(), family: name, rows, timing_ms: elapsed(cli.timing) };
            emit(out, cli.json, &r, text::table)?;
            Ok(EXIT_SPLIT)
        }
        Command::Check { seed, trials } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let suites = suites::all(*trials, &mut rng)?;
            let passed = suites.iter().all(|s| s.passed());
            let r = CheckReport {
                schema: SCHEMA,
                command: "check".into(),
                seed: *seed,
                trials: *trials,
                suites,
                passed,
                timing_ms: elapsed(cli.timing),
            };
            emit(out, cli.json, &r, text::check)?;
            Ok(if passed { EXIT_SPLIT } else { EXIT_CHECK_FAILED })
        }
    }
}

/// `a..b` or a single `n`.
pub fn parse_range(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("expected a range like 1..6, got {s:?}"));
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            (n, n)
        }
    };
    if b < a {
        return Err(bad());
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_from(std::iter::once("sym2").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["analyze", "dihedral:8"]).0, EXIT_NONSPLIT);
        assert_eq!(run_args(&["analyze", "cyclic:1"]).0, EXIT_SPLIT);
        assert_eq!(run_args(&["analyze", "dihedral:6", "--method", "witness"]).0, EXIT_INCONCLUSIVE);
        let (code, _, err) = run_args(&["analyze", "dihedral:q"]);
        assert_eq!(code, EXIT_ERROR);
        assert!(err.contains("position 9"), "{err}");
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("1..6").unwrap(), (1, 6));
        assert_eq!(parse_range("4").unwrap(), (4, 4));
        assert!(parse_range("6..1").is_err());
    }
}
