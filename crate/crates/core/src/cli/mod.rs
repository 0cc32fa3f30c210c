//! The `triortho` command line: dimension tables over the `K_{c,d}` family, patch reports and
//! projection constants. Reports are JSON with every number written as a decimal string (exact
//! rationals as `p/q`).
//!
//! Exit status: 0 when every check passes, 1 on a mismatch with the predicted values, 2 on bad
//! input.

mod constants_cmd;
mod patch_cmd;
mod verify;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use crate::error::{Error, Result};

pub use constants_cmd::{constants_report, ConstantsArgs};
pub use patch_cmd::{patch_report, PatchArgs};
pub use verify::{cd_grid, dimension_report, GridPoint, VerifyArgs};

pub const THREADS_ENV: &str = "TRIORTHO_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Pass = 0,
    Mismatch = 1,
    InputError = 2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
    Both,
}

impl ModeArg {
    pub fn exact(self) -> bool {
        matches!(self, ModeArg::Exact | ModeArg::Both)
    }

    pub fn float(self) -> bool {
        matches!(self, ModeArg::Float | ModeArg::Both)
    }
}

impl fmt::Display for ModeArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModeArg::Exact => "exact",
            ModeArg::Float => "float",
            ModeArg::Both => "both",
        })
    }
}

/// Inclusive degree range, written `3`, `1..4` or `1-4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeRange {
    pub lo: usize,
    pub hi: usize,
}

impl DegreeRange {
    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }
}

impl FromStr for DegreeRange {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad degree {t:?}: {e}"));
        let (lo, hi) = match s.split_once("..").or_else(|| s.split_once('-')) {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty degree range {s:?}"));
        }
        Ok(DegreeRange { lo, hi })
    }
}

impl fmt::Display for DegreeRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write the JSON report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(name = "triortho", version, about = "Orthogonal complement spaces on triangle patches")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compare computed intersection dimensions over a (c, d) grid with the closed-form table.
    #[command(name = "verify-theorem2")]
    VerifyTheorem2(VerifyArgs),
    /// Validate a patch and report pair classifications, intersections and constants.
    Patch(PatchArgs),
    /// Tabulate c''_n and optionally sample the patch family for the smallest c-check.
    Constants(ConstantsArgs),
}

/// A finished report and whether its checks passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub passed: bool,
}

pub(crate) fn dec<T: crate::Scalar>(v: &T) -> Value {
    Value::String(v.to_decimal_string())
}

pub(crate) fn point_json<T: crate::Scalar>(p: &crate::geometry::Point<T>) -> Value {
    Value::Array(vec![dec(&p.x), dec(&p.y)])
}

fn thread_count() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::Parse { line: 0, column: 0, message: format!("{THREADS_ENV}={v:?} is not a positive integer") }),
        },
    }
}

fn execute(command: &Command) -> Result<(Report, Option<PathBuf>)> {
    Ok(match command {
        Command::VerifyTheorem2(a) => (dimension_report(a)?, a.output.out.clone()),
        Command::Patch(a) => (patch_report(a)?, a.output.out.clone()),
        Command::Constants(a) => (constants_report(a)?, a.output.out.clone()),
    })
}

fn emit(report: &Report, out: Option<&PathBuf>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(&report.json).map_err(|e| Error::Io(e.to_string()))?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

/// Parses `args` (including the program name), runs the command on a pool capped by
/// `TRIORTHO_THREADS`, writes the report and returns the exit status.
pub fn run<I, S>(args: I) -> ExitStatus
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitStatus::InputError } else { ExitStatus::Pass };
        }
    };
    let outcome = thread_count().and_then(|threads| {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if let Some(n) = threads {
            builder = builder.num_threads(n);
        }
        let pool = builder.build().map_err(|e| Error::Io(e.to_string()))?;
        pool.install(|| execute(&cli.command))
    });
    match outcome.and_then(|(report, out)| emit(&report, out.as_ref()).map(|_| report.passed)) {
        Ok(true) => ExitStatus::Pass,
        Ok(false) => ExitStatus::Mismatch,
        Err(e) => {
            eprintln!("error: {e}");
            ExitStatus::InputError
        }
    }
}
