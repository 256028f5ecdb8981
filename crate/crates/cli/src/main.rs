//! `ehrhart`: construct, analyze, verify and render rational polygons.

mod analyze;
mod construct;
mod error;
mod figure;
mod render;
mod verify;

use std::io::{ErrorKind, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use ehrhart_core::constructions::scott_pip_search;
use ehrhart_core::json::SearchReportJson;
use serde::Serialize;

use crate::construct::{ConstructArgs, Family};
use crate::error::{CliError, CliResult};
use crate::verify::{Suite, VerifyArgs};

#[derive(Debug, Parser)]
#[command(name = "ehrhart", version, about = "Exact Ehrhart quasi-polynomials of rational polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Quasi-polynomial, periods, PIP status and Pick/Scott data of a polygon file.
    Analyze {
        /// Polygon JSON, or `-` for standard input.
        file: PathBuf,
    },
    /// Emit one of the constructed polygons as JSON.
    Construct {
        family: Family,
        #[command(flatten)]
        args: ConstructArgs,
    },
    /// Run an invariant suite and print a JSON report; exit 1 on failure.
    Verify {
        suite: Suite,
        #[command(flatten)]
        args: VerifyArgs,
    },
    /// Seeded random search for pseudo-integral polygons.
    Search {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 4)]
        max_den: u64,
        #[arg(long, default_value_t = 4)]
        coord_bound: u64,
    },
    /// Draw a polygon, region, trace or heptagon figure as SVG.
    Render { input: PathBuf, output: PathBuf },
}

pub fn read_input(path: &Path) -> CliResult<String> {
    let mut s = String::new();
    let res = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::File::open(path).and_then(|mut f| f.read_to_string(&mut s)).map(|_| ())
    };
    res.map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    Ok(s)
}

pub fn emit<T: Serialize>(value: &T) -> CliResult<()> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Usage(e.to_string()))?;
    s.push('\n');
    match std::io::stdout().lock().write_all(s.as_bytes()) {
        Err(e) if e.kind() != ErrorKind::BrokenPipe => Err(CliError::Io { path: "<stdout>".into(), source: e }),
        _ => Ok(()),
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("EHRHART_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("EHRHART_THREADS must be a positive integer, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match cli.command {
        Command::Analyze { file } => analyze::run(&file),
        Command::Construct { family, args } => construct::run(family, &args),
        Command::Verify { suite, args } => verify::run(suite, &args),
        Command::Search { seed, trials, max_den, coord_bound } => {
            let report = scott_pip_search(seed, trials, max_den, coord_bound)?;
            emit(&SearchReportJson::new(&report))?;
            if report.counterexamples.is_empty() && report.impossible.is_empty() {
                Ok(())
            } else {
                Err(CliError::Failed)
            }
        }
        Command::Render { input, output } => render::run(&input, &output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Failed) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
