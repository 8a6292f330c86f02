//! `latconv`: run verification checks on scenario files and generate
//! random scenarios.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use latconv::generate::{generate, GenParams};
use latconv::report::{overall, sort_entries, ReportEntry, Status};
use latconv::scenario::Scenario;
use latconv::verify::{cross_check, parse_checks, run_check, Check, DEFAULT_SEED};
use rayon::prelude::*;

use render::{render, Format};

const EXIT_FAIL: u8 = 1;
const EXIT_SKIPPED: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "latconv", version, about = "Exact verification of set-valued conjugate and composition identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run checks on a scenario and write a report.
    Verify {
        #[arg(long)]
        scenario: PathBuf,
        /// Comma-separated check names, or `all`.
        #[arg(long, default_value = "all")]
        checks: String,
        /// Also compare against the brute-force reference routines.
        #[arg(long)]
        cross_check: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Report destination; standard output when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Write a random convex scenario.
    Generate {
        /// Dimensions of X, Y and Z, as `x,y,z`.
        #[arg(long, value_parser = parse_dims)]
        dims: (usize, usize, usize),
        #[arg(long)]
        grid_size: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Destination; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_dims(s: &str) -> Result<(usize, usize, usize), String> {
    let parts: Vec<usize> = s.split(',').map(|p| p.trim().parse::<usize>().map_err(|e| format!("{p:?}: {e}"))).collect::<Result<_, _>>()?;
    match parts[..] {
        [x, y, z] => Ok((x, y, z)),
        _ => Err(format!("expected three comma-separated dimensions, got {s:?}")),
    }
}

fn input_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_INPUT)
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(bytes)
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("LATCONV_THREADS") {
        let n: usize = v.parse().map_err(|_| format!("LATCONV_THREADS={v:?} is not a thread count"))?;
        b = b.num_threads(n.max(1));
    }
    b.build().map_err(|e| e.to_string())
}

fn verify(scenario: &Path, checks: &str, with_cross: bool, seed: u64, report: Option<&Path>, format: Format) -> ExitCode {
    let checks = match parse_checks(checks) {
        Ok(c) => c,
        Err(e) => return input_error(e),
    };
    let s = match Scenario::load(scenario) {
        Ok(s) => s,
        Err(e) => return input_error(format_args!("{}: {e}", scenario.display())),
    };
    let inst = match s.build() {
        Ok(i) => i,
        Err(e) => return input_error(format_args!("{}: {e}", scenario.display())),
    };
    let y_dual = s.y_dual_grid_vectors();
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(e) => return input_error(e),
    };
    let mut jobs: Vec<Option<Check>> = checks.into_iter().map(Some).collect();
    if with_cross {
        jobs.push(None);
    }
    let results: Vec<latconv::Result<Vec<ReportEntry>>> = pool.install(|| {
        jobs.par_iter()
            .map(|job| match job {
                Some(c) => run_check(&inst, y_dual.as_deref(), *c, seed),
                None => cross_check(&inst),
            })
            .collect()
    });
    let mut entries = Vec::new();
    for r in results {
        match r {
            Ok(e) => entries.extend(e),
            Err(e) => return input_error(format_args!("{}: {e}", scenario.display())),
        }
    }
    sort_entries(&mut entries);
    let bytes = match render(&entries, format) {
        Ok(b) => b,
        Err(e) => return input_error(e),
    };
    if let Err(e) = write_output(report, &bytes) {
        return input_error(e);
    }
    let status = overall(&entries);
    let failed = entries.iter().filter(|e| e.status == Status::Fail).count();
    let skipped = entries.iter().filter(|e| e.status == Status::Skipped).count();
    eprintln!("{status}: {} entries, {failed} failed, {skipped} skipped", entries.len());
    match status {
        Status::Fail => ExitCode::from(EXIT_FAIL),
        Status::Skipped => ExitCode::from(EXIT_SKIPPED),
        _ => ExitCode::SUCCESS,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.use_stderr() => {
            let _ = e.print();
            return ExitCode::from(EXIT_INPUT);
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
    };
    match cli.command {
        Command::Verify { scenario, checks, cross_check, seed, report, format } => verify(&scenario, &checks, cross_check, seed, report.as_deref(), format),
        Command::Generate { dims: (dim_x, dim_y, dim_z), grid_size, seed, out } => {
            let s = match generate(&GenParams { dim_x, dim_y, dim_z, grid_size, seed }) {
                Ok(s) => s,
                Err(e) => return input_error(e),
            };
            match write_output(out.as_deref(), s.to_json().as_bytes()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => input_error(e),
            }
        }
    }
}
