use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use minkgeo::export;
use serde::Serialize;

mod classify;
mod curve;
mod failure;
mod parse;
mod surface;

use failure::Failure;

#[derive(Parser)]
#[command(name = "minkgeo", version, about = "Geometry of pseudo-Euclidean and Lorentz-Minkowski space")]
struct Cli {
    /// Worker threads for grid evaluation.
    #[arg(long, global = true, env = "MINKGEO_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Causal character, transformation and causal relation queries.
    #[command(subcommand)]
    Classify(classify::ClassifyCmd),
    /// Named curves and reconstruction from invariants.
    #[command(subcommand)]
    Curve(curve::CurveCmd),
    /// Surface generation, curvature reports and export.
    #[command(subcommand)]
    Surface(surface::SurfaceCmd),
}

/// Print a JSON report to stdout with 17-digit floats.
pub(crate) fn print_report<T: Serialize>(report: &T) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    export::write_json(&mut out, report)?;
    writeln!(out)?;
    Ok(())
}

pub(crate) fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    Ok(BufWriter::new(f))
}

pub(crate) fn write_to(path: &Option<PathBuf>, f: impl FnOnce(&mut dyn Write) -> anyhow::Result<()>) -> anyhow::Result<()> {
    if let Some(p) = path {
        let mut w = create(p)?;
        f(&mut w)?;
        w.flush()?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Failure::Usage.because("--jobs must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    match cli.command {
        Command::Classify(c) => classify::run(c),
        Command::Curve(c) => curve::run(c),
        Command::Surface(c) => surface::run(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(failure::exit_code(&e))
        }
    }
}
