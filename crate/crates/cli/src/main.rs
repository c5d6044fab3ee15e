//! `samptraj` command line: one JSON config per invocation, artifacts written
//! to `--out`.
//!
//! Exit codes: 0 success (or Nyquist), 1 config or runtime error,
//! 2 NotNyquist on `check`, 3 Critical or Unknown on `check`.
//!
//! `SAMPTRAJ_BOUNDARY_TOL` overrides the 1e-9 boundary band of every verdict.
//! Changing it shifts where Critical is reported; leave it unset unless you
//! are studying the band itself.

mod config;
mod pipeline;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::Action;

#[derive(Parser)]
#[command(name = "samptraj", version, about = "Nyquist checks, densities and designs for sampling trajectories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// JSON pipeline config.
    #[arg(long)]
    config: PathBuf,
    /// Directory for the artifacts.
    #[arg(long, default_value = ".")]
    out: PathBuf,
    /// Seed for generated fields; overrides the config.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Nyquist verdict for `set` on `omega` (verdict.json).
    Check(Common),
    /// Minimum-density design for `omega` (design.json, set.json).
    Design(Common),
    /// Closed-form density of `set` (density.json).
    Density(Common),
    /// Sample locations, or field values when `field`/`atoms` is given (samples.csv).
    Sample(Common),
    /// Recover a field from its samples and measure the error (reconstruction.json).
    Reconstruct(Common),
    /// Verdict and density over an inclusive spacing sweep (report.csv).
    Report(Common),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { pipeline::EXIT_ERROR } else { pipeline::EXIT_OK });
        }
    };
    let (action, common) = match cli.command {
        Command::Check(c) => (Action::Check, c),
        Command::Design(c) => (Action::Design, c),
        Command::Density(c) => (Action::Density, c),
        Command::Sample(c) => (Action::Sample, c),
        Command::Reconstruct(c) => (Action::Reconstruct, c),
        Command::Report(c) => (Action::Report, c),
    };
    let result = config::load(&common.config).and_then(|cfg| pipeline::run(action, &cfg, &common.out, common.seed));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(pipeline::EXIT_ERROR)
        }
    }
}
