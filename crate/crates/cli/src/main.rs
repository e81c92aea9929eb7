//! `srg`: simulate simple random graphs, evaluate the kinetic theory and
//! compare the two.

mod commands;
mod config;
mod error;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::compare::CompareArgs;
use commands::Context;
use config::Settings;
use error::{CliError, Result};
use table::Format;

#[derive(Debug, Parser)]
#[command(name = "srg", version, about)]
struct Cli {
    /// JSON file with run settings; flags override it
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Master seed of the ensemble
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,
    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ensemble averages on a time grid
    Simulate(Settings),
    /// Jamming statistics and scaling fits over system sizes
    JamScan(Settings),
    /// Analytic predictions on a time grid
    Theory(Settings),
    /// Closed forms against the truncated rate equations
    Oracle(Settings),
    /// z-scores between an ensemble table and a reference table
    Compare(CompareArgs),
    /// Tree-count fluctuations on a time grid
    Fluct(Settings),
}

fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    }
    let (file, config_bytes) = match &cli.config {
        Some(path) => (
            Settings::load(path)?,
            std::fs::read(path).map_err(|e| CliError::io(path, e))?,
        ),
        None => (Settings::default(), Vec::new()),
    };
    let (name, flags) = match &cli.command {
        Command::Simulate(s) => ("simulate", s.clone()),
        Command::JamScan(s) => ("jam-scan", s.clone()),
        Command::Theory(s) => ("theory", s.clone()),
        Command::Oracle(s) => ("oracle", s.clone()),
        Command::Fluct(s) => ("fluct", s.clone()),
        Command::Compare(_) => ("compare", Settings::default()),
    };
    let mut settings = flags.over(file);
    settings.master_seed = cli.seed.or(settings.master_seed);
    let ctx = Context {
        command: name,
        settings,
        out_dir: cli.out_dir,
        format: cli.format,
        config_bytes,
    };
    match &cli.command {
        Command::Simulate(_) => commands::simulate::simulate(&ctx),
        Command::JamScan(_) => commands::jam::jam_scan(&ctx),
        Command::Theory(_) => commands::theory::theory(&ctx),
        Command::Oracle(_) => commands::theory::oracle(&ctx),
        Command::Fluct(_) => commands::simulate::fluct(&ctx),
        Command::Compare(args) => commands::compare::compare(&ctx, args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("srg: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
