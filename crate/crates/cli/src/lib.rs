//! Command-line harness driving the radhydro experiments from config files.
//!
//! Every experiment writes `<kind>.record.json` into the output directory
//! plus, per `--format`, a CSV table, a JSON table dump and an SVG plot. All
//! outputs carry the SHA-256 of the consumed config section. Exit codes: 0
//! pass, 1 failed target, 2 usage or config error, 3 runtime abort.

pub mod commands;
pub mod config;
pub mod record;
pub mod svg;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use commands::{CliError, Format, Options};
use config::{ExperimentConfig, Kind};
use record::Provenance;

pub const THREADS_ENV: &str = "RADHYDRO_THREADS";

#[derive(Debug, Parser)]
#[command(name = "radhydro", version, about = "Linear and nonlinear experiments for radiation hydrodynamics perturbations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// TOML experiment configuration; defaults are used when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,

    /// Treat warnings as failures.
    #[arg(long, global = true)]
    pub strict: bool,

    /// Override the random seed of the nonlinear run.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Worker threads; falls back to RADHYDRO_THREADS, then all cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Table formats to emit besides the JSON record.
    #[arg(long, global = true, value_enum, value_delimiter = ',', default_value = "csv")]
    pub format: Vec<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Routh–Hurwitz certificates over a range of frequencies.
    SpectralSweep,
    /// Whole-space linear decay rates by radial quadrature.
    LinearDecay,
    /// Pseudo-spectral run of the full nonlinear system.
    NonlinearRun,
    /// Aggregate the records found in a directory.
    Report {
        /// Directory to scan; defaults to --out.
        dir: Option<PathBuf>,
    },
}

fn thread_count(cli: &Cli) -> Result<Option<usize>, CliError> {
    let n = match cli.threads {
        Some(n) => Some(n),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) if !v.trim().is_empty() => Some(
                v.trim()
                    .parse()
                    .map_err(|_| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {v:?}")))?,
            ),
            _ => None,
        },
    };
    match n {
        Some(0) => Err(CliError::Usage("thread count must be positive".into())),
        n => Ok(n),
    }
}

fn execute(cli: &Cli) -> Result<u8, CliError> {
    if let Some(n) = thread_count(cli)? {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Runtime(e.to_string()))?;
    }
    let mut formats = cli.format.clone();
    formats.sort();
    formats.dedup();
    let opts = Options {
        out: cli.out.clone(),
        strict: cli.strict,
        formats,
    };

    let kind = match &cli.command {
        Command::SpectralSweep => Kind::SpectralSweep,
        Command::LinearDecay => Kind::LinearDecay,
        Command::NonlinearRun => Kind::NonlinearRun,
        Command::Report { dir } => {
            let dir = dir.clone().unwrap_or_else(|| opts.out.clone());
            let (summary, text) = commands::report(&dir, &opts.out)?;
            print!("{text}");
            return Ok(summary.outcome.exit_code());
        }
    };

    let mut cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    cfg.check_kind(kind)?;
    if let Some(seed) = cli.seed {
        cfg.nonlinear_run.seed = seed;
    }
    let seed = (kind == Kind::NonlinearRun).then_some(cfg.nonlinear_run.seed);
    let provenance = Provenance::new(&cfg.canonical(kind), seed);

    let mut emission = match kind {
        Kind::SpectralSweep => commands::spectral_sweep(&cfg.spectral_sweep, provenance)?,
        Kind::LinearDecay => commands::linear_decay(&cfg.linear_decay, provenance)?,
        Kind::NonlinearRun => commands::nonlinear_run(&cfg.nonlinear_run, &cfg.run_options, provenance, &opts)?,
        Kind::Report => unreachable!(),
    };
    emission.record.decide(opts.strict);
    commands::emit(&emission, &opts)?;

    let r = &emission.record;
    let gating: Vec<_> = r.targets.iter().filter(|t| t.gating).collect();
    println!(
        "{}: {} ({}/{} targets) -> {}",
        r.kind,
        r.outcome.as_str(),
        gating.iter().filter(|t| t.passed).count(),
        gating.len(),
        opts.out.display()
    );
    for t in r.targets.iter().filter(|t| !t.passed) {
        let measured = t.measured.map_or_else(|| "-".to_string(), |v| format!("{v:e}"));
        println!("  {} {}: expected {}, measured {measured}", if t.gating { "FAIL" } else { "info" }, t.name, t.expected);
    }
    for w in &r.warnings {
        eprintln!("warning: {w}");
    }
    Ok(r.outcome.exit_code())
}

/// Parses `args` and runs; returns the process exit code.
pub fn main_with<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
