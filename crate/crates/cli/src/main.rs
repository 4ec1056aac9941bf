use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nonrecip_cli::{run, CliError, Mode, RunConfig};

/// Single-photon spectra of a parametrically driven optomechanical ring cavity.
#[derive(Parser)]
#[command(name = "nonrecip", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scattering probabilities and output spectra on the configured grid.
    Spectrum(Common),
    /// One spectrum per value of the [scan] variable, plus a summary.
    Sweep(Common),
    /// Eigenvalues of the drift matrix.
    Stability(Common),
    /// Isolation points, reciprocity threshold and thermal tolerance.
    Threshold(Common),
    /// Time-domain integration against the frequency-domain transfer rows.
    OracleCheck(Common),
    /// Use the `mode` given in the configuration file.
    Run(Common),
}

#[derive(Args)]
struct Common {
    /// TOML run configuration; built-in defaults when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Worker threads.
    #[arg(long, env = "NONRECIP_THREADS")]
    threads: Option<usize>,
    /// Override a configuration value; bare keys name parameters.
    #[arg(long = "override", value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

fn execute(mode: Option<Mode>, common: Common) -> Result<Vec<PathBuf>, CliError> {
    if let Some(n) = common.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;
    }
    let config = match &common.config {
        Some(path) => RunConfig::load(path, &common.overrides)?,
        None => RunConfig::from_toml_with_overrides("", &common.overrides)?,
    };
    let mode = mode
        .or(config.mode)
        .ok_or_else(|| CliError::Config("`run` needs `mode` in the configuration".into()))?;
    run(mode, &config, &common.out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (mode, common) = match cli.command {
        Command::Spectrum(c) => (Some(Mode::Spectrum), c),
        Command::Sweep(c) => (Some(Mode::Sweep), c),
        Command::Stability(c) => (Some(Mode::Stability), c),
        Command::Threshold(c) => (Some(Mode::Threshold), c),
        Command::OracleCheck(c) => (Some(Mode::OracleCheck), c),
        Command::Run(c) => (None, c),
    };
    match execute(mode, common) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("nonrecip: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
