use std::path::PathBuf;
use std::process::ExitCode;

use aniso_mhd_cli::commands;
use aniso_mhd_cli::{CliError, RunConfig};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "aniso-mhd", version, about = "Simulations and audits for 2D non-resistive MHD near a uniform field")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct RunArgs {
    /// Config file in `key = value` form; omitted keys take their defaults.
    config: Option<PathBuf>,
    /// Override the config's output_path.
    #[arg(short, long)]
    out: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate, write timeseries.csv and summary.json.
    Simulate(RunArgs),
    /// Multiplier bounds and oracle comparison.
    PropagatorAudit(RunArgs),
    /// Energy-identity residual at dt and dt/2.
    EnergyAudit(RunArgs),
    /// Interpolation ratio over a random corpus.
    InterpAudit(RunArgs),
    /// One simulation per entry of sweep_epsilons.
    Sweep(RunArgs),
    /// Print the default configuration.
    PrintDefaults,
}

fn load(args: &RunArgs) -> Result<RunConfig, CliError> {
    let mut cfg = match &args.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|source| CliError::Io { path: p.display().to_string(), source })?;
            RunConfig::parse(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(o) = &args.out {
        cfg.output_path = o.clone();
        cfg.validate()?;
    }
    Ok(cfg)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::PrintDefaults => {
            print!("{}", RunConfig::default().serialize());
            Ok(())
        }
        Command::Simulate(a) => commands::cmd_simulate(&load(&a)?),
        Command::PropagatorAudit(a) => commands::cmd_propagator_audit(&load(&a)?),
        Command::EnergyAudit(a) => commands::cmd_energy_audit(&load(&a)?),
        Command::InterpAudit(a) => commands::cmd_interp_audit(&load(&a)?),
        Command::Sweep(a) => commands::cmd_sweep(&load(&a)?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("aniso-mhd: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
