use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fermion_cli::commands::{self, MetricSource};
use fermion_cli::CliError;

#[derive(Parser)]
#[command(
    name = "fermion",
    version,
    about = "Pseudo-classical fermion algebra toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the bracket, involution and deformation identity suites.
    CheckIdentities {
        #[arg(long)]
        dim: usize,
        /// `identity`, `random`, or a file of metric rows.
        #[arg(long, default_value = "identity")]
        metric: MetricSource,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Integrate the observable in a config file and write a CSV trajectory.
    Evolve { config: PathBuf, out: PathBuf },
    /// Tabulate the deviation of the Clifford product from the wedge product.
    Deform {
        config: PathBuf,
        /// Comma-separated non-negative values.
        #[arg(long = "hbar", allow_hyphen_values = true)]
        hbar: String,
        out: PathBuf,
    },
    /// Compare the blade engine with the dense tensor oracle on all blade pairs.
    OracleCompare {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::CheckIdentities {
            dim,
            metric,
            trials,
            seed,
            tol,
        } => commands::check_identities(dim, &metric, trials, seed, tol, &mut stdout),
        Command::Evolve { config, out } => commands::evolve(&config, &out).map(|()| true),
        Command::Deform { config, hbar, out } => {
            let hbars = commands::parse_hbar_list(&hbar)?;
            commands::deform(&config, &hbars, &out).map(|()| true)
        }
        Command::OracleCompare { dim, seed, tol } => {
            commands::oracle_compare(dim, seed, tol, &mut stdout)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
