use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use vaporfront_cli::{run, scenario::Scenario, sweep, CliError, SweepParam};

/// Condensable-vapor injection into a slit-pore medium: batch simulation
/// driver. Exit codes: 0 pass, 1 verification failure, 2 input error,
/// 3 numeric failure.
#[derive(Parser)]
#[command(name = "vaporfront", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario: field tables, trajectories and the verification
    /// report.
    Run {
        /// Scenario file (key = value text).
        #[arg(long)]
        scenario: PathBuf,
        /// Directory for the output tables.
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        /// Suppress progress output.
        #[arg(long)]
        quiet: bool,
    },
    /// Run the scenario once per parameter value and combine the results.
    Sweep {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long, default_value = "out")]
        out_dir: PathBuf,
        /// Parameter to vary: theta_E, p_E, q, lambda_i or K.
        #[arg(long)]
        param: String,
        /// Comma-separated list of values.
        #[arg(long)]
        values: String,
        #[arg(long)]
        quiet: bool,
    },
    /// Validate a scenario file and report the arrest-bound applicability.
    Check {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        quiet: bool,
    },
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

fn dispatch() -> Result<ExitCode, CliError> {
    match Cli::parse().command {
        Command::Run {
            scenario,
            out_dir,
            quiet,
        } => {
            let scn = Scenario::load(&scenario)?;
            let report = run(&scn, &out_dir, quiet)?;
            Ok(if report.verdict() {
                ExitCode::SUCCESS
            } else if report.has_numeric_failure() {
                ExitCode::from(3)
            } else {
                ExitCode::from(1)
            })
        }
        Command::Sweep {
            scenario,
            out_dir,
            param,
            values,
            quiet,
        } => {
            let scn = Scenario::load(&scenario)?;
            let param = SweepParam::from_str(&param)?;
            let values = parse_values(&values)?;
            let report = sweep(&scn, param, &values, &out_dir, quiet)?;
            Ok(if report.all_passed() {
                ExitCode::SUCCESS
            } else if report.any_numeric_failure() {
                ExitCode::from(3)
            } else {
                ExitCode::from(1)
            })
        }
        Command::Check { scenario, quiet } => {
            let scn = Scenario::load(&scenario)?;
            if !quiet {
                println!("scenario ok: {} z-level(s)", scn.sim.z_levels.len());
                let plateau = vaporfront::front::plateau_fraction(&scn.fluid, &scn.bc);
                println!("plateau fraction c = {plateau}");
                for &z in &scn.sim.z_levels {
                    let bound = vaporfront::front::arrest_bound(&scn.fluid, &scn.bc, z)
                        .expect("validated z");
                    if bound.applicable {
                        println!("z = {z}: arrest bound {} m", bound.position);
                    } else {
                        println!("z = {z}: arrest bound not applicable");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn parse_values(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|part| {
            part.trim().parse::<f64>().map_err(|_| CliError::Validation {
                message: format!("--values must be a comma-separated number list, got `{part}`"),
            })
        })
        .collect()
}
