//! `mfac`: deterministic closed-loop simulation and z-domain analysis of
//! incremental adaptive control with disturbance compensation.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mfac_cli::commands;

#[derive(Parser)]
#[command(
    name = "mfac",
    about = "Simulate and analyze incremental adaptive control loops with disturbance compensation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one experiment from a JSON config; writes a CSV trace and a JSON
    /// summary sidecar.
    Simulate {
        /// Path to the experiment config (JSON).
        #[arg(long)]
        config: PathBuf,
        /// Override a config key, e.g. --set lambda=0.5 (repeatable).
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Output directory (default: $MFAC_OUT_DIR or the cwd).
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Exit with code 3 if the run diverges.
        #[arg(long)]
        fail_on_divergence: bool,
    },
    /// Frozen-coefficient closed-loop analysis: characteristic polynomial,
    /// poles, stability, and the ramp steady-state error where applicable.
    Analyze {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Snapshot step for plants with state-dependent coefficients.
        #[arg(long)]
        at_step: Option<usize>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Run the config once per weight and tabulate the error statistics.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Comma-separated weights, e.g. --lambdas 0,1.5,3
        #[arg(long)]
        lambdas: String,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Reproduce the ramp-disturbance steady-error table.
    Table1 {
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate {
            config,
            set,
            out_dir,
            fail_on_divergence,
        } => commands::simulate(&config, &set, out_dir, fail_on_divergence),
        Command::Analyze {
            config,
            set,
            at_step,
            out_dir,
        } => commands::analyze(&config, &set, at_step, out_dir),
        Command::Sweep {
            config,
            set,
            lambdas,
            out_dir,
        } => commands::sweep(&config, &set, &lambdas, out_dir),
        Command::Table1 { out_dir } => commands::table1(out_dir),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
