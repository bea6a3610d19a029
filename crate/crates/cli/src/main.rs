mod config;
mod error;
mod presets;
mod report;
mod runner;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{Experiment, ExperimentConfig};
use error::CliError;
use report::{ExperimentReport, ScalarValue};

/// Experiment runner for path-sum amplitude distributions read by a
/// finite-accuracy pointer.
#[derive(Parser)]
#[command(name = "pathmeter", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment from a JSON config file.
    Run {
        /// Path to the config document.
        config: PathBuf,
        /// Output directory (default: PATHMETER_OUT or the current dir).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a named preset.
    Preset {
        /// Preset name; see `list-presets`.
        name: String,
        /// Output directory (default: PATHMETER_OUT or the current dir).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Override the RNG seed of stochastic presets.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// List the available presets.
    ListPresets,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run { config, out } => {
            let text = std::fs::read_to_string(&config)
                .map_err(|e| CliError::Config(format!("reading {}: {e}", config.display())))?;
            let parsed: ExperimentConfig = serde_json::from_str(&text)
                .map_err(|e| CliError::Config(format!("parsing {}: {e}", config.display())))?;
            execute(parsed, out)
        }
        Command::Preset { name, out, seed } => {
            let preset = presets::find(&name).ok_or_else(|| {
                CliError::Config(format!("unknown preset '{name}'; try list-presets"))
            })?;
            let mut config = (preset.build)();
            if let Some(seed_override) = seed {
                if let Experiment::Classical { seed, .. } = &mut config.experiment {
                    *seed = seed_override;
                }
            }
            execute(config, out)
        }
        Command::ListPresets => {
            for preset in presets::PRESETS {
                println!("{:<22} {}", preset.name, preset.description);
            }
            Ok(())
        }
    }
}

fn execute(config: ExperimentConfig, out: Option<PathBuf>) -> Result<(), CliError> {
    let out_dir = out
        .or_else(|| std::env::var_os("PATHMETER_OUT").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let report = runner::run(config, &out_dir)?;
    print_report(&report, &out_dir);
    Ok(())
}

fn print_report(report: &ExperimentReport, out_dir: &std::path::Path) {
    for scalar in &report.scalars {
        match scalar.value {
            ScalarValue::Real(x) => println!("{} = {} [{}]", scalar.name, x, scalar.unit),
            ScalarValue::Complex([re, im]) => {
                println!("{} = {} {} {}i [{}]", scalar.name, re, if im < 0.0 { "-" } else { "+" }, im.abs(), scalar.unit)
            }
        }
    }
    for table in &report.tables {
        println!("table {} -> {}", table.name, out_dir.join(&table.path).display());
    }
    println!("summary -> {}", out_dir.join("report.json").display());
}
