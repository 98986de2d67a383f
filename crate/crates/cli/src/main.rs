//! `optowork`: parameter sweeps and figure presets for two optomechanical
//! entanglement and work-extraction models, plus a numerical self-check
//! suite.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use optowork::config::SweepConfig;
use optowork::dataset::Dataset;
use optowork::error::CliError;
use optowork::presets::{preset_config, DEFAULT_POINTS};
use optowork::selfcheck::{render_report, run_self_check};
use optowork::sweep::{run_sweep, SweepOptions};

#[derive(Parser)]
#[command(
    name = "optowork",
    version,
    about = "Entanglement and extractable work of two optomechanical models",
    long_about = "Computes logarithmic negativity and measurement-based \
                  work-extraction quantities for two optomechanical models: the \
                  steady state of two cavities sharing a squeezed drive (system 1) \
                  and the closed-form evolution of a vibrating-mirror cavity \
                  (system 2). Results are written as CSV with a JSON metadata \
                  sidecar."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a built-in figure-reproduction sweep
    Preset {
        /// Preset id (fig3, fig4, fig5, fig6, fig7, fig8, fig9, fig10, fig11)
        id: String,
        /// Output CSV path (a .meta.json sidecar is written next to it)
        #[arg(long)]
        out: PathBuf,
        /// Points per curve
        #[arg(long, default_value_t = DEFAULT_POINTS)]
        points: usize,
        /// Scale factor for all work columns (bath temperature in units of
        /// the desired energy scale; 1 keeps k_B*T units)
        #[arg(long, default_value_t = 1.0)]
        kbt: f64,
    },
    /// Run a sweep described by a config file
    Sweep {
        /// Config file (flat key=value lines, # comments)
        #[arg(long)]
        config: PathBuf,
        /// Output CSV path; overrides output_path from the config
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the numerical self-check suite
    Check,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("optowork: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Preset {
            id,
            out,
            points,
            kbt,
        } => {
            let (config, notes) = preset_config(&id, points)?;
            let options = SweepOptions {
                kbt,
                preset: Some(id),
                notes,
            };
            let dataset = run_sweep(&config, &options)?;
            write_dataset(&dataset, &out)
        }
        Command::Sweep { config, out } => {
            let config = SweepConfig::from_file(&config)?;
            let out = out.or_else(|| config.output_path.clone()).ok_or_else(|| {
                CliError::Config(
                    "no output path: pass --out or set output_path in the config".into(),
                )
            })?;
            let dataset = run_sweep(&config, &SweepOptions::default())?;
            write_dataset(&dataset, &out)
        }
        Command::Check => {
            let (report, all_passed) = render_report(&run_self_check());
            print!("{report}");
            if all_passed {
                Ok(())
            } else {
                Err(CliError::CheckFailed(count_failures(&report)))
            }
        }
    }
}

fn write_dataset(dataset: &Dataset, out: &std::path::Path) -> Result<(), CliError> {
    dataset.emit_csv(out)?;
    println!(
        "wrote {} ({} rows, {} columns)",
        out.display(),
        dataset.rows.len(),
        dataset.columns.len()
    );
    Ok(())
}

fn count_failures(report: &str) -> usize {
    report.lines().filter(|l| l.starts_with("[FAIL]")).count()
}
