//! Command-line front end: reports, synthetic spectra, parameter sweeps, and
//! feasibility verdicts from a scenario file.
//!
//! Exit codes: 0 success, 1 configuration or validation error, 2 physics
//! argument/domain error, 3 numerical failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use wgm_upconverter::scenario::{
    emit_spectrum, load_scenario, render_feasibility, run_feasibility, run_report, run_sweep,
    GridSpec, SpectrumKind, SweepSpec,
};
use wgm_upconverter::Error;

#[derive(Parser)]
#[command(name = "wgm-upconverter", version, about = "Design and analysis toolkit for a whispering-gallery sub-THz upconverter")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigArg {
    /// Scenario file (TOML).
    #[arg(long)]
    config: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpectrumKindArg {
    /// Resonance transmission dip versus laser detuning.
    Transmission,
    /// Optical output spectrum with the pump and both sidebands.
    Sidebands,
}

#[derive(Subcommand)]
enum Command {
    /// Compute every derived quantity and compare against the references.
    Report {
        #[command(flatten)]
        config: ConfigArg,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a synthetic spectrum as CSV.
    Spectrum {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long, value_enum)]
        kind: SpectrumKindArg,
        /// Full grid span in Hz, centered on the resonance or the pump.
        #[arg(long)]
        span_hz: f64,
        /// Number of grid points.
        #[arg(long)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Sweep one numeric scenario key and tabulate every report scalar.
    Sweep {
        #[command(flatten)]
        config: ConfigArg,
        /// Axis spec: key=lo:hi:lin|log:count
        #[arg(long)]
        vary: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print the photon-counting feasibility budget.
    Feasibility {
        #[command(flatten)]
        config: ConfigArg,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Config(_) | Error::Io(_) => 1,
        Error::InvalidArgument(_) | Error::Domain(_) => 2,
        Error::Numeric(_) => 3,
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Report { config, out } => {
            let scenario = load_scenario(&config.config)?;
            let report = run_report(&scenario)?;
            let text = report.render();
            match out {
                Some(path) => std::fs::write(path, text)?,
                None => print!("{text}"),
            }
        }
        Command::Spectrum {
            config,
            kind,
            span_hz,
            points,
            out,
        } => {
            let scenario = load_scenario(&config.config)?;
            let kind = match kind {
                SpectrumKindArg::Transmission => SpectrumKind::Transmission,
                SpectrumKindArg::Sidebands => SpectrumKind::OutputSpectrum,
            };
            let trace = emit_spectrum(&scenario, kind, GridSpec { span_hz, points })?;
            if let Some(warning) = &trace.warning {
                eprintln!("warning: {warning}");
            }
            std::fs::write(out, trace.to_csv())?;
        }
        Command::Sweep { config, vary, out } => {
            let scenario = load_scenario(&config.config)?;
            let spec = SweepSpec::parse(&vary)?;
            let csv = run_sweep(&scenario, &spec)?;
            std::fs::write(out, csv)?;
        }
        Command::Feasibility { config } => {
            let scenario = load_scenario(&config.config)?;
            let budget = run_feasibility(&scenario)?;
            print!("{}", render_feasibility(&budget));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
