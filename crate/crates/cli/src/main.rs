//! `klm`: runs the KLM-state preparation protocols and their analyses from
//! JSON configs.
//!
//! Exit codes: 0 ok, 1 invariant failure, 2 config error, 3 numerical
//! failure, 4 regime violation.

mod commands;
mod config;
mod error;
mod validate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use config::{EngineName, Overrides, ReportConfig, SchemeOneConfig, SchemeTwoConfig, Source, SweepConfig};
use error::{CliError, CliResult};

#[derive(Parser, Debug)]
#[command(name = "klm", version, about = "Simulate KLM ancilla-state preparation with charge qutrits")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// JSON run config; defaults apply when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Seed for sampled measurements and validation draws.
    #[arg(long, global = true, value_name = "U64")]
    seed: Option<u64>,

    /// Output file; standard output when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    engine: Option<EngineName>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Command {
    /// Run the ensemble-mode preparation and write a JSON report.
    Scheme1,
    /// Grow an n-qubit register with conditional-phase gates.
    Scheme2,
    /// Fidelity over a grid of two timing errors, as CSV.
    Sweep,
    /// Run the built-in invariant suite.
    Validate,
    /// Feasibility report for the reference devices.
    Report,
}

fn run(cli: &Cli) -> CliResult<()> {
    let ov = Overrides {
        seed: cli.seed,
        engine: cli.engine,
    };
    let out = cli.out.as_deref();
    match cli.command {
        Command::Scheme1 => {
            let src = Source::load(cli.config.as_deref())?;
            let cfg = SchemeOneConfig::resolve(&src, ov)?;
            commands::emit(out, &commands::scheme1(&src, &cfg)?)
        }
        Command::Scheme2 => {
            let src = Source::load(cli.config.as_deref())?;
            let cfg = SchemeTwoConfig::resolve(&src, ov)?;
            commands::emit(out, &commands::scheme2(&src, &cfg)?)
        }
        Command::Sweep => {
            let src = Source::load(cli.config.as_deref())?;
            let cfg = SweepConfig::resolve(&src, ov)?;
            let (csv, sidecar) = commands::sweep_csv(&src, &cfg)?;
            commands::emit(out, &csv)?;
            match out {
                Some(path) => commands::emit(Some(&commands::sidecar_path(path)), &sidecar),
                None => {
                    eprint!("{sidecar}");
                    Ok(())
                }
            }
        }
        Command::Validate => {
            if cli.config.is_some() || cli.engine.is_some() {
                return Err(CliError::Config("validate takes no --config or --engine".into()));
            }
            let checks = validate::run_suite(cli.seed.unwrap_or(0));
            commands::emit(out, &validate::table(&checks))?;
            match checks.iter().filter(|c| !c.passed).count() {
                0 => Ok(()),
                n => Err(CliError::Validation(n)),
            }
        }
        Command::Report => {
            if cli.engine.is_some() {
                return Err(CliError::Config("report takes no --engine".into()));
            }
            let src = Source::load(cli.config.as_deref())?;
            let cfg = ReportConfig::resolve(&src)?;
            commands::emit(out, &commands::report(&src, &cfg)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("klm: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
