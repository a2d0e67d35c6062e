//! Command-line front end. Every command is a thin wrapper over library
//! calls; the `caes` binary only forwards its arguments to [`main_with_args`].
//!
//! Exit codes: 0 success, 1 runtime or domain failure, 2 usage or
//! configuration error.

pub mod files;
pub mod output;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::CavernError;
use crate::models::ModelKind;
use crate::validate::{self, builtin_scenarios, Scenario, DEFAULT_INTERVALS, VALIDATION_DT};

pub use files::{load_params, load_scenario};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Runtime(_) => EXIT_RUNTIME,
        }
    }
}

impl From<CavernError> for CliError {
    fn from(e: CavernError) -> Self {
        match e {
            CavernError::Step { .. } | CavernError::TraceMismatch(_) => {
                CliError::Runtime(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "caes", version, about = "Compressed-air cavern simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one scenario with one model and write the trace.
    Simulate(SimulateArgs),
    /// Accuracy of a model against the reference oracle on each scenario.
    Validate(ValidateArgs),
    /// Final-state error of the bi-linear model over several step sizes.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Parameter file (JSON, bar/°C units).
    #[arg(long, env = "CAES_PARAMS")]
    pub params: Option<PathBuf>,
    /// Output file; written atomically. Defaults to stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

fn parse_model(s: &str) -> Result<ModelKind, String> {
    s.parse()
        .map_err(|e: crate::models::UnknownModel| e.to_string())
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Builtin scenario name or scenario file.
    #[arg(long)]
    pub scenario: String,
    #[arg(long, default_value = "bilinear", value_parser = parse_model)]
    pub model: ModelKind,
    /// Step size in seconds.
    #[arg(long, default_value_t = VALIDATION_DT)]
    pub dt: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Scenario to check; repeatable. Defaults to the three builtin scenarios.
    #[arg(long)]
    pub scenario: Vec<String>,
    #[arg(long, default_value = "bilinear", value_parser = parse_model)]
    pub model: ModelKind,
    #[arg(long, default_value_t = VALIDATION_DT)]
    pub dt: f64,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Scenario to sweep; repeatable. Defaults to the three builtin scenarios.
    #[arg(long)]
    pub scenario: Vec<String>,
    /// Comma-separated step sizes in seconds.
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_INTERVALS)]
    pub intervals: Vec<f64>,
    #[command(flatten)]
    pub common: Common,
}

fn scenarios(names: &[String]) -> Result<Vec<Scenario>, CliError> {
    if names.is_empty() {
        Ok(builtin_scenarios())
    } else {
        names.iter().map(|n| load_scenario(n)).collect()
    }
}

fn emit(common: &Common, contents: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => output::write_atomic(path, contents)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display()))),
        None => io::stdout()
            .write_all(contents.as_bytes())
            .map_err(|e| CliError::Runtime(e.to_string())),
    }
}

fn check_dt(dt: f64) -> Result<(), CliError> {
    if dt.is_finite() && dt > 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "--dt must be a positive number of seconds, got {dt}"
        )))
    }
}

pub fn simulate(args: &SimulateArgs) -> Result<(), CliError> {
    check_dt(args.dt)?;
    let params = load_params(args.common.params.as_deref())?;
    let scenario = load_scenario(&args.scenario)?;
    scenario.check_dt(args.dt)?;
    let trace = validate::run(&scenario, args.model, args.dt, &params)?;
    for w in &trace.warnings {
        eprintln!("warning: t = {} s: {}", w.t, w.message);
    }
    let text = match args.common.format {
        Format::Csv => output::trace_csv(&trace),
        Format::Json => output::json(&trace),
    };
    emit(&args.common, &text)
}

pub fn validate(args: &ValidateArgs) -> Result<(), CliError> {
    check_dt(args.dt)?;
    let params = load_params(args.common.params.as_deref())?;
    let scenarios = scenarios(&args.scenario)?;
    for s in &scenarios {
        s.check_dt(args.dt)?;
    }
    let table = validate::accuracy_table(&scenarios, args.model, args.dt, &params)?;
    let text = match args.common.format {
        Format::Csv => output::accuracy_table_csv(&table),
        Format::Json => output::json(&table),
    };
    if args.common.out.is_some() {
        print!("{table}");
    }
    emit(&args.common, &text)
}

pub fn sweep(args: &SweepArgs) -> Result<(), CliError> {
    for &dt in &args.intervals {
        check_dt(dt)?;
    }
    let params = load_params(args.common.params.as_deref())?;
    let scenarios = scenarios(&args.scenario)?;
    let table = validate::sweep_table(&scenarios, &args.intervals, &params)?;
    let text = match args.common.format {
        Format::Csv => output::sweep_table_csv(&table),
        Format::Json => output::json(&table),
    };
    if args.common.out.is_some() {
        print!("{table}");
    }
    emit(&args.common, &text)
}

pub fn execute(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Validate(a) => validate(a),
        Command::Sweep(a) => sweep(a),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn parses_flags() {
        let cli = Cli::try_parse_from([
            "caes",
            "simulate",
            "--scenario",
            "idle",
            "--model",
            "exact",
            "--dt",
            "3600",
        ])
        .unwrap();
        match cli.command {
            Command::Simulate(a) => {
                assert_eq!(a.model, ModelKind::ExactWithHeatTransfer);
                assert_eq!(a.dt, 3600.0);
                assert_eq!(a.common.format, Format::Csv);
            }
            _ => panic!(),
        }
        let cli = Cli::try_parse_from(["caes", "sweep", "--intervals", "60,600"]).unwrap();
        match cli.command {
            Command::Sweep(a) => assert_eq!(a.intervals, [60.0, 600.0]),
            _ => panic!(),
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(main_with_args(["caes", "simulate"]), EXIT_USAGE);
        assert_eq!(
            main_with_args([
                "caes",
                "simulate",
                "--scenario",
                "idle",
                "--model",
                "newton"
            ]),
            EXIT_USAGE
        );
        assert_eq!(
            main_with_args(["caes", "simulate", "--scenario", "idle", "--dt", "7"]),
            EXIT_USAGE
        );
        assert_eq!(main_with_args(["caes", "--help"]), EXIT_OK);
    }
}
