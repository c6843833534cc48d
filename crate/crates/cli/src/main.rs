mod commands;
mod output;
mod value;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::value::parse_real;

#[derive(Parser)]
#[command(
    name = "evoent",
    version,
    about = "Entanglement production of two-spin evolution operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Measure ε for one operator: U(t) of a spin model, or the multimode operator.
    Measure(MeasureArgs),
    /// Tabulate ε(t) on a uniform grid as CSV.
    Sweep(SweepArgs),
    /// Emit the data of a reference curve (1a–1d periodic, 2a–2d quasi-periodic).
    Figure(FigureArgs),
    /// Report periodicity and singular times of the Ising curve.
    Classify(ClassifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Ising,
    Heisenberg,
    Multimode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Analytic,
    Numerical,
    Both,
}

/// Values accept plain numbers and the forms `5/7`, `pi`, `2pi`, `sqrt(2)`.
#[derive(Args)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value = "ising")]
    pub model: Model,
    /// Zeeman field.
    #[arg(long = "h", value_parser = parse_real, default_value = "0", allow_hyphen_values = true)]
    pub h: f64,
    /// Longitudinal coupling.
    #[arg(long = "J", value_parser = parse_real, default_value = "1", allow_hyphen_values = true)]
    pub j: f64,
    /// Transverse coupling (ignored for ising).
    #[arg(long = "J1", value_parser = parse_real, default_value = "0", allow_hyphen_values = true)]
    pub j1: f64,
    #[arg(long = "log-base", value_parser = parse_real, default_value = "2")]
    pub log_base: f64,
}

#[derive(Args)]
pub struct MeasureArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub t: Option<f64>,
    /// Mode dimension of the multimode operator.
    #[arg(long = "M")]
    pub m: Option<usize>,
    /// Real part of the multimode coefficient.
    #[arg(long = "C", value_parser = parse_real, default_value = "1", allow_hyphen_values = true)]
    pub c: f64,
    /// Imaginary part of the multimode coefficient.
    #[arg(long = "C-im", value_parser = parse_real, default_value = "0", allow_hyphen_values = true)]
    pub c_im: f64,
}

#[derive(Args)]
pub struct OutputArgs {
    /// File path, or `stdout`.
    #[arg(long, default_value = "stdout")]
    pub output: String,
    /// Also write a gnuplot script plotting the CSV (needs a file `--output`).
    #[arg(long)]
    pub gnuplot: Option<String>,
}

#[derive(Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long = "t-max", value_parser = parse_real)]
    pub t_max: f64,
    #[arg(long, default_value_t = 2001)]
    pub steps: usize,
    /// Defaults to analytic for ising, numerical otherwise.
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct FigureArgs {
    /// One of 1a, 1b, 1c, 1d, 2a, 2b, 2c, 2d.
    pub id: String,
    #[arg(long = "t-max", value_parser = parse_real, default_value = "8pi")]
    pub t_max: f64,
    #[arg(long, default_value_t = 2001)]
    pub steps: usize,
    #[arg(long, value_enum, default_value = "analytic")]
    pub method: Method,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args)]
pub struct ClassifyArgs {
    #[arg(long = "h", value_parser = parse_real, allow_hyphen_values = true)]
    pub h: f64,
    #[arg(long = "J", value_parser = parse_real, default_value = "1", allow_hyphen_values = true)]
    pub j: f64,
    /// Horizon for listed singular times; defaults to 8π/|J|.
    #[arg(long = "t-max", value_parser = parse_real)]
    pub t_max: Option<f64>,
}

/// Failure classes mapped to exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Undefined(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<evoent_core::Error> for CliError {
    fn from(e: evoent_core::Error) -> Self {
        match e {
            evoent_core::Error::ZeroTrace { .. } => CliError::Undefined(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Measure(a) => commands::measure(&a),
        Command::Sweep(a) => commands::sweep(&a),
        Command::Figure(a) => commands::figure(&a),
        Command::Classify(a) => commands::classify(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Undefined(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
