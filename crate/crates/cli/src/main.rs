//! `entsep` — separability analysis, tailored factorizations, witnesses,
//! teleportation traces, and Bell-diagonal geometry from the command line.
//!
//! Exit codes: 0 success, 2 invalid input, 3 numerical non-convergence.

mod commands;
mod files;

use clap::{Parser, Subcommand, ValueEnum};
use entsep::Tolerances;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl ToString) -> Self {
        Self {
            code: 2,
            message: message.to_string(),
        }
    }

    pub fn from_lib(e: entsep::Error) -> Self {
        let code = match e {
            entsep::Error::NoConvergence(_) => 3,
            _ => 2,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser)]
#[command(name = "entsep", version, about = "Entanglement and separability toolkit")]
struct Cli {
    /// Seed for all randomized computations (printed by randomized commands)
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format (csv is geometry-only)
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Override a named tolerance, e.g. --tol-override decision=1e-8
    #[arg(long = "tol-override", global = true, value_name = "NAME=VALUE")]
    tol_overrides: Vec<String>,

    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    output: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full separability report for a density-matrix file
    Analyze {
        /// Path to a state file ({dims, matrix of [re,im] pairs, label?})
        #[arg(long)]
        input: String,
    },
    /// Construct a factorization in which the input pure state has
    /// prescribed Schmidt coefficients
    Tailor {
        /// Path to a pure-state file ({dims, amplitudes, label?})
        #[arg(long)]
        input: String,
        /// Comma-separated Schmidt coefficients, e.g. 0.6,0.8
        #[arg(long)]
        lambdas: String,
        /// Optional path to a unitary file used instead of the constructed one
        #[arg(long)]
        unitary: Option<String>,
    },
    /// Nearest-separable search plus the optimal witness built from it
    Witness {
        #[arg(long)]
        input: String,
        /// Iteration cap for the conditional-gradient search
        #[arg(long, default_value_t = 2000)]
        max_iter: usize,
    },
    /// Simulate the teleportation protocol
    Teleport {
        /// "up", "down", or a path to a pure-state file with dims (d, 1)
        #[arg(long)]
        input_state: String,
        /// "phi+", "phi-", "psi+", "psi-", "canonical-N", or a pure-state file
        #[arg(long, default_value = "psi-")]
        resource: String,
        /// "all", "random", or an outcome index
        #[arg(long, default_value = "all")]
        outcome: String,
    },
    /// Sample and classify the Bell-diagonal state family
    Geometry {
        /// Grid points per axis over [-1, 1]^3
        #[arg(long)]
        resolution: Option<usize>,
        /// Classify a single point "cx,cy,cz" instead of a grid
        #[arg(long)]
        point: Option<String>,
    },
    /// Run the built-in golden suite of worked examples
    PaperExamples,
}

fn tolerances_from(overrides: &[String]) -> Result<Tolerances, CliError> {
    let mut tol = Tolerances::default();
    for spec in overrides {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| CliError::invalid(format!("expected NAME=VALUE, got {spec:?}")))?;
        let value: f64 = value
            .parse()
            .map_err(|e| CliError::invalid(format!("bad tolerance value {value:?}: {e}")))?;
        tol.set(name.trim(), value).map_err(CliError::invalid)?;
    }
    Ok(tol)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let tol = tolerances_from(&cli.tol_overrides)?;
    let output = cli.output.as_deref();
    match &cli.command {
        Command::Analyze { input } => commands::analyze(input, output, cli.format, &tol),
        Command::Tailor {
            input,
            lambdas,
            unitary,
        } => commands::tailor(input, lambdas, unitary.as_deref(), output, cli.format, &tol),
        Command::Witness { input, max_iter } => {
            commands::witness(input, output, cli.format, cli.seed, *max_iter, &tol)
        }
        Command::Teleport {
            input_state,
            resource,
            outcome,
        } => commands::teleport_cmd(
            input_state,
            resource,
            outcome,
            output,
            cli.format,
            cli.seed,
            &tol,
        ),
        Command::Geometry { resolution, point } => {
            commands::geometry(*resolution, point.as_deref(), output, cli.format, &tol)
        }
        Command::PaperExamples => commands::paper_examples(&tol),
    }
}

fn main() -> std::process::ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::ExitCode::from(e.code)
        }
    }
}
