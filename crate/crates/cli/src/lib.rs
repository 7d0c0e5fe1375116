//! Command-line front end: reads matrix files, dispatches to the chosen
//! determinant method, verifies identities and drives the benchmark.
//!
//! Exit codes are stable: 0 success, 1 identity-verification failure,
//! 2 user or input error, 3 internal invariant breach.

pub mod matrix_file;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use condense_core::bench::{run_bench_with, write_report, BenchConfig, BenchError};
use condense_core::oracle::COFACTOR_MAX_ORDER;
use condense_core::trace::TraceDocument;
use condense_core::verify::verify_identities;
use condense_core::{
    det_bareiss, det_cofactor, det_condensation, det_gauss_rational, CondenseError, Execution,
    Float, Integer, Matrix, MatrixError, OracleError, PivotStrategy, Rational, Scalar,
};

use matrix_file::{parse_matrix, MatrixFileError};

#[derive(Debug, Parser)]
#[command(
    name = "condense",
    version,
    about = "Exact determinants by pivot condensation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a determinant.
    Det {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Condense)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = ScalarArg::Rational)]
        scalar: ScalarArg,
        #[arg(long, value_enum, default_value_t = PivotArg::FirstNonzero)]
        pivot: PivotArg,
        /// Write the condensation trace as JSON (condense method only).
        #[arg(long, value_name = "PATH")]
        trace: Option<PathBuf>,
    },
    /// Check the condensation identities on a matrix of order >= 3.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = ScalarArg::Rational)]
        scalar: ScalarArg,
    },
    /// Run the seeded benchmark corpus and write the report.
    Bench {
        config: PathBuf,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        /// Override the corpus seed from the config.
        #[arg(long)]
        seed: Option<u64>,
        /// Run trials on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Condense,
    Cofactor,
    Bareiss,
    Gauss,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScalarArg {
    Rational,
    Integer,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PivotArg {
    FirstNonzero,
    MaxMagnitude,
}

impl From<PivotArg> for PivotStrategy {
    fn from(arg: PivotArg) -> Self {
        match arg {
            PivotArg::FirstNonzero => PivotStrategy::FirstNonzero,
            PivotArg::MaxMagnitude => PivotStrategy::MaxMagnitude,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("identity verification failed")]
    VerificationFailed,
    #[error("internal error (please report): {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::VerificationFailed => 1,
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

impl From<CondenseError> for CliError {
    fn from(e: CondenseError) -> Self {
        match e {
            CondenseError::Matrix(_)
            | CondenseError::TooSmall(_)
            | CondenseError::InvalidPair { .. } => CliError::Input(e.to_string()),
            CondenseError::Oracle(inner) => inner.into(),
            CondenseError::Divisibility { .. } => CliError::Internal(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::TooLargeForCofactor(_) | OracleError::Matrix(_) => {
                CliError::Input(e.to_string())
            }
            OracleError::Division(_) => CliError::Internal(e.to_string()),
        }
    }
}

impl From<BenchError> for CliError {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Config(_) | BenchError::Incompatible { .. } => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load<S: Scalar>(path: &Path) -> Result<Matrix<S>, CliError> {
    let text = read(path)?;
    parse_matrix(&text)
        .map_err(|e: MatrixFileError| CliError::Input(format!("{}: {e}", path.display())))
}

fn square_order<S: Scalar>(m: &Matrix<S>) -> Result<usize, CliError> {
    m.order()
        .map_err(|e: MatrixError| CliError::Input(e.to_string()))
}

/// Runs a parsed command line, printing results to `out`.
pub fn run(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    match cli.command {
        Command::Det {
            file,
            method,
            scalar,
            pivot,
            trace,
        } => {
            if trace.is_some() && method != MethodArg::Condense {
                return Err(CliError::Input(
                    "--trace is only available with --method condense".into(),
                ));
            }
            let args = DetArgs {
                method,
                strategy: pivot.into(),
                trace: trace.as_deref(),
            };
            let value = match scalar {
                ScalarArg::Rational => cmd_det::<Rational>(&file, &args)?,
                ScalarArg::Integer => cmd_det::<Integer>(&file, &args)?,
                ScalarArg::Float => cmd_det::<Float>(&file, &args)?,
            };
            emit(out, &value)
        }
        Command::Verify { file, scalar } => match scalar {
            ScalarArg::Rational => cmd_verify::<Rational>(&file, out),
            ScalarArg::Integer => cmd_verify::<Integer>(&file, out),
            ScalarArg::Float => cmd_verify::<Float>(&file, out),
        },
        Command::Bench {
            config,
            out: report_path,
            seed,
            sequential,
        } => {
            let exec = if sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            let count = cmd_bench(&config, &report_path, seed, exec)?;
            emit(
                out,
                &format!("wrote {count} records to {}", report_path.display()),
            )
        }
    }
}

fn emit(out: &mut impl Write, line: &str) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|e| CliError::Internal(format!("writing output: {e}")))
}

struct DetArgs<'a> {
    method: MethodArg,
    strategy: PivotStrategy,
    trace: Option<&'a Path>,
}

/// Computes the determinant of the matrix in `file` and returns its text form.
fn cmd_det<S: Scalar>(file: &Path, args: &DetArgs<'_>) -> Result<String, CliError> {
    let m: Matrix<S> = load(file)?;
    let n = square_order(&m)?;
    let value = match args.method {
        MethodArg::Condense => {
            let result = det_condensation(&m, args.strategy)?;
            if let Some(path) = args.trace {
                write(
                    path,
                    &TraceDocument::from_result(&result, n, args.strategy).to_json(),
                )?;
            }
            result.value
        }
        MethodArg::Cofactor => {
            if n > COFACTOR_MAX_ORDER {
                return Err(OracleError::TooLargeForCofactor(n).into());
            }
            det_cofactor(&m)?
        }
        MethodArg::Bareiss => det_bareiss(&m)?,
        MethodArg::Gauss => return gauss_text(&m),
    };
    Ok(value.to_text())
}

/// Rational Gaussian elimination on an exact input; float input is refused
/// because the method is defined over exact rationals.
fn gauss_text<S: Scalar>(m: &Matrix<S>) -> Result<String, CliError> {
    if !S::EXACT {
        return Err(CliError::Input(format!(
            "--method gauss needs exact scalars, not {}",
            S::KIND.name()
        )));
    }
    let entries = m
        .entries()
        .iter()
        .map(|x| Rational::parse(&x.to_text()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let exact = Matrix::from_vec(m.rows(), m.cols(), entries)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let value = det_gauss_rational(&exact)?;
    // Integer input has an integer determinant; printing through `S` keeps
    // the output identical to the other methods.
    let typed = S::parse(&value.to_text()).map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(typed.to_text())
}

fn cmd_verify<S: Scalar>(file: &Path, out: &mut impl Write) -> Result<(), CliError> {
    let m: Matrix<S> = load(file)?;
    square_order(&m)?;
    let report = verify_identities(&m)?;
    for check in &report.checks {
        let status = if check.passed() { "PASS" } else { "FAIL" };
        emit(
            out,
            &format!(
                "{status} {} checked={} failed={} worst_residual={:e}",
                check.name, check.checked, check.failed, check.worst_residual
            ),
        )?;
    }
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::VerificationFailed)
    }
}

fn cmd_bench(
    config: &Path,
    out: &Path,
    seed: Option<u64>,
    exec: Execution,
) -> Result<usize, CliError> {
    let mut cfg = BenchConfig::from_toml(&read(config)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", config.display())))?;
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    let records = run_bench_with(&cfg, exec)?;
    write(out, &write_report(&records))?;
    Ok(records.len())
}

/// Parses the process arguments, runs the command and maps the outcome to
/// an exit code, reporting errors on stderr.
pub fn main_with_args() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("condense: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
