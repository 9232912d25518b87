//! Command-line front end: argument parsing, dispatch and exit codes.

mod commands;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;
use vermacas::{parse_scalar, Scalar};

pub use report::{Check, RunReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MODULE_UNDEFINED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    /// `[L_i, L_j] − (i − j)L_{i+j}`.
    #[value(name = "L")]
    L,
    /// `[J_i, J_j]`.
    #[value(name = "J")]
    J,
    /// `[L_i, J_j] + j·J_{i+j}`.
    #[value(name = "mixed")]
    Mixed,
}

#[derive(Debug, Parser)]
#[command(name = "vermacas", version, about = "Exact checks for q_R-conformal generators on Verma modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// sl2 table, D/F relations, Berezin relations, tensor laws, Witt half-planes and f(D) laws.
    VerifyExact(VerifyArgs),
    /// Defect matrix, Hilbert–Schmidt partial sums and finite-rank analysis.
    Defect(DefectArgs),
    /// Weight-offset expansion of the (i, −i) defect and the implied central charge.
    CentralCharge(CentralArgs),
    /// Gelfand–Fuchs cocycle checks, Virasoro normalization and the real-basis table.
    Cocycle(CocycleArgs),
    /// Matrix of one generator or defect in the monomial basis.
    ExportMatrix(ExportArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Concrete weight `p/q`; the checks run over Q(h) when omitted.
    #[arg(long, value_parser = rational)]
    pub h: Option<Scalar>,

    /// Largest |n| in the tensor relations.
    #[arg(long, default_value_t = 8)]
    pub max_index: i64,

    /// Largest index on each Witt half-plane.
    #[arg(long, default_value_t = 5)]
    pub halfplane_bound: i64,

    #[arg(long, hide = true)]
    pub inject_failure: bool,
}

#[derive(Debug, Args)]
pub struct DefectArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub i: i64,

    #[arg(long, allow_hyphen_values = true)]
    pub j: i64,

    #[arg(long, value_parser = rational)]
    pub h: Scalar,

    #[arg(long, value_enum, default_value_t = FamilyArg::L)]
    pub family: FamilyArg,

    /// Strictly increasing truncation sizes.
    #[arg(long, value_delimiter = ',', default_value = "100,200,400,800")]
    pub truncations: Vec<usize>,

    /// First basis index of the submodule `span{z^n : n ≥ start}`.
    #[arg(long, default_value_t = 0)]
    pub start: usize,
}

#[derive(Debug, Args)]
pub struct CentralArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub i: i64,

    #[arg(long, value_parser = rational)]
    pub h0: Scalar,

    #[arg(long, default_value_t = 1)]
    pub order: usize,
}

#[derive(Debug, Args)]
pub struct CocycleArgs {
    /// Randomized triples for the cocycle identity.
    #[arg(long, default_value_t = 100)]
    pub triples: usize,

    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Largest |j| for the exhaustive basis checks and the random draws.
    #[arg(long, default_value_t = 4)]
    pub max_index: i64,

    /// Compare the tabulated real-basis brackets with the Fourier computation.
    #[arg(long)]
    pub table_compare: bool,
}

#[derive(Debug, Args)]
pub struct ExportArgs {
    /// `L<k>`, `J<k>`, `l<k>` (k ∈ {-1,0,1}), `D`, `F` or `defect`.
    #[arg(long)]
    pub op: String,

    #[arg(long, value_parser = rational)]
    pub h: Scalar,

    #[arg(long, default_value_t = 16)]
    pub size: usize,

    #[arg(long, allow_hyphen_values = true)]
    pub i: Option<i64>,

    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<i64>,

    #[arg(long, value_enum, default_value_t = FamilyArg::L)]
    pub family: FamilyArg,

    #[arg(long, default_value_t = 0)]
    pub start: usize,
}

fn rational(s: &str) -> Result<Scalar, String> {
    parse_scalar(s).map_err(|e| e.to_string())
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] vermacas::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Core(vermacas::Error::ModuleUndefined { .. }) => EXIT_MODULE_UNDEFINED,
            CliError::Core(vermacas::Error::Precondition(_) | vermacas::Error::Parse(_)) => EXIT_USAGE,
            CliError::Core(_) | CliError::Io(_) => EXIT_CHECK_FAILED,
        }
    }
}

/// Text destined for the two standard streams, plus the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    let started = Instant::now();
    let (name, config) = commands::describe(&cli.command);
    let result = match &cli.command {
        Command::VerifyExact(a) => commands::verify_exact(a),
        Command::Defect(a) => commands::defect(a),
        Command::CentralCharge(a) => commands::central_charge(a),
        Command::Cocycle(a) => commands::cocycle(a),
        Command::ExportMatrix(a) => commands::export_matrix(a),
    };
    match result {
        Ok(mut report) => {
            if cli.timing {
                report.wall_clock_ms = Some(started.elapsed().as_millis());
            }
            let text = report.render(cli.format);
            let code = if report.passed() { EXIT_PASS } else { EXIT_CHECK_FAILED };
            emit(cli, text, code)
        }
        Err(e) => {
            let body = report::error_report(name, &config, kind_of(&e), &e.to_string(), detail_of(&e));
            let text = serde_json::to_string_pretty(&body).expect("reports serialize") + "\n";
            let mut out = emit(cli, text, e.exit_code());
            out.stderr.push_str(&format!("error: {e}\n"));
            out
        }
    }
}

fn emit(cli: &Cli, text: String, code: i32) -> Outcome {
    match &cli.out {
        None => Outcome { code, stdout: text, stderr: String::new() },
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => {
                let e = CliError::from(e);
                Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") }
            }
        },
    }
}

fn kind_of(e: &CliError) -> &'static str {
    match e {
        CliError::Usage(_) => "Usage",
        CliError::Io(_) => "Io",
        CliError::Core(c) => match c {
            vermacas::Error::ZeroDenominator => "ZeroDenominator",
            vermacas::Error::DivisionByZero => "DivisionByZero",
            vermacas::Error::PoleAtPoint(_) => "PoleAtPoint",
            vermacas::Error::PoleAtZeroParam => "PoleAtZeroParam",
            vermacas::Error::Divergent => "Divergent",
            vermacas::Error::ModuleUndefined { .. } => "ModuleUndefined",
            vermacas::Error::QrUndefined => "QrUndefined",
            vermacas::Error::NonPositiveNorm { .. } => "NonPositiveNorm",
            vermacas::Error::Precondition(_) => "Precondition",
            vermacas::Error::NotCubicCocycle(_) => "NotCubicCocycle",
            vermacas::Error::TrivialClass => "TrivialClass",
            vermacas::Error::Parse(_) => "Parse",
        },
    }
}

fn detail_of(e: &CliError) -> Value {
    match e {
        CliError::Core(vermacas::Error::ModuleUndefined { degree, n }) => serde_json::json!({ "degree": degree, "n": n }),
        _ => Value::Null,
    }
}
