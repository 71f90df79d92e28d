//! `pbe`: runs the block-encoding experiments and writes CSV/JSON artifacts.
//!
//! Every command prints a JSON summary on stdout. Failures print
//! `{"error": {"kind": …, "message": …}}` on stderr and exit with status 1
//! (2 for command-line usage errors).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "pbe", version, about = "Block encodings of sparse matrices with periodic diagonals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Directory for CSV/JSON artifacts (created if missing).
    #[arg(long, default_value = "out", global = true)]
    pub out: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the sinusoidal block encodings against the dense diagonal.
    Verify(VerifyArgs),
    /// Ancilla success probability of the cosine encoding across an ω sweep.
    P0Sweep(P0Args),
    /// Transpiled gate counts of the cosine encoding and the dense baseline.
    GateScaling(ScalingArgs),
    /// Elliptic periodic-reaction problem solved by QSVT inversion.
    Elliptic(EllipticArgs),
    /// Advection-diffusion-reaction evolution by a QSVT exponential.
    Adr(AdrArgs),
    /// Phase factors for the inverse or exponential polynomial.
    QspPhases(PhaseArgs),
    /// Serialize a circuit as JSON, optionally lowered to the CNOT basis.
    ExportCircuit(ExportArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Select,
    Cnot,
}

impl From<Variant> for pbe_core::diag::UcVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Select => pbe_core::diag::UcVariant::Select,
            Variant::Cnot => pbe_core::diag::UcVariant::CnotConjugation,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diagonal {
    Cos,
    Sin,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
    #[arg(long, value_enum, default_value_t = Diagonal::Cos)]
    pub which: Diagonal,
    #[arg(long, value_enum, default_value_t = Variant::Select)]
    pub variant: Variant,
    /// Largest accepted entrywise error.
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct P0Args {
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 256)]
    pub points: usize,
    /// `uniform`, `basis:K`, or `random`.
    #[arg(long, default_value = "uniform")]
    pub state: String,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug)]
pub struct ScalingArgs {
    #[arg(long, default_value_t = 2)]
    pub n_min: usize,
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub omega: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Window {
    Covering,
    Literal,
}

#[derive(Args, Debug)]
pub struct EllipticArgs {
    /// EllipticSpec JSON; replaces --d, --a0, --omega and --n.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value_t = 1.0)]
    pub d: f64,
    #[arg(long, default_value_t = 1.5)]
    pub a0: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub omega: f64,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Inversion window parameters.
    #[arg(long, value_delimiter = ',', default_values_t = vec![3.0, 4.0])]
    pub k: Vec<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, value_enum, default_value_t = Window::Covering)]
    pub window: Window,
    #[command(flatten)]
    pub output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Sine,
    Cosine,
    Square,
    Triangle,
}

#[derive(Args, Debug)]
pub struct AdrArgs {
    /// AdrSpec JSON; replaces --profile and --n.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Shape::Sine)]
    pub profile: Shape,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Times in units of Δx²/D; overrides the spec's list.
    #[arg(long, value_delimiter = ',')]
    pub t: Vec<f64>,
    #[arg(long, default_value_t = 1e-6)]
    pub epsilon: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyKind {
    Inverse,
    Exp,
}

#[derive(Args, Debug)]
pub struct PhaseArgs {
    #[arg(long, value_enum, default_value_t = PolyKind::Inverse)]
    pub kind: PolyKind,
    /// Condition parameter for the inverse.
    #[arg(long, default_value_t = 3.0)]
    pub k: f64,
    /// Rate τ for the exponential `½ e^{τ(x-1)}`.
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, default_value_t = 0.01)]
    pub epsilon: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CircuitKind {
    Uc,
    Us,
    Shift,
    Banded,
    Lcu,
    Fourier,
    Elliptic,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftDirection {
    Left,
    Right,
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    #[arg(long, value_enum, default_value_t = CircuitKind::Uc)]
    pub kind: CircuitKind,
    /// Spec JSON for banded, lcu, fourier and elliptic circuits.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub omega: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub phi: f64,
    #[arg(long, value_enum, default_value_t = Variant::Select)]
    pub variant: Variant,
    #[arg(long, value_enum, default_value_t = ShiftDirection::Left)]
    pub direction: ShiftDirection,
    #[arg(long, default_value_t = 1)]
    pub power: u64,
    /// Lower to single-qubit gates and CNOTs before writing.
    #[arg(long)]
    pub decompose: bool,
    #[command(flatten)]
    pub output: Output,
}

fn run(cli: Cli) -> Result<serde_json::Value, CliError> {
    match cli.command {
        Command::Verify(a) => commands::verify(&a),
        Command::P0Sweep(a) => commands::p0_sweep(&a),
        Command::GateScaling(a) => commands::gate_scaling(&a),
        Command::Elliptic(a) => commands::elliptic(&a),
        Command::Adr(a) => commands::adr(&a),
        Command::QspPhases(a) => commands::qsp_phases(&a),
        Command::ExportCircuit(a) => commands::export_circuit(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", CliError::Usage(e.kind().to_string(), e.to_string().trim().to_string()).to_json());
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(summary) => {
            println!("{}", serde_json::to_string_pretty(&summary).expect("summaries serialize"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            ExitCode::FAILURE
        }
    }
}
