mod commands;
mod input;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] numindex_core::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_certification_failure() => 3,
            _ => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "numindex", version, about = "Numerical radius and numerical index of finite-dimensional normed spaces")]
pub struct Cli {
    /// Tolerance for floating comparisons on sampled paths.
    #[arg(long, global = true, default_value_t = numindex_core::DEFAULT_EPS)]
    pub eps: f64,
    /// Emit a machine-readable JSON report.
    #[arg(long, global = true)]
    pub json: bool,
    /// Lift the n ≤ 3 cap on operator-space vertex enumeration.
    #[arg(long, global = true)]
    pub allow_big: bool,
    /// Complete a half-given vertex list by negation closure.
    #[arg(long, global = true)]
    pub symmetrize: bool,
    /// Seed for every randomized subroutine.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Inspect or dualize a space.
    Space {
        #[arg(value_enum)]
        action: SpaceAction,
        space: String,
    },
    /// Operator norm, numerical radius or numerical range of a matrix.
    Op {
        #[arg(value_enum)]
        quantity: OpQuantity,
        space: String,
        #[arg(long)]
        matrix: String,
        /// Sampling mesh density for floating paths.
        #[arg(long)]
        density: Option<usize>,
    },
    /// Extreme points of the dual ball of the numerical-radius norm.
    DualBall {
        #[arg(value_enum)]
        action: DualBallAction,
        space: String,
    },
    /// Numerical index, exactly or by search.
    Index {
        #[arg(value_enum)]
        mode: IndexMode,
        space: String,
        /// Number of search restarts.
        #[arg(long, default_value_t = 64)]
        budget: usize,
    },
    /// Vertex test for numerical index one.
    Mcgregor { space: String },
    /// Compare both operator-space dual balls with the hull of the tensor functionals.
    Hulls { space: String },
    /// Birkhoff–James orthogonality of T to span{W_1, …} in the numerical-radius norm.
    Bj {
        space: String,
        #[arg(long)]
        t: String,
        #[arg(long = "w", required = true, num_args = 1..)]
        w: Vec<String>,
    },
    /// Extreme pairs at which the numerical radius is attained.
    Attain {
        space: String,
        #[arg(long)]
        matrix: String,
    },
    /// Test max_{t=±1} ‖Id + tA‖ = 1 + ‖A‖ on random operators.
    Spear {
        space: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum SpaceAction {
    Info,
    Dual,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum OpQuantity {
    Norm,
    Radius,
    Range,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum DualBallAction {
    Extremes,
    Count,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum IndexMode {
    Exact,
    Search,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            print!("{}", out.stdout);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
