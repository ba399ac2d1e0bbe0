use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "bandlimit", version, about = "Bounds, lids and sharp constants for band-limited extremal problems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Absolute tolerance handed to quadratures and eigensolvers.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Output file (a directory for `tables`); stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Worker threads; BANDLIMIT_THREADS takes precedence.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Record wall time in the diagnostics (breaks byte-identical output).
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Pipeline {
    /// The explicit degree-2 function h0.
    H0,
    Poly,
    L2,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Polynomial pipeline bound at degree d.
    MonotonePoly {
        #[arg(long)]
        d: usize,
    },
    /// L² pipeline bound with d modes.
    MonotoneL2 {
        #[arg(long)]
        d: usize,
        /// Lift the dimension cap from 300 to 1000.
        #[arg(long)]
        allow_large: bool,
    },
    /// Lid ratio ‖f_α‖₁/f_α(0) of the Bessel family.
    Lid {
        #[arg(long)]
        alpha: f64,
    },
    /// Minimize the lid ratio over α.
    LidOptimize {
        #[arg(long, default_value_t = 0.3)]
        lo: f64,
        #[arg(long, default_value_t = 2.0)]
        hi: f64,
        /// Width of the final α bracket.
        #[arg(long, default_value_t = 1e-6)]
        alpha_tol: f64,
    },
    /// Sharp constant for the weight polynomial a₀ + a₁x + ….
    SharpConstant {
        /// Comma-separated coefficients a₀,a₁,….
        #[arg(long)]
        poly: String,
    },
    /// Check the weighted inequality on random admissible profiles.
    VerifyInequality {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Allowed undershoot below the sharp constant.
        #[arg(long, default_value_t = 1e-9)]
        slack: f64,
    },
    /// First positive zeros of an extremizer.
    Zeros {
        #[arg(long, value_enum)]
        pipeline: Pipeline,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long)]
        allow_large: bool,
    },
    /// Cross-check the closed form of f0 against its integral representation.
    VerifyF0,
    /// Regenerate both tables and the plot data.
    Tables {
        /// Include L² rows above d = 300.
        #[arg(long)]
        allow_large: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::MonotonePoly { .. } => "monotone-poly",
            Command::MonotoneL2 { .. } => "monotone-l2",
            Command::Lid { .. } => "lid",
            Command::LidOptimize { .. } => "lid-optimize",
            Command::SharpConstant { .. } => "sharp-constant",
            Command::VerifyInequality { .. } => "verify-inequality",
            Command::Zeros { .. } => "zeros",
            Command::VerifyF0 => "verify-f0",
            Command::Tables { .. } => "tables",
        }
    }
}
