//! Command-line interface for ring-junction boundary-condition spectra.
//!
//! Exit codes: 0 success, 2 input/parse error, 3 solver diagnostic,
//! 4 failed verification (report still emitted).

mod cmd;
mod input;
mod physical;
mod records;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt;
use std::path::PathBuf;

use input::{spec_from_flags, BcSpec};

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(bc_spectra_core::Error),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "{msg}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Core(_) | CliError::Io(_) => 3,
        }
    }
}

impl From<bc_spectra_core::Error> for CliError {
    fn from(e: bc_spectra_core::Error) -> Self {
        CliError::Core(e)
    }
}

#[derive(Parser)]
#[command(
    name = "bc-spectra",
    version,
    about = "Energy spectra of a particle on a ring with a U(2) junction boundary condition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Shared boundary-condition flags; exactly one input mode is accepted.
#[derive(Args, Clone)]
struct BcFlags {
    /// Named boundary condition: dirichlet, neumann, periodic,
    /// antiperiodic or quasiperiodic
    #[arg(long)]
    preset: Option<String>,
    /// Flux angle for the quasiperiodic preset
    #[arg(long)]
    alpha: Option<f64>,
    /// Phase angle η in [0, π)
    #[arg(long)]
    eta: Option<f64>,
    /// With --eta: parity-symmetric family member U(η, θ)
    #[arg(long)]
    theta: Option<f64>,
    /// With --eta and --m1..--m3: explicit canonical parameters
    #[arg(long)]
    m0: Option<f64>,
    #[arg(long)]
    m1: Option<f64>,
    #[arg(long)]
    m2: Option<f64>,
    #[arg(long)]
    m3: Option<f64>,
    /// Raw row-major matrix entries "z11,z12,z21,z22" (complex like 0.6+0.8i)
    #[arg(long)]
    matrix: Option<String>,
}

impl BcFlags {
    fn spec(&self) -> Result<BcSpec, CliError> {
        spec_from_flags(
            self.preset.clone(),
            self.alpha,
            self.eta,
            self.theta,
            self.m0,
            self.m1,
            self.m2,
            self.m3,
            self.matrix.clone(),
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
enum Observable {
    #[default]
    ZeroModeResidual,
    GroundState,
    Gap,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the energy spectrum of one boundary condition
    Spectrum {
        #[command(flatten)]
        bc: BcFlags,
        /// Positive-branch window: scan x = kℓ up to this value
        #[arg(long, default_value_t = 50.0 * std::f64::consts::PI)]
        max_x: f64,
        /// Negative-branch window: scan κℓ up to this value
        #[arg(long, default_value_t = 60.0)]
        kappa_max: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        /// Physical scales "length_m,mass_kg" to add energies in joules
        #[arg(long)]
        physical: Option<String>,
        /// Write to a file instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sample the isospectral parity orbit of a boundary condition
    Family {
        #[command(flatten)]
        bc: BcFlags,
        /// Number of orbit samples (δ uniform in [0, π))
        #[arg(short = 'n', long, default_value_t = 8)]
        samples: usize,
        /// Window used for the spectrum-agreement verification
        #[arg(long, default_value_t = 20.0 * std::f64::consts::PI)]
        max_x: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Classify a boundary condition under parity and time reversal
    Classify {
        #[command(flatten)]
        bc: BcFlags,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Sweep an observable over the parity-symmetric (η, θ) family
    Sweep {
        /// Grid resolution ROWSxCOLS over [0, π) × [0, 2π)
        #[arg(long, default_value = "64x64")]
        grid: String,
        #[arg(long, value_enum, default_value_t)]
        observable: Observable,
        #[arg(long, default_value_t = 8.0 * std::f64::consts::PI)]
        max_x: f64,
        #[arg(long, default_value_t = 60.0)]
        kappa_max: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Cross-validate a spectrum against the finite-difference oracle
    Verify {
        #[command(flatten)]
        bc: BcFlags,
        /// Two grid sizes "coarse,fine" differing by a factor of >= 2
        #[arg(long, default_value = "500,1000")]
        grids: String,
        /// Number of lowest eigenvalues to compare
        #[arg(short = 'k', long, default_value_t = 5)]
        k: usize,
        /// Relative agreement tolerance per eigenvalue
        #[arg(long, default_value_t = 1e-3)]
        rtol: f64,
        /// Runge-Kutta steps for the boundary-matrix check
        #[arg(long, default_value_t = 10_000)]
        steps: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[cfg(feature = "parallel")]
fn init_threads() {
    if let Ok(v) = std::env::var("BC_SPECTRA_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

#[cfg(not(feature = "parallel"))]
fn init_threads() {}

fn main() {
    let cli = Cli::parse();
    init_threads();
    let outcome = match cli.command {
        Command::Spectrum {
            bc,
            max_x,
            kappa_max,
            format,
            physical,
            output,
        } => cmd::spectrum(&bc, max_x, kappa_max, format, physical, output),
        Command::Family {
            bc,
            samples,
            max_x,
            output,
        } => cmd::family(&bc, samples, max_x, output),
        Command::Classify { bc, output } => cmd::classify(&bc, output),
        Command::Sweep {
            grid,
            observable,
            max_x,
            kappa_max,
            output,
        } => cmd::sweep(&grid, observable, max_x, kappa_max, output),
        Command::Verify {
            bc,
            grids,
            k,
            rtol,
            steps,
            output,
        } => cmd::verify(&bc, &grids, k, rtol, steps, output),
    };
    match outcome {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
