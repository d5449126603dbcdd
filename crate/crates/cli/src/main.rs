//! `hopfq`: analyze one- and two-qubit states through their Hopf
//! fibrations, generate special states, and export point clouds.
//!
//! Exit codes: 0 success, 1 malformed input or invalid parameters,
//! 2 normalization failure, 3 oracle mismatch, 4 I/O failure.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use hopfq::FibrationChart;

use crate::output::CloudFormat;

#[derive(Debug, Parser)]
#[command(
    name = "hopfq",
    version,
    about = "Hopf-fibration geometry of qubit states"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Quaternion grouping and quotient used for S⁴ coordinates.
    #[arg(long, global = true, default_value = "standard")]
    pub chart: FibrationChart,
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    #[arg(long, global = true, env = "HOPFQ_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Rescale input amplitudes instead of rejecting unnormalized states.
    #[arg(long, global = true)]
    pub normalize: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Read state documents (or reports) as JSON and print one report each.
    Analyze {
        /// Defaults to standard input.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Recompute every reported value through explicit matrices.
        #[arg(long)]
        check_oracle: bool,
    },
    /// Print state documents, one JSON object per line.
    Generate {
        #[command(subcommand)]
        kind: GenerateKind,
        #[arg(long, global = true, default_value_t = 1)]
        count: usize,
    },
    /// Write a point cloud to a file.
    Cloud {
        #[command(subcommand)]
        kind: CloudKind,
        #[arg(long, global = true)]
        output: Option<PathBuf>,
        #[arg(long, global = true, value_enum, default_value = "csv")]
        format: CloudFormat,
    },
}

#[derive(Debug, Clone, Subcommand)]
pub enum GenerateKind {
    /// Standard Bell states; without `--index` cycles Φ⁺, Φ⁻, Ψ⁺, Ψ⁻.
    Bell {
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=3))]
        index: Option<u8>,
    },
    /// Maximally entangled states on random fibres.
    Mes {
        /// Phase of C₂; random when omitted.
        #[arg(long, allow_hyphen_values = true)]
        phase: Option<f64>,
    },
    /// States with C₁ = 0 and concurrence sin 2Ω.
    OmegaMes {
        #[arg(long)]
        omega: f64,
        #[arg(long, allow_hyphen_values = true)]
        phase: Option<f64>,
    },
    /// Random product states.
    Separable,
    /// Uniformly random two-qubit states.
    Random,
}

#[derive(Debug, Clone, Subcommand)]
pub enum CloudKind {
    /// Stereographic images of S³ fibres over Bloch points.
    Fiber {
        /// `RE,IM` of the Hopf coordinate, or `inf`. Repeatable.
        #[arg(long = "base", default_value = "0,0", allow_hyphen_values = true)]
        bases: Vec<String>,
        #[arg(long, default_value_t = 256)]
        samples: usize,
    },
    /// Random states on slices of constant Ω or constant concurrence.
    #[command(group(ArgGroup::new("grid").required(true).args(["omega", "concurrence"])))]
    Foliation {
        #[arg(long, value_delimiter = ',')]
        omega: Vec<f64>,
        #[arg(long, value_delimiter = ',')]
        concurrence: Vec<f64>,
        /// Samples per slice.
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Ball points of two-qubit state documents.
    Ball {
        #[arg(long)]
        input: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    if !(cli.global.tolerance.is_finite() && cli.global.tolerance >= 0.0) {
        eprintln!("hopfq: invalid input: --tolerance must be a finite non-negative number");
        return ExitCode::from(1);
    }
    let result = match cli.command {
        Command::Analyze {
            input,
            check_oracle,
        } => commands::analyze(&cli.global, input.as_deref(), check_oracle),
        Command::Generate { kind, count } => commands::generate(&cli.global, &kind, count),
        Command::Cloud {
            kind,
            output,
            format,
        } => commands::cloud(&cli.global, &kind, output.as_deref(), format),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("hopfq: {failure}");
            ExitCode::from(failure.code())
        }
    }
}
