use clap::{Parser, Subcommand, ValueEnum};
use mubtomo::sim::Repair;
use serde::Deserialize;

/// MUB tomography, star-product kernels, and their identity checks.
#[derive(Debug, Parser)]
#[command(name = "mubtomo", version)]
pub struct Cli {
    /// Uniform numeric tolerance; overrides MUBTOMO_TOLERANCE.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Build the MUB family for a prime dimension.
    Construct {
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Born probabilities of a state in every MUB.
    Tomogram {
        #[arg(long)]
        state: String,
        /// MUB file; the canonical family when omitted.
        #[arg(long)]
        mub: Option<String>,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Linear-inversion state from a tomogram.
    Reconstruct {
        #[arg(long)]
        tomogram: String,
        #[arg(long)]
        mub: Option<String>,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Finite-shot measurement and estimation.
    Simulate {
        #[arg(long)]
        state: String,
        #[arg(long)]
        mub: Option<String>,
        #[arg(long)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = RepairArg::None)]
        repair: RepairArg,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Run the identity suite; exit 1 if any check fails.
    Verify {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "-")]
        out: String,
        /// Perturb one ordinary-kernel entry before checking.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Transport qubit symbols between the SIC and MUB schemes.
    Intertwine {
        #[arg(value_enum)]
        direction: Direction,
        #[arg(long)]
        symbol: String,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Execute a JSON job description.
    Run {
        #[arg(long)]
        config: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepairArg {
    None,
    Project,
}

impl From<RepairArg> for Repair {
    fn from(r: RepairArg) -> Self {
        match r {
            RepairArg::None => Repair::None,
            RepairArg::Project => Repair::Project,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    /// Exhaustive up to d = 3, otherwise 10⁴ seeded tuples per sweep.
    Quick,
    /// Every tuple at every dimension.
    Exhaustive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Sic2mub,
    Mub2sic,
}
