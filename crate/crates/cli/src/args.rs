use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(
    name = "wormlab",
    version,
    about = "Exact simulation of learned wormhole Hamiltonians"
)]
pub struct Cli {
    /// Output directory for CSV files and the manifest.
    #[arg(
        long,
        global = true,
        env = "WORMLAB_OUT",
        default_value = "wormlab-out"
    )]
    pub out: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Produce the data series of one experiment.
    Run {
        experiment: Experiment,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Winding statistics of random commuting models.
    Ensemble {
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Exhaustive search for commuting four-body structures.
    Enumerate {
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Run every acceptance criterion; exits with 3 if any fails.
    Accept,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    Fig1a,
    Fig1b,
    Fig2a,
    Fig2b,
    Fig2c,
    Fig2d,
    Fig3,
    Fig4a,
    Fig4b,
    Ensemble,
    Enumerate,
    Acceptance,
}

impl Experiment {
    pub fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

/// Parameter overrides; unset values fall back to the experiment defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub grid_start: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub grid_stop: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub grid_step: Option<f64>,
    /// Winding-quality threshold.
    #[arg(long)]
    pub threshold: Option<f64>,
    /// Number of ensemble samples.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Evaluation time of the ensemble comparison.
    #[arg(long, allow_hyphen_values = true)]
    pub time: Option<f64>,
    /// Fermion count for the structure search.
    #[arg(long)]
    pub fermions: Option<usize>,
    /// Term count for the structure search.
    #[arg(long)]
    pub terms: Option<usize>,
}
