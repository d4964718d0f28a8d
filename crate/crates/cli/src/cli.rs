use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::config::CONFIG_HELP;
use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "iontrap", version, about = "Simulate and verify laser-switched couplings between trapped ions")]
#[command(after_help = CONFIG_HELP)]
pub struct Cli {
    /// TOML (or JSON) run configuration; defaults apply without one.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file; stdout when absent and IONTRAP_OUTPUT_DIR is unset.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derived couplings and the feasibility report.
    Couplings,
    /// Occupancy |beta|^2 against g t, analytic and integrated.
    Sweep {
        /// Detuning ratios Delta/g: a list or lin:/log: range.
        #[arg(long, default_value = "0,2,5,10")]
        delta_over_g: String,
        #[arg(long, default_value_t = 10.0)]
        gt_max: f64,
        #[arg(long, default_value_t = 1001)]
        points: usize,
    },
    /// Checks the CNOT pulse sequence on the computational subspace.
    GateVerify {
        /// Overrides gate.wells.
        #[arg(long)]
        wells: Option<usize>,
        /// Also run the sequence under the master equation, at the configured
        /// gamma_ex or over the given grid of gamma_ex values.
        #[arg(long, num_args = 0..=1, default_missing_value = "config", value_name = "GAMMA_GRID")]
        decohere: Option<String>,
    },
    /// Duration of one CNOT against the coherence times.
    Budget {
        /// Overrides gate.wells.
        #[arg(long)]
        wells: Option<usize>,
        /// Swap duration in seconds; taken from gate.g_cm when absent.
        #[arg(long)]
        t_u: Option<f64>,
    },
    /// Full model against the effective beam splitter over a grid of eta.
    Rwa {
        #[arg(long, default_value = "log:0.01:0.2:8")]
        eta_grid: String,
        /// Output points over one exchange period.
        #[arg(long, default_value_t = 101)]
        points: usize,
    },
    /// Swap fidelity over a grid of vibrational decay rates (1/s).
    Decohere {
        #[arg(long, default_value = "0,1e2,3e2,1e3,3e3")]
        gamma_grid: String,
    },
}
