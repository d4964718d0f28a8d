//! Scenario runners producing tabulated curves and reports.

mod ablation;
mod convergence;
mod decoherence;
mod feasibility;
mod fig2;
mod result;
mod rwa;

pub use ablation::{coulomb_ablation, coulomb_variants, AblationSpec};
pub use convergence::{convergence_check, ConvergenceReport, Scenario};
pub use decoherence::{decoherence_sweep, DecoherenceSweepSpec};
pub use feasibility::{feasibility_report, FeasibilityOptions, FeasibilityReport, PowerReference};
pub use fig2::{detuning_label, sweep_fig2, Fig2Spec};
pub use result::{loglog_slope, Column, Metadata, SweepResult};
pub use rwa::{rwa_error_sweep, RwaSweepSpec};
