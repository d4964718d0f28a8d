//! Time evolution: closed-form exchange amplitudes, propagators, adaptive
//! integration of the Schrodinger and Lindblad equations.

mod compare;
mod integrate;
mod lindblad;
mod propagate;
mod swap;

pub use compare::{align_global_phase, effective_vs_full_error, strip_carrier_phase, FrameComparison};
pub use integrate::{
    integrate_tdse, uniform_grid, EvolutionResult, IntegratorOptions, IntegratorStats, Observable,
};
pub use lindblad::{collapse_operators, lindblad_evolve, ChannelKind, CollapseOperator, DecoherenceParams};
pub use propagate::{propagate, Propagator};
pub use swap::{analytic_swap, max_swap_probability, one_excitation_unitary, swap_unitary, SwapAmplitudes};
