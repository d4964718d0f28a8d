use std::f64::consts::FRAC_PI_2;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::result::{check_monotone, Metadata, SweepResult};
use crate::dynamics::{
    collapse_operators, lindblad_evolve, ChannelKind, DecoherenceParams, IntegratorOptions, Propagator,
};
use crate::error::{invalid, Result};
use crate::model::{beam_splitter_hamiltonian, Layout};
use crate::quantum::PureState;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecoherenceSweepSpec {
    /// Vibrational rates (1/s), applied to both modes.
    pub gammas: Vec<f64>,
    pub g: f64,
    pub detuning: f64,
    pub channel: ChannelKind,
    pub truncation: usize,
    pub integrator: IntegratorOptions,
}

impl DecoherenceSweepSpec {
    pub fn new(gammas: Vec<f64>, g: f64) -> Self {
        Self {
            gammas,
            g,
            detuning: 0.0,
            channel: ChannelKind::AmplitudeDamping,
            truncation: 2,
            integrator: IntegratorOptions::default(),
        }
    }
}

/// Fidelity of the exchanged state at `t = pi / (2 g)` with its ideal value,
/// starting from `|0,1>`, per vibrational rate.
pub fn decoherence_sweep(spec: &DecoherenceSweepSpec) -> Result<SweepResult> {
    check_monotone("gammas", &spec.gammas)?;
    if spec.g.is_nan() || spec.g <= 0.0 {
        return Err(invalid("g", "must be positive"));
    }
    let layout = Layout::two_modes(spec.truncation)?;
    let h = beam_splitter_hamiltonian(spec.g, spec.detuning, &layout)?;
    let start = PureState::basis(layout.space(), &[0, 1])?;
    let t = FRAC_PI_2 / spec.g;
    let ideal = Propagator::new(&h)?.evolve(&start, t)?;
    let fidelities: Vec<f64> = spec
        .gammas
        .par_iter()
        .map(|&gamma| -> Result<f64> {
            let params = DecoherenceParams { vibrational: spec.channel, ..DecoherenceParams::new(gamma, 0.0) };
            let collapse = collapse_operators(&params, layout.space())?;
            let run = lindblad_evolve(&h, &collapse, &start.to_density(), &[0.0, t], &spec.integrator, &[])?;
            run.final_state().fidelity_with_pure(&ideal)
        })
        .collect::<Result<_>>()?;
    let echo = serde_json::to_value(spec).expect("spec serializes");
    let mut result =
        SweepResult::new("decoherence", echo, Metadata::new(Some(spec.truncation), Some(spec.integrator.tol)));
    result.push_column("gamma_ex", spec.gammas.clone())?;
    result.push_column("swap_fidelity", fidelities)?;
    result.push_column("gamma_t", spec.gammas.iter().map(|g| g * t).collect())?;
    result.summary.insert("swap_time".into(), t);
    Ok(result)
}
