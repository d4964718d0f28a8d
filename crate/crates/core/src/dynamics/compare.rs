//! Comparison of the full driven model with the effective beam splitter.

use serde::{Deserialize, Serialize};

use super::integrate::{integrate_tdse, IntegratorOptions};
use super::propagate::Propagator;
use crate::error::{Error, Result};
use crate::model::{build_full_model, build_h_eff, f_eigenstate, FullModelOptions, FullModelParams, Layout};
use crate::quantum::{PureState, C64};

/// Removes the carrier phase `exp(-i Omega_tilde t)` picked up by the
/// `|phi>` internal state in the first rotating frame.
pub fn strip_carrier_phase(state: &PureState, omega_tilde: f64, t: f64) -> PureState {
    let phase = C64::from_polar(1.0, omega_tilde * t);
    PureState::from_evolved(state.space().clone(), state.amplitudes() * phase)
}

/// Multiplies `state` by the global phase that makes `<reference|state>` real
/// and non-negative.
pub fn align_global_phase(reference: &PureState, state: &PureState) -> Result<PureState> {
    let overlap = reference.inner(state)?;
    let phase = if overlap.norm() > 0.0 { overlap.conj() / overlap.norm() } else { C64::new(1.0, 0.0) };
    Ok(PureState::from_evolved(state.space().clone(), state.amplitudes() * phase))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrameComparison {
    pub times: Vec<f64>,
    /// `1 - |<phi, psi_eff(t)|psi_full(t)>|^2`.
    pub infidelity: Vec<f64>,
    /// `| psi_full(t) e^{i Omega_tilde t} - |phi> psi_eff(t) |` with no fitted phase.
    pub amplitude_error: Vec<f64>,
    /// Population of `|1,0>` (any internal state) under the full model.
    pub transfer_full: Vec<f64>,
    /// Population of `|1,0>` under the effective beam splitter.
    pub transfer_effective: Vec<f64>,
}

impl FrameComparison {
    pub fn max_infidelity(&self) -> f64 {
        self.infidelity.iter().cloned().fold(0.0, f64::max)
    }

    pub fn max_transfer_full(&self) -> f64 {
        self.transfer_full.iter().cloned().fold(0.0, f64::max)
    }
}

/// Evolves `|phi> |0,1>` under the full model and `|0,1>` under the effective
/// Hamiltonian, both sampled on `grid`.
pub fn effective_vs_full_error(
    params: &FullModelParams,
    options: &FullModelOptions,
    truncation: usize,
    grid: &[f64],
    integrator: &IntegratorOptions,
) -> Result<FrameComparison> {
    if params.couplings.delta_in != 0.0 {
        return Err(Error::Contract(format!(
            "comparison assumes delta_in = 0, got {}",
            params.couplings.delta_in
        )));
    }
    let full_layout = Layout::spin_two_modes(truncation)?;
    let modes = Layout::two_modes(truncation)?;
    let h_full = build_full_model(params, options, &full_layout)?;
    let h_eff = build_h_eff(&params.couplings, &modes)?;

    let phi = PureState::new(full_layout.space().select(&[0])?, f_eigenstate(params.phase).amplitudes().clone())?;
    let start = PureState::basis(modes.space(), &[0, 1])?;
    let psi0 = phi.tensor(&start);
    let full = integrate_tdse(&h_full, &psi0, grid, integrator, &[])?;
    let eff = Propagator::new(&h_eff)?;

    let moved = modes.space().index_of(&[1, 0])?;
    let dm = modes.space().total_dim();
    let mut out = FrameComparison {
        times: grid.to_vec(),
        infidelity: Vec::with_capacity(grid.len()),
        amplitude_error: Vec::with_capacity(grid.len()),
        transfer_full: Vec::with_capacity(grid.len()),
        transfer_effective: Vec::with_capacity(grid.len()),
    };
    for (&t, state) in grid.iter().zip(&full.states) {
        let psi_eff = eff.evolve(&start, t)?;
        let expected = phi.tensor(&psi_eff);
        let overlap = expected.inner(state)?.norm_sqr();
        out.infidelity.push((1.0 - overlap).max(0.0));
        let stripped = strip_carrier_phase(state, params.couplings.omega_tilde, t);
        out.amplitude_error.push((stripped.amplitudes() - expected.amplitudes()).norm());
        let amps = state.amplitudes();
        out.transfer_full.push(amps[moved].norm_sqr() + amps[dm + moved].norm_sqr());
        out.transfer_effective.push(psi_eff.amplitudes()[moved].norm_sqr());
    }
    Ok(out)
}
