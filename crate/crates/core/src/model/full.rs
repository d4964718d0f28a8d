//! The laser-driven two-well model before the vibrational rotating-wave
//! approximation.
//!
//! The lab-frame Hamiltonian (free oscillators, Coulomb coupling and the
//! second-order or exact laser coupling) is moved into the frame that rotates
//! the spin at the laser frequency and both modes at `nu_1`. Only the
//! optical counter-rotating terms (at `2 omega_l`) are dropped. Every other
//! piece survives with its oscillation at `m nu_1`, where `m` is the change in
//! total excitation number the piece causes.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::couplings::{CoulombCoefficients, DerivedCouplings};
use super::hamiltonians::{coulomb_operator, displacement, CoulombTerms, LambDickeOrder};
use super::layout::Layout;
use super::params::{LaserParams, TrapArrayParams};
use super::time_dependent::TimeDependentHamiltonian;
use crate::error::{invalid, Result};
use crate::quantum::{CompositeSpace, Operator, Pauli, SubsystemSpec, C64};

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FullModelParams {
    pub couplings: DerivedCouplings,
    pub coulomb: CoulombCoefficients,
    /// `nu_1`, the frame rotation of both modes (rad/s).
    pub trap_frequency: f64,
    pub rabi_frequency: f64,
    pub lamb_dicke: f64,
    pub phase: f64,
}

impl FullModelParams {
    pub fn from_physical(trap: &TrapArrayParams, laser: &LaserParams) -> Result<Self> {
        let couplings = super::derive_couplings(trap, laser)?;
        Ok(Self {
            couplings,
            coulomb: couplings.coulomb(trap),
            trap_frequency: trap.ions[0].trap_frequency,
            rabi_frequency: laser.rabi_frequency,
            lamb_dicke: laser.lamb_dicke,
            phase: laser.phase,
        })
    }

    /// A model with only the beam-splitter part of the Coulomb coupling,
    /// specified directly by rates.
    pub fn from_rates(
        g: f64,
        trap_frequency: f64,
        delta_ex: f64,
        rabi: f64,
        eta: f64,
        phase: f64,
    ) -> Result<Self> {
        if !(trap_frequency.is_finite() && trap_frequency > 0.0) {
            return Err(invalid("trap_frequency", format!("must be positive, got {trap_frequency}")));
        }
        Ok(Self {
            couplings: DerivedCouplings::from_rates(g, delta_ex, 0.0, rabi, eta)?,
            coulomb: CoulombCoefficients::beam_splitter(g),
            trap_frequency,
            rabi_frequency: rabi,
            lamb_dicke: eta,
            phase,
        })
    }

    /// Rabi frequency that cancels the trap detuning, `delta_ex / eta^2`.
    pub fn resonant_rabi(delta_ex: f64, eta: f64) -> Result<f64> {
        if eta <= 0.0 {
            return Err(invalid("lamb_dicke", "must be positive to cancel the detuning"));
        }
        Ok(delta_ex / (eta * eta))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FullModelOptions {
    pub order: LambDickeOrder,
    pub coulomb: CoulombTerms,
    /// Keep only the non-oscillating (`m = 0`) part.
    #[serde(default)]
    pub vibrational_rwa: bool,
}

impl Default for FullModelOptions {
    /// Second-order expansion, beam splitter plus its counter-rotating partner.
    /// The single-ion Coulomb terms are left out: the linear ones only shift
    /// the equilibrium positions.
    fn default() -> Self {
        Self {
            order: LambDickeOrder::SecondOrder,
            coulomb: CoulombTerms { counter_rotating: true, self_energy: false, linear: false },
            vibrational_rwa: false,
        }
    }
}

/// Builds the model on a `(spin, mode1, mode2)` layout; the laser drives
/// mode 2.
pub fn build_full_model(
    params: &FullModelParams,
    options: &FullModelOptions,
    layout: &Layout,
) -> Result<TimeDependentHamiltonian> {
    layout.require_modes(2)?;
    layout.spin()?;
    let space = layout.space();
    let c = params.couplings;

    let mode = layout.driven_mode();
    let trunc = layout.truncation(mode)?;
    let disp = Operator::new(
        CompositeSpace::single(SubsystemSpec::mode("mode", trunc)?),
        displacement(options.order, params.lamb_dicke, trunc)?,
    )?;
    let lowering = layout.pauli(Pauli::Plus)?
        * layout.embed(mode, &disp)?
        * C64::from_polar(params.rabi_frequency, -params.phase);
    let coupled = &lowering + lowering.adjoint() + coulomb_operator(&params.coulomb, layout, options.coulomb)?;

    let excitations: Vec<i64> = (0..space.total_dim())
        .map(|i| {
            let digits = space.digits_of(i);
            layout.modes().iter().map(|&m| digits[m] as i64).sum()
        })
        .collect();
    let mut parts: BTreeMap<i64, DMatrix<C64>> = BTreeMap::new();
    let d = space.total_dim();
    for j in 0..d {
        for i in 0..d {
            let v = coupled[(i, j)];
            if v.re == 0.0 && v.im == 0.0 {
                continue;
            }
            let m = excitations[i] - excitations[j];
            parts.entry(m).or_insert_with(|| DMatrix::zeros(d, d))[(i, j)] = v;
        }
    }

    let mut h = TimeDependentHamiltonian::new(space.clone());
    h.push_static(
        layout.pauli(Pauli::Z)? * C64::new(c.delta_in / 2.0, 0.0)
            + layout.number(1)? * C64::new(c.delta_ex, 0.0),
    )?;
    if options.vibrational_rwa {
        parts.retain(|&m, _| m == 0);
    }
    let family = parts
        .into_iter()
        .map(|(m, matrix)| (m as f64 * params.trap_frequency, matrix))
        .collect();
    h.push_hermitian_family(family)?;
    Ok(h)
}
