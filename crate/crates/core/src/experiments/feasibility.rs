use serde::{Deserialize, Serialize};

use crate::dynamics::DecoherenceParams;
use crate::error::{invalid, Result};
use crate::model::{derive_couplings, DerivedCouplings, LaserParams, TrapArrayParams};

/// Measured laser power and the Rabi frequency it produces; `Omega_0` scales
/// as `sqrt(P)`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerReference {
    /// W.
    pub power: f64,
    /// rad/s.
    pub rabi_frequency: f64,
}

impl Default for PowerReference {
    /// 140 mW giving 1.5e6 rad/s.
    fn default() -> Self {
        Self { power: 0.14, rabi_frequency: 1.5e6 }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityOptions {
    pub reference: PowerReference,
    /// Largest phonon number considered in the Lamb-Dicke check.
    pub n_max: usize,
    /// `eta sqrt(n_max + 1)` must stay below this.
    pub lamb_dicke_threshold: f64,
    /// `Omega_0 / nu_1` must stay below this for sideband resolution.
    pub resolution_threshold: f64,
}

impl Default for FeasibilityOptions {
    fn default() -> Self {
        Self {
            reference: PowerReference::default(),
            n_max: 1,
            lamb_dicke_threshold: 0.3,
            resolution_threshold: 0.1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub couplings: DerivedCouplings,
    pub eta: f64,
    /// `eta sqrt(n_max + 1)`.
    pub lamb_dicke_measure: f64,
    pub lamb_dicke_regime: bool,
    /// `delta_ex / eta^2`, the Rabi frequency that makes `Delta = 0`.
    pub required_rabi: f64,
    /// W.
    pub required_power: f64,
    /// `None` when the rate is zero.
    pub g_over_gamma_ex: Option<f64>,
    pub g_over_gamma_in: Option<f64>,
    /// `required_rabi / nu_1`.
    pub rabi_over_trap_frequency: f64,
    /// Whether the drive is weak enough against `nu_1` for the sideband
    /// rotating-wave approximation to hold.
    pub sideband_resolved: bool,
    pub options: FeasibilityOptions,
}

pub fn feasibility_report(
    trap: &TrapArrayParams,
    laser: &LaserParams,
    decoherence: &DecoherenceParams,
    options: &FeasibilityOptions,
) -> Result<FeasibilityReport> {
    let reference = options.reference;
    if !(reference.power > 0.0 && reference.rabi_frequency > 0.0) {
        return Err(invalid("reference", "power and Rabi frequency must be positive"));
    }
    decoherence.validate()?;
    let eta = laser.lamb_dicke;
    if eta == 0.0 {
        return Err(invalid("lamb_dicke", "must be non-zero to reach the resonance condition"));
    }
    let couplings = derive_couplings(trap, laser)?;
    let required_rabi = couplings.delta_ex / (eta * eta);
    let required_power = reference.power * (required_rabi / reference.rabi_frequency).powi(2);
    let ratio = |gamma: f64| (gamma > 0.0).then(|| couplings.g / gamma);
    let lamb_dicke_measure = eta * ((options.n_max + 1) as f64).sqrt();
    let rabi_over_trap_frequency = required_rabi.abs() / trap.ions[0].trap_frequency;
    Ok(FeasibilityReport {
        couplings,
        eta,
        lamb_dicke_measure,
        lamb_dicke_regime: lamb_dicke_measure < options.lamb_dicke_threshold,
        required_rabi,
        required_power,
        g_over_gamma_ex: ratio(decoherence.gamma_ex),
        g_over_gamma_in: ratio(decoherence.gamma_in),
        rabi_over_trap_frequency,
        sideband_resolved: rabi_over_trap_frequency < options.resolution_threshold,
        options: *options,
    })
}
