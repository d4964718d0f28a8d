use std::f64::consts::{FRAC_PI_4, PI};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::result::{check_monotone, loglog_slope, Metadata, SweepResult};
use crate::dynamics::{effective_vs_full_error, uniform_grid, IntegratorOptions};
use crate::error::{invalid, Result};
use crate::model::{lamb_dicke_gap, FullModelOptions, FullModelParams, LaserParams, Layout};

/// RWA error against `eta` at fixed `g`, `nu_1`, `delta_ex` and `Omega_0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RwaSweepSpec {
    pub etas: Vec<f64>,
    /// rad/s.
    pub g: f64,
    pub trap_frequency: f64,
    pub delta_ex: f64,
    pub rabi_frequency: f64,
    pub truncation: usize,
    /// Output points over one exchange period `pi / c`.
    pub points: usize,
    pub model: FullModelOptions,
    pub integrator: IntegratorOptions,
}

impl RwaSweepSpec {
    pub fn from_params(etas: Vec<f64>, base: &FullModelParams, truncation: usize) -> Self {
        Self {
            etas,
            g: base.couplings.g,
            trap_frequency: base.trap_frequency,
            delta_ex: base.couplings.delta_ex,
            rabi_frequency: base.rabi_frequency,
            truncation,
            points: 101,
            model: FullModelOptions::default(),
            integrator: IntegratorOptions::default(),
        }
    }
}

/// Per `eta`: peak infidelity between the full model and the effective beam
/// splitter over one exchange period, and the relative operator-norm gap
/// between the exact and second-order laser Hamiltonians.
pub fn rwa_error_sweep(spec: &RwaSweepSpec) -> Result<SweepResult> {
    check_monotone("etas", &spec.etas)?;
    if spec.etas.iter().any(|&e| !(e > 0.0 && e <= 0.3)) {
        return Err(invalid("etas", "values must lie in (0, 0.3]"));
    }
    let ld_layout = Layout::spin_mode(spec.truncation)?;
    let rows: Vec<(f64, f64, f64)> = spec
        .etas
        .par_iter()
        .map(|&eta| -> Result<_> {
            let params = FullModelParams::from_rates(
                spec.g,
                spec.trap_frequency,
                spec.delta_ex,
                spec.rabi_frequency,
                eta,
                0.0,
            )?;
            let delta = params.couplings.detuning;
            let c = ((delta / 2.0).powi(2) + spec.g * spec.g).sqrt();
            if c == 0.0 {
                return Err(invalid("couplings", "g and Delta both vanish; no exchange period"));
            }
            let grid = uniform_grid(0.0, PI / c, spec.points)?;
            let cmp = effective_vs_full_error(&params, &spec.model, spec.truncation, &grid, &spec.integrator)?;
            // The gap is relative, so the Rabi frequency drops out.
            let laser = LaserParams::on_calcium_line(1.0, eta, 0.0, 0.0)?;
            let gap = lamb_dicke_gap(&laser, &ld_layout, FRAC_PI_4 / laser.laser_frequency)?;
            Ok((cmp.max_infidelity(), gap, cmp.max_transfer_full()))
        })
        .collect::<Result<_>>()?;

    let echo = serde_json::to_value(spec).expect("spec serializes");
    let mut result =
        SweepResult::new("rwa", echo, Metadata::new(Some(spec.truncation), Some(spec.integrator.tol)));
    result.push_column("eta", spec.etas.clone())?;
    result.push_column("peak_infidelity", rows.iter().map(|r| r.0).collect())?;
    result.push_column("ld_gap", rows.iter().map(|r| r.1).collect())?;
    result.push_column("max_transfer", rows.iter().map(|r| r.2).collect())?;
    if spec.etas.len() >= 2 {
        let gaps: Vec<f64> = rows.iter().map(|r| r.1).collect();
        result.summary.insert("ld_gap_slope".into(), loglog_slope(&spec.etas, &gaps)?);
        let inf: Vec<f64> = rows.iter().map(|r| r.0).collect();
        if inf.iter().all(|&v| v > 0.0) {
            result.summary.insert("infidelity_slope".into(), loglog_slope(&spec.etas, &inf)?);
        }
    }
    Ok(result)
}
