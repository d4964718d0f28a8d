use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::result::{check_monotone, Metadata, SweepResult};
use crate::dynamics::{analytic_swap, integrate_tdse, max_swap_probability, uniform_grid, IntegratorOptions, Observable};
use crate::error::Result;
use crate::model::{beam_splitter_hamiltonian, Layout};
use crate::quantum::PureState;

/// Occupancy curves `|beta|^2` against `g t` for several `Delta / g`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fig2Spec {
    pub delta_over_g: Vec<f64>,
    pub gt_max: f64,
    pub points: usize,
    pub truncation: usize,
    pub integrator: IntegratorOptions,
}

impl Default for Fig2Spec {
    fn default() -> Self {
        Self {
            delta_over_g: vec![0.0, 2.0, 5.0, 10.0],
            gt_max: 10.0,
            points: 1001,
            truncation: 2,
            integrator: IntegratorOptions::default(),
        }
    }
}

/// Column label for a detuning value, e.g. `2` or `2.5`.
pub fn detuning_label(r: f64) -> String {
    format!("{r}")
}

/// Analytic and integrated curves with `g = 1`, so the time axis is `g t`.
pub fn sweep_fig2(spec: &Fig2Spec) -> Result<SweepResult> {
    check_monotone("delta_over_g", &spec.delta_over_g)?;
    let grid = uniform_grid(0.0, spec.gt_max, spec.points)?;
    let layout = Layout::two_modes(spec.truncation)?;
    let start = PureState::basis(layout.space(), &[0, 1])?;
    let moved = PureState::basis(layout.space(), &[1, 0])?;

    let curves: Vec<(Vec<f64>, Vec<f64>)> = spec
        .delta_over_g
        .par_iter()
        .map(|&r| -> Result<_> {
            let analytic = grid
                .iter()
                .map(|&t| analytic_swap(1.0, r, t).map(|a| a.occupancy()))
                .collect::<Result<Vec<_>>>()?;
            let h = beam_splitter_hamiltonian(1.0, r, &layout)?;
            let obs = [Observable::population("moved", moved.clone())];
            let run = integrate_tdse(&h, &start, &grid, &spec.integrator, &obs)?;
            Ok((analytic, run.observables["moved"].clone()))
        })
        .collect::<Result<_>>()?;

    let echo = serde_json::to_value(spec).expect("spec serializes");
    let mut result = SweepResult::new("fig2", echo, Metadata::new(Some(spec.truncation), Some(spec.integrator.tol)));
    result.push_column("gt", grid.clone())?;
    let mut worst = 0.0f64;
    for (&r, (analytic, numeric)) in spec.delta_over_g.iter().zip(&curves) {
        let label = detuning_label(r);
        let observed = analytic.iter().cloned().fold(0.0, f64::max);
        worst = analytic.iter().zip(numeric).fold(worst, |m, (a, b)| m.max((a - b).abs()));
        let (peak, first) = max_swap_probability(1.0, r)?;
        result.summary.insert(format!("peak_{label}"), peak);
        result.summary.insert(format!("peak_time_{label}"), first);
        result.summary.insert(format!("sampled_max_{label}"), observed);
        result.push_column(format!("beta_sq_analytic_{label}"), analytic.clone())?;
    }
    for (&r, (_, numeric)) in spec.delta_over_g.iter().zip(&curves) {
        result.push_column(format!("beta_sq_numeric_{}", detuning_label(r)), numeric.clone())?;
    }
    result.summary.insert("max_abs_difference".into(), worst);
    Ok(result)
}
