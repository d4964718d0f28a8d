use serde::{Deserialize, Serialize};

use super::fig2::{sweep_fig2, Fig2Spec};
use crate::dynamics::{effective_vs_full_error, uniform_grid, IntegratorOptions};
use crate::error::{invalid, Result};
use crate::gates::{restricted_matrix, GateSequence, ProtocolTiming, WellRegister};
use crate::model::{FullModelOptions, FullModelParams};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scenario", rename_all = "kebab-case")]
pub enum Scenario {
    /// The occupancy curves, numerically integrated.
    Fig2 { spec: Fig2Spec },
    /// The CNOT sequence restricted to the computational subspace.
    Cnot { wells: usize },
    /// Full-model transfer over `duration` seconds.
    FullModel {
        params: FullModelParams,
        options: FullModelOptions,
        duration: f64,
        points: usize,
        integrator: IntegratorOptions,
    },
}

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Fig2 { .. } => "fig2",
            Self::Cnot { .. } => "cnot",
            Self::FullModel { .. } => "full-model",
        }
    }

    /// Pass threshold on the difference between successive truncations.
    pub fn threshold(&self) -> f64 {
        match self {
            Self::Fig2 { .. } | Self::Cnot { .. } => 1e-9,
            Self::FullModel { .. } => 1e-6,
        }
    }

    /// Observables at one truncation, flattened.
    pub fn observables(&self, truncation: usize) -> Result<Vec<f64>> {
        match self {
            Self::Fig2 { spec } => {
                let spec = Fig2Spec { truncation, ..spec.clone() };
                let r = sweep_fig2(&spec)?;
                Ok(r.columns
                    .iter()
                    .filter(|c| c.name.starts_with("beta_sq_numeric"))
                    .flat_map(|c| c.values.iter().copied())
                    .collect())
            }
            Self::Cnot { wells } => {
                let register = WellRegister::new(*wells, truncation)?;
                let seq = GateSequence::cnot(&register, &ProtocolTiming::default())?;
                let (m, reset) = restricted_matrix(&register, &seq)?;
                let mut out: Vec<f64> = m.iter().flat_map(|z| [z.re, z.im]).collect();
                out.push(reset);
                Ok(out)
            }
            Self::FullModel { params, options, duration, points, integrator } => {
                let grid = uniform_grid(0.0, *duration, *points)?;
                let cmp = effective_vs_full_error(params, options, truncation, &grid, integrator)?;
                Ok(cmp.transfer_full)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub scenario: String,
    pub truncations: Vec<usize>,
    /// Max abs difference between each truncation and the next.
    pub differences: Vec<f64>,
    pub max_difference: f64,
    pub threshold: f64,
    pub passed: bool,
}

pub fn convergence_check(scenario: &Scenario, truncations: &[usize]) -> Result<ConvergenceReport> {
    if truncations.len() < 2 {
        return Err(invalid("truncations", "need at least two values"));
    }
    let runs = truncations.iter().map(|&n| scenario.observables(n)).collect::<Result<Vec<_>>>()?;
    let mut differences = Vec::new();
    for pair in runs.windows(2) {
        if pair[0].len() != pair[1].len() {
            return Err(invalid("scenario", "observable count changed with truncation"));
        }
        differences.push(pair[0].iter().zip(&pair[1]).fold(0.0f64, |m, (a, b)| m.max((a - b).abs())));
    }
    let max_difference = differences.iter().cloned().fold(0.0, f64::max);
    let threshold = scenario.threshold();
    Ok(ConvergenceReport {
        scenario: scenario.name().into(),
        truncations: truncations.to_vec(),
        differences,
        max_difference,
        threshold,
        passed: max_difference < threshold,
    })
}
