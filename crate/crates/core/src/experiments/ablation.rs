use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::result::{Metadata, SweepResult};
use crate::dynamics::{effective_vs_full_error, IntegratorOptions};
use crate::error::Result;
use crate::model::{CoulombTerms, FullModelOptions, FullModelParams};

/// Named model variants differing in which Coulomb pieces are kept.
pub fn coulomb_variants() -> Vec<(&'static str, FullModelOptions)> {
    let base = FullModelOptions::default();
    let with = |coulomb, vibrational_rwa| FullModelOptions { coulomb, vibrational_rwa, ..base };
    let self_energy = CoulombTerms { self_energy: true, ..CoulombTerms::BEAM_SPLITTER_ONLY };
    vec![
        ("rwa_beam_splitter", with(CoulombTerms::BEAM_SPLITTER_ONLY, true)),
        ("rwa_self_energy", with(self_energy, true)),
        ("beam_splitter", with(CoulombTerms::BEAM_SPLITTER_ONLY, false)),
        ("counter_rotating", with(CoulombTerms { counter_rotating: true, ..CoulombTerms::BEAM_SPLITTER_ONLY }, false)),
        ("counter_rotating_self_energy", with(CoulombTerms { counter_rotating: true, ..self_energy }, false)),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AblationSpec {
    pub params: FullModelParams,
    pub truncation: usize,
    pub grid: Vec<f64>,
    pub integrator: IntegratorOptions,
}

/// Peak transfer and infidelity against the effective beam splitter for each
/// Coulomb variant. The linear terms are not simulated: they displace each
/// mode by `linear_j / nu_j` zero-point lengths, which is reported instead.
pub fn coulomb_ablation(spec: &AblationSpec) -> Result<SweepResult> {
    let variants = coulomb_variants();
    let rows: Vec<(f64, f64)> = variants
        .par_iter()
        .map(|(_, options)| -> Result<_> {
            let cmp = effective_vs_full_error(&spec.params, options, spec.truncation, &spec.grid, &spec.integrator)?;
            Ok((cmp.max_transfer_full(), cmp.max_infidelity()))
        })
        .collect::<Result<_>>()?;
    let echo = serde_json::json!({
        "spec": spec,
        "variants": variants.iter().map(|(n, o)| serde_json::json!({"name": n, "options": o})).collect::<Vec<_>>(),
    });
    let mut result =
        SweepResult::new("coulomb-ablation", echo, Metadata::new(Some(spec.truncation), Some(spec.integrator.tol)));
    result.push_column("variant", (0..variants.len()).map(|i| i as f64).collect())?;
    result.push_column("max_transfer", rows.iter().map(|r| r.0).collect())?;
    result.push_column("max_infidelity", rows.iter().map(|r| r.1).collect())?;
    let nu = spec.params.trap_frequency;
    for (j, lin) in spec.params.coulomb.linear.iter().enumerate() {
        result.summary.insert(format!("linear_displacement_{}", j + 1), lin.abs() / nu);
    }
    let [q1, q2] = spec.params.coulomb.quadratic;
    result.summary.insert("self_energy_detuning_shift".into(), 2.0 * (q2 - q1));
    Ok(result)
}
