//! Markovian decoherence: `d rho/dt = -i [H, rho] + sum_k gamma_k D[L_k] rho`
//! with `D[L] rho = L rho L^dag - {L^dag L, rho} / 2`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::integrate::{
    density_from, dormand_prince, observable_columns, EvolutionResult, IntegratorOptions,
    Observable,
};
use crate::error::{invalid, Result};
use crate::model::Hamiltonian;
use crate::quantum::{CompositeSpace, DensityMatrix, Operator, Pauli, SubsystemKind, C64};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChannelKind {
    /// `L = a` on modes, `L = sigma_-` on two-level factors.
    AmplitudeDamping,
    /// `L = a^dag a` on modes, `L = sigma_z` on two-level factors.
    Dephasing,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DecoherenceParams {
    /// Rate applied to every bosonic mode (1/s).
    pub gamma_ex: f64,
    /// Rate applied to every two-level factor (1/s).
    pub gamma_in: f64,
    #[serde(default = "default_vibrational")]
    pub vibrational: ChannelKind,
    #[serde(default = "default_internal")]
    pub internal: ChannelKind,
}

fn default_vibrational() -> ChannelKind {
    ChannelKind::AmplitudeDamping
}

fn default_internal() -> ChannelKind {
    ChannelKind::Dephasing
}

impl Default for DecoherenceParams {
    fn default() -> Self {
        Self::none()
    }
}

impl DecoherenceParams {
    pub fn none() -> Self {
        Self::new(0.0, 0.0)
    }

    /// Amplitude damping on the modes and dephasing of the internal states.
    pub fn new(gamma_ex: f64, gamma_in: f64) -> Self {
        Self {
            gamma_ex,
            gamma_in,
            vibrational: default_vibrational(),
            internal: default_internal(),
        }
    }

    /// `gamma_ex = 1e3 / s`, `gamma_in = 1 / s`.
    pub fn typical() -> Self {
        Self::new(1e3, 1.0)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("gamma_ex", self.gamma_ex), ("gamma_in", self.gamma_in)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(invalid(name, format!("must be finite and non-negative, got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CollapseOperator {
    pub rate: f64,
    pub operator: Operator,
}

impl CollapseOperator {
    pub fn new(rate: f64, operator: Operator) -> Result<Self> {
        if !(rate.is_finite() && rate >= 0.0) {
            return Err(invalid("rate", format!("must be finite and non-negative, got {rate}")));
        }
        Ok(Self { rate, operator })
    }
}

/// One collapse operator per factor of `space` with a non-zero rate.
pub fn collapse_operators(
    params: &DecoherenceParams,
    space: &CompositeSpace,
) -> Result<Vec<CollapseOperator>> {
    params.validate()?;
    let mut out = Vec::new();
    for (i, sub) in space.subsystems().iter().enumerate() {
        let (rate, local) = match (sub.kind(), params) {
            (SubsystemKind::BosonicMode, p) => (
                p.gamma_ex,
                match p.vibrational {
                    ChannelKind::AmplitudeDamping => Operator::annihilation(sub.dim())?,
                    ChannelKind::Dephasing => Operator::number(sub.dim())?,
                },
            ),
            (SubsystemKind::TwoLevel, p) => (
                p.gamma_in,
                match p.internal {
                    ChannelKind::AmplitudeDamping => Operator::pauli(Pauli::Minus),
                    ChannelKind::Dephasing => Operator::pauli(Pauli::Z),
                },
            ),
        };
        if rate > 0.0 {
            out.push(CollapseOperator::new(rate, local.embed(i, space)?)?);
        }
    }
    Ok(out)
}

/// Integrates the master equation from `rho0`, sampling on `grid`.
pub fn lindblad_evolve<H: Hamiltonian + ?Sized>(
    h: &H,
    collapse: &[CollapseOperator],
    rho0: &DensityMatrix,
    grid: &[f64],
    options: &IntegratorOptions,
    observables: &[Observable],
) -> Result<EvolutionResult<DensityMatrix>> {
    let space = rho0.space();
    h.space().ensure_same_shape(space)?;
    for l in collapse {
        l.operator.space().ensure_same_shape(space)?;
    }
    for o in observables {
        o.check(space)?;
    }
    let d = space.total_dim();
    let jumps: Vec<(DMatrix<C64>, DMatrix<C64>)> = collapse
        .iter()
        .filter(|l| l.rate > 0.0)
        .map(|l| {
            let m = l.operator.matrix() * C64::new(l.rate.sqrt(), 0.0);
            (m.adjoint(), m)
        })
        .collect();
    let mut damping = DMatrix::<C64>::zeros(d, d);
    for (dag, m) in &jumps {
        damping += dag * m * C64::new(0.5, 0.0);
    }
    // H_eff = H - (i/2) sum L^dag L, so that
    // d rho/dt = -i (H_eff rho - rho H_eff^dag) + sum L rho L^dag.
    let effective = |t: f64| h.matrix_at(t) - &damping * C64::new(0.0, 1.0);
    let cached = h.is_time_independent().then(|| effective(grid[0]));
    let minus_i = C64::new(0.0, -1.0);
    let rhs = |t: f64, y: &DVector<C64>| {
        let rho = DMatrix::from_column_slice(d, d, y.as_slice());
        let owned;
        let heff = match &cached {
            Some(m) => m,
            None => {
                owned = effective(t);
                &owned
            }
        };
        let left = heff * &rho;
        let mut out = (&left - left.adjoint()) * minus_i;
        for (dag, m) in &jumps {
            out += m * &rho * dag;
        }
        DVector::from_column_slice(out.as_slice())
    };

    let trace0 = rho0.trace();
    let mut states = Vec::with_capacity(grid.len());
    let mut columns = observable_columns(observables, grid.len());
    let mut drift = 0.0f64;
    let mut min_eig = f64::INFINITY;
    let y0 = DVector::from_column_slice(rho0.matrix().as_slice());
    let stats = dormand_prince(rhs, y0, grid, options, |_, y| {
        let rho = density_from(space, y)?;
        drift = drift.max((rho.trace() - trace0).abs());
        min_eig = min_eig.min(rho.min_eigenvalue());
        for o in observables {
            columns.get_mut(o.name()).expect("column per observable").push(o.on_density(rho.matrix()));
        }
        states.push(rho);
        Ok(())
    })?;
    Ok(EvolutionResult {
        times: grid.to_vec(),
        states,
        observables: columns,
        max_norm_drift: drift,
        min_eigenvalue: Some(min_eig),
        stats,
    })
}
