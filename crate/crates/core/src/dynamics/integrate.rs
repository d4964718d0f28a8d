//! Adaptive Dormand-Prince 5(4) integration of the Schrodinger equation.
//!
//! Norms are never renormalized; the drift is reported as a diagnostic. The
//! local error is bounded componentwise by `tol (1 + |y_i|)`.

use std::collections::BTreeMap;

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::model::Hamiltonian;
use crate::quantum::{DensityMatrix, Operator, PureState, C64};

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegratorOptions {
    /// Absolute and relative tolerance of the local error estimate.
    pub tol: f64,
    pub max_steps: usize,
    /// First trial step; chosen from the initial derivative when `None`.
    pub initial_step: Option<f64>,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self { tol: 1e-9, max_steps: 50_000_000, initial_step: None }
    }
}

impl IntegratorOptions {
    pub fn with_tol(tol: f64) -> Self {
        Self { tol, ..Self::default() }
    }

    fn validate(&self) -> Result<()> {
        if !(self.tol.is_finite() && self.tol > 0.0) {
            return Err(invalid("tol", format!("must be positive, got {}", self.tol)));
        }
        if let Some(h) = self.initial_step {
            if !(h.is_finite() && h > 0.0) {
                return Err(invalid("initial_step", format!("must be positive, got {h}")));
            }
        }
        Ok(())
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegratorStats {
    pub accepted: usize,
    pub rejected: usize,
    pub evaluations: usize,
}

/// `t0, ..., t1` with `points` evenly spaced entries; the last is exactly `t1`.
pub fn uniform_grid(t0: f64, t1: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 {
        return Err(invalid("points", format!("need at least 2, got {points}")));
    }
    if !(t0.is_finite() && t1.is_finite() && t1 > t0) {
        return Err(invalid("t_span", format!("need t0 < t1, got [{t0}, {t1}]")));
    }
    let n = (points - 1) as f64;
    let mut grid: Vec<f64> = (0..points).map(|k| t0 + (t1 - t0) * (k as f64 / n)).collect();
    grid[points - 1] = t1;
    Ok(grid)
}

pub(crate) fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(invalid("grid", "must not be empty"));
    }
    if grid.iter().any(|t| !t.is_finite()) || grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("grid", "must be finite and strictly increasing"));
    }
    Ok(())
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights minus the embedded fourth-order ones.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

/// Integrates `dy/dt = f(t, y)` from `grid[0]`, calling `output` at every grid
/// time (including the first). Steps are shortened to land on grid points.
pub(crate) fn dormand_prince<F, O>(
    f: F,
    y0: DVector<C64>,
    grid: &[f64],
    options: &IntegratorOptions,
    mut output: O,
) -> Result<IntegratorStats>
where
    F: Fn(f64, &DVector<C64>) -> DVector<C64>,
    O: FnMut(usize, &DVector<C64>) -> Result<()>,
{
    options.validate()?;
    check_grid(grid)?;
    let tol = options.tol;
    let mut stats = IntegratorStats::default();
    let mut t = grid[0];
    let mut y = y0;
    output(0, &y)?;
    if grid.len() == 1 {
        return Ok(stats);
    }
    let span = grid[grid.len() - 1] - t;
    let mut k1 = f(t, &y);
    stats.evaluations += 1;
    let mut h = match options.initial_step {
        Some(h) => h,
        None => {
            let dy = k1.norm();
            let yn = y.norm().max(tol);
            if dy > 0.0 {
                (0.01 * yn / dy).min(span)
            } else {
                span
            }
        }
    };
    let mut next = 1;
    let mut steps = 0usize;
    let mut k = Vec::with_capacity(7);
    while next < grid.len() {
        let target = grid[next];
        let mut landing = false;
        if t + h >= target || target - (t + h) < 1e-12 * h {
            h = target - t;
            landing = true;
        }
        if steps >= options.max_steps {
            return Err(Error::TooManySteps(steps));
        }
        steps += 1;

        k.clear();
        k.push(k1.clone());
        for s in 1..7 {
            let mut ys = y.clone();
            for (j, kj) in k.iter().enumerate() {
                if A[s][j] != 0.0 {
                    ys.axpy(C64::new(h * A[s][j], 0.0), kj, C64::new(1.0, 0.0));
                }
            }
            if s == 6 {
                // FSAL: the last stage is evaluated at the proposed solution.
                let k7 = f(t + h, &ys);
                k.push(k7);
                stats.evaluations += 1;
                let mut err = 0.0;
                for i in 0..y.len() {
                    let mut e = C64::new(0.0, 0.0);
                    for (kj, ej) in k.iter().zip(E.iter()) {
                        if *ej != 0.0 {
                            e += kj[i] * *ej;
                        }
                    }
                    let scale = tol + tol * y[i].norm().max(ys[i].norm());
                    err = f64::max(err, (e * h).norm() / scale);
                }
                let err = if err.is_finite() { err } else { f64::INFINITY };
                if err <= 1.0 {
                    stats.accepted += 1;
                    t = if landing { target } else { t + h };
                    y = ys;
                    k1 = k.pop().expect("seven stages");
                    if landing {
                        output(next, &y)?;
                        next += 1;
                    }
                    let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
                    if !landing || factor < 1.0 {
                        h *= factor;
                    }
                } else {
                    stats.rejected += 1;
                    h *= (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
                }
                if h < 1e-14 * t.abs().max(span) {
                    return Err(Error::StepSizeUnderflow { t, step: h, error: err, steps });
                }
            } else {
                k.push(f(t + C[s] * h, &ys));
                stats.evaluations += 1;
            }
        }
    }
    Ok(stats)
}

/// Quantity recorded at every output time.
#[derive(Clone, Debug)]
pub enum Observable {
    /// `Re <O>`.
    Expectation { name: String, operator: Operator },
    /// Population of a reference state, `|<phi|psi>|^2` or `<phi|rho|phi>`.
    Population { name: String, target: PureState },
}

impl Observable {
    pub fn expectation(name: impl Into<String>, operator: Operator) -> Self {
        Self::Expectation { name: name.into(), operator }
    }

    pub fn population(name: impl Into<String>, target: PureState) -> Self {
        Self::Population { name: name.into(), target }
    }

    pub fn name(&self) -> &str {
        match self {
            Self::Expectation { name, .. } | Self::Population { name, .. } => name,
        }
    }

    pub(crate) fn on_pure(&self, psi: &DVector<C64>) -> f64 {
        match self {
            Self::Expectation { operator, .. } => psi.dotc(&(operator.matrix() * psi)).re,
            Self::Population { target, .. } => target.amplitudes().dotc(psi).norm_sqr(),
        }
    }

    pub(crate) fn on_density(&self, rho: &nalgebra::DMatrix<C64>) -> f64 {
        match self {
            Self::Expectation { operator, .. } => (operator.matrix() * rho).trace().re,
            Self::Population { target, .. } => {
                let v = target.amplitudes();
                v.dotc(&(rho * v)).re
            }
        }
    }

    pub(crate) fn check(&self, space: &crate::quantum::CompositeSpace) -> Result<()> {
        match self {
            Self::Expectation { operator, .. } => space.ensure_same_shape(operator.space()),
            Self::Population { target, .. } => space.ensure_same_shape(target.space()),
        }
    }
}

/// States and named observables on the output grid.
#[derive(Clone, Debug)]
pub struct EvolutionResult<S> {
    pub times: Vec<f64>,
    pub states: Vec<S>,
    pub observables: BTreeMap<String, Vec<f64>>,
    /// Largest deviation of the norm (pure) or trace (mixed) from its initial
    /// value over the output grid.
    pub max_norm_drift: f64,
    /// Smallest density-matrix eigenvalue seen on the grid (mixed only).
    pub min_eigenvalue: Option<f64>,
    pub stats: IntegratorStats,
}

impl<S> EvolutionResult<S> {
    pub fn observable(&self, name: &str) -> Option<&[f64]> {
        self.observables.get(name).map(Vec::as_slice)
    }

    pub fn final_state(&self) -> &S {
        self.states.last().expect("at least one output time")
    }
}

pub(crate) fn observable_columns(observables: &[Observable], len: usize) -> BTreeMap<String, Vec<f64>> {
    observables.iter().map(|o| (o.name().to_string(), Vec::with_capacity(len))).collect()
}

/// Integrates `i d psi/dt = H(t) psi` and samples `observables` on `grid`.
pub fn integrate_tdse<H: Hamiltonian + ?Sized>(
    h: &H,
    psi0: &PureState,
    grid: &[f64],
    options: &IntegratorOptions,
    observables: &[Observable],
) -> Result<EvolutionResult<PureState>> {
    h.space().ensure_same_shape(psi0.space())?;
    for o in observables {
        o.check(psi0.space())?;
    }
    let minus_i = C64::new(0.0, -1.0);
    let cached = h.is_time_independent().then(|| h.matrix_at(grid[0]));
    let rhs = |t: f64, y: &DVector<C64>| match &cached {
        Some(m) => m * y * minus_i,
        None => h.apply(t, y) * minus_i,
    };
    let norm0 = psi0.norm();
    let mut states = Vec::with_capacity(grid.len());
    let mut columns = observable_columns(observables, grid.len());
    let mut drift = 0.0f64;
    let stats = dormand_prince(rhs, psi0.amplitudes().clone(), grid, options, |_, y| {
        drift = drift.max((y.norm() - norm0).abs());
        for o in observables {
            columns.get_mut(o.name()).expect("column per observable").push(o.on_pure(y));
        }
        states.push(PureState::from_evolved(psi0.space().clone(), y.clone()));
        Ok(())
    })?;
    Ok(EvolutionResult {
        times: grid.to_vec(),
        states,
        observables: columns,
        max_norm_drift: drift,
        min_eigenvalue: None,
        stats,
    })
}

pub(crate) fn density_from(space: &crate::quantum::CompositeSpace, y: &DVector<C64>) -> Result<DensityMatrix> {
    let d = space.total_dim();
    DensityMatrix::from_evolved(space.clone(), nalgebra::DMatrix::from_column_slice(d, d, y.as_slice()))
}
