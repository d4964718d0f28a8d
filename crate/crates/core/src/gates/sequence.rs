use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::ops::{op_m, op_sn, op_v1, Direction, GateOp};
use super::register::WellRegister;
use super::timing::{swap_duration, timing_budget, TimingBudget};
use crate::dynamics::{collapse_operators, lindblad_evolve, DecoherenceParams, IntegratorOptions};
use crate::error::{invalid, Error, Result};
use crate::quantum::{DensityMatrix, Operator, PureState, C64};

/// Largest total dimension for which a dense full-space unitary is formed.
pub const DENSE_LIMIT: usize = 1 << 14;

/// Largest total dimension for the master-equation gate run, which evolves
/// `d^2` entries.
pub const NOISY_LIMIT: usize = 256;

/// Pulses in application order (first element acts first).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateSequence {
    ops: Vec<GateOp>,
    g_cm: f64,
}

/// Pulse durations and CM coupling of the protocol.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolTiming {
    /// CM-CM coupling (rad/s); sets the swap duration `pi / (2 g_cm)`.
    pub g_cm: f64,
    pub t_v: f64,
    pub t_s: f64,
}

impl Default for ProtocolTiming {
    /// `g_cm = 3.5e4 rad/s`, `t_v = 8 us`, `t_s = 50 us`.
    fn default() -> Self {
        Self { g_cm: 3.5e4, t_v: 8e-6, t_s: 50e-6 }
    }
}

impl GateSequence {
    pub fn new(ops: Vec<GateOp>, g_cm: f64) -> Self {
        Self { ops, g_cm }
    }

    /// `C_{1,n} = V_1 M_{n,1} S_n M_{1,n} V_1`, rightmost first.
    pub fn cnot(register: &WellRegister, timing: &ProtocolTiming) -> Result<Self> {
        let n = register.wells();
        let t_u = swap_duration(timing.g_cm)?;
        let v1 = op_v1(n, register, timing.t_v)?;
        let mut ops = vec![v1];
        ops.extend(op_m(Direction::OneToN, register, t_u)?);
        ops.push(op_sn(register, timing.t_s)?);
        ops.extend(op_m(Direction::NToOne, register, t_u)?);
        ops.push(v1);
        Ok(Self::new(ops, timing.g_cm))
    }

    pub fn ops(&self) -> &[GateOp] {
        &self.ops
    }

    pub fn g_cm(&self) -> f64 {
        self.g_cm
    }

    pub fn total_duration(&self) -> f64 {
        self.ops.iter().map(|o| o.duration).sum()
    }

    /// Budget of a CNOT sequence built by `cnot`.
    pub fn timing(&self, register: &WellRegister) -> Result<TimingBudget> {
        let n = register.wells();
        let first = self.ops.first().ok_or_else(|| invalid("sequence", "is empty"))?;
        let sn = self.ops.get(n).ok_or_else(|| invalid("sequence", "is not a CNOT sequence"))?;
        timing_budget(n, first.duration, swap_duration(self.g_cm)?, sn.duration)
    }

    pub fn apply_vector(&self, register: &WellRegister, psi: &DVector<C64>) -> Result<DVector<C64>> {
        let mut v = psi.clone();
        for op in &self.ops {
            v = op.local_operator(register)?.apply_vector(register.space(), &v)?;
        }
        Ok(v)
    }

    pub fn apply(&self, register: &WellRegister, psi: &PureState) -> Result<PureState> {
        register.space().ensure_same_shape(psi.space())?;
        let v = self.apply_vector(register, psi.amplitudes())?;
        Ok(PureState::from_evolved(psi.space().clone(), v))
    }

    /// Dense product of all pulses; refused above `DENSE_LIMIT`.
    pub fn unitary(&self, register: &WellRegister) -> Result<Operator> {
        let d = register.dim();
        check_dense(d)?;
        let mut m = DMatrix::identity(d, d);
        for op in &self.ops {
            m = op.local_operator(register)?.apply_left(register.space(), &m)?;
        }
        Operator::new(register.space().clone(), m)
    }

    /// Runs each pulse as `H = G / duration` for its duration under the
    /// master equation, starting from `rho0`.
    pub fn apply_noisy(
        &self,
        register: &WellRegister,
        rho0: &DensityMatrix,
        decoherence: &DecoherenceParams,
        options: &IntegratorOptions,
    ) -> Result<DensityMatrix> {
        let collapse = collapse_operators(decoherence, register.space())?;
        let mut rho = rho0.clone();
        for op in &self.ops {
            let h = op.hamiltonian(register)?;
            let run = lindblad_evolve(&h, &collapse, &rho, &[0.0, op.duration], options, &[])?;
            rho = run.states.into_iter().next_back().expect("two output times");
        }
        Ok(rho)
    }
}

fn check_dense(dim: usize) -> Result<()> {
    if dim > DENSE_LIMIT {
        return Err(Error::TooLarge { dim, limit: DENSE_LIMIT });
    }
    Ok(())
}

/// Dense CNOT sequence for `n` wells.
pub fn compose_cnot(n: usize, register: &WellRegister) -> Result<Operator> {
    if n != register.wells() {
        return Err(invalid("wells", format!("register has {} wells, asked for {n}", register.wells())));
    }
    GateSequence::cnot(register, &ProtocolTiming::default())?.unitary(register)
}

/// CNOT in the basis `(down down, down up, up down, up up)`, qubit 1 control.
pub fn cnot_target() -> DMatrix<C64> {
    cnot_between_ends(2)
}

/// CNOT on `n` qubits with qubit 1 as control and qubit `n` as target,
/// identity on the others; qubit 1 is the most significant bit.
pub fn cnot_between_ends(n: usize) -> DMatrix<C64> {
    let d = 1usize << n;
    let mut m = DMatrix::zeros(d, d);
    for k in 0..d {
        m[(cnot_image(n, k), k)] = C64::new(1.0, 0.0);
    }
    m
}

fn cnot_image(n: usize, k: usize) -> usize {
    if (k >> (n - 1)) & 1 == 1 {
        k ^ 1
    } else {
        k
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CnotVerification {
    pub wells: usize,
    pub truncation: usize,
    /// `|tr(T^dag R)|^2 / d^2` with `R` the sequence restricted to the
    /// computational subspace.
    pub fidelity: f64,
    /// `arg tr(T^dag R)`, rad.
    pub global_phase: f64,
    /// `max |R - e^{i phase} T|`.
    pub max_deviation: f64,
    /// Smallest probability, over computational inputs, of finding every CM
    /// in vacuum afterwards.
    pub ancilla_reset_fidelity: f64,
}

/// Sequence restricted to the computational subspace (CMs in vacuum), and
/// the smallest vacuum probability of the CMs over computational inputs.
pub fn restricted_matrix(register: &WellRegister, sequence: &GateSequence) -> Result<(DMatrix<C64>, f64)> {
    let indices = register.computational_indices();
    let d = indices.len();
    let mut restricted = DMatrix::<C64>::zeros(d, d);
    let mut reset = f64::INFINITY;
    for (k, &col) in indices.iter().enumerate() {
        let mut e = DVector::zeros(register.dim());
        e[col] = C64::new(1.0, 0.0);
        let out = sequence.apply_vector(register, &e)?;
        let mut vacuum = 0.0;
        for (a, &row) in indices.iter().enumerate() {
            restricted[(a, k)] = out[row];
            vacuum += out[row].norm_sqr();
        }
        reset = reset.min(vacuum);
    }
    Ok((restricted, reset))
}

/// Checks `sequence` against the CNOT on every computational basis input.
/// Refused above `DENSE_LIMIT` like the dense unitary, although only state
/// vectors are formed.
pub fn verify_cnot(register: &WellRegister, sequence: &GateSequence) -> Result<CnotVerification> {
    let n = register.wells();
    check_dense(register.dim())?;
    let (restricted, reset) = restricted_matrix(register, sequence)?;
    let d = restricted.nrows();
    let target = cnot_between_ends(n);
    let overlap = (target.adjoint() * &restricted).trace() / C64::new(d as f64, 0.0);
    let phase = overlap.arg();
    let max_deviation = (&restricted - &target * C64::from_polar(1.0, phase))
        .iter()
        .fold(0.0f64, |m, z| m.max(z.norm()));
    Ok(CnotVerification {
        wells: n,
        truncation: register.truncation(),
        fidelity: overlap.norm_sqr(),
        global_phase: phase,
        max_deviation,
        ancilla_reset_fidelity: reset,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NoisyGateReport {
    pub decoherence: DecoherenceParams,
    /// Fidelity of the noisy output with the ideal output, per input.
    pub fidelities: Vec<f64>,
    pub mean_fidelity: f64,
    pub min_fidelity: f64,
}

/// Inputs: every computational basis state plus qubit 1 in
/// `(|down> + |up>)/sqrt(2)` with the others down, CMs in vacuum.
pub fn noisy_cnot_fidelity(
    register: &WellRegister,
    sequence: &GateSequence,
    decoherence: &DecoherenceParams,
    options: &IntegratorOptions,
) -> Result<NoisyGateReport> {
    let n = register.wells();
    if register.dim() > NOISY_LIMIT {
        return Err(Error::TooLarge { dim: register.dim(), limit: NOISY_LIMIT });
    }
    let vacuum = vec![0; n];
    let mut inputs = Vec::new();
    for k in 0..1usize << n {
        inputs.push(register.basis_state(&register.computational_bits(k), &vacuum)?);
    }
    let mut down = vec![0; n];
    let a = register.basis_state(&down, &vacuum)?;
    down[0] = 1;
    let b = register.basis_state(&down, &vacuum)?;
    inputs.push(PureState::new(register.space().clone(), a.amplitudes() + b.amplitudes())?);

    let mut fidelities = Vec::with_capacity(inputs.len());
    for psi in &inputs {
        let ideal = sequence.apply(register, psi)?;
        let rho = sequence.apply_noisy(register, &psi.to_density(), decoherence, options)?;
        fidelities.push(rho.fidelity_with_pure(&ideal)?);
    }
    let mean = fidelities.iter().sum::<f64>() / fidelities.len() as f64;
    let min = fidelities.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(NoisyGateReport { decoherence: *decoherence, fidelities, mean_fidelity: mean, min_fidelity: min })
}
