use std::f64::consts::{FRAC_PI_2, PI, TAU};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::register::WellRegister;
use crate::error::{invalid, Result};
use crate::quantum::{hermitian_eigen, spectral_apply, LocalOperator, Operator, C64};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum GateKind {
    /// Red-sideband exchange `|0_cm, up> <-> |1_cm, down>` in one well.
    SidebandTransfer { well: usize },
    /// Beam-splitter exchange between the CM modes of wells `j` and `j + 1`.
    CmSwap { j: usize },
    /// NOT on the qubit of `well`, controlled by its CM holding one phonon.
    CmConditionedNot { well: usize },
}

/// A single pulse: `U = exp(-i G)` with `G` fixed by the kind, the rotation
/// `angle` and the `phase`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateOp {
    pub kind: GateKind,
    pub angle: f64,
    pub phase: f64,
    pub duration: f64,
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

impl GateOp {
    pub fn new(kind: GateKind, angle: f64, phase: f64, duration: f64) -> Result<Self> {
        if !(0.0..TAU).contains(&angle) {
            return Err(invalid("angle", format!("must lie in [0, 2 pi), got {angle}")));
        }
        if !(duration.is_finite() && duration > 0.0) {
            return Err(invalid("duration", format!("must be positive, got {duration}")));
        }
        if !phase.is_finite() {
            return Err(invalid("phase", "must be finite"));
        }
        Ok(Self { kind, angle, phase, duration })
    }

    pub fn factors(&self, register: &WellRegister) -> Result<Vec<usize>> {
        match self.kind {
            GateKind::SidebandTransfer { well } | GateKind::CmConditionedNot { well } => {
                Ok(vec![register.qubit(well)?, register.cm(well)?])
            }
            GateKind::CmSwap { j } => {
                if j == 0 || j >= register.wells() {
                    return Err(invalid("j", format!("need 1 <= j < {}, got {j}", register.wells())));
                }
                Ok(vec![register.cm(j)?, register.cm(j + 1)?])
            }
        }
    }

    /// Hermitian generator on the factors returned by `factors`, local
    /// ordering with the first factor most significant.
    pub fn generator(&self, register: &WellRegister) -> Result<DMatrix<C64>> {
        self.factors(register)?;
        let n = register.truncation();
        match self.kind {
            GateKind::SidebandTransfer { .. } => {
                // Block {|0,up>, |1,down>} = local indices {n, 1}:
                // G = -(phase + pi/2) (angle/pi) P + (angle/2) X, so that a pi
                // pulse maps each onto the other with factor e^{i phase}.
                let (up0, down1) = (n, 1);
                let mut g = DMatrix::zeros(2 * n, 2 * n);
                let diag = -(self.phase + FRAC_PI_2) * self.angle / PI;
                g[(up0, up0)] = c(diag);
                g[(down1, down1)] = c(diag);
                g[(up0, down1)] = c(self.angle / 2.0);
                g[(down1, up0)] = c(self.angle / 2.0);
                Ok(g)
            }
            GateKind::CmSwap { .. } => {
                // G = -angle (e^{i phase} a_j a_{j+1}^dag + h.c.)
                let a = Operator::annihilation(n)?.into_matrix();
                let id = DMatrix::<C64>::identity(n, n);
                let hop = a.kronecker(&id) * id.kronecker(&a.adjoint()) * C64::from_polar(1.0, self.phase);
                Ok((&hop + hop.adjoint()) * c(-self.angle))
            }
            GateKind::CmConditionedNot { .. } => {
                // Qubit flip on the one-phonon level: G = (angle/2) (X - I) there.
                let (down1, up1) = (1, n + 1);
                let mut g = DMatrix::zeros(2 * n, 2 * n);
                let h = self.angle / 2.0;
                g[(down1, down1)] = c(-h);
                g[(up1, up1)] = c(-h);
                g[(down1, up1)] = C64::from_polar(h, -self.phase);
                g[(up1, down1)] = C64::from_polar(h, self.phase);
                Ok(g)
            }
        }
    }

    pub fn local_unitary(&self, register: &WellRegister) -> Result<DMatrix<C64>> {
        let (values, vectors) = hermitian_eigen(&self.generator(register)?);
        Ok(spectral_apply(&values, &vectors, |e| C64::from_polar(1.0, -e)))
    }

    pub fn local_operator(&self, register: &WellRegister) -> Result<LocalOperator> {
        LocalOperator::new(register.space(), self.factors(register)?, self.local_unitary(register)?)
    }

    /// The pulse as a full-space operator.
    pub fn unitary(&self, register: &WellRegister) -> Result<Operator> {
        self.local_operator(register)?.to_operator(register.space())
    }

    /// Full-space Hamiltonian that produces the pulse when applied for
    /// `duration`.
    pub fn hamiltonian(&self, register: &WellRegister) -> Result<Operator> {
        let generator = LocalOperator::new(
            register.space(),
            self.factors(register)?,
            self.generator(register)? * c(1.0 / self.duration),
        )?;
        generator.to_operator(register.space())
    }
}

/// Phase of the sideband transfer in an `n`-well protocol, `(1 - n) pi / 2`,
/// wrapped to `[0, 2 pi)`.
pub fn v1_phase(n: usize) -> f64 {
    ((1.0 - n as f64) * FRAC_PI_2).rem_euclid(TAU)
}

/// `V_1`: `|0_cm, up>_1 -> e^{i (1-n) pi/2} |1_cm, down>_1` and back with the
/// same factor.
pub fn op_v1(n: usize, register: &WellRegister, duration: f64) -> Result<GateOp> {
    let op = GateOp::new(GateKind::SidebandTransfer { well: 1 }, PI, v1_phase(n), duration)?;
    op.factors(register)?;
    Ok(op)
}

/// `U_{j,j+1}(gt) = exp[i gt (a_j a_{j+1}^dag + h.c.)]`.
pub fn op_cm_swap(j: usize, gt: f64, register: &WellRegister, duration: f64) -> Result<GateOp> {
    let op = GateOp::new(GateKind::CmSwap { j }, gt, 0.0, duration)?;
    op.factors(register)?;
    Ok(op)
}

/// `S_n` on the last well.
pub fn op_sn(register: &WellRegister, duration: f64) -> Result<GateOp> {
    GateOp::new(GateKind::CmConditionedNot { well: register.wells() }, PI, 0.0, duration)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// Carries a phonon from well 1 to well n.
    OneToN,
    /// Carries it back.
    NToOne,
}

/// Chain of resonant `pi/2` swaps, in application order. `OneToN` applies
/// `U_{1,2}` first, `NToOne` applies `U_{n-1,n}` first.
pub fn op_m(direction: Direction, register: &WellRegister, swap_duration: f64) -> Result<Vec<GateOp>> {
    let n = register.wells();
    let js: Vec<usize> = match direction {
        Direction::OneToN => (1..n).collect(),
        Direction::NToOne => (1..n).rev().collect(),
    };
    js.into_iter().map(|j| op_cm_swap(j, FRAC_PI_2, register, swap_duration)).collect()
}
