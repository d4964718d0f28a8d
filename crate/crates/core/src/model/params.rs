use serde::{Deserialize, Serialize};

use super::constants::{
    CALCIUM_40_ION_MASS, CALCIUM_729_FREQUENCY, ELEMENTARY_CHARGE, EPSILON_0, HBAR,
};
use crate::error::{invalid, Result};

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(invalid(name, format!("must be finite and > 0, got {value}")))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IonParams {
    /// kg
    pub mass: f64,
    /// C
    pub charge: f64,
    /// Axial trap frequency, rad/s.
    pub trap_frequency: f64,
}

impl IonParams {
    pub fn new(mass: f64, charge: f64, trap_frequency: f64) -> Result<Self> {
        let ion = Self { mass, charge, trap_frequency };
        ion.validate()?;
        Ok(ion)
    }

    pub fn calcium_40(trap_frequency: f64) -> Self {
        Self { mass: CALCIUM_40_ION_MASS, charge: ELEMENTARY_CHARGE, trap_frequency }
    }

    pub fn validate(&self) -> Result<()> {
        positive("mass", self.mass)?;
        positive("charge", self.charge)?;
        positive("trap_frequency", self.trap_frequency)
    }

    /// Ground-state extent `sqrt(hbar / (2 M nu))`, m.
    pub fn zero_point_length(&self, hbar: f64) -> f64 {
        (hbar / (2.0 * self.mass * self.trap_frequency)).sqrt()
    }
}

/// Ions in a row of wells with uniform spacing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrapArrayParams {
    /// Well separation d, m.
    pub separation: f64,
    pub ions: Vec<IonParams>,
    pub epsilon_0: f64,
    pub hbar: f64,
}

impl TrapArrayParams {
    pub fn new(separation: f64, ions: Vec<IonParams>) -> Result<Self> {
        let trap = Self { separation, ions, epsilon_0: EPSILON_0, hbar: HBAR };
        trap.validate()?;
        Ok(trap)
    }

    /// Two 40Ca+ ions 40 um apart with nu = (5.0, 5.1) x 10^6 rad/s.
    pub fn calcium_pair() -> Self {
        Self {
            separation: 40e-6,
            ions: vec![IonParams::calcium_40(5.0e6), IonParams::calcium_40(5.1e6)],
            epsilon_0: EPSILON_0,
            hbar: HBAR,
        }
    }

    pub fn validate(&self) -> Result<()> {
        positive("separation", self.separation)?;
        positive("epsilon_0", self.epsilon_0)?;
        positive("hbar", self.hbar)?;
        if self.ions.len() < 2 {
            return Err(invalid("ions", format!("need at least 2 ions, got {}", self.ions.len())));
        }
        self.ions.iter().try_for_each(IonParams::validate)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaserParams {
    /// Omega_0, rad/s.
    pub rabi_frequency: f64,
    /// eta, dimensionless.
    pub lamb_dicke: f64,
    /// omega_l, rad/s.
    pub laser_frequency: f64,
    /// phi_l, rad.
    pub phase: f64,
    /// omega_a, rad/s.
    pub atomic_frequency: f64,
}

impl LaserParams {
    pub fn new(
        rabi_frequency: f64,
        lamb_dicke: f64,
        laser_frequency: f64,
        phase: f64,
        atomic_frequency: f64,
    ) -> Result<Self> {
        let laser = Self { rabi_frequency, lamb_dicke, laser_frequency, phase, atomic_frequency };
        laser.validate()?;
        Ok(laser)
    }

    /// Drive on the 729 nm line detuned by `delta_in = omega_a - omega_l`.
    pub fn on_calcium_line(
        rabi_frequency: f64,
        lamb_dicke: f64,
        phase: f64,
        delta_in: f64,
    ) -> Result<Self> {
        Self::new(
            rabi_frequency,
            lamb_dicke,
            CALCIUM_729_FREQUENCY - delta_in,
            phase,
            CALCIUM_729_FREQUENCY,
        )
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rabi_frequency.is_finite() && self.rabi_frequency >= 0.0) {
            return Err(invalid("rabi_frequency", format!("must be >= 0, got {}", self.rabi_frequency)));
        }
        if !(self.lamb_dicke.is_finite() && (0.0..1.0).contains(&self.lamb_dicke)) {
            return Err(invalid("lamb_dicke", format!("must lie in [0, 1), got {}", self.lamb_dicke)));
        }
        for (name, v) in [
            ("laser_frequency", self.laser_frequency),
            ("phase", self.phase),
            ("atomic_frequency", self.atomic_frequency),
        ] {
            if !v.is_finite() {
                return Err(invalid(name, "must be finite"));
            }
        }
        Ok(())
    }

    /// delta_in = omega_a - omega_l.
    pub fn detuning(&self) -> f64 {
        self.atomic_frequency - self.laser_frequency
    }
}
