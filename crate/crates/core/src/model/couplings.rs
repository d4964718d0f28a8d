use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::params::{LaserParams, TrapArrayParams};
use crate::error::{invalid, Result};

/// How the carrier coefficient of `F` in the first rotating frame is formed.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CarrierNormalization {
    /// `Omega_tilde = Omega_0 (1 - eta^2 / 2)`, the coefficient the second-order
    /// expansion actually produces (rad/s).
    #[default]
    WithRabi,
    /// `Omega_tilde = 1 - eta^2 / 2` taken literally (dimensionless).
    Dimensionless,
}

/// Coefficients of the expanded Coulomb interaction, `V / hbar = A + A^dag` with
/// `A = sum_j [linear_j a_j + quadratic_j (a_j^2 + a_j a_j^dag)] - cross (a_1 a_2 + a_1 a_2^dag)`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoulombCoefficients {
    /// `(-1)^j K xi_j / (hbar d)`, rad/s.
    pub linear: [f64; 2],
    /// `K xi_j^2 / (hbar d^2)`, rad/s.
    pub quadratic: [f64; 2],
    /// `2 K xi_1 xi_2 / (hbar d^2) = g`, rad/s.
    pub cross: f64,
}

impl CoulombCoefficients {
    /// Bare beam-splitter coupling with no single-ion terms.
    pub fn beam_splitter(g: f64) -> Self {
        Self { linear: [0.0; 2], quadratic: [0.0; 2], cross: g }
    }
}

/// Quantities derived from the trap and laser parameters. All frequencies in
/// rad/s.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivedCouplings {
    /// `K = q_1 q_2 / (4 pi eps_0 d)`, J.
    pub coulomb_constant: f64,
    /// `xi_j = sqrt(hbar / (2 M_j nu_j))`, m.
    pub zero_point_lengths: [f64; 2],
    /// `g = 2 K xi_1 xi_2 / (hbar d^2)`.
    pub g: f64,
    /// `delta_ex = nu_2 - nu_1`.
    pub delta_ex: f64,
    /// `delta_in = omega_a - omega_l`.
    pub delta_in: f64,
    pub omega_tilde: f64,
    /// `Omega = Omega_0 eta^2`.
    pub omega: f64,
    /// `Delta = delta_ex - Omega`.
    pub detuning: f64,
    pub carrier_normalization: CarrierNormalization,
}

impl DerivedCouplings {
    /// Couplings given directly as rates, with no trap geometry behind them
    /// (`K` and `xi_j` are left at zero).
    pub fn from_rates(g: f64, delta_ex: f64, delta_in: f64, rabi: f64, eta: f64) -> Result<Self> {
        if !(g.is_finite() && g >= 0.0) {
            return Err(invalid("g", format!("must be finite and non-negative, got {g}")));
        }
        if !(0.0..1.0).contains(&eta) {
            return Err(invalid("lamb_dicke", format!("must lie in [0, 1), got {eta}")));
        }
        if !(rabi.is_finite() && rabi >= 0.0) {
            return Err(invalid("rabi_frequency", format!("must be non-negative, got {rabi}")));
        }
        let omega = rabi * eta * eta;
        Ok(Self {
            coulomb_constant: 0.0,
            zero_point_lengths: [0.0; 2],
            g,
            delta_ex,
            delta_in,
            omega_tilde: rabi * (1.0 - eta * eta / 2.0),
            omega,
            detuning: delta_ex - omega,
            carrier_normalization: CarrierNormalization::WithRabi,
        })
    }

    /// Coulomb expansion coefficients for the first two ions.
    pub fn coulomb(&self, trap: &TrapArrayParams) -> CoulombCoefficients {
        let k = self.coulomb_constant;
        let d = trap.separation;
        let [x1, x2] = self.zero_point_lengths;
        CoulombCoefficients {
            linear: [-k * x1 / (trap.hbar * d), k * x2 / (trap.hbar * d)],
            quadratic: [k * x1 * x1 / (trap.hbar * d * d), k * x2 * x2 / (trap.hbar * d * d)],
            cross: self.g,
        }
    }
}

pub fn derive_couplings(trap: &TrapArrayParams, laser: &LaserParams) -> Result<DerivedCouplings> {
    derive_couplings_with(trap, laser, CarrierNormalization::WithRabi)
}

/// Couplings between the first two ions of `trap`.
pub fn derive_couplings_with(
    trap: &TrapArrayParams,
    laser: &LaserParams,
    normalization: CarrierNormalization,
) -> Result<DerivedCouplings> {
    trap.validate()?;
    laser.validate()?;
    let (ion1, ion2) = (&trap.ions[0], &trap.ions[1]);
    let d = trap.separation;
    let coulomb_constant = ion1.charge * ion2.charge / (4.0 * PI * trap.epsilon_0 * d);
    let xi1 = ion1.zero_point_length(trap.hbar);
    let xi2 = ion2.zero_point_length(trap.hbar);
    let g = 2.0 * coulomb_constant * xi1 * xi2 / (trap.hbar * d * d);

    let eta_sq = laser.lamb_dicke * laser.lamb_dicke;
    let omega = laser.rabi_frequency * eta_sq;
    let omega_tilde = match normalization {
        CarrierNormalization::WithRabi => laser.rabi_frequency * (1.0 - eta_sq / 2.0),
        CarrierNormalization::Dimensionless => 1.0 - eta_sq / 2.0,
    };
    let delta_ex = ion2.trap_frequency - ion1.trap_frequency;
    Ok(DerivedCouplings {
        coulomb_constant,
        zero_point_lengths: [xi1, xi2],
        g,
        delta_ex,
        delta_in: laser.detuning(),
        omega_tilde,
        omega,
        detuning: delta_ex - omega,
        carrier_normalization: normalization,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::params::IonParams;
    use crate::model::constants::ELEMENTARY_CHARGE;

    fn spec_pair() -> TrapArrayParams {
        let ion = |nu| IonParams::new(6.6422e-26, 1.6022e-19, nu).unwrap();
        TrapArrayParams::new(40e-6, vec![ion(5.0e6), ion(5.1e6)]).unwrap()
    }

    fn laser(rabi: f64, eta: f64) -> LaserParams {
        LaserParams::on_calcium_line(rabi, eta, 0.0, 0.0).unwrap()
    }

    #[test]
    fn calcium_pair_coupling() {
        let c = derive_couplings(&spec_pair(), &laser(1e7, 0.1)).unwrap();
        // Independent constant folding with CODATA constants: 1.0747e4 rad/s
        // (charges rounded to 1.6022e-19 C shift this by ~1e-5 relative).
        assert!((c.g / 1.0747e4 - 1.0).abs() < 1e-2, "g = {}", c.g);
        assert!(c.g > 0.9 * 1.1e4 && c.g < 1.2 * 1.1e4);
        assert!((c.delta_ex - 1e5).abs() < 1e-6);
        assert!((c.omega - 1e5).abs() < 1e-6);
        assert!(c.detuning.abs() < 1e-6);
    }

    #[test]
    fn equal_frequencies_and_no_laser() {
        let ion = IonParams::calcium_40(5e6);
        let trap = TrapArrayParams::new(40e-6, vec![ion, ion]).unwrap();
        let c = derive_couplings(&trap, &laser(0.0, 0.1)).unwrap();
        assert_eq!(c.delta_ex, 0.0);
        assert_eq!(c.detuning, 0.0);
    }

    #[test]
    fn invariant_recomputation_and_idempotence() {
        let trap = TrapArrayParams::calcium_pair();
        let l = laser(1.3e7, 0.08);
        let c = derive_couplings(&trap, &l).unwrap();
        assert_eq!(c, derive_couplings(&trap, &l).unwrap());
        let k = ELEMENTARY_CHARGE * ELEMENTARY_CHARGE / (4.0 * PI * trap.epsilon_0 * trap.separation);
        assert!((c.coulomb_constant - k).abs() <= 1e-15 * k);
        let xi = |m: f64, nu: f64| (trap.hbar / (2.0 * m * nu)).sqrt();
        assert_eq!(c.zero_point_lengths[0], xi(trap.ions[0].mass, 5.0e6));
        let g = 2.0 * k * c.zero_point_lengths[0] * c.zero_point_lengths[1]
            / (trap.hbar * trap.separation.powi(2));
        assert!((c.g - g).abs() <= 1e-14 * g);
        assert_eq!(c.omega, 1.3e7 * 0.08 * 0.08);
        assert_eq!(c.detuning, c.delta_ex - c.omega);
        assert_eq!(c.omega_tilde, 1.3e7 * (1.0 - 0.0032));
        let coulomb = c.coulomb(&trap);
        assert!(coulomb.linear[0] < 0.0 && coulomb.linear[1] > 0.0);
        assert_eq!(coulomb.cross, c.g);
    }

    #[test]
    fn dimensionless_carrier_variant() {
        let c = derive_couplings_with(
            &TrapArrayParams::calcium_pair(),
            &laser(1e7, 0.1),
            CarrierNormalization::Dimensionless,
        )
        .unwrap();
        assert_eq!(c.omega_tilde, 0.995);
    }

    #[test]
    fn non_physical_inputs() {
        let mut trap = TrapArrayParams::calcium_pair();
        trap.separation = 0.0;
        assert!(derive_couplings(&trap, &laser(1e7, 0.1)).is_err());
        let mut trap = TrapArrayParams::calcium_pair();
        trap.ions[1].mass = 0.0;
        assert!(derive_couplings(&trap, &laser(1e7, 0.1)).is_err());
        assert!(LaserParams::on_calcium_line(1e7, 1.0, 0.0, 0.0).is_err());
        assert!(LaserParams::on_calcium_line(-1.0, 0.1, 0.0, 0.0).is_err());
    }
}
