//! Builders for the Hamiltonian hierarchy, from the lab-frame trap and laser
//! Hamiltonians down to the two-mode beam splitter. Every builder returns
//! `H / hbar` in rad/s.

use nalgebra::{DMatrix, DVector};

use super::couplings::{CoulombCoefficients, DerivedCouplings};
use super::layout::Layout;
use super::params::{LaserParams, TrapArrayParams};
use super::time_dependent::TimeDependentHamiltonian;
use crate::error::{Error, Result};
use crate::quantum::{
    hermitian_eigen, spectral_apply, CompositeSpace, Operator, Pauli, PureState, SubsystemSpec,
    C64,
};

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Which pieces of the expanded Coulomb interaction to include.
#[derive(Copy, Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CoulombTerms {
    /// `a_1 a_2 + h.c.` (non-number-conserving part of the cross term).
    pub counter_rotating: bool,
    /// `xi_j^2` single-ion terms, which shift the local mode frequencies.
    pub self_energy: bool,
    /// `(-1)^j xi_j / d` single-ion displacement terms.
    pub linear: bool,
}

impl CoulombTerms {
    pub const ALL: Self = Self { counter_rotating: true, self_energy: true, linear: true };
    pub const BEAM_SPLITTER_ONLY: Self =
        Self { counter_rotating: false, self_energy: false, linear: false };
}

/// `A + A^dag` for the requested pieces of the Coulomb expansion.
pub fn coulomb_operator(
    coeffs: &CoulombCoefficients,
    layout: &Layout,
    terms: CoulombTerms,
) -> Result<DMatrix<C64>> {
    layout.require_modes(2)?;
    let a = [layout.annihilation(0)?, layout.annihilation(1)?];
    let d = layout.space().total_dim();
    let mut half = DMatrix::<C64>::zeros(d, d);
    for ((aj, lin), quad) in a.iter().zip(coeffs.linear).zip(coeffs.quadratic) {
        if terms.linear {
            half += aj * c(lin);
        }
        if terms.self_energy {
            half += (aj * aj + aj * aj.adjoint()) * c(quad);
        }
    }
    half -= &a[0] * a[1].adjoint() * c(coeffs.cross);
    if terms.counter_rotating {
        half -= &a[0] * &a[1] * c(coeffs.cross);
    }
    Ok(&half + half.adjoint())
}

/// Coulomb interaction between the two ions, all terms included.
pub fn build_v_ii(trap: &TrapArrayParams, layout: &Layout) -> Result<Operator> {
    build_v_ii_with(trap, layout, CoulombTerms::ALL)
}

pub fn build_v_ii_with(
    trap: &TrapArrayParams,
    layout: &Layout,
    terms: CoulombTerms,
) -> Result<Operator> {
    check_ions(trap, layout)?;
    let couplings = coulomb_coefficients(trap)?;
    layout.operator(coulomb_operator(&couplings, layout, terms)?)
}

fn coulomb_coefficients(trap: &TrapArrayParams) -> Result<CoulombCoefficients> {
    let laser = LaserParams {
        rabi_frequency: 0.0,
        lamb_dicke: 0.0,
        laser_frequency: 0.0,
        phase: 0.0,
        atomic_frequency: 0.0,
    };
    Ok(super::derive_couplings(trap, &laser)?.coulomb(trap))
}

fn check_ions(trap: &TrapArrayParams, layout: &Layout) -> Result<()> {
    if trap.ions.len() != layout.modes().len() {
        return Err(Error::SpaceMismatch(format!(
            "{} ions but {} modes in layout",
            trap.ions.len(),
            layout.modes().len()
        )));
    }
    Ok(())
}

/// `sum_j nu_j (a_j^dag a_j + 1/2)` for the modes of `layout`.
pub fn free_oscillators(frequencies: &[f64], layout: &Layout) -> Result<Operator> {
    layout.require_modes(frequencies.len())?;
    let mut h = DMatrix::zeros(layout.space().total_dim(), layout.space().total_dim());
    let id = layout.identity();
    for (j, &nu) in frequencies.iter().enumerate() {
        h += (layout.number(j)? + &id * c(0.5)) * c(nu);
    }
    layout.operator(h)
}

/// External-vibration Hamiltonian: free oscillators plus the Coulomb coupling.
pub fn build_h_ex(trap: &TrapArrayParams, layout: &Layout) -> Result<Operator> {
    build_h_ex_with(trap, layout, CoulombTerms::ALL)
}

pub fn build_h_ex_with(
    trap: &TrapArrayParams,
    layout: &Layout,
    terms: CoulombTerms,
) -> Result<Operator> {
    check_ions(trap, layout)?;
    let nus: Vec<f64> = trap.ions.iter().map(|i| i.trap_frequency).collect();
    free_oscillators(&nus, layout)?.add(&build_v_ii_with(trap, layout, terms)?)
}

/// `X = a + a^dag` on a mode of `truncation` levels.
pub fn position_quadrature(truncation: usize) -> Result<DMatrix<C64>> {
    let a = Operator::annihilation(truncation)?.into_matrix();
    Ok(&a + a.adjoint())
}

/// `exp(i eta (a + a^dag))`, evaluated through the spectral decomposition of
/// the (truncated) quadrature.
pub fn displacement_exact(eta: f64, truncation: usize) -> Result<DMatrix<C64>> {
    let x = position_quadrature(truncation)?;
    let (values, vectors) = hermitian_eigen(&x);
    Ok(spectral_apply(&values, &vectors, |v| C64::from_polar(1.0, eta * v)))
}

/// `1 + i eta X - (eta^2 / 2) X^2`.
pub fn displacement_second_order(eta: f64, truncation: usize) -> Result<DMatrix<C64>> {
    let x = position_quadrature(truncation)?;
    let id = DMatrix::identity(truncation, truncation);
    Ok(id + &x * C64::new(0.0, eta) - &x * &x * c(eta * eta / 2.0))
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LambDickeOrder {
    /// Expansion of the displacement to second order in eta.
    SecondOrder,
    /// The full displacement operator within the truncation.
    Exact,
}

pub fn displacement(order: LambDickeOrder, eta: f64, truncation: usize) -> Result<DMatrix<C64>> {
    match order {
        LambDickeOrder::SecondOrder => displacement_second_order(eta, truncation),
        LambDickeOrder::Exact => displacement_exact(eta, truncation),
    }
}

fn laser_hamiltonian(
    laser: &LaserParams,
    layout: &Layout,
    order: LambDickeOrder,
) -> Result<TimeDependentHamiltonian> {
    laser.validate()?;
    let mode = layout.driven_mode();
    let disp = Operator::new(
        CompositeSpace::single(SubsystemSpec::mode("mode", layout.truncation(mode)?)?),
        displacement(order, laser.lamb_dicke, layout.truncation(mode)?)?,
    )?;
    let coupling = layout.pauli(Pauli::X)? * layout.embed(mode, &disp)?;
    let mut h = TimeDependentHamiltonian::new(layout.space().clone());
    h.push_static(layout.pauli(Pauli::Z)? * c(laser.atomic_frequency / 2.0))?;
    h.push_with_conjugate(
        coupling,
        C64::from_polar(laser.rabi_frequency, -laser.phase),
        -laser.laser_frequency,
    )?;
    Ok(h)
}

/// Lab-frame laser-ion Hamiltonian with the exact displacement
/// `exp(i eta (a + a^dag))` on the driven mode.
pub fn build_h_laser_exact(laser: &LaserParams, layout: &Layout) -> Result<TimeDependentHamiltonian> {
    laser_hamiltonian(laser, layout, LambDickeOrder::Exact)
}

/// Lab-frame laser-ion Hamiltonian expanded to second order in eta.
pub fn build_h_laser_ld2(laser: &LaserParams, layout: &Layout) -> Result<TimeDependentHamiltonian> {
    laser_hamiltonian(laser, layout, LambDickeOrder::SecondOrder)
}

/// Relative gap `|H_exact(t) - H_ld2(t)| / |H_exact(t) - omega_a sigma_z / 2|`
/// in spectral norm. The atomic term is common to both and is left out of the
/// reference norm, where it would otherwise swamp the coupling by many orders
/// of magnitude.
///
/// When `omega_l t + phi` is a multiple of `pi` the coupling is
/// `2 Omega_0 sigma_x cos(eta X)` and the odd orders cancel, so the gap drops
/// to `O(eta^4)` at those instants.
pub fn lamb_dicke_gap(laser: &LaserParams, layout: &Layout, t: f64) -> Result<f64> {
    use super::time_dependent::Hamiltonian;
    let exact = build_h_laser_exact(laser, layout)?.matrix_at(t);
    let ld2 = build_h_laser_ld2(laser, layout)?.matrix_at(t);
    let coupling = &exact - layout.pauli(Pauli::Z)? * c(laser.atomic_frequency / 2.0);
    let diff = layout.operator(exact - ld2)?;
    Ok(diff.spectral_norm() / layout.operator(coupling)?.spectral_norm())
}

/// `F = e^{-i phi} sigma_+ + e^{i phi} sigma_-` on a single two-level factor.
pub fn f_operator(phase: f64) -> Operator {
    Operator::pauli(Pauli::Plus)
        .scale(C64::from_polar(1.0, -phase))
        .add(&Operator::pauli(Pauli::Minus).scale(C64::from_polar(1.0, phase)))
        .expect("same two-level space")
}

/// `+1` eigenstate of `F`: `(|g> + e^{-i phi} |e>) / sqrt(2)`; for `phi = 0`
/// this is `(|g> + |e>) / sqrt(2)`.
pub fn f_eigenstate(phase: f64) -> PureState {
    let space = CompositeSpace::single(SubsystemSpec::two_level("spin"));
    PureState::new(space, DVector::from_vec(vec![c(1.0), C64::from_polar(1.0, -phase)]))
        .expect("non-zero vector")
}

fn beam_splitter(layout: &Layout) -> Result<DMatrix<C64>> {
    let a1 = layout.annihilation(0)?;
    let a2 = layout.annihilation(1)?;
    let half = &a1 * a2.adjoint();
    Ok(&half + half.adjoint())
}

/// First rotating frame:
/// `H' = (delta_in / 2) sigma_z + Omega_tilde F + (delta_ex - Omega F) n_2 - g (a_1 a_2^dag + h.c.)`
/// on `(spin, mode1, mode2)`.
pub fn build_h_rot1(couplings: &DerivedCouplings, phase: f64, layout: &Layout) -> Result<Operator> {
    layout.require_modes(2)?;
    let f = layout.embed(layout.spin()?, &f_operator(phase))?;
    let n2 = layout.number(1)?;
    let id = layout.identity();
    let h = layout.pauli(Pauli::Z)? * c(couplings.delta_in / 2.0)
        + &f * c(couplings.omega_tilde)
        + (&id * c(couplings.delta_ex) - &f * c(couplings.omega)) * n2
        - beam_splitter(layout)? * c(couplings.g);
    layout.operator(h)
}

/// Second rotating frame (requires `delta_in = 0`):
/// `H'' = (delta_ex - Omega F) n_2 - g (a_1 a_2^dag + h.c.)`.
pub fn build_h_rot2(couplings: &DerivedCouplings, phase: f64, layout: &Layout) -> Result<Operator> {
    if couplings.delta_in != 0.0 {
        return Err(Error::Contract(format!(
            "second rotating frame assumes delta_in = 0, got {}",
            couplings.delta_in
        )));
    }
    layout.require_modes(2)?;
    let f = layout.embed(layout.spin()?, &f_operator(phase))?;
    let id = layout.identity();
    let h = (&id * c(couplings.delta_ex) - &f * c(couplings.omega)) * layout.number(1)?
        - beam_splitter(layout)? * c(couplings.g);
    layout.operator(h)
}

/// Effective beam splitter `Delta n_2 - g (a_1 a_2^dag + a_1^dag a_2)`.
pub fn build_h_eff(couplings: &DerivedCouplings, layout: &Layout) -> Result<Operator> {
    beam_splitter_hamiltonian(couplings.g, couplings.detuning, layout)
}

pub fn beam_splitter_hamiltonian(g: f64, detuning: f64, layout: &Layout) -> Result<Operator> {
    layout.require_modes(2)?;
    layout.operator(layout.number(1)? * c(detuning) - beam_splitter(layout)? * c(g))
}

/// `U_1(t) = exp[-i t omega_l sigma_z / 2 - i t sum_j (nu_1 n_j + nu_j / 2)]`.
///
/// Both modes rotate at `nu_1`, which leaves `delta_ex n_2` in the transformed
/// Hamiltonian; the `nu_j / 2` pieces are a global phase.
pub fn frame_u1(
    trap: &TrapArrayParams,
    laser: &LaserParams,
    layout: &Layout,
    t: f64,
) -> Result<Operator> {
    check_ions(trap, layout)?;
    let nu1 = trap.ions[0].trap_frequency;
    let space = layout.space();
    let spin = layout.spin().ok();
    let zero_point: f64 = trap.ions.iter().map(|i| i.trap_frequency / 2.0).sum();
    let diag = DVector::from_fn(space.total_dim(), |idx, _| {
        let digits = space.digits_of(idx);
        let mut phase = zero_point;
        if let Some(s) = spin {
            let sz = if digits[s] == 1 { 1.0 } else { -1.0 };
            phase += laser.laser_frequency * sz / 2.0;
        }
        phase += layout.modes().iter().map(|&m| nu1 * digits[m] as f64).sum::<f64>();
        C64::from_polar(1.0, -phase * t)
    });
    layout.operator(DMatrix::from_diagonal(&diag))
}

/// `U_2(t) = exp(-i t Omega_tilde F) = cos(Omega_tilde t) - i sin(Omega_tilde t) F`.
pub fn frame_u2(couplings: &DerivedCouplings, phase: f64, layout: &Layout, t: f64) -> Result<Operator> {
    let theta = couplings.omega_tilde * t;
    let f = layout.embed(layout.spin()?, &f_operator(phase))?;
    layout.operator(layout.identity() * c(theta.cos()) - f * C64::new(0.0, theta.sin()))
}
