//! Physical parameters, derived couplings and the Hamiltonian builders.

pub mod constants;
mod couplings;
mod full;
mod hamiltonians;
mod layout;
mod params;
mod time_dependent;

pub use couplings::{
    derive_couplings, derive_couplings_with, CarrierNormalization, CoulombCoefficients,
    DerivedCouplings,
};
pub use full::{build_full_model, FullModelOptions, FullModelParams};
pub use hamiltonians::{
    beam_splitter_hamiltonian, build_h_eff, build_h_ex, build_h_ex_with, build_h_laser_exact,
    build_h_laser_ld2, build_h_rot1, build_h_rot2, build_v_ii, build_v_ii_with, coulomb_operator,
    displacement, displacement_exact, displacement_second_order, f_eigenstate, f_operator,
    frame_u1, frame_u2, free_oscillators, lamb_dicke_gap, position_quadrature, CoulombTerms,
    LambDickeOrder,
};
pub use layout::Layout;
pub use params::{IonParams, LaserParams, TrapArrayParams};
pub use time_dependent::{FnHamiltonian, Hamiltonian, TimeDependentHamiltonian};
