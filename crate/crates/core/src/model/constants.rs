//! Physical constants (SI) and ion data used for the default scenario.

/// Reduced Planck constant, J s (CODATA 2018, exact via h).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Vacuum permittivity, F/m (CODATA 2018).
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;

/// Elementary charge, C (SI 2019, exact).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Unified atomic mass unit, kg (CODATA 2018).
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;

/// Electron mass, kg (CODATA 2018).
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

/// Speed of light, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// 40Ca atomic mass 39.962 590 863 u (AME2020), minus one electron.
pub const CALCIUM_40_ION_MASS: f64 = 39.962_590_863 * ATOMIC_MASS_UNIT - ELECTRON_MASS;

/// 9Be atomic mass 9.012 183 06 u (AME2020), minus one electron.
pub const BERYLLIUM_9_ION_MASS: f64 = 9.012_183_06 * ATOMIC_MASS_UNIT - ELECTRON_MASS;

/// S1/2 - D5/2 quadrupole line of 40Ca+ (729 nm), as an angular frequency.
pub const CALCIUM_729_FREQUENCY: f64 =
    2.0 * std::f64::consts::PI * SPEED_OF_LIGHT / 729.147e-9;
