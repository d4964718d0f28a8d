//! Closed-form two-mode exchange on the one-excitation subspace
//! `{|0,1>, |1,0>}` (mode 1 first) under `Delta n_2 - g (a_1 a_2^dag + h.c.)`.

use std::f64::consts::FRAC_PI_2;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::quantum::{CompositeSpace, Operator, SubsystemSpec, C64};

/// Amplitudes after starting from `|0,1>`: `alpha` stays, `beta` moves to
/// `|1,0>`.
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SwapAmplitudes {
    pub alpha: C64,
    pub beta: C64,
    /// `c = sqrt((Delta/2)^2 + g^2)`, rad/s.
    pub c: f64,
}

impl SwapAmplitudes {
    /// `|beta|^2`, the population transferred to the other well.
    pub fn occupancy(&self) -> f64 {
        self.beta.norm_sqr()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.alpha.norm_sqr() + self.beta.norm_sqr()
    }
}

fn check_rates(g: f64, delta: f64) -> Result<f64> {
    if !(g.is_finite() && g > 0.0) {
        return Err(invalid("g", format!("must be positive, got {g}")));
    }
    if !delta.is_finite() {
        return Err(invalid("delta", "must be finite"));
    }
    Ok(((delta / 2.0).powi(2) + g * g).sqrt())
}

pub fn analytic_swap(g: f64, delta: f64, t: f64) -> Result<SwapAmplitudes> {
    let c = check_rates(g, delta)?;
    let r = delta / (4.0 * c);
    let alpha = C64::from_polar(0.5 - r, (c - delta / 2.0) * t)
        + C64::from_polar(0.5 + r, -(c + delta / 2.0) * t);
    let beta = C64::from_polar(g / c, (std::f64::consts::PI - delta * t) / 2.0) * (c * t).sin();
    Ok(SwapAmplitudes { alpha, beta, c })
}

/// Peak of `|beta|^2` and the first time it is reached. Maxima recur at
/// `c t = (2m + 1) pi / 2`.
pub fn max_swap_probability(g: f64, delta: f64) -> Result<(f64, f64)> {
    let c = check_rates(g, delta)?;
    Ok(((g / c).powi(2), FRAC_PI_2 / c))
}

fn subspace() -> CompositeSpace {
    CompositeSpace::single(SubsystemSpec::two_level("one-excitation"))
}

/// Resonant exchange `[[cos gt, i sin gt], [i sin gt, cos gt]]`; at
/// `gt = pi/2` this is `i SWAP` on the subspace.
pub fn swap_unitary(gt: f64) -> Operator {
    let (s, c) = gt.sin_cos();
    let m = DMatrix::from_row_slice(
        2,
        2,
        &[C64::new(c, 0.0), C64::new(0.0, s), C64::new(0.0, s), C64::new(c, 0.0)],
    );
    Operator::new(subspace(), m).expect("2x2 on a two-dimensional space")
}

/// Full propagator on the subspace for arbitrary detuning, columns
/// `(|0,1>, |1,0>)`.
pub fn one_excitation_unitary(g: f64, delta: f64, t: f64) -> Result<Operator> {
    let amp = analytic_swap(g, delta, t)?;
    let back = C64::from_polar(1.0, -delta * t / 2.0)
        * C64::new((amp.c * t).cos(), delta / (2.0 * amp.c) * (amp.c * t).sin());
    let m = DMatrix::from_row_slice(2, 2, &[amp.alpha, amp.beta, amp.beta, back]);
    Operator::new(subspace(), m)
}
