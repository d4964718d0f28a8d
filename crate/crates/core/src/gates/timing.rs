use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Durations of one CNOT between wells 1 and `n` (seconds).
#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimingBudget {
    pub t_v: f64,
    pub t_u: f64,
    pub t_s: f64,
    pub n: usize,
    /// `2 [t_v + (n - 1) t_u] + t_s`.
    pub t_total: f64,
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(invalid(name, format!("must be positive, got {v}")))
    }
}

/// Resonant `pi/2` swap time `pi / (2 g_cm)`.
pub fn swap_duration(g_cm: f64) -> Result<f64> {
    positive("g_cm", g_cm)?;
    Ok(FRAC_PI_2 / g_cm)
}

pub fn timing_budget(n: usize, t_v: f64, t_u: f64, t_s: f64) -> Result<TimingBudget> {
    if n < 2 {
        return Err(invalid("wells", format!("need at least 2 wells, got {n}")));
    }
    positive("t_v", t_v)?;
    positive("t_u", t_u)?;
    positive("t_s", t_s)?;
    let t_total = 2.0 * (t_v + (n - 1) as f64 * t_u) + t_s;
    Ok(TimingBudget { t_v, t_u, t_s, n, t_total })
}

impl TimingBudget {
    /// Budget with `t_u` taken from the CM coupling.
    pub fn from_coupling(n: usize, t_v: f64, g_cm: f64, t_s: f64) -> Result<Self> {
        timing_budget(n, t_v, swap_duration(g_cm)?, t_s)
    }

    pub fn fits_within(&self, coherence_time: f64) -> bool {
        self.t_total <= coherence_time
    }
}
