//! Run configuration. Every value is in SI units with frequencies in rad/s;
//! missing keys take the 40Ca+ two-well defaults.

use std::path::Path;

use iontrap_core::dynamics::{ChannelKind, DecoherenceParams, IntegratorOptions};
use iontrap_core::gates::ProtocolTiming;
use iontrap_core::model::constants::{CALCIUM_40_ION_MASS, ELEMENTARY_CHARGE};
use iontrap_core::model::{IonParams, LaserParams, TrapArrayParams};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

/// Key reference printed by `--help`.
pub const CONFIG_HELP: &str = "\
Config file (TOML, or JSON as embedded in this tool's own output). All keys optional; rad/s throughout.
  [trap]        separation (m, 40e-6)
                ions = [{ mass (kg), charge (C), trap_frequency (rad/s) }, ...]  (40Ca+ at 5.0e6 and 5.1e6)
  [laser]       rabi_frequency (rad/s, 1e7), lamb_dicke (0.1), phase (rad, 0), delta_in (rad/s, 0)
  [decoherence] gamma_ex (1/s, 1e3), gamma_in (1/s, 1),
                vibrational (amplitude-damping | dephasing), internal (dephasing | amplitude-damping)
  [numerics]    truncation (Fock levels per mode, 3), tol (1e-9), max_steps (50000000)
  [gate]        wells (2), g_cm (rad/s, 3.5e4), t_v (s, 8e-6), t_s (s, 50e-6)
  [coherence]   cm (s, 1e-3), qubit (s, 10)
Output: --out PATH (relative paths resolve under $IONTRAP_OUTPUT_DIR when set), --format csv|json.";

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub trap: TrapConfig,
    pub laser: LaserConfig,
    pub decoherence: DecoherenceConfig,
    pub numerics: NumericsConfig,
    pub gate: GateConfig,
    pub coherence: CoherenceConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrapConfig {
    pub separation: f64,
    pub ions: Vec<IonConfig>,
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IonConfig {
    #[serde(default = "calcium_mass")]
    pub mass: f64,
    #[serde(default = "unit_charge")]
    pub charge: f64,
    pub trap_frequency: f64,
}

fn calcium_mass() -> f64 {
    CALCIUM_40_ION_MASS
}

fn unit_charge() -> f64 {
    ELEMENTARY_CHARGE
}

impl Default for TrapConfig {
    fn default() -> Self {
        let ion = |nu| IonConfig { mass: CALCIUM_40_ION_MASS, charge: ELEMENTARY_CHARGE, trap_frequency: nu };
        Self { separation: 40e-6, ions: vec![ion(5.0e6), ion(5.1e6)] }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LaserConfig {
    pub rabi_frequency: f64,
    pub lamb_dicke: f64,
    pub phase: f64,
    pub delta_in: f64,
}

impl Default for LaserConfig {
    fn default() -> Self {
        Self { rabi_frequency: 1e7, lamb_dicke: 0.1, phase: 0.0, delta_in: 0.0 }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DecoherenceConfig {
    pub gamma_ex: f64,
    pub gamma_in: f64,
    pub vibrational: ChannelKind,
    pub internal: ChannelKind,
}

impl Default for DecoherenceConfig {
    fn default() -> Self {
        let t = DecoherenceParams::typical();
        Self { gamma_ex: t.gamma_ex, gamma_in: t.gamma_in, vibrational: t.vibrational, internal: t.internal }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NumericsConfig {
    pub truncation: usize,
    pub tol: f64,
    pub max_steps: usize,
}

impl Default for NumericsConfig {
    fn default() -> Self {
        let i = IntegratorOptions::default();
        Self { truncation: 3, tol: i.tol, max_steps: i.max_steps }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GateConfig {
    pub wells: usize,
    pub g_cm: f64,
    pub t_v: f64,
    pub t_s: f64,
}

impl Default for GateConfig {
    fn default() -> Self {
        let t = ProtocolTiming::default();
        Self { wells: 2, g_cm: t.g_cm, t_v: t.t_v, t_s: t.t_s }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CoherenceConfig {
    /// CM (vibrational) coherence time, s.
    pub cm: f64,
    /// Qubit coherence time, s.
    pub qubit: f64,
}

impl Default for CoherenceConfig {
    fn default() -> Self {
        Self { cm: 1e-3, qubit: 10.0 }
    }
}

fn positive(key: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(CliError::key(key, format!("must be finite and > 0, got {v}")))
    }
}

fn non_negative(key: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(CliError::key(key, format!("must be finite and >= 0, got {v}")))
    }
}

impl RunConfig {
    /// Reads TOML, or JSON when the file ends in `.json`, and validates.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path.display(), e))?;
        let config = if path.extension().is_some_and(|e| e == "json") {
            Self::from_json(&text)
        } else {
            Self::from_toml(&text)
        }
        .map_err(|e| match e {
            CliError::ConfigParse(m) => CliError::ConfigParse(format!("{}: {m}", path.display())),
            other => other,
        })?;
        Ok(config)
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(|e| CliError::ConfigParse(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text).map_err(|e| CliError::ConfigParse(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        positive("trap.separation", self.trap.separation)?;
        if self.trap.ions.len() < 2 {
            return Err(CliError::key("trap.ions", format!("need at least 2 ions, got {}", self.trap.ions.len())));
        }
        for (i, ion) in self.trap.ions.iter().enumerate() {
            positive(&format!("trap.ions[{i}].mass"), ion.mass)?;
            positive(&format!("trap.ions[{i}].charge"), ion.charge)?;
            positive(&format!("trap.ions[{i}].trap_frequency"), ion.trap_frequency)?;
        }
        non_negative("laser.rabi_frequency", self.laser.rabi_frequency)?;
        let eta = self.laser.lamb_dicke;
        if !(eta > 0.0 && eta < 1.0) {
            return Err(CliError::key("laser.lamb_dicke", format!("must lie in (0, 1), got {eta}")));
        }
        for (key, v) in [("laser.phase", self.laser.phase), ("laser.delta_in", self.laser.delta_in)] {
            if !v.is_finite() {
                return Err(CliError::key(key, "must be finite"));
            }
        }
        non_negative("decoherence.gamma_ex", self.decoherence.gamma_ex)?;
        non_negative("decoherence.gamma_in", self.decoherence.gamma_in)?;
        if self.numerics.truncation < 2 {
            return Err(CliError::key("numerics.truncation", format!("must be >= 2, got {}", self.numerics.truncation)));
        }
        let tol = self.numerics.tol;
        if !(tol > 0.0 && tol < 1e-2) {
            return Err(CliError::key("numerics.tol", format!("must lie in (0, 1e-2), got {tol}")));
        }
        if self.numerics.max_steps == 0 {
            return Err(CliError::key("numerics.max_steps", "must be positive"));
        }
        if self.gate.wells < 2 {
            return Err(CliError::key("gate.wells", format!("must be >= 2, got {}", self.gate.wells)));
        }
        positive("gate.g_cm", self.gate.g_cm)?;
        positive("gate.t_v", self.gate.t_v)?;
        positive("gate.t_s", self.gate.t_s)?;
        positive("coherence.cm", self.coherence.cm)?;
        positive("coherence.qubit", self.coherence.qubit)
    }

    pub fn trap(&self) -> Result<TrapArrayParams> {
        let ions = self
            .trap
            .ions
            .iter()
            .map(|i| IonParams::new(i.mass, i.charge, i.trap_frequency))
            .collect::<iontrap_core::Result<Vec<_>>>()?;
        Ok(TrapArrayParams::new(self.trap.separation, ions)?)
    }

    pub fn laser(&self) -> Result<LaserParams> {
        let l = &self.laser;
        Ok(LaserParams::on_calcium_line(l.rabi_frequency, l.lamb_dicke, l.phase, l.delta_in)?)
    }

    pub fn decoherence(&self) -> DecoherenceParams {
        let d = &self.decoherence;
        DecoherenceParams { gamma_ex: d.gamma_ex, gamma_in: d.gamma_in, vibrational: d.vibrational, internal: d.internal }
    }

    pub fn integrator(&self) -> IntegratorOptions {
        IntegratorOptions { tol: self.numerics.tol, max_steps: self.numerics.max_steps, initial_step: None }
    }

    pub fn timing(&self) -> ProtocolTiming {
        ProtocolTiming { g_cm: self.gate.g_cm, t_v: self.gate.t_v, t_s: self.gate.t_s }
    }

    /// Canonical JSON of the resolved config (sorted keys).
    pub fn canonical_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("config serializes")
    }

    /// SHA-256 of the canonical JSON, hex encoded.
    pub fn hash(&self) -> String {
        hex::encode(Sha256::digest(self.canonical_json().to_string().as_bytes()))
    }
}
