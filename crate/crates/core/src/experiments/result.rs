use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Settings that determine the numbers in a result, echoed into every output.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub truncation: Option<usize>,
    pub tolerance: Option<f64>,
    pub code_version: String,
}

impl Metadata {
    pub fn new(truncation: Option<usize>, tolerance: Option<f64>) -> Self {
        Self { truncation, tolerance, code_version: env!("CARGO_PKG_VERSION").to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
}

/// Named columns of equal length plus scalar summaries.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub experiment: String,
    /// Echo of the inputs the result was computed from.
    pub spec: serde_json::Value,
    pub columns: Vec<Column>,
    pub summary: BTreeMap<String, f64>,
    pub metadata: Metadata,
}

impl SweepResult {
    pub fn new(experiment: impl Into<String>, spec: serde_json::Value, metadata: Metadata) -> Self {
        Self {
            experiment: experiment.into(),
            spec,
            columns: Vec::new(),
            summary: BTreeMap::new(),
            metadata,
        }
    }

    pub fn push_column(&mut self, name: impl Into<String>, values: Vec<f64>) -> Result<()> {
        let name = name.into();
        if let Some(first) = self.columns.first() {
            if first.values.len() != values.len() {
                return Err(invalid(
                    "column",
                    format!("`{name}` has {} rows, expected {}", values.len(), first.values.len()),
                ));
            }
        }
        if self.column(&name).is_some() {
            return Err(invalid("column", format!("duplicate column `{name}`")));
        }
        self.columns.push(Column { name, values });
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns.iter().find(|c| c.name == name).map(|c| c.values.as_slice())
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.values.len())
    }
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return Err(invalid("fit", "need at least two paired points"));
    }
    if x.iter().chain(y).any(|v| !(v.is_finite() && *v > 0.0)) {
        return Err(invalid("fit", "log-log fit needs positive finite values"));
    }
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let (mx, my) = (lx.iter().sum::<f64>() / n, ly.iter().sum::<f64>() / n);
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// Grid values must be non-empty and strictly monotone.
pub(crate) fn check_monotone(name: &'static str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(invalid(name, "grid must not be empty"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(invalid(name, "grid values must be finite"));
    }
    let up = values.windows(2).all(|w| w[1] > w[0]);
    let down = values.windows(2).all(|w| w[1] < w[0]);
    if !(up || down) {
        return Err(invalid(name, "grid must be strictly monotone"));
    }
    Ok(())
}
