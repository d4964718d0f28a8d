//! Composite Hilbert spaces built from truncated bosonic modes and two-level
//! systems.
//!
//! Tensor factor 0 is the leftmost (most significant) factor: a basis index
//! `i` of the composite space decomposes as `i = sum_k digit_k * stride_k`
//! with `stride_k = prod_{l > k} dim_l`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsystemKind {
    /// Harmonic-oscillator mode truncated to Fock levels `0..dim`.
    BosonicMode,
    /// Two-level system with basis order `(|g>, |e>)`, equivalently
    /// `(|down>, |up>)` for qubits.
    TwoLevel,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubsystemSpec {
    kind: SubsystemKind,
    dim: usize,
    label: String,
}

impl SubsystemSpec {
    pub fn mode(label: impl Into<String>, truncation: usize) -> Result<Self> {
        if truncation < 2 {
            return Err(Error::InvalidDimension(truncation));
        }
        Ok(Self { kind: SubsystemKind::BosonicMode, dim: truncation, label: label.into() })
    }

    pub fn two_level(label: impl Into<String>) -> Self {
        Self { kind: SubsystemKind::TwoLevel, dim: 2, label: label.into() }
    }

    pub fn kind(&self) -> SubsystemKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

/// Ordered tensor product of subsystems.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CompositeSpace {
    subsystems: Vec<SubsystemSpec>,
}

impl CompositeSpace {
    pub fn new(subsystems: Vec<SubsystemSpec>) -> Result<Self> {
        if subsystems.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        Ok(Self { subsystems })
    }

    pub fn single(subsystem: SubsystemSpec) -> Self {
        Self { subsystems: vec![subsystem] }
    }

    /// Space of `count` modes sharing one truncation.
    pub fn modes(count: usize, truncation: usize) -> Result<Self> {
        let subsystems = (1..=count)
            .map(|j| SubsystemSpec::mode(format!("mode{j}"), truncation))
            .collect::<Result<Vec<_>>>()?;
        Self::new(subsystems)
    }

    pub fn subsystems(&self) -> &[SubsystemSpec] {
        &self.subsystems
    }

    pub fn subsystem(&self, index: usize) -> Result<&SubsystemSpec> {
        self.subsystems
            .get(index)
            .ok_or(Error::IndexOutOfRange { index, len: self.subsystems.len() })
    }

    pub fn len(&self) -> usize {
        self.subsystems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsystems.is_empty()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.subsystems.iter().map(|s| s.dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.subsystems.iter().map(|s| s.dim).product()
    }

    pub fn strides(&self) -> Vec<usize> {
        let dims = self.dims();
        let mut strides = vec![1; dims.len()];
        for k in (0..dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * dims[k + 1];
        }
        strides
    }

    /// Same factor dimensions and kinds; labels are ignored.
    pub fn same_shape(&self, other: &Self) -> bool {
        self.subsystems.len() == other.subsystems.len()
            && self
                .subsystems
                .iter()
                .zip(&other.subsystems)
                .all(|(a, b)| a.dim == b.dim && a.kind == b.kind)
    }

    pub(crate) fn ensure_same_shape(&self, other: &Self) -> Result<()> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(format!(
                "dims {:?} vs {:?}",
                self.dims(),
                other.dims()
            )))
        }
    }

    pub fn index_of(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.subsystems.len() {
            return Err(Error::DimensionMismatch {
                expected: self.subsystems.len(),
                found: digits.len(),
            });
        }
        let mut index = 0;
        for (digit, sub) in digits.iter().zip(&self.subsystems) {
            if *digit >= sub.dim {
                return Err(Error::IndexOutOfRange { index: *digit, len: sub.dim });
            }
            index = index * sub.dim + digit;
        }
        Ok(index)
    }

    pub fn digits_of(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.subsystems.len()];
        for (k, sub) in self.subsystems.iter().enumerate().rev() {
            digits[k] = index % sub.dim;
            index /= sub.dim;
        }
        digits
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut subsystems = self.subsystems.clone();
        subsystems.extend(other.subsystems.iter().cloned());
        Self { subsystems }
    }

    /// Space made of the listed factors, in the order given.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let subsystems = indices
            .iter()
            .map(|&i| self.subsystem(i).cloned())
            .collect::<Result<Vec<_>>>()?;
        Self::new(subsystems)
    }
}
