use nalgebra::DMatrix;

use crate::error::{invalid, Error, Result};
use crate::quantum::{CompositeSpace, Operator, Pauli, SubsystemKind, SubsystemSpec, C64};

/// A composite space together with the roles of its factors: an optional
/// internal two-level factor of the driven ion and one mode per ion, in ion
/// order. The laser drives the last mode.
#[derive(Clone, Debug, PartialEq)]
pub struct Layout {
    space: CompositeSpace,
    spin: Option<usize>,
    modes: Vec<usize>,
}

impl Layout {
    pub fn new(space: CompositeSpace, spin: Option<usize>, modes: Vec<usize>) -> Result<Self> {
        if let Some(s) = spin {
            if space.subsystem(s)?.kind() != SubsystemKind::TwoLevel {
                return Err(invalid("spin", format!("factor {s} is not two-level")));
            }
        }
        for &m in &modes {
            if space.subsystem(m)?.kind() != SubsystemKind::BosonicMode {
                return Err(invalid("modes", format!("factor {m} is not a bosonic mode")));
            }
        }
        if modes.is_empty() {
            return Err(invalid("modes", "at least one mode is required"));
        }
        Ok(Self { space, spin, modes })
    }

    /// `(mode1, mode2)`.
    pub fn two_modes(truncation: usize) -> Result<Self> {
        Self::new(CompositeSpace::modes(2, truncation)?, None, vec![0, 1])
    }

    /// `(spin, mode1, mode2)`; the spin belongs to ion 2.
    pub fn spin_two_modes(truncation: usize) -> Result<Self> {
        let space = CompositeSpace::new(vec![
            SubsystemSpec::two_level("spin"),
            SubsystemSpec::mode("mode1", truncation)?,
            SubsystemSpec::mode("mode2", truncation)?,
        ])?;
        Self::new(space, Some(0), vec![1, 2])
    }

    /// `(spin, mode)` for a single driven ion.
    pub fn spin_mode(truncation: usize) -> Result<Self> {
        let space = CompositeSpace::new(vec![
            SubsystemSpec::two_level("spin"),
            SubsystemSpec::mode("mode", truncation)?,
        ])?;
        Self::new(space, Some(0), vec![1])
    }

    pub fn space(&self) -> &CompositeSpace {
        &self.space
    }

    pub fn modes(&self) -> &[usize] {
        &self.modes
    }

    pub fn spin(&self) -> Result<usize> {
        self.spin.ok_or_else(|| Error::Contract("layout has no internal two-level factor".into()))
    }

    pub fn has_spin(&self) -> bool {
        self.spin.is_some()
    }

    pub fn driven_mode(&self) -> usize {
        *self.modes.last().expect("layout has at least one mode")
    }

    pub fn truncation(&self, factor: usize) -> Result<usize> {
        Ok(self.space.subsystem(factor)?.dim())
    }

    pub fn require_modes(&self, count: usize) -> Result<()> {
        if self.modes.len() == count {
            Ok(())
        } else {
            Err(Error::SpaceMismatch(format!(
                "expected {count} modes in layout, found {}",
                self.modes.len()
            )))
        }
    }

    /// Single-factor matrix embedded at `factor`.
    pub fn embed(&self, factor: usize, local: &Operator) -> Result<DMatrix<C64>> {
        Ok(local.embed(factor, &self.space)?.into_matrix())
    }

    pub fn annihilation(&self, ion: usize) -> Result<DMatrix<C64>> {
        let factor = *self
            .modes
            .get(ion)
            .ok_or(Error::IndexOutOfRange { index: ion, len: self.modes.len() })?;
        self.embed(factor, &Operator::annihilation(self.truncation(factor)?)?)
    }

    pub fn number(&self, ion: usize) -> Result<DMatrix<C64>> {
        let a = self.annihilation(ion)?;
        Ok(a.adjoint() * a)
    }

    pub fn pauli(&self, which: Pauli) -> Result<DMatrix<C64>> {
        self.embed(self.spin()?, &Operator::pauli(which))
    }

    pub fn identity(&self) -> DMatrix<C64> {
        let d = self.space.total_dim();
        DMatrix::identity(d, d)
    }

    pub fn operator(&self, matrix: DMatrix<C64>) -> Result<Operator> {
        Operator::new(self.space.clone(), matrix)
    }
}
