use nalgebra::{DMatrix, DVector};

use crate::error::Result;
use crate::quantum::{spectral_apply, CompositeSpace, Operator, PureState, C64};

/// `exp(-i H t)` through the eigendecomposition of `H`.
pub fn propagate(h: &Operator, t: f64) -> Result<Operator> {
    Propagator::new(h)?.at(t)
}

/// Caches the spectrum of a time-independent Hamiltonian so that many times
/// can be evaluated cheaply.
#[derive(Clone, Debug)]
pub struct Propagator {
    space: CompositeSpace,
    values: DVector<f64>,
    vectors: DMatrix<C64>,
}

impl Propagator {
    pub fn new(h: &Operator) -> Result<Self> {
        let (values, vectors) = h.eigh()?;
        Ok(Self { space: h.space().clone(), values, vectors })
    }

    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.values
    }

    pub fn at(&self, t: f64) -> Result<Operator> {
        let m = spectral_apply(&self.values, &self.vectors, |e| C64::from_polar(1.0, -e * t));
        Operator::new(self.space.clone(), m)
    }

    /// `exp(-i H t) psi` without forming the full propagator.
    pub fn evolve(&self, psi: &PureState, t: f64) -> Result<PureState> {
        self.space.ensure_same_shape(psi.space())?;
        let mut coeffs = self.vectors.adjoint() * psi.amplitudes();
        for (c, &e) in coeffs.iter_mut().zip(self.values.iter()) {
            *c *= C64::from_polar(1.0, -e * t);
        }
        Ok(PureState::from_evolved(psi.space().clone(), &self.vectors * coeffs))
    }
}
