use nalgebra::{DMatrix, DVector};

use super::operator::{hermitian_eigen, spectral_apply};
use super::{CompositeSpace, Operator, SubsystemSpec, C64};
use crate::error::{Error, Result};

/// Normalized state vector.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    space: CompositeSpace,
    amplitudes: DVector<C64>,
}

impl PureState {
    /// Normalizes `amplitudes`; fails on a zero vector.
    pub fn new(space: CompositeSpace, amplitudes: DVector<C64>) -> Result<Self> {
        if amplitudes.len() != space.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: space.total_dim(),
                found: amplitudes.len(),
            });
        }
        let norm = amplitudes.norm();
        if !norm.is_finite() || norm == 0.0 {
            return Err(Error::InvalidState(format!("cannot normalize vector of norm {norm}")));
        }
        Ok(Self { space, amplitudes: amplitudes.unscale(norm) })
    }

    /// Wraps an integrator sample without renormalizing it; the norm drift is
    /// part of the reported diagnostics.
    pub(crate) fn from_evolved(space: CompositeSpace, amplitudes: DVector<C64>) -> Self {
        Self { space, amplitudes }
    }

    /// Product basis state with the given per-factor levels.
    pub fn basis(space: &CompositeSpace, digits: &[usize]) -> Result<Self> {
        let index = space.index_of(digits)?;
        let mut amplitudes = DVector::zeros(space.total_dim());
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(Self { space: space.clone(), amplitudes })
    }

    pub fn fock(truncation: usize, n: usize) -> Result<Self> {
        let space = CompositeSpace::single(SubsystemSpec::mode("mode", truncation)?);
        Self::basis(&space, &[n])
    }

    pub fn space(&self) -> &CompositeSpace {
        &self.space
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, digits: &[usize]) -> Result<C64> {
        Ok(self.amplitudes[self.space.index_of(digits)?])
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            space: self.space.tensor(&other.space),
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        }
    }

    pub fn product(factors: &[PureState]) -> Result<Self> {
        let (first, rest) = factors.split_first().ok_or(Error::InvalidDimension(0))?;
        Ok(rest.iter().fold(first.clone(), |acc, f| acc.tensor(f)))
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        self.space.ensure_same_shape(&other.space)?;
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }

    /// `|<a|b>|^2`.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr().min(1.0))
    }

    pub fn populations(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn evolve(&self, op: &Operator) -> Result<Self> {
        Ok(Self { space: self.space.clone(), amplitudes: op.apply(self)? })
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix {
            space: self.space.clone(),
            matrix: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }
}

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    space: CompositeSpace,
    matrix: DMatrix<C64>,
}

pub const TRACE_TOL: f64 = 1e-10;
pub const HERMITIAN_TOL: f64 = 1e-12;
pub const POSITIVITY_TOL: f64 = 1e-10;

impl DensityMatrix {
    /// Validates trace, Hermiticity and positivity.
    pub fn new(space: CompositeSpace, matrix: DMatrix<C64>) -> Result<Self> {
        let rho = Self::from_evolved(space, matrix)?;
        let trace = rho.trace();
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {trace} differs from 1")));
        }
        let herm = rho.hermiticity_error();
        if herm > HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (deviation {herm:e})")));
        }
        let min = rho.min_eigenvalue();
        if min < -POSITIVITY_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:e}")));
        }
        Ok(rho)
    }

    /// Shape-checked only; used for integrator samples whose trace and
    /// positivity are tracked as diagnostics.
    pub(crate) fn from_evolved(space: CompositeSpace, matrix: DMatrix<C64>) -> Result<Self> {
        let d = space.total_dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: matrix.nrows() });
        }
        Ok(Self { space, matrix })
    }

    pub fn maximally_mixed(space: &CompositeSpace) -> Self {
        let d = space.total_dim();
        Self {
            space: space.clone(),
            matrix: DMatrix::identity(d, d) * C64::new(1.0 / d as f64, 0.0),
        }
    }

    pub fn space(&self) -> &CompositeSpace {
        &self.space
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn hermiticity_error(&self) -> f64 {
        let n = self.matrix.nrows();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let (values, _) = hermitian_eigen(&self.matrix);
        values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    pub fn populations(&self) -> Vec<f64> {
        self.matrix.diagonal().iter().map(|z| z.re).collect()
    }

    pub fn expectation(&self, op: &Operator) -> Result<C64> {
        self.space.ensure_same_shape(op.space())?;
        Ok((op.matrix() * &self.matrix).trace())
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            space: self.space.tensor(&other.space),
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }

    /// Reduced state on the factors in `keep` (sorted, duplicates removed).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.is_empty() {
            return Err(Error::InvalidParameter {
                name: "keep",
                reason: "at least one subsystem must be kept".into(),
            });
        }
        let reduced_space = self.space.select(&keep)?;
        let traced: Vec<usize> = (0..self.space.len()).filter(|k| !keep.contains(k)).collect();
        let dims = self.space.dims();
        let strides = self.space.strides();

        let offsets = |factors: &[usize]| -> Vec<usize> {
            let count: usize = factors.iter().map(|&f| dims[f]).product();
            (0..count)
                .map(|mut local| {
                    let mut off = 0;
                    for &f in factors.iter().rev() {
                        off += (local % dims[f]) * strides[f];
                        local /= dims[f];
                    }
                    off
                })
                .collect()
        };
        let kept_off = offsets(&keep);
        let traced_off = offsets(&traced);

        let dk = kept_off.len();
        let mut out = DMatrix::zeros(dk, dk);
        for (i, &ki) in kept_off.iter().enumerate() {
            for (j, &kj) in kept_off.iter().enumerate() {
                let mut acc = C64::new(0.0, 0.0);
                for &t in &traced_off {
                    acc += self.matrix[(ki + t, kj + t)];
                }
                out[(i, j)] = acc;
            }
        }
        Ok(Self { space: reduced_space, matrix: out })
    }

    /// Uhlmann fidelity `(tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        self.space.ensure_same_shape(&other.space)?;
        let (values, vectors) = hermitian_eigen(&self.matrix);
        let sqrt_rho = spectral_apply(&values, &vectors, |v| C64::new(v.max(0.0).sqrt(), 0.0));
        let inner = &sqrt_rho * &other.matrix * &sqrt_rho;
        let (mu, _) = hermitian_eigen(&inner);
        let root_sum: f64 = mu.iter().map(|&m| m.max(0.0).sqrt()).sum();
        Ok((root_sum * root_sum).clamp(0.0, 1.0))
    }

    /// `<psi|rho|psi>`.
    pub fn fidelity_with_pure(&self, psi: &PureState) -> Result<f64> {
        self.space.ensure_same_shape(psi.space())?;
        let v = psi.amplitudes();
        Ok(v.dotc(&(&self.matrix * v)).re.clamp(0.0, 1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::SubsystemSpec;

    fn qubit() -> CompositeSpace {
        CompositeSpace::single(SubsystemSpec::two_level("q"))
    }

    fn state(space: &CompositeSpace, amps: &[(f64, f64)]) -> PureState {
        let v = DVector::from_iterator(amps.len(), amps.iter().map(|&(r, i)| C64::new(r, i)));
        PureState::new(space.clone(), v).unwrap()
    }

    #[test]
    fn pure_fidelities() {
        let s = CompositeSpace::modes(1, 2).unwrap();
        let zero = state(&s, &[(1.0, 0.0), (0.0, 0.0)]);
        let one = state(&s, &[(0.0, 0.0), (1.0, 0.0)]);
        let plus = state(&s, &[(1.0, 0.0), (1.0, 0.0)]);
        assert_eq!(zero.fidelity(&zero).unwrap(), 1.0);
        assert_eq!(zero.fidelity(&one).unwrap(), 0.0);
        assert!((plus.fidelity(&zero).unwrap() - 0.5).abs() < 1e-15);
        assert!((zero.fidelity(&plus).unwrap() - 0.5).abs() < 1e-15);
        assert!(zero.fidelity(&PureState::fock(3, 0).unwrap()).is_err());
    }

    #[test]
    fn normalization_and_zero_vector() {
        let s = CompositeSpace::modes(1, 3).unwrap();
        let psi = state(&s, &[(3.0, 0.0), (0.0, 4.0), (0.0, 0.0)]);
        assert!((psi.norm() - 1.0).abs() < 1e-12);
        assert!(PureState::new(s.clone(), DVector::zeros(3)).is_err());
        assert!(PureState::new(s, DVector::zeros(2)).is_err());
    }

    #[test]
    fn mixed_fidelity_matches_pure_limit() {
        let s = qubit();
        let a = state(&s, &[(0.6, 0.0), (0.0, 0.8)]);
        let b = state(&s, &[(1.0, 0.0), (1.0, 0.0)]);
        let f_pure = a.fidelity(&b).unwrap();
        let f_mixed = a.to_density().fidelity(&b.to_density()).unwrap();
        assert!((f_pure - f_mixed).abs() < 1e-7, "{f_pure} vs {f_mixed}");
        assert!((a.to_density().fidelity_with_pure(&b).unwrap() - f_pure).abs() < 1e-14);
        let mixed = DensityMatrix::maximally_mixed(&s);
        assert!((mixed.fidelity(&mixed).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn partial_trace_examples() {
        let q = qubit();
        let a = state(&q, &[(0.6, 0.0), (0.0, 0.8)]).to_density();
        let b = state(&q, &[(1.0, 0.0), (1.0, 0.0)]).to_density();
        let ab = a.tensor(&b);
        assert!((ab.partial_trace(&[0]).unwrap().matrix() - a.matrix()).norm() < 1e-12);
        assert!((ab.partial_trace(&[1]).unwrap().matrix() - b.matrix()).norm() < 1e-12);

        let two = q.tensor(&q);
        let bell = state(&two, &[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)]).to_density();
        let reduced = bell.partial_trace(&[1]).unwrap();
        let half = DMatrix::identity(2, 2) * C64::new(0.5, 0.0);
        assert!((reduced.matrix() - half).norm() < 1e-15);

        assert_eq!(bell.partial_trace(&[0, 1]).unwrap(), bell);
        assert!(bell.partial_trace(&[]).is_err());
        assert!(bell.partial_trace(&[2]).is_err());
    }

    #[test]
    fn density_validation() {
        let q = qubit();
        let bad_trace = DMatrix::identity(2, 2);
        assert!(DensityMatrix::new(q.clone(), bad_trace).is_err());
        let negative = DMatrix::from_diagonal(&DVector::from_vec(vec![
            C64::new(1.5, 0.0),
            C64::new(-0.5, 0.0),
        ]));
        assert!(DensityMatrix::new(q.clone(), negative).is_err());
        let ok = DensityMatrix::maximally_mixed(&q);
        assert!(DensityMatrix::new(q, ok.matrix().clone()).is_ok());
    }
}
