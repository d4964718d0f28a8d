use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::quantum::{CompositeSpace, Operator, C64};

/// A Hamiltonian that can be sampled at any time (rad/s units, `H / hbar`).
pub trait Hamiltonian: Sync {
    fn space(&self) -> &CompositeSpace;

    fn matrix_at(&self, t: f64) -> DMatrix<C64>;

    fn apply(&self, t: f64, psi: &DVector<C64>) -> DVector<C64> {
        self.matrix_at(t) * psi
    }

    fn is_time_independent(&self) -> bool {
        false
    }
}

impl Hamiltonian for Operator {
    fn space(&self) -> &CompositeSpace {
        Operator::space(self)
    }

    fn matrix_at(&self, _t: f64) -> DMatrix<C64> {
        self.matrix().clone()
    }

    fn apply(&self, _t: f64, psi: &DVector<C64>) -> DVector<C64> {
        self.matrix() * psi
    }

    fn is_time_independent(&self) -> bool {
        true
    }
}

/// Wraps a generator closure `t -> H(t)`.
pub struct FnHamiltonian<F> {
    space: CompositeSpace,
    generator: F,
}

impl<F: Fn(f64) -> DMatrix<C64> + Sync> FnHamiltonian<F> {
    pub fn new(space: CompositeSpace, generator: F) -> Self {
        Self { space, generator }
    }
}

impl<F: Fn(f64) -> DMatrix<C64> + Sync> Hamiltonian for FnHamiltonian<F> {
    fn space(&self) -> &CompositeSpace {
        &self.space
    }

    fn matrix_at(&self, t: f64) -> DMatrix<C64> {
        (self.generator)(t)
    }
}

#[derive(Clone, Debug, PartialEq)]
struct Term {
    amplitude: C64,
    frequency: f64,
    matrix: DMatrix<C64>,
    nonzeros: Vec<(usize, usize, C64)>,
}

impl Term {
    fn coefficient(&self, t: f64) -> C64 {
        if self.frequency == 0.0 {
            self.amplitude
        } else {
            self.amplitude * C64::from_polar(1.0, self.frequency * t)
        }
    }
}

/// `H(t) = sum_k c_k e^{i w_k t} A_k` with constant matrices `A_k`.
///
/// Terms are added either as static Hermitian pieces or together with their
/// Hermitian conjugate, so `H(t)` stays Hermitian at every `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct TimeDependentHamiltonian {
    space: CompositeSpace,
    terms: Vec<Term>,
}

impl TimeDependentHamiltonian {
    pub fn new(space: CompositeSpace) -> Self {
        Self { space, terms: Vec::new() }
    }

    fn check(&self, matrix: &DMatrix<C64>) -> Result<()> {
        let d = self.space.total_dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: matrix.nrows() });
        }
        Ok(())
    }

    fn push_term(&mut self, matrix: DMatrix<C64>, amplitude: C64, frequency: f64) {
        let nonzeros = sparse_entries(&matrix);
        if nonzeros.is_empty() || amplitude == C64::new(0.0, 0.0) {
            return;
        }
        self.terms.push(Term { amplitude, frequency, matrix, nonzeros });
    }

    pub fn push_static(&mut self, matrix: DMatrix<C64>) -> Result<()> {
        self.check(&matrix)?;
        let op = Operator::new(self.space.clone(), matrix)?;
        op.ensure_hermitian()?;
        self.push_term(op.into_matrix(), C64::new(1.0, 0.0), 0.0);
        Ok(())
    }

    /// Adds `amplitude e^{i frequency t} A` and its Hermitian conjugate.
    pub fn push_with_conjugate(
        &mut self,
        matrix: DMatrix<C64>,
        amplitude: C64,
        frequency: f64,
    ) -> Result<()> {
        self.check(&matrix)?;
        let adjoint = matrix.adjoint();
        self.push_term(matrix, amplitude, frequency);
        self.push_term(adjoint, amplitude.conj(), -frequency);
        Ok(())
    }

    /// Adds a family of terms `sum_k e^{i w_k t} A_k` that is Hermitian as a
    /// whole (each `A_k^dag` equals the `A_j` with `w_j = -w_k`).
    pub(crate) fn push_hermitian_family(
        &mut self,
        family: Vec<(f64, DMatrix<C64>)>,
    ) -> Result<()> {
        for (w, a) in &family {
            self.check(a)?;
            let partner = family
                .iter()
                .find(|(w2, _)| *w2 == -*w)
                .map(|(_, b)| b)
                .ok_or_else(|| Error::Contract("term family is not Hermitian".into()))?;
            let dev = (a.adjoint() - partner).iter().fold(0.0f64, |m, z| m.max(z.norm()));
            if dev > 1e-12 * a.iter().fold(1.0f64, |m, z| m.max(z.norm())) {
                return Err(Error::NotHermitian(dev));
            }
        }
        for (w, a) in family {
            self.push_term(a, C64::new(1.0, 0.0), w);
        }
        Ok(())
    }

    pub fn space(&self) -> &CompositeSpace {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Distinct frequencies present, ascending.
    pub fn frequencies(&self) -> Vec<f64> {
        let mut f: Vec<f64> = self.terms.iter().map(|t| t.frequency).collect();
        f.sort_by(f64::total_cmp);
        f.dedup();
        f
    }

    pub fn at(&self, t: f64) -> Operator {
        Operator::new(self.space.clone(), self.matrix_at(t))
            .expect("terms share the Hamiltonian's space")
    }

    /// Time average over all oscillating terms: keeps only the `w = 0` part.
    pub fn secular_part(&self) -> Operator {
        let d = self.space.total_dim();
        let m = self
            .terms
            .iter()
            .filter(|t| t.frequency == 0.0)
            .fold(DMatrix::zeros(d, d), |acc, t| acc + &t.matrix * t.amplitude);
        Operator::new(self.space.clone(), m).expect("terms share the Hamiltonian's space")
    }
}

impl Hamiltonian for TimeDependentHamiltonian {
    fn space(&self) -> &CompositeSpace {
        &self.space
    }

    fn matrix_at(&self, t: f64) -> DMatrix<C64> {
        let d = self.space.total_dim();
        let mut m = DMatrix::zeros(d, d);
        for term in &self.terms {
            let c = term.coefficient(t);
            for &(i, j, v) in &term.nonzeros {
                m[(i, j)] += c * v;
            }
        }
        m
    }

    fn apply(&self, t: f64, psi: &DVector<C64>) -> DVector<C64> {
        let mut out = DVector::zeros(psi.len());
        for term in &self.terms {
            let c = term.coefficient(t);
            for &(i, j, v) in &term.nonzeros {
                out[i] += c * v * psi[j];
            }
        }
        out
    }

    fn is_time_independent(&self) -> bool {
        self.terms.iter().all(|t| t.frequency == 0.0)
    }
}

fn sparse_entries(matrix: &DMatrix<C64>) -> Vec<(usize, usize, C64)> {
    let mut out = Vec::new();
    for j in 0..matrix.ncols() {
        for i in 0..matrix.nrows() {
            let v = matrix[(i, j)];
            if v.re != 0.0 || v.im != 0.0 {
                out.push((i, j, v));
            }
        }
    }
    out
}
