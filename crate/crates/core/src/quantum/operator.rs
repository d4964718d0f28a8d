use nalgebra::{DMatrix, DVector, SymmetricEigen};

use super::{CompositeSpace, LocalOperator, PureState, SubsystemSpec, C64};
use crate::error::{Error, Result};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Two-level operators in the `(|g>, |e>)` basis, so that
/// `sigma_z = |e><e| - |g><g| = diag(-1, +1)` and `sigma_+ = |e><g|`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Pauli {
    Z,
    Plus,
    Minus,
    X,
    Y,
}

/// Square complex matrix over a [`CompositeSpace`].
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    space: CompositeSpace,
    matrix: DMatrix<C64>,
}

impl Operator {
    pub fn new(space: CompositeSpace, matrix: DMatrix<C64>) -> Result<Self> {
        let dim = space.total_dim();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: matrix.nrows() });
        }
        Ok(Self { space, matrix })
    }

    pub fn identity(space: &CompositeSpace) -> Self {
        let d = space.total_dim();
        Self { space: space.clone(), matrix: DMatrix::identity(d, d) }
    }

    pub fn zeros(space: &CompositeSpace) -> Self {
        let d = space.total_dim();
        Self { space: space.clone(), matrix: DMatrix::zeros(d, d) }
    }

    /// Ladder operator `a` on a mode truncated to `dim` levels:
    /// `<n-1|a|n> = sqrt(n)`.
    pub fn annihilation(dim: usize) -> Result<Self> {
        let space = CompositeSpace::single(SubsystemSpec::mode("mode", dim)?);
        let mut matrix = DMatrix::zeros(dim, dim);
        for n in 1..dim {
            matrix[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
        }
        Ok(Self { space, matrix })
    }

    pub fn creation(dim: usize) -> Result<Self> {
        Ok(Self::annihilation(dim)?.dagger())
    }

    pub fn number(dim: usize) -> Result<Self> {
        let space = CompositeSpace::single(SubsystemSpec::mode("mode", dim)?);
        let diag = DVector::from_iterator(dim, (0..dim).map(|n| C64::new(n as f64, 0.0)));
        Ok(Self { space, matrix: DMatrix::from_diagonal(&diag) })
    }

    pub fn pauli(which: Pauli) -> Self {
        let space = CompositeSpace::single(SubsystemSpec::two_level("spin"));
        let i = C64::i();
        let m = match which {
            Pauli::Z => [-ONE, ZERO, ZERO, ONE],
            // row-major [[<g|.|g>, <g|.|e>], [<e|.|g>, <e|.|e>]]
            Pauli::Plus => [ZERO, ZERO, ONE, ZERO],
            Pauli::Minus => [ZERO, ONE, ZERO, ZERO],
            Pauli::X => [ZERO, ONE, ONE, ZERO],
            Pauli::Y => [ZERO, i, -i, ZERO],
        };
        Self { space, matrix: DMatrix::from_row_slice(2, 2, &m) }
    }

    pub fn space(&self) -> &CompositeSpace {
        &self.space
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Places a single-factor operator at factor `index` of `space`, with
    /// identities on every other factor.
    pub fn embed(&self, index: usize, space: &CompositeSpace) -> Result<Self> {
        let target = space.subsystem(index)?;
        if target.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: target.dim(), found: self.dim() });
        }
        LocalOperator::new(space, vec![index], self.matrix.clone())?.to_operator(space)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        Self {
            space: self.space.tensor(&other.space),
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }

    pub fn dagger(&self) -> Self {
        Self { space: self.space.clone(), matrix: self.matrix.adjoint() }
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same_shape(&other.space)?;
        Ok(Self { space: self.space.clone(), matrix: &self.matrix * &other.matrix })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same_shape(&other.space)?;
        Ok(Self { space: self.space.clone(), matrix: &self.matrix + &other.matrix })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same_shape(&other.space)?;
        Ok(Self { space: self.space.clone(), matrix: &self.matrix - &other.matrix })
    }

    pub fn scale(&self, factor: C64) -> Self {
        Self { space: self.space.clone(), matrix: &self.matrix * factor }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(C64::new(factor, 0.0))
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.space.ensure_same_shape(&other.space)?;
        Ok(Self {
            space: self.space.clone(),
            matrix: &self.matrix * &other.matrix - &other.matrix * &self.matrix,
        })
    }

    pub fn apply(&self, state: &PureState) -> Result<DVector<C64>> {
        self.space.ensure_same_shape(state.space())?;
        Ok(&self.matrix * state.amplitudes())
    }

    /// `<psi|A|psi>`.
    pub fn expectation(&self, state: &PureState) -> Result<C64> {
        let image = self.apply(state)?;
        Ok(state.amplitudes().dotc(&image))
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// `max_ij |A_ij - conj(A_ji)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.matrix[(i, j)] - self.matrix[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    pub fn max_abs(&self) -> f64 {
        self.matrix.iter().fold(0.0, |m, z| m.max(z.norm()))
    }

    /// Accepts `H` when `max|H - H^dag| <= 1e-12 * max(1, max|H|)`.
    pub(crate) fn ensure_hermitian(&self) -> Result<()> {
        let err = self.hermiticity_error();
        if err <= 1e-12 * self.max_abs().max(1.0) {
            Ok(())
        } else {
            Err(Error::NotHermitian(err))
        }
    }

    /// Eigendecomposition of a Hermitian operator: `(eigenvalues, eigenvectors)`
    /// with eigenvectors as columns. Eigenvalues are sorted ascending.
    pub fn eigh(&self) -> Result<(DVector<f64>, DMatrix<C64>)> {
        self.ensure_hermitian()?;
        Ok(hermitian_eigen(&self.matrix))
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(self.eigh()?.0.iter().copied().collect())
    }

    /// `f(A)` for Hermitian `A` through its spectral decomposition.
    pub fn spectral_map(&self, f: impl Fn(f64) -> C64) -> Result<Self> {
        let (values, vectors) = self.eigh()?;
        Ok(Self { space: self.space.clone(), matrix: spectral_apply(&values, &vectors, f) })
    }

    /// Largest singular value.
    pub fn spectral_norm(&self) -> f64 {
        let gram = self.matrix.adjoint() * &self.matrix;
        let (values, _) = hermitian_eigen(&gram);
        values.iter().fold(0.0f64, |m, &v| m.max(v)).max(0.0).sqrt()
    }

    /// Submatrix on the listed basis indices.
    pub fn restrict(&self, indices: &[usize]) -> DMatrix<C64> {
        DMatrix::from_fn(indices.len(), indices.len(), |i, j| {
            self.matrix[(indices[i], indices[j])]
        })
    }
}

pub(crate) fn hermitian_eigen(matrix: &DMatrix<C64>) -> (DVector<f64>, DMatrix<C64>) {
    // Symmetrize so round-off asymmetry does not leak into the solver.
    let sym = (matrix + matrix.adjoint()) * C64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = DVector::from_iterator(order.len(), order.iter().map(|&k| eig.eigenvalues[k]));
    let vectors = DMatrix::from_fn(matrix.nrows(), order.len(), |i, j| {
        eig.eigenvectors[(i, order[j])]
    });
    (values, vectors)
}

pub(crate) fn spectral_apply(
    values: &DVector<f64>,
    vectors: &DMatrix<C64>,
    f: impl Fn(f64) -> C64,
) -> DMatrix<C64> {
    let mut scaled = vectors.clone();
    for (k, mut col) in scaled.column_iter_mut().enumerate() {
        col *= f(values[k]);
    }
    scaled * vectors.adjoint()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    #[test]
    fn ladder_operators() {
        let a = Operator::annihilation(2).unwrap();
        assert_eq!(a.matrix(), &DMatrix::from_row_slice(2, 2, &[ZERO, ONE, ZERO, ZERO]));

        let a4 = Operator::annihilation(4).unwrap();
        let n = a4.dagger().matmul(&a4).unwrap();
        let diff = n.sub(&Operator::number(4).unwrap()).unwrap();
        assert!(diff.max_abs() <= 4.0 * f64::EPSILON);

        let a10 = Operator::annihilation(10).unwrap();
        assert_eq!(a10.matrix()[(3, 4)], c(2.0));

        assert_eq!(Operator::annihilation(1), Err(Error::InvalidDimension(1)));
    }

    #[test]
    fn truncated_canonical_commutator() {
        let a = Operator::annihilation(20).unwrap();
        let comm = a.commutator(&a.dagger()).unwrap();
        for i in 0..20 {
            for j in 0..20 {
                let expected = match (i, j) {
                    (19, 19) => c(-19.0),
                    (i, j) if i == j => ONE,
                    _ => ZERO,
                };
                assert!((comm.matrix()[(i, j)] - expected).norm() < 1e-12, "({i},{j})");
            }
        }
    }

    #[test]
    fn pauli_conventions() {
        let z = Operator::pauli(Pauli::Z);
        assert_eq!(z.matrix(), &DMatrix::from_diagonal(&DVector::from_vec(vec![-ONE, ONE])));
        let pm = Operator::pauli(Pauli::Plus).matmul(&Operator::pauli(Pauli::Minus)).unwrap();
        assert_eq!(pm.matrix(), &DMatrix::from_row_slice(2, 2, &[ZERO, ZERO, ZERO, ONE]));
        let x = Operator::pauli(Pauli::X);
        let plus = PureState::new(x.space().clone(), DVector::from_vec(vec![ONE, ONE])).unwrap();
        let image = x.apply(&plus).unwrap();
        assert!((image - plus.amplitudes()).norm() < 1e-15);
        let sum = Operator::pauli(Pauli::Plus).add(&Operator::pauli(Pauli::Minus)).unwrap();
        assert_eq!(sum, x);
    }

    #[test]
    fn embedding() {
        let z = Operator::pauli(Pauli::Z);
        let single = CompositeSpace::single(SubsystemSpec::two_level("q"));
        assert_eq!(z.embed(0, &single).unwrap().matrix(), z.matrix());

        let space = CompositeSpace::new(vec![
            SubsystemSpec::two_level("q"),
            SubsystemSpec::mode("m", 3).unwrap(),
        ])
        .unwrap();
        let za = z.embed(0, &space).unwrap();
        let a = Operator::annihilation(3).unwrap().embed(1, &space).unwrap();
        assert!(za.commutator(&a).unwrap().max_abs() < 1e-15);
        assert_eq!(za.matrix(), &z.matrix().kronecker(&DMatrix::identity(3, 3)));
        assert_eq!(
            a.matrix(),
            &DMatrix::<C64>::identity(2, 2).kronecker(Operator::annihilation(3).unwrap().matrix())
        );

        let id = Operator::identity(&CompositeSpace::modes(1, 3).unwrap());
        assert_eq!(id.embed(1, &space).unwrap(), Operator::identity(&space));

        assert!(matches!(z.embed(1, &space), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(z.embed(2, &space), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn expectation_and_dagger() {
        let n = Operator::number(4).unwrap();
        let one = PureState::fock(4, 1).unwrap();
        assert!((n.expectation(&one).unwrap() - ONE).norm() < 1e-15);

        let h = Operator::new(
            CompositeSpace::modes(1, 2).unwrap(),
            DMatrix::from_row_slice(2, 2, &[c(1.0), C64::new(0.0, 2.0), C64::new(0.0, -2.0), c(3.0)]),
        )
        .unwrap();
        assert_eq!(h.dagger().dagger(), h);
        assert_eq!(h.hermiticity_error(), 0.0);
        assert!(Operator::annihilation(3).unwrap().eigh().is_err());
    }

    #[test]
    fn mismatched_spaces_are_rejected() {
        let a = Operator::annihilation(3).unwrap();
        let b = Operator::annihilation(4).unwrap();
        assert!(matches!(a.matmul(&b), Err(Error::SpaceMismatch(_))));
        assert!(matches!(a.add(&b), Err(Error::SpaceMismatch(_))));
        assert!(matches!(a.commutator(&b), Err(Error::SpaceMismatch(_))));
        assert!(a.expectation(&PureState::fock(4, 0).unwrap()).is_err());
    }

    #[test]
    fn spectral_norm_of_ladder() {
        // |a| on N levels is sqrt(N - 1).
        let a = Operator::annihilation(6).unwrap();
        assert!((a.spectral_norm() - 5f64.sqrt()).abs() < 1e-12);
    }
}
