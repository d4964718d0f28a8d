//! Operators acting on a few tensor factors of a larger space.
//!
//! Applying a k-local operator costs `total_dim * local_dim` per vector
//! instead of the `total_dim^2` of a dense embedded matrix, which keeps gate
//! sequences over many wells cheap.

use nalgebra::{DMatrix, DVector};

use super::{CompositeSpace, Operator, C64};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LocalOperator {
    targets: Vec<usize>,
    matrix: DMatrix<C64>,
}

/// Index bookkeeping for applying a local operator inside `space`.
struct Layout {
    /// Full-space offsets of each local basis index (targets' digits only).
    offsets: Vec<usize>,
    /// Full-space indices whose target digits are all zero.
    bases: Vec<usize>,
}

impl Layout {
    fn new(space: &CompositeSpace, targets: &[usize]) -> Self {
        let dims = space.dims();
        let strides = space.strides();
        let local_dim: usize = targets.iter().map(|&t| dims[t]).product();
        let mut offsets = Vec::with_capacity(local_dim);
        for local in 0..local_dim {
            let mut rem = local;
            let mut offset = 0;
            for &t in targets.iter().rev() {
                offset += (rem % dims[t]) * strides[t];
                rem /= dims[t];
            }
            offsets.push(offset);
        }
        let bases = (0..space.total_dim())
            .filter(|&i| {
                targets.iter().all(|&t| (i / strides[t]).is_multiple_of(dims[t]))
            })
            .collect();
        Self { offsets, bases }
    }
}

impl LocalOperator {
    /// `targets` lists distinct factor indices; the local matrix is ordered
    /// with `targets[0]` as the most significant factor.
    pub fn new(
        space: &CompositeSpace,
        targets: Vec<usize>,
        matrix: DMatrix<C64>,
    ) -> Result<Self> {
        let len = space.len();
        for (k, &t) in targets.iter().enumerate() {
            if t >= len {
                return Err(Error::IndexOutOfRange { index: t, len });
            }
            if targets[..k].contains(&t) {
                return Err(Error::SpaceMismatch(format!("repeated target factor {t}")));
            }
        }
        if targets.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        let local_dim: usize = targets.iter().map(|&t| space.dims()[t]).product();
        if matrix.nrows() != local_dim || matrix.ncols() != local_dim {
            return Err(Error::DimensionMismatch {
                expected: local_dim,
                found: matrix.nrows(),
            });
        }
        Ok(Self { targets, matrix })
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    fn check_space(&self, space: &CompositeSpace) -> Result<()> {
        match self.targets.iter().find(|&&t| t >= space.len()) {
            Some(&t) => Err(Error::IndexOutOfRange { index: t, len: space.len() }),
            None => Ok(()),
        }
    }

    pub fn apply_vector(
        &self,
        space: &CompositeSpace,
        vector: &DVector<C64>,
    ) -> Result<DVector<C64>> {
        self.check_space(space)?;
        if vector.len() != space.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: space.total_dim(),
                found: vector.len(),
            });
        }
        let layout = Layout::new(space, &self.targets);
        let mut out = DVector::zeros(vector.len());
        apply_column(&self.matrix, &layout, vector.as_slice(), out.as_mut_slice());
        Ok(out)
    }

    /// `self * matrix` where `matrix` is a full-space operator matrix.
    pub fn apply_left(
        &self,
        space: &CompositeSpace,
        matrix: &DMatrix<C64>,
    ) -> Result<DMatrix<C64>> {
        self.check_space(space)?;
        let dim = space.total_dim();
        if matrix.nrows() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: matrix.nrows() });
        }
        let layout = Layout::new(space, &self.targets);
        let mut out = DMatrix::zeros(dim, matrix.ncols());
        for (col_in, mut col_out) in matrix.column_iter().zip(out.column_iter_mut()) {
            apply_column(
                &self.matrix,
                &layout,
                col_in.as_slice(),
                col_out.as_mut_slice(),
            );
        }
        Ok(out)
    }

    pub fn to_operator(&self, space: &CompositeSpace) -> Result<Operator> {
        let identity = DMatrix::identity(space.total_dim(), space.total_dim());
        Operator::new(space.clone(), self.apply_left(space, &identity)?)
    }
}

fn apply_column(local: &DMatrix<C64>, layout: &Layout, input: &[C64], output: &mut [C64]) {
    let d = layout.offsets.len();
    let mut gathered = vec![C64::new(0.0, 0.0); d];
    for &base in &layout.bases {
        let mut any = false;
        for (slot, &off) in gathered.iter_mut().zip(&layout.offsets) {
            *slot = input[base + off];
            any |= slot.re != 0.0 || slot.im != 0.0;
        }
        if !any {
            continue;
        }
        for (i, &off) in layout.offsets.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for (j, g) in gathered.iter().enumerate() {
                acc += local[(i, j)] * g;
            }
            output[base + off] = acc;
        }
    }
}
