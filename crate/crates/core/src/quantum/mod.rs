//! Truncated Fock spaces, spin-1/2 factors, and the dense linear algebra the
//! physics modules share.

mod local;
mod operator;
mod space;
mod state;

pub use local::LocalOperator;
pub use operator::{Operator, Pauli};
pub use space::{CompositeSpace, SubsystemKind, SubsystemSpec};
pub use state::{DensityMatrix, PureState};

pub type C64 = num_complex::Complex64;

pub(crate) use operator::{hermitian_eigen, spectral_apply};
