//! Dense complex linear algebra for the small dimensions used here (2 to 36).

mod eigen;
mod matrix;
mod ops;

pub use eigen::{hermitian_eig, hermitian_eigenvalues, HermitianEigen};
pub use matrix::{kron, kron_vec, pauli, ComplexMatrix, C64};
pub(crate) use matrix::{I, ONE, ZERO};
pub use ops::{
    matrix_sqrt_psd, partial_trace, partial_trace_pure, partial_transpose, psd_eig, purity,
    FactoredDims,
};
