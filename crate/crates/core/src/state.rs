//! Pure and mixed quantum states over a factored Hilbert space.

use crate::error::{Error, Result};
use crate::linalg::{
    partial_trace, partial_trace_pure, partial_transpose, psd_eig, purity, ComplexMatrix,
    FactoredDims, C64,
};
use crate::tolerance;

/// Unit-norm state vector together with its subsystem dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
    dims: FactoredDims,
}

impl PureState {
    /// Validates the norm and the factor dimensions.
    pub fn new(amplitudes: Vec<C64>, dims: FactoredDims) -> Result<Self> {
        dims.check_total(amplitudes.len())?;
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr.sqrt() - 1.0).abs() > tolerance::NORM {
            return Err(Error::InvalidArgument(format!(
                "state vector has norm {}, expected 1",
                norm_sqr.sqrt()
            )));
        }
        Ok(Self { amplitudes, dims })
    }

    /// Scales `amplitudes` to unit norm.
    pub fn normalized(mut amplitudes: Vec<C64>, dims: FactoredDims) -> Result<Self> {
        dims.check_total(amplitudes.len())?;
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidArgument("cannot normalize a zero vector".into()));
        }
        for z in &mut amplitudes {
            *z /= norm;
        }
        Ok(Self { amplitudes, dims })
    }

    /// Computational basis state `|index>`.
    pub fn basis(index: usize, dims: FactoredDims) -> Result<Self> {
        let total = dims.total();
        if index >= total {
            return Err(Error::Index(format!("basis index {index} >= dimension {total}")));
        }
        let mut amplitudes = vec![C64::new(0.0, 0.0); total];
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(Self { amplitudes, dims })
    }

    pub(crate) fn from_parts_unchecked(amplitudes: Vec<C64>, dims: FactoredDims) -> Self {
        debug_assert_eq!(dims.total(), amplitudes.len());
        Self { amplitudes, dims }
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn dims(&self) -> &FactoredDims {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `U |psi>`; the factor structure is kept.
    pub fn evolve(&self, unitary: &ComplexMatrix) -> Result<Self> {
        if unitary.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} operator applied to a {}-dimensional state",
                unitary.dim(),
                unitary.dim(),
                self.dim()
            )));
        }
        Ok(Self {
            amplitudes: unitary.apply(&self.amplitudes),
            dims: self.dims.clone(),
        })
    }

    pub fn projector(&self) -> DensityMatrix {
        DensityMatrix {
            matrix: ComplexMatrix::outer(&self.amplitudes),
            dims: self.dims.clone(),
        }
    }

    /// Reduced state on the subsystems in `keep`.
    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let matrix = partial_trace_pure(&self.amplitudes, &self.dims, keep)?;
        Ok(DensityMatrix {
            matrix,
            dims: kept_dims(&self.dims, keep),
        })
    }
}

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: FactoredDims,
}

impl DensityMatrix {
    /// Checks Hermiticity, unit trace and positivity (one eigendecomposition).
    pub fn new(matrix: ComplexMatrix, dims: FactoredDims) -> Result<Self> {
        dims.check_total(matrix.dim())?;
        let residual = matrix.hermiticity_residual();
        if residual > tolerance::HERMITIAN {
            return Err(Error::NotHermitian { residual });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tolerance::TRACE || tr.im.abs() > tolerance::TRACE {
            return Err(Error::InvalidArgument(format!("density matrix has trace {tr}")));
        }
        let matrix = matrix.hermitian_part();
        psd_eig(&matrix)?;
        Ok(Self { matrix, dims })
    }

    /// `I / d`.
    pub fn maximally_mixed(dims: FactoredDims) -> Self {
        let d = dims.total();
        Self {
            matrix: ComplexMatrix::identity(d).scale_real(1.0 / d as f64),
            dims,
        }
    }

    pub(crate) fn from_parts_unchecked(matrix: ComplexMatrix, dims: FactoredDims) -> Self {
        debug_assert_eq!(dims.total(), matrix.dim());
        Self { matrix, dims }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dims(&self) -> &FactoredDims {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn purity(&self) -> f64 {
        purity(&self.matrix)
    }

    /// Eigenvalues, ascending, with roundoff negatives clamped to zero.
    pub fn spectrum(&self) -> Result<Vec<f64>> {
        psd_eig(&self.matrix).map(|e| e.values)
    }

    /// `U rho U^H`.
    pub fn evolve(&self, unitary: &ComplexMatrix) -> Result<Self> {
        if unitary.dim() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} operator applied to a {}x{} density matrix",
                unitary.dim(),
                unitary.dim(),
                self.dim(),
                self.dim()
            )));
        }
        Ok(Self {
            matrix: self.matrix.conjugate_by(unitary),
            dims: self.dims.clone(),
        })
    }

    pub fn reduced(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let matrix = partial_trace(&self.matrix, &self.dims, keep)?;
        Ok(DensityMatrix {
            matrix,
            dims: kept_dims(&self.dims, keep),
        })
    }

    pub fn partial_transpose(&self, subsystem: usize) -> Result<ComplexMatrix> {
        partial_transpose(&self.matrix, &self.dims, subsystem)
    }

    /// Smallest eigenvalue of the partial transpose on the last factor.
    pub fn min_partial_transpose_eigenvalue(&self) -> Result<f64> {
        let pt = self.partial_transpose(self.dims.len() - 1)?;
        Ok(crate::linalg::hermitian_eigenvalues(&pt)?[0])
    }

    /// Positive partial transpose, i.e. separable for two qubits.
    pub fn is_ppt(&self) -> Result<bool> {
        Ok(self.min_partial_transpose_eigenvalue()? >= -tolerance::PPT)
    }
}

fn kept_dims(dims: &FactoredDims, keep: &[usize]) -> FactoredDims {
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    let kept: Vec<usize> = keep.iter().map(|&k| dims.dims()[k]).collect();
    FactoredDims::new(kept).expect("validated by partial trace")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unnormalized_and_mismatched() {
        let v = vec![C64::new(1.0, 0.0), C64::new(1.0, 0.0)];
        assert!(PureState::new(v.clone(), FactoredDims::qubits(1)).is_err());
        assert!(PureState::normalized(v, FactoredDims::qubits(2)).is_err());
        assert!(PureState::basis(4, FactoredDims::qubits(2)).is_err());
    }

    #[test]
    fn density_validation() {
        let dims = FactoredDims::qubits(1);
        let bad_trace = ComplexMatrix::from_real_diagonal(&[0.5, 0.6]);
        assert!(DensityMatrix::new(bad_trace, dims.clone()).is_err());
        let not_psd = ComplexMatrix::from_real_diagonal(&[1.5, -0.5]);
        assert!(matches!(
            DensityMatrix::new(not_psd, dims.clone()),
            Err(Error::NotPsd { .. })
        ));
        let ok = ComplexMatrix::from_real_diagonal(&[0.75, 0.25]);
        assert!(DensityMatrix::new(ok, dims).is_ok());
    }

    #[test]
    fn reduced_product_is_factor() {
        let a = [C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
        let b = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        let psi = PureState::new(crate::linalg::kron_vec(&a, &b), FactoredDims::qubits(2)).unwrap();
        let ra = psi.reduced(&[0]).unwrap();
        assert!(ra.matrix().max_abs_diff(&ComplexMatrix::outer(&a)) < 1e-12);
        assert_eq!(ra.dims().dims(), &[2]);
    }

    #[test]
    fn maximally_mixed_is_ppt() {
        assert!(DensityMatrix::maximally_mixed(FactoredDims::qubits(2)).is_ppt().unwrap());
    }
}
