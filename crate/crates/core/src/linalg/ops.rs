use super::eigen::{hermitian_eig, HermitianEigen};
use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{Error, Result};
use crate::tolerance;

/// Ordered subsystem dimensions of a composite space. Factor 0 is the most
/// significant digit of the computational-basis index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredDims(Vec<usize>);

impl FactoredDims {
    pub fn new(dims: impl Into<Vec<usize>>) -> Result<Self> {
        let dims = dims.into();
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::DimensionMismatch(format!(
                "subsystem dimensions must be non-empty and positive, got {dims:?}"
            )));
        }
        Ok(Self(dims))
    }

    /// A single unfactored space.
    pub fn single(dim: usize) -> Self {
        assert!(dim > 0, "dimension must be positive");
        Self(vec![dim])
    }

    /// `n` qubits.
    pub fn qubits(n: usize) -> Self {
        Self(vec![2; n])
    }

    pub fn bipartite(a: usize, b: usize) -> Self {
        Self(vec![a, b])
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    pub fn check_total(&self, dim: usize) -> Result<()> {
        if self.total() != dim {
            return Err(Error::DimensionMismatch(format!(
                "factors {:?} multiply to {}, matrix has dimension {dim}",
                self.0,
                self.total()
            )));
        }
        Ok(())
    }

    /// Mixed-radix digits of `index`, most significant first.
    fn digits(&self, mut index: usize, out: &mut [usize]) {
        for (slot, &d) in out.iter_mut().zip(&self.0).rev() {
            *slot = index % d;
            index /= d;
        }
    }

    fn compose(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.0)
            .fold(0, |acc, (&digit, &d)| acc * d + digit)
    }

    /// For every basis index, its (kept, traced) index pair.
    fn split(&self, keep: &[usize]) -> Vec<(usize, usize)> {
        let mut digits = vec![0; self.len()];
        (0..self.total())
            .map(|x| {
                self.digits(x, &mut digits);
                let (mut k, mut r) = (0, 0);
                for (f, (&digit, &d)) in digits.iter().zip(&self.0).enumerate() {
                    if keep.contains(&f) {
                        k = k * d + digit;
                    } else {
                        r = r * d + digit;
                    }
                }
                (k, r)
            })
            .collect()
    }

    fn validate_keep(&self, keep: &[usize]) -> Result<Vec<usize>> {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.is_empty() {
            return Err(Error::DimensionMismatch(
                "partial trace must keep at least one subsystem".into(),
            ));
        }
        if let Some(&bad) = keep.iter().find(|&&k| k >= self.len()) {
            return Err(Error::DimensionMismatch(format!(
                "subsystem {bad} does not exist in {:?}",
                self.0
            )));
        }
        Ok(keep)
    }

    fn kept_dim(&self, keep: &[usize]) -> usize {
        keep.iter().map(|&k| self.0[k]).product()
    }
}

/// Traces out every subsystem not listed in `keep`. Kept factors retain
/// their relative order.
pub fn partial_trace(rho: &ComplexMatrix, dims: &FactoredDims, keep: &[usize]) -> Result<ComplexMatrix> {
    dims.check_total(rho.dim())?;
    let keep = dims.validate_keep(keep)?;
    let kept_dim = dims.kept_dim(&keep);
    let rest_dim = dims.total() / kept_dim;

    // index of (kept, rest) in the full space
    let mut full = vec![0usize; dims.total()];
    for (x, (k, r)) in dims.split(&keep).into_iter().enumerate() {
        full[k * rest_dim + r] = x;
    }

    let mut out = ComplexMatrix::zeros(kept_dim);
    for k1 in 0..kept_dim {
        for k2 in 0..kept_dim {
            let mut acc = ZERO;
            for r in 0..rest_dim {
                acc += rho[(full[k1 * rest_dim + r], full[k2 * rest_dim + r])];
            }
            out[(k1, k2)] = acc;
        }
    }
    Ok(out)
}

/// Reduced density matrix of a pure state, `Tr_rest |psi><psi|`, without
/// materialising the full projector.
pub fn partial_trace_pure(psi: &[C64], dims: &FactoredDims, keep: &[usize]) -> Result<ComplexMatrix> {
    dims.check_total(psi.len())?;
    let keep = dims.validate_keep(keep)?;
    let kept_dim = dims.kept_dim(&keep);
    let rest_dim = dims.total() / kept_dim;

    // psi rearranged as a kept_dim x rest_dim matrix M; result is M M^H.
    let mut m = vec![ZERO; dims.total()];
    for (x, (k, r)) in dims.split(&keep).into_iter().enumerate() {
        m[k * rest_dim + r] = psi[x];
    }
    let mut out = ComplexMatrix::zeros(kept_dim);
    for i in 0..kept_dim {
        let row_i = &m[i * rest_dim..(i + 1) * rest_dim];
        for j in i..kept_dim {
            let row_j = &m[j * rest_dim..(j + 1) * rest_dim];
            let acc = row_i
                .iter()
                .zip(row_j)
                .fold(ZERO, |acc, (a, b)| acc + a * b.conj());
            out[(i, j)] = acc;
            out[(j, i)] = acc.conj();
        }
        let d = out[(i, i)].re;
        out[(i, i)] = C64::new(d, 0.0);
    }
    Ok(out)
}

/// Transposes the indices of one subsystem.
pub fn partial_transpose(rho: &ComplexMatrix, dims: &FactoredDims, subsystem: usize) -> Result<ComplexMatrix> {
    dims.check_total(rho.dim())?;
    if subsystem >= dims.len() {
        return Err(Error::DimensionMismatch(format!(
            "subsystem {subsystem} does not exist in {:?}",
            dims.dims()
        )));
    }
    let n = rho.dim();
    let mut out = ComplexMatrix::zeros(n);
    let mut dx = vec![0; dims.len()];
    let mut dy = vec![0; dims.len()];
    for x in 0..n {
        dims.digits(x, &mut dx);
        for y in 0..n {
            dims.digits(y, &mut dy);
            std::mem::swap(&mut dx[subsystem], &mut dy[subsystem]);
            let (xs, ys) = (dims.compose(&dx), dims.compose(&dy));
            std::mem::swap(&mut dx[subsystem], &mut dy[subsystem]);
            out[(x, y)] = rho[(xs, ys)];
        }
    }
    Ok(out)
}

/// Eigendecomposition of a PSD matrix with roundoff negatives clamped to 0.
pub fn psd_eig(a: &ComplexMatrix) -> Result<HermitianEigen> {
    let mut eig = hermitian_eig(a)?;
    if eig.values[0] < -tolerance::PSD_CLAMP {
        return Err(Error::NotPsd {
            min_eigenvalue: eig.values[0],
        });
    }
    for w in &mut eig.values {
        if *w < 0.0 {
            *w = 0.0;
        }
    }
    Ok(eig)
}

/// Principal square root of a positive semidefinite matrix.
pub fn matrix_sqrt_psd(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(psd_eig(a)?.map_values(f64::sqrt))
}

/// `Tr rho^2`, computed as the squared Frobenius norm (rho Hermitian).
pub fn purity(rho: &ComplexMatrix) -> f64 {
    rho.as_slice().iter().map(|z| z.norm_sqr()).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::{kron, kron_vec};

    fn bell() -> Vec<C64> {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        vec![h, ZERO, ZERO, h]
    }

    fn ghz3() -> Vec<C64> {
        let h = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let mut v = vec![ZERO; 8];
        v[0] = h;
        v[7] = h;
        v
    }

    #[test]
    fn bell_reduces_to_maximally_mixed() {
        let rho = ComplexMatrix::outer(&bell());
        let ra = partial_trace(&rho, &FactoredDims::qubits(2), &[0]).unwrap();
        assert!(ra.max_abs_diff(&ComplexMatrix::identity(2).scale_real(0.5)) < 1e-15);
    }

    #[test]
    fn product_factorizes() {
        let ra = ComplexMatrix::from_real_rows([[0.7, 0.1], [0.1, 0.3]]);
        let rb = ComplexMatrix::from_real_rows([[0.4, 0.0, 0.0], [0.0, 0.5, 0.2], [0.0, 0.2, 0.1]]);
        let rho = kron(&ra, &rb);
        let dims = FactoredDims::bipartite(2, 3);
        assert!(partial_trace(&rho, &dims, &[0]).unwrap().max_abs_diff(&ra) < 1e-15);
        assert!(partial_trace(&rho, &dims, &[1]).unwrap().max_abs_diff(&rb) < 1e-15);
    }

    #[test]
    fn ghz_pair_reduction() {
        // hand index sum: only |000> and |111> contribute, traced qubit C must match
        let mut expected = ComplexMatrix::zeros(4);
        expected[(0, 0)] = C64::new(0.5, 0.0);
        expected[(3, 3)] = C64::new(0.5, 0.0);
        let rho = ComplexMatrix::outer(&ghz3());
        let dims = FactoredDims::qubits(3);
        let rab = partial_trace(&rho, &dims, &[0, 1]).unwrap();
        assert!(rab.max_abs_diff(&expected) < 1e-15);
        let rab_pure = partial_trace_pure(&ghz3(), &dims, &[0, 1]).unwrap();
        assert!(rab_pure.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn pure_and_mixed_partial_traces_agree_on_noncontiguous_keep() {
        let v: Vec<C64> = (0..8).map(|k| C64::new(k as f64, 1.0 - k as f64)).collect();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let v: Vec<C64> = v.iter().map(|z| z / norm).collect();
        let dims = FactoredDims::qubits(3);
        let full = ComplexMatrix::outer(&v);
        for keep in [[0usize, 2], [1, 2], [0, 1]] {
            let a = partial_trace(&full, &dims, &keep).unwrap();
            let b = partial_trace_pure(&v, &dims, &keep).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-14);
        }
    }

    #[test]
    fn keep_all_is_identity_map() {
        let v: Vec<C64> = (0..6).map(|k| C64::new(0.1 * k as f64, 0.2)).collect();
        let rho = ComplexMatrix::outer(&v);
        let dims = FactoredDims::bipartite(2, 3);
        assert_eq!(partial_trace(&rho, &dims, &[0, 1]).unwrap(), rho);
    }

    #[test]
    fn dimension_errors() {
        let rho = ComplexMatrix::identity(4);
        assert!(partial_trace(&rho, &FactoredDims::qubits(3), &[0]).is_err());
        assert!(partial_trace(&rho, &FactoredDims::qubits(2), &[]).is_err());
        assert!(partial_trace(&rho, &FactoredDims::qubits(2), &[2]).is_err());
        assert!(partial_transpose(&rho, &FactoredDims::qubits(2), 2).is_err());
        assert!(FactoredDims::new(vec![2, 0]).is_err());
    }

    #[test]
    fn bell_partial_transpose_has_negative_half() {
        let rho = ComplexMatrix::outer(&bell());
        let pt = partial_transpose(&rho, &FactoredDims::qubits(2), 1).unwrap();
        let w = crate::linalg::hermitian_eigenvalues(&pt).unwrap();
        assert!((w[0] + 0.5).abs() < 1e-14);
    }

    #[test]
    fn product_state_partial_transpose_is_psd() {
        let a = [C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
        let b = [C64::new(0.8, 0.0), C64::new(0.36, 0.48)];
        let rho = ComplexMatrix::outer(&kron_vec(&a, &b));
        let pt = partial_transpose(&rho, &FactoredDims::qubits(2), 0).unwrap();
        assert!(pt.is_psd(1e-12));
        assert!(pt.is_hermitian(0.0));
    }

    #[test]
    fn sqrt_examples() {
        let q = ComplexMatrix::identity(4).scale_real(0.25);
        assert!(matrix_sqrt_psd(&q).unwrap().max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.5)) < 1e-15);

        let d = ComplexMatrix::from_real_diagonal(&[4.0, 1.0, 0.0, 0.0]);
        let s = matrix_sqrt_psd(&d).unwrap();
        assert!(s.max_abs_diff(&ComplexMatrix::from_real_diagonal(&[2.0, 1.0, 0.0, 0.0])) < 1e-15);

        let p = ComplexMatrix::outer(&bell());
        assert!(matrix_sqrt_psd(&p).unwrap().max_abs_diff(&p) < 1e-12);
    }

    #[test]
    fn sqrt_clamps_roundoff_and_rejects_negative() {
        let tiny = ComplexMatrix::from_real_diagonal(&[1.0, -5e-10]);
        assert_eq!(matrix_sqrt_psd(&tiny).unwrap()[(1, 1)], ZERO);
        let neg = ComplexMatrix::from_real_diagonal(&[1.0, -1e-6]);
        assert!(matches!(matrix_sqrt_psd(&neg), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn purity_examples() {
        assert!((purity(&ComplexMatrix::identity(4).scale_real(0.25)) - 0.25).abs() < 1e-15);
        assert!((purity(&ComplexMatrix::outer(&bell())) - 1.0).abs() < 1e-15);
        assert_eq!(purity(&ComplexMatrix::from_real_diagonal(&[0.5, 0.5, 0.0, 0.0])), 0.5);
    }
}
