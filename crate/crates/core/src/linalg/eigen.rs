use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::tolerance;

/// Spectral decomposition `h = V diag(values) V^H` with `values` ascending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Eigenvectors stored as columns.
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn reconstruct(&self) -> ComplexMatrix {
        ComplexMatrix::from_spectrum(&self.vectors, &self.values)
    }

    /// Rebuilds `V f(diag) V^H`.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let mapped: Vec<f64> = self.values.iter().map(|&w| f(w)).collect();
        ComplexMatrix::from_spectrum(&self.vectors, &mapped)
    }
}

/// Cyclic complex Jacobi eigensolver for Hermitian matrices.
///
/// Each rotation first removes the phase of the pivot `a_pq` and then applies
/// the real symmetric Jacobi rotation, so the accumulated transform stays
/// unitary and the diagonal stays real.
pub fn hermitian_eig(h: &ComplexMatrix) -> Result<HermitianEigen> {
    let residual = h.hermiticity_residual();
    if residual > tolerance::HERMITIAN {
        return Err(Error::NotHermitian { residual });
    }
    let n = h.dim();
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);

    let threshold = tolerance::JACOBI_OFF_DIAGONAL * a.frobenius_norm().max(1.0);
    let mut converged = n == 1;
    for _ in 0..tolerance::JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) < threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged {
        let off = off_diagonal_norm(&a);
        if off >= threshold {
            return Err(Error::NoConvergence {
                sweeps: tolerance::JACOBI_MAX_SWEEPS,
                off_norm: off,
            });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Eigenvalues only, ascending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Result<Vec<f64>> {
    hermitian_eig(h).map(|e| e.values)
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let b = a[(p, q)];
    let mag = b.norm();
    if mag == 0.0 {
        return;
    }
    let n = a.dim();
    let phase = b / mag;
    let alpha = a[(p, p)].re;
    let gamma = a[(q, q)].re;

    let theta = (gamma - alpha) / (2.0 * mag);
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let phase_conj = phase.conj();

    // G = [[c, s], [-s e^{-i phi}, c e^{-i phi}]] on the (p, q) plane.
    let g_qp = -phase_conj * s;
    let g_qq = phase_conj * c;

    // A <- A G (columns p, q)
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * g_qp;
        a[(k, q)] = akp * s + akq * g_qq;
    }
    // A <- G^H A (rows p, q)
    let (gc_qp, gc_qq) = (g_qp.conj(), g_qq.conj());
    for k in 0..n {
        let xpk = a[(p, k)];
        let xqk = a[(q, k)];
        a[(p, k)] = xpk * c + xqk * gc_qp;
        a[(q, k)] = xpk * s + xqk * gc_qq;
    }
    a[(p, q)] = C64::new(0.0, 0.0);
    a[(q, p)] = C64::new(0.0, 0.0);
    a[(p, p)] = C64::new(alpha - t * mag, 0.0);
    a[(q, q)] = C64::new(gamma + t * mag, 0.0);

    // V <- V G
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * g_qp;
        v[(k, q)] = vkp * s + vkq * g_qq;
    }
}
