//! Bures and Hilbert-Schmidt distances between density matrices, and the
//! separable ball `Tr ρ² <= 1/3` around `I/4`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, matrix_sqrt_psd, C64};
use crate::state::DensityMatrix;
use crate::tolerance;

/// Purity bound of the largest ball around `I/4` made only of separable
/// two-qubit states.
pub const SEPARABLE_BALL_PURITY: f64 = 1.0 / 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MetricKind {
    Bures,
    HilbertSchmidt,
}

impl MetricKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Bures => "bures",
            Self::HilbertSchmidt => "hs",
        }
    }

    pub fn distance(self, r1: &DensityMatrix, r2: &DensityMatrix) -> Result<DistanceValue> {
        match self {
            Self::Bures => bures_distance(r1, r2),
            Self::HilbertSchmidt => hs_distance(r1, r2),
        }
    }
}

impl std::str::FromStr for MetricKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bures" => Ok(Self::Bures),
            "hs" => Ok(Self::HilbertSchmidt),
            other => Err(Error::InvalidArgument(format!("unknown metric `{other}`"))),
        }
    }
}

/// A distance in `[0, √2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistanceValue {
    value: f64,
    kind: MetricKind,
}

impl DistanceValue {
    fn new(value: f64, kind: MetricKind) -> Result<Self> {
        let hi = std::f64::consts::SQRT_2;
        if !(0.0..=hi + tolerance::DISTANCE_SLACK).contains(&value) {
            return Err(Error::OutOfRange { value, lo: 0.0, hi });
        }
        Ok(Self {
            value: value.min(hi),
            kind,
        })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }
}

fn same_dims(r1: &DensityMatrix, r2: &DensityMatrix) -> Result<()> {
    if r1.dim() != r2.dim() {
        return Err(Error::DimensionMismatch(format!(
            "distance between {}- and {}-dimensional states",
            r1.dim(),
            r2.dim()
        )));
    }
    Ok(())
}

/// Root fidelity `Tr sqrt(sqrt(r2) r1 sqrt(r2))`, summed from the spectrum
/// of the Hermitian product.
pub fn root_fidelity(r1: &DensityMatrix, r2: &DensityMatrix) -> Result<f64> {
    same_dims(r1, r2)?;
    let s2 = matrix_sqrt_psd(r2.matrix())?;
    let inner = s2.matmul(r1.matrix()).matmul(&s2).hermitian_part();
    let w = hermitian_eigenvalues(&inner)?;
    if w[0] < -tolerance::PSD_CLAMP {
        return Err(Error::NotPsd { min_eigenvalue: w[0] });
    }
    Ok(w.iter()
        .filter(|&&x| x > tolerance::SPECTRAL_FLOOR)
        .map(|x| x.sqrt())
        .sum())
}

/// `sqrt(2 - 2 Tr sqrt(sqrt(r2) r1 sqrt(r2)))`.
pub fn bures_distance(r1: &DensityMatrix, r2: &DensityMatrix) -> Result<DistanceValue> {
    let d2 = 2.0 - 2.0 * root_fidelity(r1, r2)?;
    let d = if d2 < tolerance::BURES_SQUARED_FLOOR { 0.0 } else { d2.sqrt() };
    DistanceValue::new(d, MetricKind::Bures)
}

/// `sqrt(|Tr (r1 - r2)^2|)`.
pub fn hs_distance(r1: &DensityMatrix, r2: &DensityMatrix) -> Result<DistanceValue> {
    same_dims(r1, r2)?;
    let diff = r1.matrix() - r2.matrix();
    let n = diff.dim();
    let mut tr = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            tr += diff[(i, j)] * diff[(j, i)];
        }
    }
    DistanceValue::new(tr.norm().sqrt(), MetricKind::HilbertSchmidt)
}

/// Whether a two-qubit state lies in the separable ball `Tr ρ² <= 1/3`.
pub fn separable_ball_contains(rho: &DensityMatrix) -> bool {
    rho.purity() <= SEPARABLE_BALL_PURITY + tolerance::BALL_PURITY
}

/// Hilbert-Schmidt radius of the separable ball, `sqrt(1/3 - 1/4)`.
pub fn hs_ball_radius() -> f64 {
    (SEPARABLE_BALL_PURITY - 0.25).sqrt()
}

/// Smallest Bures distance from `I/4` to a two-qubit state of purity 1/3.
///
/// Both the distance to `I/4` (through `Σ sqrt(λ_i)`) and the purity depend
/// only on the spectrum. On the constraint surface `Σλ = 1, Σλ² = 1/3` a
/// maximiser of `Σ sqrt(λ_i)` satisfies `1/(2 sqrt(λ)) = a + 2bλ` on its
/// support, which has at most two roots, so it takes at most two distinct
/// nonzero values. Enumerating those spectra gives the exact optimum.
pub fn bures_ball_radius() -> f64 {
    let best_root_sum = ball_boundary_spectra()
        .iter()
        .map(|s| s.iter().map(|x| x.sqrt()).sum::<f64>())
        .fold(f64::MIN, f64::max);
    // F^(1/2) = Tr sqrt(ρ / 4) = Σ sqrt(λ) / 2
    (2.0 - best_root_sum).sqrt()
}

/// Spectra on the purity-1/3 surface with `k` copies of `a`, `m` of `b` and
/// the rest zero.
fn ball_boundary_spectra() -> Vec<Vec<f64>> {
    let p = SEPARABLE_BALL_PURITY;
    let mut out = Vec::new();
    for k in 1..=4usize {
        for m in 0..=(4 - k) {
            let zeros = 4 - k - m;
            let (kf, mf) = (k as f64, m as f64);
            if m == 0 {
                // k a = 1, k a^2 = p
                if ((1.0 / kf) - p).abs() < 1e-12 {
                    out.push(spectrum(k, 1.0 / kf, 0, 0.0, zeros));
                }
                continue;
            }
            // k a + m b = 1, k a^2 + m b^2 = p  =>  quadratic in a
            let qa = kf * kf / mf + kf;
            let qb = -2.0 * kf / mf;
            let qc = 1.0 / mf - p;
            let disc = qb * qb - 4.0 * qa * qc;
            if disc < 0.0 {
                continue;
            }
            for sign in [-1.0, 1.0] {
                let a = (-qb + sign * disc.sqrt()) / (2.0 * qa);
                let b = (1.0 - kf * a) / mf;
                if a >= 0.0 && b >= 0.0 {
                    out.push(spectrum(k, a, m, b, zeros));
                }
            }
        }
    }
    out
}

fn spectrum(k: usize, a: f64, m: usize, b: f64, zeros: usize) -> Vec<f64> {
    let mut s = vec![a; k];
    s.extend(std::iter::repeat_n(b, m));
    s.extend(std::iter::repeat_n(0.0, zeros));
    s
}

/// `d_HS(ρ, I/4)^2 = Tr ρ² - 1/4`, used as a cross-check.
pub fn hs_to_maximally_mixed_sq(rho: &DensityMatrix) -> f64 {
    rho.purity() - 1.0 / rho.dim() as f64
}
