//! Seeded samplers for states and unitaries.
//!
//! Every sampler draws from an [`RngStream`], a ChaCha8 generator keyed by a
//! 64-bit seed and positioned on one of its 2^64 independent streams. Two
//! streams with the same seed never overlap, so Monte Carlo workers can be
//! handed distinct `stream_id`s without any coordination.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{kron_vec, ComplexMatrix, FactoredDims, C64, ZERO};
use crate::state::{DensityMatrix, PureState};

/// Reproducible random stream identified by `(seed, stream_id)`.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self {
            seed,
            stream_id,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Standard complex Gaussian, `E|z|^2 = 2`.
    pub fn complex_gaussian(&mut self) -> C64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        C64::new(re, im)
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random()
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// Point of the probability simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint {
    weights: Vec<f64>,
}

impl SimplexPoint {
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn into_weights(self) -> Vec<f64> {
        self.weights
    }
}

fn gaussian_vector(dim: usize, rng: &mut RngStream) -> Vec<C64> {
    let mut v: Vec<C64> = (0..dim).map(|_| rng.complex_gaussian()).collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= norm;
    }
    v
}

/// Haar-random pure state on a single `dim`-dimensional factor.
pub fn haar_pure_state(dim: usize, rng: &mut RngStream) -> PureState {
    assert!(dim >= 2, "pure state dimension must be at least 2");
    PureState::from_parts_unchecked(gaussian_vector(dim, rng), FactoredDims::single(dim))
}

/// Haar-random pure state on the full space described by `dims`.
pub fn haar_pure_state_factored(dims: &FactoredDims, rng: &mut RngStream) -> PureState {
    let dim = dims.total();
    assert!(dim >= 2, "pure state dimension must be at least 2");
    PureState::from_parts_unchecked(gaussian_vector(dim, rng), dims.clone())
}

/// `|a> ⊗ |b>` with each factor independently Haar-distributed.
pub fn haar_product_pure(dim_a: usize, dim_b: usize, rng: &mut RngStream) -> PureState {
    assert!(dim_a >= 2 && dim_b >= 2, "factor dimensions must be at least 2");
    let a = gaussian_vector(dim_a, rng);
    let b = gaussian_vector(dim_b, rng);
    PureState::from_parts_unchecked(kron_vec(&a, &b), FactoredDims::bipartite(dim_a, dim_b))
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
/// `diag(R)` moved into `Q`, which makes the map from Ginibre to `U(N)`
/// measure-preserving.
pub fn haar_unitary(dim: usize, rng: &mut RngStream) -> ComplexMatrix {
    assert!(dim >= 2, "unitary dimension must be at least 2");
    let mut a = ComplexMatrix::zeros(dim);
    for z in a.as_mut_slice() {
        *z = rng.complex_gaussian();
    }
    let (mut q, r_diag) = householder_qr(a);
    for (col, r) in r_diag.iter().enumerate() {
        let phase = if r.norm() > 0.0 { r / r.norm() } else { C64::new(1.0, 0.0) };
        for row in 0..dim {
            q[(row, col)] *= phase;
        }
    }
    q
}

/// Returns `Q` and the diagonal of `R` for `A = Q R`.
fn householder_qr(mut a: ComplexMatrix) -> (ComplexMatrix, Vec<C64>) {
    let n = a.dim();
    let mut q = ComplexMatrix::identity(n);
    let mut v = vec![ZERO; n];
    for k in 0..n.saturating_sub(1) {
        let len = n - k;
        let norm_x = (k..n).map(|i| a[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = a[(k, k)];
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { C64::new(1.0, 0.0) };
        let alpha = -phase * norm_x;
        for i in 0..len {
            v[i] = a[(k + i, k)];
        }
        v[0] -= alpha;
        let v_norm = v[..len].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if v_norm == 0.0 {
            continue;
        }
        for z in &mut v[..len] {
            *z /= v_norm;
        }
        // A <- H A on the trailing block
        for j in k..n {
            let s: C64 = (0..len).map(|i| v[i].conj() * a[(k + i, j)]).sum();
            for i in 0..len {
                a[(k + i, j)] -= v[i] * s * 2.0;
            }
        }
        // Q <- Q H
        for row in 0..n {
            let s: C64 = (0..len).map(|i| q[(row, k + i)] * v[i]).sum();
            for i in 0..len {
                q[(row, k + i)] -= s * v[i].conj() * 2.0;
            }
        }
    }
    let diag = (0..n).map(|i| a[(i, i)]).collect();
    (q, diag)
}

/// Lebesgue-uniform point of the `(n-1)`-simplex via spacings of `n-1`
/// sorted uniforms.
pub fn uniform_simplex(n: usize, rng: &mut RngStream) -> SimplexPoint {
    assert!(n >= 1, "simplex needs at least one vertex");
    let mut cuts: Vec<f64> = (0..n - 1).map(|_| rng.uniform()).collect();
    cuts.sort_by(f64::total_cmp);
    let mut weights = Vec::with_capacity(n);
    let mut prev = 0.0;
    for &c in &cuts {
        weights.push(c - prev);
        prev = c;
    }
    weights.push(1.0 - prev);
    SimplexPoint { weights }
}

/// `U diag(lambda) U^H` with `U` Haar and `lambda` uniform on the simplex.
/// The unitary is drawn first, then the spectrum.
pub fn product_measure_mixed(dims: &FactoredDims, rng: &mut RngStream) -> DensityMatrix {
    let dim = dims.total();
    let u = haar_unitary(dim, rng);
    let lambda = uniform_simplex(dim, rng);
    DensityMatrix::from_parts_unchecked(
        ComplexMatrix::from_spectrum(&u, lambda.weights()),
        dims.clone(),
    )
}

/// Two-qubit state drawn from the product measure conditioned on being
/// separable, together with the number of candidates drawn.
pub fn separable_mixed_2q_counted(rng: &mut RngStream) -> (DensityMatrix, u64) {
    let dims = FactoredDims::qubits(2);
    let mut attempts = 0;
    loop {
        attempts += 1;
        let rho = product_measure_mixed(&dims, rng);
        if rho.is_ppt().expect("4x4 partial transpose is Hermitian") {
            return (rho, attempts);
        }
    }
}

/// Rejection sampler: product-measure candidates are accepted when their
/// partial transpose is positive, which is exact for two qubits.
pub fn separable_mixed_2q(rng: &mut RngStream) -> DensityMatrix {
    separable_mixed_2q_counted(rng).0
}
