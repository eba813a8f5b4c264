//! Moments of the samplers against closed-form values.

use entangler::linalg::FactoredDims;
use entangler::measures::pure_state_entanglement;
use entangler::random::{
    haar_product_pure, haar_pure_state, haar_pure_state_factored, haar_unitary,
    product_measure_mixed, separable_mixed_2q, uniform_simplex, RngStream,
};
use entangler::stats::MeanAccumulator;
use entangler::tolerance;

/// Page's mean entanglement entropy (nats) of an `m x n` bipartite Haar
/// state, `m <= n`.
fn page_entropy_nats(m: usize, n: usize) -> f64 {
    let harmonic: f64 = (n + 1..=m * n).map(|k| 1.0 / k as f64).sum();
    harmonic - (m as f64 - 1.0) / (2.0 * n as f64)
}

#[test]
fn haar_amplitudes_have_mean_square_one_over_dim() {
    let mut rng = RngStream::new(100, 0);
    for dim in [2usize, 4, 9] {
        let mut acc = vec![MeanAccumulator::new(); dim];
        for _ in 0..20_000 {
            let psi = haar_pure_state(dim, &mut rng);
            for (a, z) in acc.iter_mut().zip(psi.amplitudes()) {
                a.push(z.norm_sqr());
            }
        }
        for a in &acc {
            assert!((a.mean() - 1.0 / dim as f64).abs() < 4.0 * a.stderr(), "dim {dim}");
        }
    }
}

#[test]
fn page_mean_for_two_qubits() {
    let oracle = page_entropy_nats(2, 2) / std::f64::consts::LN_2;
    assert!((oracle - 0.4809).abs() < 1e-4);
    let mut rng = RngStream::new(101, 0);
    let dims = FactoredDims::qubits(2);
    let acc: MeanAccumulator = (0..100_000)
        .map(|_| pure_state_entanglement(&haar_pure_state_factored(&dims, &mut rng)).unwrap().value())
        .collect();
    assert!((acc.mean() - oracle).abs() < 0.003, "{} vs {oracle}", acc.mean());
}

#[test]
fn page_mean_for_qutrits() {
    let oracle = page_entropy_nats(3, 3) / 3f64.ln();
    let mut rng = RngStream::new(102, 0);
    let dims = FactoredDims::bipartite(3, 3);
    let acc: MeanAccumulator = (0..20_000)
        .map(|_| pure_state_entanglement(&haar_pure_state_factored(&dims, &mut rng)).unwrap().value())
        .collect();
    assert!((acc.mean() - oracle).abs() < 4.0 * acc.stderr());
}

#[test]
fn haar_unitary_moments() {
    // E|U_ij|^2 = 1/d and E|Tr U|^2 = 1
    let mut rng = RngStream::new(103, 0);
    let d = 4;
    let mut entry = MeanAccumulator::new();
    let mut trace = MeanAccumulator::new();
    for _ in 0..20_000 {
        let u = haar_unitary(d, &mut rng);
        entry.push(u[(1, 2)].norm_sqr());
        trace.push(u.trace().norm_sqr());
    }
    assert!((entry.mean() - 0.25).abs() < 4.0 * entry.stderr());
    assert!((trace.mean() - 1.0).abs() < 4.0 * trace.stderr());
}

#[test]
fn haar_states_are_unitarily_invariant() {
    // Rotating Haar states by a fixed unitary leaves the entanglement
    // distribution unchanged; compare the means.
    let mut rng = RngStream::new(104, 0);
    let dims = FactoredDims::qubits(2);
    let v = haar_unitary(4, &mut rng);
    let mut plain = MeanAccumulator::new();
    let mut rotated = MeanAccumulator::new();
    for _ in 0..50_000 {
        let psi = haar_pure_state_factored(&dims, &mut rng);
        plain.push(pure_state_entanglement(&psi).unwrap().value());
        let phi = haar_pure_state_factored(&dims, &mut rng).evolve(&v).unwrap();
        rotated.push(pure_state_entanglement(&phi).unwrap().value());
    }
    let se = plain.stderr().hypot(rotated.stderr());
    assert!((plain.mean() - rotated.mean()).abs() < 4.0 * se);
}

#[test]
fn simplex_moments() {
    // Dirichlet(1,..,1): E w_i = 1/n, E sum w_i^2 = 2/(n+1)
    let mut rng = RngStream::new(105, 0);
    let n = 4;
    let mut first = MeanAccumulator::new();
    let mut sq = MeanAccumulator::new();
    for _ in 0..50_000 {
        let w = uniform_simplex(n, &mut rng).into_weights();
        first.push(w[2]);
        sq.push(w.iter().map(|x| x * x).sum());
    }
    assert!((first.mean() - 0.25).abs() < 4.0 * first.stderr());
    assert!((sq.mean() - 0.4).abs() < 4.0 * sq.stderr());
}

#[test]
fn product_measure_mean_purity() {
    let mut rng = RngStream::new(106, 0);
    let dims = FactoredDims::qubits(2);
    let acc: MeanAccumulator = (0..30_000)
        .map(|_| product_measure_mixed(&dims, &mut rng).purity())
        .collect();
    assert!((acc.mean() - 0.4).abs() < 4.0 * acc.stderr());
}

#[test]
fn separable_states_are_ppt_and_normalized() {
    let mut rng = RngStream::new(107, 0);
    for _ in 0..2_000 {
        let rho = separable_mixed_2q(&mut rng);
        assert!(rho.min_partial_transpose_eigenvalue().unwrap() >= -tolerance::PPT);
        assert!((rho.matrix().trace().re - 1.0).abs() < tolerance::TRACE);
    }
}

#[test]
fn product_states_are_unentangled() {
    let mut rng = RngStream::new(108, 0);
    for _ in 0..2_000 {
        let psi = haar_product_pure(2, 2, &mut rng);
        assert_eq!(pure_state_entanglement(&psi).unwrap().value(), 0.0);
    }
}
