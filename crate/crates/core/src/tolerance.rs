//! Numerical tolerances shared by the whole crate.
//!
//! Tests reference these constants rather than repeating literals, so a
//! change here moves every check that depends on it.

/// Hermiticity check on eigensolver input.
pub const HERMITIAN: f64 = 1e-10;

/// Unitarity of gates and sampled unitaries.
pub const UNITARY: f64 = 1e-10;

/// Eigenvalues in `(-PSD_CLAMP, 0)` are roundoff and clamp to zero; anything
/// lower is a hard `NotPsd` error.
pub const PSD_CLAMP: f64 = 1e-9;

/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this
/// (scaled by `max(1, ||A||_F)`).
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-12;

/// Sweep budget of the Jacobi eigensolver.
pub const JACOBI_MAX_SWEEPS: usize = 100;

/// Required eigen-reconstruction residual (max-abs).
pub const EIGEN_RECONSTRUCTION: f64 = 1e-10;

/// Unit trace of density matrices.
pub const TRACE: f64 = 1e-10;

/// Unit norm of pure states.
pub const NORM: f64 = 1e-12;

/// Eigenvalues of the positive operators entering square roots (concurrence
/// proxy, fidelity proxy) and entropies that fall below this are exactly
/// zero up to roundoff. Taking `sqrt` of a `1e-17` roundoff residue would
/// otherwise inject `~3e-9` errors.
pub const SPECTRAL_FLOOR: f64 = 1e-14;

/// Entanglement values in `[-CLAMP, 0)` or `(1, 1 + CLAMP]` clamp into
/// `[0, 1]`; outside that window they are reported as errors.
pub const ENTANGLEMENT_CLAMP: f64 = 1e-10;

/// Squared Bures distances below this are indistinguishable from zero
/// given the roundoff of the fidelity trace.
pub const BURES_SQUARED_FLOOR: f64 = 1e-13;

/// Distances may exceed `sqrt(2)` by this much before being rejected.
pub const DISTANCE_SLACK: f64 = 1e-10;

/// Minimum partial-transpose eigenvalue still counted as PPT.
pub const PPT: f64 = 1e-12;

/// Slack on the purity bound of the separable ball.
pub const BALL_PURITY: f64 = 1e-12;

/// Slack for samples at the edge of a histogram's support (e.g. `|dE| <= 1`).
pub const BIN_EDGE: f64 = 1e-9;

/// Boundary slack for the canonical lambda-domain check.
pub const LAMBDA_DOMAIN: f64 = 1e-12;

/// Gate identities (local equivalence, factor commutation).
pub const GATE_IDENTITY: f64 = 1e-12;

/// Purity drift allowed across a unitary step.
pub const PURITY_CONSERVATION: f64 = 1e-12;

/// Raw CKW residuals may leave `[0, 1]` by this much before a run aborts.
pub const RESIDUAL_RANGE: f64 = 1e-9;
