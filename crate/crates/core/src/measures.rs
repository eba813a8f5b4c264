//! Entanglement quantifiers: von Neumann entropy, normalized pure-state
//! entanglement, Wootters concurrence, entanglement of formation, the
//! one-vs-rest tangle and the CKW residual.
//!
//! All logarithms are base 2. For normalized entanglement `S / log N_A` the
//! base cancels; for two qubits base 2 makes the pure-state value coincide
//! with the entanglement of formation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, psd_eig, ComplexMatrix, C64};
use crate::state::{DensityMatrix, PureState};
use crate::tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureKind {
    NormalizedEntropy,
    ConcurrenceSquared,
    Eof,
    Tangle,
    Residual,
}

/// An entanglement value in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntanglementValue {
    value: f64,
    kind: MeasureKind,
}

impl EntanglementValue {
    /// Clamps roundoff excursions of at most `ENTANGLEMENT_CLAMP` outside
    /// `[0, 1]`; larger excursions are errors.
    pub fn clamped(raw: f64, kind: MeasureKind) -> Result<Self> {
        let value = clamp_unit(raw)?;
        Ok(Self { value, kind })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }
}

fn clamp_unit(raw: f64) -> Result<f64> {
    let slack = tolerance::ENTANGLEMENT_CLAMP;
    if !(-slack..=1.0 + slack).contains(&raw) || raw.is_nan() {
        return Err(Error::OutOfRange {
            value: raw,
            lo: 0.0,
            hi: 1.0,
        });
    }
    Ok(raw.clamp(0.0, 1.0))
}

/// Shannon entropy (bits) of a spectrum. Entries below `SPECTRAL_FLOOR` are
/// dropped and the rest renormalized, so a pure state scores exactly zero.
pub(crate) fn entropy_bits(spectrum: &[f64]) -> f64 {
    let kept: Vec<f64> = spectrum
        .iter()
        .copied()
        .filter(|&w| w > tolerance::SPECTRAL_FLOOR)
        .collect();
    let total: f64 = kept.iter().sum();
    if kept.len() <= 1 {
        return 0.0;
    }
    -kept
        .iter()
        .map(|&w| {
            let p = w / total;
            p * p.log2()
        })
        .sum::<f64>()
}

/// `-Tr rho log2 rho`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    Ok(entropy_bits(&rho.spectrum()?))
}

/// `S(rho_A) / log2 N_A` for a bipartite pure state with equal factors.
pub fn pure_state_entanglement(psi: &PureState) -> Result<EntanglementValue> {
    pure_state_entanglement_via(psi, 0)
}

/// Same as [`pure_state_entanglement`], computed from the reduced state of
/// `subsystem` (0 for A, 1 for B). Both sides agree by Schmidt symmetry.
pub fn pure_state_entanglement_via(psi: &PureState, subsystem: usize) -> Result<EntanglementValue> {
    let dims = psi.dims().dims();
    if dims.len() != 2 || dims[0] != dims[1] {
        return Err(Error::DimensionMismatch(format!(
            "normalized entanglement needs two equal factors, got {dims:?}"
        )));
    }
    if subsystem > 1 {
        return Err(Error::DimensionMismatch(format!("no subsystem {subsystem} in a bipartite state")));
    }
    let reduced = psi.reduced(&[subsystem])?;
    let s = von_neumann_entropy(&reduced)?;
    EntanglementValue::clamped(s / (dims[0] as f64).log2(), MeasureKind::NormalizedEntropy)
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() != 4 || rho.dims().dims() != [2, 2] {
        return Err(Error::DimensionMismatch(format!(
            "two-qubit measure applied to a state with factors {:?}",
            rho.dims().dims()
        )));
    }
    Ok(())
}

/// Spin flip `(σy⊗σy) rho* (σy⊗σy)` in the computational product basis.
///
/// `σy⊗σy` is real and sends `|i>` to `±|3-i>` with sign `-1` for
/// `i ∈ {0, 3}`, so the flip is a signed index reversal of `rho*`.
pub fn spin_flip(rho: &ComplexMatrix) -> ComplexMatrix {
    const SIGN: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];
    let mut out = ComplexMatrix::zeros(4);
    for i in 0..4 {
        for j in 0..4 {
            out[(i, j)] = rho[(3 - i, 3 - j)].conj() * (SIGN[i] * SIGN[j]);
        }
    }
    out
}

/// Wootters concurrence of a two-qubit state.
///
/// The `λ_i` (square roots of the eigenvalues of `ρ ρ̃`) are obtained from
/// the Hermitian matrix `√ρ ρ̃ √ρ`, which is similar to `ρ ρ̃`
/// (`√ρ (ρ ρ̃) √ρ^{-1}` on the support of `ρ`) and therefore has the same
/// spectrum, while staying within the Hermitian eigensolver.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    require_two_qubits(rho)?;
    let eig = psd_eig(rho.matrix())?;
    let sqrt_rho = eig.map_values(|w| if w > tolerance::SPECTRAL_FLOOR { w.sqrt() } else { 0.0 });
    let flipped = spin_flip(rho.matrix());
    let proxy = sqrt_rho.matmul(&flipped).matmul(&sqrt_rho).hermitian_part();
    let mut lambdas: Vec<f64> = hermitian_eigenvalues(&proxy)?
        .into_iter()
        .map(|w| if w > tolerance::SPECTRAL_FLOOR { w.sqrt() } else { 0.0 })
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    let c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    clamp_unit(c.max(0.0))
}

fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
}

/// `h((1 + sqrt(1 - c^2)) / 2)` with `h` the binary entropy in bits.
pub fn eof_from_concurrence(c: f64) -> Result<f64> {
    let c = clamp_unit(c)?;
    Ok(binary_entropy((1.0 + (1.0 - c * c).sqrt()) / 2.0))
}

/// Entanglement of formation of a two-qubit state, via its concurrence.
pub fn entanglement_of_formation(rho: &DensityMatrix) -> Result<EntanglementValue> {
    let e = eof_from_concurrence(concurrence(rho)?)?;
    EntanglementValue::clamped(e, MeasureKind::Eof)
}

/// `4 det rho_A` for a single-qubit reduced state: the tangle of that qubit
/// with the rest of a pure state.
pub fn tangle_one_vs_rest(rho_a: &DensityMatrix) -> Result<f64> {
    if rho_a.dim() != 2 {
        return Err(Error::DimensionMismatch(format!(
            "one-vs-rest tangle needs a single-qubit state, got dimension {}",
            rho_a.dim()
        )));
    }
    let m = rho_a.matrix();
    let det: C64 = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    if det.im.abs() > 1e-12 {
        return Err(Error::NotHermitian { residual: det.im.abs() });
    }
    clamp_unit(4.0 * det.re)
}

/// The three terms of the CKW monogamy inequality for qubit A of a
/// three-qubit pure state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CkwTerms {
    /// `C²_{A(BC)} = 4 det rho_A`.
    pub tangle_a_bc: f64,
    pub concurrence_sq_ab: f64,
    pub concurrence_sq_ac: f64,
}

impl CkwTerms {
    pub fn of(psi: &PureState) -> Result<Self> {
        if psi.dims().dims() != [2, 2, 2] {
            return Err(Error::DimensionMismatch(format!(
                "CKW residual needs three qubits, got factors {:?}",
                psi.dims().dims()
            )));
        }
        let tangle_a_bc = tangle_one_vs_rest(&psi.reduced(&[0])?)?;
        let c_ab = concurrence(&psi.reduced(&[0, 1])?)?;
        let c_ac = concurrence(&psi.reduced(&[0, 2])?)?;
        Ok(Self {
            tangle_a_bc,
            concurrence_sq_ab: c_ab * c_ab,
            concurrence_sq_ac: c_ac * c_ac,
        })
    }

    /// Unclamped residual `C²_{A(BC)} - C²_{AB} - C²_{AC}`.
    pub fn residual(&self) -> f64 {
        self.tangle_a_bc - self.concurrence_sq_ab - self.concurrence_sq_ac
    }
}

/// CKW residual tangle `d_W` of a three-qubit pure state.
pub fn dw_residual(psi: &PureState) -> Result<EntanglementValue> {
    EntanglementValue::clamped(CkwTerms::of(psi)?.residual(), MeasureKind::Residual)
}
