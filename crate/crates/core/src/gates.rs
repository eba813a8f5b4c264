//! Two-qubit gates: CNOT, the rotation `U_θ`, the canonical nonlocal gate
//! `exp[-i Σ λ_k σ_k⊗σ_k]`, local gates and register embedding.
//!
//! Qubit 0 is the most significant bit of a computational-basis index
//! everywhere in this crate, so `|10>` is index 2 and CNOT's control is
//! qubit 0.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{kron, pauli, ComplexMatrix, C64, I, ONE};
use crate::tolerance;

pub fn cnot() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, 1.0, 0.0],
    ])
}

pub fn swap() -> ComplexMatrix {
    ComplexMatrix::from_real_rows([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
    ])
}

/// Identity on the first qubit's `|0>` block, real rotation on the `|1>` block.
pub fn u_theta(theta: f64) -> ComplexMatrix {
    let (s, c) = theta.sin_cos();
    ComplexMatrix::from_real_rows([
        [1.0, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, c, s],
        [0.0, 0.0, -s, c],
    ])
}

/// `exp(-i λ σ_k⊗σ_k) = cos λ I - i sin λ σ_k⊗σ_k`, exact because
/// `(σ_k⊗σ_k)^2 = I`. `axis` is 0, 1, 2 for x, y, z.
pub fn canonical_factor(axis: usize, lambda: f64) -> ComplexMatrix {
    let sigma = match axis {
        0 => pauli::x(),
        1 => pauli::y(),
        2 => pauli::z(),
        _ => panic!("Pauli axis must be 0, 1 or 2"),
    };
    let ss = kron(&sigma, &sigma);
    let (s, c) = lambda.sin_cos();
    let mut out = ss.scale(-I * s);
    for i in 0..4 {
        out[(i, i)] += c;
    }
    out
}

/// Canonical two-qubit gate `exp[-i (λ1 σx⊗σx + λ2 σy⊗σy + λ3 σz⊗σz)]`,
/// built as the product of its three commuting factors.
pub fn canonical_gate(l1: f64, l2: f64, l3: f64) -> ComplexMatrix {
    canonical_factor(0, l1)
        .matmul(&canonical_factor(1, l2))
        .matmul(&canonical_factor(2, l3))
}

/// Whether `(λ1, λ2, λ3)` lies in the fundamental domain
/// `λ1 >= λ2 >= |λ3|`, `λ1, λ2 ∈ [0, π/4]`, `λ3 ∈ (-π/4, π/4]`.
pub fn check_lambda_domain(l1: f64, l2: f64, l3: f64) -> bool {
    let tol = tolerance::LAMBDA_DOMAIN;
    let in_closed = |x: f64| (-tol..=FRAC_PI_4 + tol).contains(&x);
    [l1, l2, l3].iter().all(|x| x.is_finite())
        && in_closed(l1)
        && in_closed(l2)
        && l3 > -FRAC_PI_4
        && l3 <= FRAC_PI_4 + tol
        && l1 + tol >= l2
        && l2 + tol >= l3.abs()
}

/// `v1 ⊗ v2` for single-qubit unitaries.
pub fn local_gate(v1: &ComplexMatrix, v2: &ComplexMatrix) -> Result<ComplexMatrix> {
    for v in [v1, v2] {
        if v.dim() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "local gate factors must be 2x2, got {}x{}",
                v.dim(),
                v.dim()
            )));
        }
        let residual = v.unitarity_residual();
        if residual > tolerance::UNITARY {
            return Err(Error::NotUnitary { residual });
        }
    }
    Ok(kron(v1, v2))
}

fn phase_diag(upper: C64, lower: C64) -> ComplexMatrix {
    ComplexMatrix::from_diagonal(&[upper, lower])
}

/// `diag(1, e^{iπ/2}) ⊗ diag(e^{-iπ/2}, 1)`.
pub fn u_la() -> ComplexMatrix {
    kron(
        &phase_diag(ONE, C64::from_polar(1.0, FRAC_PI_2)),
        &phase_diag(C64::from_polar(1.0, -FRAC_PI_2), ONE),
    )
}

/// `I ⊗ diag(e^{iπ/2}, 1)`.
pub fn u_lb() -> ComplexMatrix {
    kron(&pauli::identity(), &phase_diag(C64::from_polar(1.0, FRAC_PI_2), ONE))
}

/// Outcome of comparing two matrices modulo a global phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseComparison {
    /// `max |a - phase * b|`.
    pub residual: f64,
    /// Unit scalar aligning `b` with `a` at the largest-magnitude entry of `b`.
    pub phase: C64,
}

impl PhaseComparison {
    pub fn holds(&self, tol: f64) -> bool {
        self.residual < tol
    }
}

/// Compares `a` and `b` up to one global phase, taken from the entry where
/// `|b|` is largest.
pub fn compare_up_to_phase(a: &ComplexMatrix, b: &ComplexMatrix) -> PhaseComparison {
    assert_eq!(a.dim(), b.dim());
    let (k, _) = b
        .as_slice()
        .iter()
        .enumerate()
        .fold((0, -1.0), |best, (i, z)| if z.norm() > best.1 { (i, z.norm()) } else { best });
    let ratio = a.as_slice()[k] / b.as_slice()[k];
    let phase = if ratio.norm() > 0.0 { ratio / ratio.norm() } else { ONE };
    PhaseComparison {
        residual: a.max_abs_diff(&b.scale(phase)),
        phase,
    }
}

/// `U_LA · CNOT · U_LB` against `U_{π/2}`.
pub fn local_equivalence_check(u_la: &ComplexMatrix, u_lb: &ComplexMatrix) -> PhaseComparison {
    let product = u_la.matmul(&cnot()).matmul(u_lb);
    compare_up_to_phase(&product, &u_theta(FRAC_PI_2))
}

/// Whether `U_LA · CNOT · U_LB = U_{π/2}` up to a global phase. The relation
/// in fact holds with phase exactly 1.
pub fn verify_local_equivalence() -> bool {
    local_equivalence_check(&u_la(), &u_lb()).holds(tolerance::GATE_IDENTITY)
}

/// Lifts a two-qubit gate acting on qubits `(i, j)` (in that order) to an
/// `n`-qubit register, `n ∈ {2, 3, 4}`.
pub fn embed_gate(u: &ComplexMatrix, pair: (usize, usize), n_qubits: usize) -> Result<ComplexMatrix> {
    let (i, j) = pair;
    if !(2..=4).contains(&n_qubits) {
        return Err(Error::Index(format!("register size {n_qubits} not in 2..=4")));
    }
    if i >= j || j >= n_qubits {
        return Err(Error::Index(format!(
            "qubit pair ({i}, {j}) invalid for {n_qubits} qubits"
        )));
    }
    if u.dim() != 4 {
        return Err(Error::DimensionMismatch(format!("expected a 4x4 gate, got {}x{}", u.dim(), u.dim())));
    }
    let dim = 1 << n_qubits;
    let shift_i = n_qubits - 1 - i;
    let shift_j = n_qubits - 1 - j;
    let mask = (1 << shift_i) | (1 << shift_j);
    let mut out = ComplexMatrix::zeros(dim);
    for x in 0..dim {
        let s = (((x >> shift_i) & 1) << 1) | ((x >> shift_j) & 1);
        let rest = x & !mask;
        for t in 0..4 {
            let y = rest | ((t >> 1) << shift_i) | ((t & 1) << shift_j);
            out[(y, x)] = u[(t, s)];
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    Explicit,
    Canonical,
}

/// A two-qubit gate, given either as a matrix or by canonical parameters.
///
/// Text form: `cnot`, `utheta:<radians>`, `canon:<l1>,<l2>,<l3>`.
#[derive(Debug, Clone, PartialEq)]
pub enum GateSpec {
    Cnot,
    UTheta(f64),
    Canonical([f64; 3]),
    Explicit(ComplexMatrix),
}

impl GateSpec {
    pub fn explicit(matrix: ComplexMatrix) -> Result<Self> {
        if matrix.dim() != 4 {
            return Err(Error::DimensionMismatch(format!(
                "two-qubit gate must be 4x4, got {}x{}",
                matrix.dim(),
                matrix.dim()
            )));
        }
        let residual = matrix.unitarity_residual();
        if residual > tolerance::UNITARY {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self::Explicit(matrix))
    }

    pub fn canonical(l1: f64, l2: f64, l3: f64) -> Result<Self> {
        if ![l1, l2, l3].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidArgument("canonical parameters must be finite".into()));
        }
        Ok(Self::Canonical([l1, l2, l3]))
    }

    pub fn identity() -> Self {
        Self::Canonical([0.0; 3])
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Self::Canonical(_) => GateKind::Canonical,
            _ => GateKind::Explicit,
        }
    }

    pub fn lambdas(&self) -> Option<[f64; 3]> {
        match self {
            Self::Canonical(l) => Some(*l),
            _ => None,
        }
    }

    pub fn matrix(&self) -> ComplexMatrix {
        match self {
            Self::Cnot => cnot(),
            Self::UTheta(theta) => u_theta(*theta),
            Self::Canonical([l1, l2, l3]) => canonical_gate(*l1, *l2, *l3),
            Self::Explicit(m) => m.clone(),
        }
    }
}

impl fmt::Display for GateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Cnot => write!(f, "cnot"),
            Self::UTheta(theta) => write!(f, "utheta:{theta}"),
            Self::Canonical([a, b, c]) => write!(f, "canon:{a},{b},{c}"),
            Self::Explicit(_) => write!(f, "explicit"),
        }
    }
}

impl FromStr for GateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::GateParse(s.to_string());
        let number = |t: &str| -> Result<f64> {
            let x: f64 = t.trim().parse().map_err(|_| bad())?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(bad())
            }
        };
        let s_trim = s.trim();
        if s_trim == "cnot" {
            return Ok(Self::Cnot);
        }
        if let Some(rest) = s_trim.strip_prefix("utheta:") {
            return Ok(Self::UTheta(number(rest)?));
        }
        if let Some(rest) = s_trim.strip_prefix("canon:") {
            let parts: Vec<&str> = rest.split(',').collect();
            if parts.len() != 3 {
                return Err(bad());
            }
            return Ok(Self::Canonical([number(parts[0])?, number(parts[1])?, number(parts[2])?]));
        }
        Err(bad())
    }
}
