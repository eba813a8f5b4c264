use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |A - A^H| = {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue = {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("matrix is not unitary (max |U^H U - I| = {residual:e})")]
    NotUnitary { residual: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index out of range: {0}")]
    Index(String),

    #[error("value {value} outside of [{lo}, {hi}]")]
    OutOfRange { value: f64, lo: f64, hi: f64 },

    #[error("sample {value} falls outside histogram support [{lo}, {hi}]")]
    BinOverflow { value: f64, lo: f64, hi: f64 },

    #[error("reference bin containing zero is empty")]
    EmptyReference,

    #[error("power-law fit needs strictly positive widths, got {0}")]
    NonPositiveWidth(f64),

    #[error("invalid gate specification `{0}`")]
    GateParse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("numerical invariant violated: {0}")]
    InvariantViolation(String),

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },
}
