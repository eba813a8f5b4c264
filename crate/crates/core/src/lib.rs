//! Monte Carlo tools for studying how two-qubit gates create, destroy and
//! redistribute entanglement.
//!
//! The crate is layered:
//!
//! - [`linalg`]: small dense complex matrices, a Jacobi eigensolver, partial
//!   traces and transposes.
//! - [`state`] and [`random`]: pure and mixed states and their seeded
//!   samplers (Haar states and unitaries, the product measure on mixed
//!   states, separable two-qubit states).
//! - [`measures`], [`gates`], [`metrics`]: entanglement quantifiers, the
//!   canonical two-qubit gates, Bures and Hilbert-Schmidt distances.
//! - [`histogram`], [`stats`], [`experiments`]: the Monte Carlo harness.
//!
//! ```
//! use entangler::experiments::{delta_e_distribution, SamplingPlan};
//! use entangler::gates::GateSpec;
//! use entangler::histogram::BinSpec;
//!
//! let gate: GateSpec = "cnot".parse()?;
//! let plan = SamplingPlan::new(2_000, 7).with_workers(2);
//! let report = delta_e_distribution(&gate, BinSpec::delta_e(201)?, &plan)?;
//! assert_eq!(report.histogram.total(), 2_000);
//! assert!((report.histogram.integral() - 1.0).abs() < 1e-9);
//! # Ok::<(), entangler::Error>(())
//! ```

pub mod error;
pub mod experiments;
pub mod gates;
pub mod histogram;
pub mod linalg;
pub mod measures;
pub mod metrics;
pub mod random;
pub mod state;
pub mod stats;
pub mod tolerance;

pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, FactoredDims, C64};
pub use random::RngStream;
pub use state::{DensityMatrix, PureState};
