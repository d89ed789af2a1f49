//! Analysis engine for two-qubit quantum correlations under local noise.
//!
//! The crate builds bipartite qubit density matrices, pushes them through
//! Kraus-operator noise channels, and evaluates locality and steerability
//! criteria on the results:
//!
//! * `M` — the Horodecki Bell-CHSH criterion (violation iff `M > 1`),
//! * `A` — absolute Bell-CHSH locality (local under every global unitary),
//! * `B` — absolute 3-settings unsteerability,
//! * `F³` — the 3-settings linear steering functional,
//! * a sufficient unsteerability test for states with one maximally mixed
//!   marginal, and the matching steerability-breaking bound for the
//!   depolarizing map.
//!
//! On top of the pointwise criteria, [`scenarios`] sweeps channel strength
//! to locate the parameter ranges where each criterion holds, reproduces the
//! reference threshold tables with a discrepancy audit, and searches for the
//! channel strengths that map a chosen entangled state onto a known
//! LHS-model state.

pub mod channels;
pub mod criteria;
pub mod linalg;
pub mod scenarios;
pub mod states;

use thiserror::Error;

/// Errors shared across the crate.
///
/// Validation errors carry the size of the violation so callers can tell
/// rounding noise from genuinely bad input.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("matrix is not hermitian: max |m - m^dag| entry = {residual:.3e}")]
    NotHermitian { residual: f64 },
    #[error("trace is not one: |tr - 1| = {residual:.3e}")]
    TraceNotOne { residual: f64 },
    #[error("matrix is not positive semidefinite: min eigenvalue = {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },
    #[error("state is not in chi form: |{entry}| = {value:.3e} exceeds tolerance")]
    NotChiForm { entry: String, value: f64 },
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
