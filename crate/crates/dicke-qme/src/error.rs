// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Crate-wide error type.
//!
//! Errors are split by how the experiment runner maps them onto exit codes:
//! configuration problems (bad parameters, malformed config files) and
//! numerical problems (quadrature non-convergence, step-size underflow,
//! invariant violations during integration).

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violated its documented domain (e.g. `n_atoms == 0`,
    /// negative frequency, out-of-range dressed index).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A dressed index fell outside `{-J, ..., J}`.
    #[error("dressed index {mu} out of range for N = {n_atoms} (expected |mu| <= {max})")]
    IndexOutOfRange { mu: f64, n_atoms: usize, max: f64 },

    /// Two operators or state vectors had incompatible dimensions.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A dense-superoperator or exact-diagonalization request exceeded the
    /// documented size guard.
    #[error("size guard exceeded: {what} would have dimension {dim} (limit {limit})")]
    SizeGuard {
        what: &'static str,
        dim: usize,
        limit: usize,
    },

    /// Adaptive quadrature failed to reach the requested tolerance.
    #[error("quadrature did not converge: {context} (error estimate {estimate:.3e}, requested {requested:.3e})")]
    QuadratureNonConvergence {
        context: String,
        estimate: f64,
        requested: f64,
    },

    /// The adaptive integrator reduced the step below the representable
    /// minimum without meeting the error tolerance.
    #[error("integrator step-size underflow at t = {t:.6e} (step {step:.3e})")]
    StepSizeUnderflow { t: f64, step: f64 },

    /// A monitored physical invariant (trace, Hermiticity, positivity) left
    /// its tolerance band during integration.
    #[error("invariant violation at t = {t:.6e}: {what} = {value:.3e} exceeds tolerance {tolerance:.3e}")]
    InvariantViolation {
        t: f64,
        what: &'static str,
        value: f64,
        tolerance: f64,
    },

    /// The Fock-space truncation is too small for the requested displacement.
    #[error("Fock truncation insufficient: {0}")]
    TruncationInsufficient(String),

    /// An eigenvalue iteration failed to converge.
    #[error("eigenvalue iteration did not converge: {0}")]
    EigenConvergence(String),

    /// The steady-state verification or another self-check failed, which
    /// indicates an implementation bug rather than a user error.
    #[error("internal self-check failed: {0}")]
    SelfCheck(String),

    /// No usable window could be selected for an exponential fit.
    #[error("exponential fit failed: {0}")]
    FitWindow(String),

    /// Malformed run configuration (file or flags).
    #[error("configuration error: {0}")]
    Config(String),

    /// Artifact I/O failure.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit code the command-line runner maps this error onto:
    /// `2` for configuration problems, `3` for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_)
            | Error::IndexOutOfRange { .. }
            | Error::Config(_)
            | Error::SizeGuard { .. } => 2,
            _ => 3,
        }
    }
}
