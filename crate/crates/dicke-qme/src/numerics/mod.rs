// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Self-contained numerical kernels used by the physics modules.
//!
//! Everything here operates on plain `f64` / [`num_complex::Complex64`] and
//! [`ndarray`] types; the matrices involved are small (at most a few hundred
//! rows), so the implementations favor robustness and testability over
//! large-scale performance:
//!
//! - [`special`] — complex trigamma function (recurrence + asymptotic
//!   series), used by the closed-form finite-cutoff bath correlation;
//! - [`quad`] — globally adaptive Gauss–Kronrod quadrature, half-period
//!   summation for oscillatory tails, and principal-value integrals via
//!   symmetric exclusion with Richardson extrapolation;
//! - [`linalg`] — cyclic Jacobi eigensolver for real-symmetric and Hermitian
//!   matrices, a general complex eigenvalue solver (Hessenberg + shifted QR),
//!   Gaussian-elimination solves, and a scaling-and-squaring Padé matrix
//!   exponential;
//! - [`ode`] — adaptive Dormand–Prince 5(4) and fixed-step classical RK4
//!   integrators for matrix-valued initial value problems.

pub mod linalg;
pub mod ode;
pub mod quad;
pub mod special;
