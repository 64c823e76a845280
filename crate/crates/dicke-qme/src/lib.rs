// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dressed-basis Markovian master equation for the finite-size dissipative
//! Dicke model in the dispersive regime.
//!
//! `N` two-level atoms (collective spin `J = N/2`) couple to a single cavity
//! mode of frequency `omega_c` far above the atomic splitting `omega_a`, and
//! the cavity in turn couples to an ohmic reservoir. Adiabatic elimination of
//! the cavity leaves an `(N+1)`-dimensional low-energy subspace spanned by
//! dressed states `|phi_mu>` (a `J_1` eigenstate tensored with a displaced
//! cavity vacuum). Within that subspace the reduced density matrix obeys a
//! Markovian master equation whose unitary part is a
//! Lipkin–Meshkov–Glick-type Hamiltonian and whose dissipative part is pure
//! dephasing in the dressed index, controlled by a single rate parameter
//! `gamma`.
//!
//! The crate provides, module by module:
//!
//! - [`model`] — dressed-basis operators (`J_3`, `H_1`, the subspace photon
//!   operator), displacement amplitudes, parity, and dispersive-regime
//!   validation;
//! - [`reservoir`] — ohmic bath characterization: spectral density,
//!   correlation functions (closed form and quadrature), and the closed-form
//!   rates that enter the master equation;
//! - [`liouvillian`] — the generator itself, matrix-free and as a dense
//!   superoperator, with its maximally mixed steady state;
//! - [`dynamics`] — adaptive/fixed-step time integration, quench experiments
//!   (`Re<a>` after a coupling quench), and a matrix-exponential propagator
//!   for cross-validation;
//! - [`correlation`] — steady-state first-order coherence `g1(t)` via the
//!   quantum regression theorem, exponential fits, and coherence-time sweeps;
//! - [`oracle`] — independent brute-force validators: exact diagonalization
//!   of the full atom–cavity Hamiltonian against the dressed subspace, and
//!   direct reservoir-integral reconstruction of the dissipator rates;
//! - [`cli`] — the experiment runner behind the `dicke-qme` binary
//!   (subcommands `quench`, `g1`, `tau-sweep`, `steady-state`, `validate`,
//!   `oracle`) and its deterministic CSV/JSON artifact emission.
//!
//! Frequencies are expressed in units of the atomic splitting (`omega_a = 1`)
//! and times in its inverse, matching the parameterization used throughout
//! the experiment runners.
//!
//! # Quick start
//!
//! ```
//! use dicke_qme::model::ModelParams;
//! use dicke_qme::liouvillian::{self, BuildOptions};
//! use dicke_qme::dynamics::{self, IntegratorOptions};
//!
//! let p = ModelParams { n_atoms: 16, omega_a: 1.0, omega_c: 400.0, lambda: 10.0, gamma: 100.0 };
//! let liou = liouvillian::build(&p, &BuildOptions::default()).unwrap();
//! let rho0 = dynamics::initial_state_phi(&p, -8.0).unwrap();
//! let grid: Vec<f64> = (0..=100).map(|k| k as f64 * 0.5).collect();
//! let traj = dynamics::evolve(&liou, &rho0, &grid, &IntegratorOptions::default()).unwrap();
//! let re_a = traj.real_series("re_a").unwrap();
//! assert!((re_a[0] - 0.1).abs() < 1e-12); // initial coherent displacement
//! ```
//!
//! The `examples/` directory exercises every major capability end to end;
//! each example is runnable with `cargo run --release --example <name>`.

pub mod cli;
pub mod correlation;
pub mod dynamics;
pub mod error;
pub mod liouvillian;
pub mod model;
pub mod numerics;
pub mod oracle;
pub mod output;
pub mod reservoir;

pub use error::{Error, Result};
