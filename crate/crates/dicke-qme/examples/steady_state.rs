// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Steady state of the dephasing generator.
//!
//! The dissipative part is pure dephasing in the dressed index, so the
//! maximally mixed state `1/(N+1)` is stationary for every coupling. This
//! example builds the generator, verifies `L(rho_ss) = 0` to machine
//! precision, and checks the two structural properties that pin the state
//! down: parity covariance of the generator and a one-dimensional kernel.
//!
//! Run with: `cargo run --release --example steady_state`

use dicke_qme::liouvillian::{self, BuildOptions};
use dicke_qme::model::ModelParams;
use dicke_qme::numerics::linalg;

fn main() -> dicke_qme::Result<()> {
    let mut p = ModelParams::default();
    p.n_atoms = 8; // keep the dense superoperator spectrum cheap

    println!("steady state checks, N = {}", p.n_atoms);
    println!(
        "{:>8} {:>14} {:>14} {:>8} {:>8}",
        "lambda", "diag value", "residual", "parity", "kernel"
    );
    for lambda in [0.0, 5.0, 10.0, 20.0] {
        let mut pl = p;
        pl.lambda = lambda;
        let l = liouvillian::build(&pl, &BuildOptions::default())?;
        let rho_ss = l.steady_state()?;
        let residual = linalg::max_abs(&l.apply(rho_ss.as_array())?);
        let parity = l.parity_covariance_check();
        let kernel = l.kernel_multiplicity(1e-8)?;
        println!(
            "{:>8} {:>14.10} {:>14.3e} {:>8} {:>8}",
            lambda,
            rho_ss.as_array()[[0, 0]].re,
            residual,
            parity,
            kernel
        );
    }
    println!("(diag value = 1/(N+1) = {:.10})", 1.0 / (p.n_atoms + 1) as f64);
    println!("(lambda = 0 switches dephasing off: every population is conserved, kernel = N+1)");
    Ok(())
}
