// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Coupling-quench order parameter.
//!
//! Prepares the edge dressed state `|phi_{-J}>` (the maximal coherent cavity
//! displacement) for a scan of couplings, evolves each under the dissipative
//! generator, and reports the long-time window average of `Re<a>`. Below the
//! dissipative threshold the displacement dephases away; above it a finite
//! fraction survives, which is the quench signature of the superradiant-like
//! crossover at finite `N`.
//!
//! Run with: `cargo run --release --example quench`

use dicke_qme::dynamics::{self, IntegratorOptions};
use dicke_qme::model::{self, ModelParams};

fn main() -> dicke_qme::Result<()> {
    let p = ModelParams::default(); // N = 16, omega_a = 1, omega_c = 400, gamma = 100
    let lambdas = [2.5, 7.5, 12.5, 17.5, 20.0];
    let grid = dynamics::uniform_grid(30.0, 0.05)?;
    let curves = dynamics::quench_experiment_with(
        &p,
        &lambdas,
        &grid,
        &IntegratorOptions::default(),
        None,
    )?;

    println!("coupling quench from |phi_-J>, N = {}, window average of Re<a>", p.n_atoms);
    println!("{:>8} {:>14} {:>14} {:>10}", "lambda", "alpha_edge", "W", "W/alpha");
    for curve in &curves {
        let mut pl = p;
        pl.lambda = curve.lambda;
        // Initial displacement of the edge state: the natural scale for W.
        let alpha_edge = model::alpha(&pl, -pl.j())?.abs();
        println!(
            "{:>8} {:>14.6} {:>14.6} {:>10.4}",
            curve.lambda,
            alpha_edge,
            curve.window_average,
            curve.window_average / alpha_edge
        );
    }
    println!("(W/alpha ~ 0 below the crossover, O(1) fraction above)");
    Ok(())
}
