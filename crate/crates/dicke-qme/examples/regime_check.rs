// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dispersive-regime diagnostics.
//!
//! The dressed-basis reduction is controlled by four small ratios: the
//! collective coupling and the collective atomic splitting against the
//! cavity frequency, the temperature against the cavity quantum, and the
//! retained subspace energies against the temperature. This example prints
//! the four ratios over a coupling scan and shows where the description
//! starts to degrade.
//!
//! Run with: `cargo run --release --example regime_check`

use dicke_qme::model::{self, ModelParams};
use dicke_qme::reservoir::ReservoirParams;

fn main() -> dicke_qme::Result<()> {
    let p = ModelParams::default();
    let beta = 0.02;
    let r = ReservoirParams::from_gamma(p.gamma, beta, Some(1e4 / beta))?;

    println!(
        "regime ratios vs threshold {} (N = {}, omega_c = {}, beta = {beta})",
        model::DEFAULT_REGIME_THRESHOLD,
        p.n_atoms,
        p.omega_c
    );
    for lambda in [5.0, 10.0, 15.0, 20.0, 25.0] {
        let mut pl = p;
        pl.lambda = lambda;
        let report = model::validate_regime(&pl, &r);
        println!("lambda = {lambda}: all_pass = {}", report.all_pass);
        for c in &report.checks {
            let mark = if c.pass { "ok " } else { "VIOLATED" };
            println!("    {:<42} {:>10.4}  {mark}", c.name, c.value);
        }
    }
    println!("(the coupling ratio reaches the threshold first as lambda grows)");
    Ok(())
}
