// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Brute-force oracles for the dressed-basis reduction.
//!
//! Two independent validators, run at a small size where exactness is cheap:
//!
//! 1. the subspace oracle diagonalizes the untruncated atom–cavity
//!    Hamiltonian on an explicit Fock ladder and projects it onto the
//!    displaced-vacuum dressed states;
//! 2. the dissipator oracle rebuilds the master-equation rates from
//!    half-line integrals of the bath correlation function.
//!
//! Both are deliberately allowed to fail where the reduction itself is
//! approximate: the projected Hamiltonian carries Franck–Condon attenuation
//! on its hopping elements, and the half-line integrals exceed the
//! closed-form rate table by a factor `pi` (dephasing channel) and
//! `pi e^{-omega_c / Lambda}` (excitation channel). The point of the oracle
//! is to measure those factors precisely, not to hide them.
//!
//! Run with: `cargo run --release --example bath_oracles`

use dicke_qme::model::ModelParams;
use dicke_qme::oracle::{self, FockTruncation, OracleCheck};
use dicke_qme::reservoir::ReservoirParams;

fn print_checks(checks: &[OracleCheck]) {
    for c in checks {
        let mark = if c.pass { "pass" } else { "FAIL" };
        println!(
            "  [{mark}] {:<58} measured {:>14.6e} expected {:>14.6e}",
            c.name, c.measured, c.expected
        );
    }
}

fn main() -> dicke_qme::Result<()> {
    let p = ModelParams::new(4, 1.0, 400.0, 10.0, 100.0)?;
    let beta = 0.02;
    let r = ReservoirParams::from_gamma(p.gamma, beta, Some(1e4 / beta))?;

    println!("== subspace oracle (N = {}, Fock levels = 41) ==", p.n_atoms);
    let sub = oracle::dressed_subspace_check(&p, &FockTruncation::new(40)?)?;
    print_checks(&sub.checks);
    println!(
        "  Franck-Condon attenuation of the hopping elements: {:.6e}",
        sub.projection_deviation
    );

    println!();
    println!("== dissipator oracle (quadrature window s_max = 0.5) ==");
    let dis = oracle::dissipator_numeric_oracle(&p, &r, 0.5)?;
    print_checks(&dis.checks);
    println!(
        "  excitation ratio numeric/closed-form = {:.8} (pi e^(-omega_c/Lambda) = {:.8})",
        dis.excitation_rate_ratio,
        std::f64::consts::PI * (-p.omega_c / (1e4 / beta)).exp()
    );
    println!(
        "  dephasing worst relative deviation   = {:.8} (pi - 1 = {:.8})",
        dis.dephasing_max_rel_dev,
        std::f64::consts::PI - 1.0
    );
    println!(
        "  flat integral: Re = {:.6} (pi eta / beta = {:.6}), Im = {:.1} (-eta Lambda = {:.1})",
        dis.i_flat_re,
        std::f64::consts::PI * r.eta / r.beta,
        dis.i_flat_im,
        -r.eta * 1e4 / beta
    );
    Ok(())
}
