// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Spectrum of the dense superoperator.
//!
//! Flattens the generator to its `(N+1)^2 x (N+1)^2` matrix (row-major
//! stacking) and computes the full complex spectrum. Every eigenvalue must
//! sit in the closed left half-plane, exactly one must vanish (the
//! maximally mixed steady state), and the spectral gap sets the slowest
//! relaxation rate.
//!
//! Run with: `cargo run --release --example superoperator_spectrum`

use dicke_qme::liouvillian::{self, BuildOptions};
use dicke_qme::model::ModelParams;
use dicke_qme::numerics::linalg;

fn main() -> dicke_qme::Result<()> {
    let mut p = ModelParams::default();
    p.n_atoms = 8;

    for lambda in [5.0, 20.0] {
        let mut pl = p;
        pl.lambda = lambda;
        let l = liouvillian::build(&pl, &BuildOptions::default())?;
        let m = l.superoperator_matrix()?;
        let mut eigs = linalg::eig_complex(&m)?;
        eigs.sort_by(|a, b| b.re.total_cmp(&a.re));

        let max_re = eigs[0].re;
        let zero_modes = eigs.iter().filter(|z| z.norm() <= 1e-8).count();
        let gap = eigs
            .iter()
            .filter(|z| z.norm() > 1e-8)
            .map(|z| -z.re)
            .fold(f64::INFINITY, f64::min);

        println!("lambda = {lambda}: dim = {} x {}", m.nrows(), m.ncols());
        println!("  max Re eigenvalue   = {max_re:.3e} (must be <= 0 up to roundoff)");
        println!("  zero modes          = {zero_modes} (unique steady state)");
        println!("  spectral gap        = {gap:.6} (slowest relaxation rate)");
        print!("  five slowest decays :");
        for z in eigs.iter().filter(|z| z.norm() > 1e-8).take(5) {
            print!(" {:.4}{:+.4}i", z.re, z.im);
        }
        println!();
    }
    Ok(())
}
