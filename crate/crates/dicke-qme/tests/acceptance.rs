// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance suite: eleven numbered criteria covering steady-state
//! structure, conservation laws, integrator cross-validation, quench and
//! coherence phenomenology, and the brute-force oracles. Each criterion is
//! one test that prints a single `PASS criterion N: ...` line on success or
//! panics with a `FAIL criterion N: ...` line carrying the measured values.
//!
//! Criteria 6, 7, and 8 assert tolerances the dressed-basis reduction does
//! not actually meet: the finite-cutoff bath kernel keeps a power-law tail
//! the cutoff-free closed form lacks (6), the half-line reservoir integrals
//! exceed the closed-form rate table by a factor `pi` (7), and the projected
//! Hamiltonian carries Franck–Condon attenuation on its hopping elements
//! (8). They are kept as stated — measuring those gaps precisely is the
//! point of the oracles — so those three tests fail, each reporting the
//! structural constant it measured. The README's validation section gives
//! the quantitative analysis.

use std::sync::OnceLock;

use dicke_qme::correlation::{self, FitPolicy, SweepOptions};
use dicke_qme::dynamics::{self, IntegratorOptions, QuenchCurve};
use dicke_qme::liouvillian::{self, BuildOptions};
use dicke_qme::model::{self, ModelParams};
use dicke_qme::numerics::linalg;
use dicke_qme::oracle::{self, FockTruncation};
use dicke_qme::reservoir::{self, ReservoirParams};

/// Coupling scan shared by the quench-based criteria.
const LAMBDA_SCAN: [f64; 8] = [2.5, 5.0, 7.5, 10.0, 12.5, 15.0, 17.5, 20.0];

/// Inverse temperature of the reference reservoir (`beta omega_a = 0.02`).
const BETA: f64 = 0.02;

fn reference_reservoir() -> ReservoirParams {
    ReservoirParams::from_gamma(100.0, BETA, Some(1e4 / BETA)).expect("reference reservoir")
}

/// Quench trajectories from `|phi_{-J}>` over `t in [0, 50]`, one per scan
/// coupling, built once and shared.
fn quench_fixture() -> &'static [QuenchCurve] {
    static FIXTURE: OnceLock<Vec<QuenchCurve>> = OnceLock::new();
    FIXTURE.get_or_init(|| {
        let grid = dynamics::uniform_grid(50.0, 0.05).expect("quench grid");
        dynamics::quench_experiment_with(
            &ModelParams::default(),
            &LAMBDA_SCAN,
            &grid,
            &IntegratorOptions::default(),
            None,
        )
        .expect("quench fixture")
    })
}

#[test]
fn criterion_01_steady_state_is_stationary() {
    let mut worst = 0.0_f64;
    for &lambda in &LAMBDA_SCAN {
        let mut p = ModelParams::default();
        p.lambda = lambda;
        let l = liouvillian::build(&p, &BuildOptions::default()).unwrap();
        let rho_ss = l.steady_state().unwrap();
        let dim = p.dim() as f64;
        for i in 0..p.dim() {
            for j in 0..p.dim() {
                let expected = if i == j { 1.0 / dim } else { 0.0 };
                assert_eq!(
                    rho_ss.as_array()[[i, j]].re,
                    expected,
                    "FAIL criterion 1: steady state is not diag(1/17) at lambda = {lambda}"
                );
                assert_eq!(rho_ss.as_array()[[i, j]].im, 0.0);
            }
        }
        let residual = linalg::max_abs(&l.apply(rho_ss.as_array()).unwrap());
        assert!(
            residual < 1e-12,
            "FAIL criterion 1: ||L(rho_ss)||_max = {residual:.3e} at lambda = {lambda}, needs < 1e-12"
        );
        worst = worst.max(residual);
    }
    println!(
        "PASS criterion 1: rho_ss = diag(1/17) stationary for all couplings, \
         worst ||L(rho_ss)||_max = {worst:.3e}"
    );
}

#[test]
fn criterion_02_conservation_along_quench_trajectories() {
    let mut worst_trace = 0.0_f64;
    let mut worst_herm = 0.0_f64;
    let mut lowest_eig = f64::INFINITY;
    for curve in quench_fixture() {
        let traj = &curve.trajectory;
        let trace = traj.real_series("trace").unwrap();
        let herm = traj.real_series("herm_dev").unwrap();
        let min_eig = traj.real_series("min_eig").unwrap();
        for k in 0..traj.len() {
            let dt = (trace[k] - 1.0).abs();
            assert!(
                dt < 1e-10,
                "FAIL criterion 2: |tr rho - 1| = {dt:.3e} at lambda = {}, t = {}",
                curve.lambda,
                traj.times()[k]
            );
            assert!(
                herm[k] < 1e-10,
                "FAIL criterion 2: hermiticity deviation {:.3e} at lambda = {}, t = {}",
                herm[k],
                curve.lambda,
                traj.times()[k]
            );
            assert!(
                min_eig[k] >= -1e-8,
                "FAIL criterion 2: min eigenvalue {:.3e} at lambda = {}, t = {}",
                min_eig[k],
                curve.lambda,
                traj.times()[k]
            );
            worst_trace = worst_trace.max(dt);
            worst_herm = worst_herm.max(herm[k]);
            lowest_eig = lowest_eig.min(min_eig[k]);
        }
    }
    println!(
        "PASS criterion 2: conservation over 8 trajectories x 1001 points \
         (worst |tr-1| = {worst_trace:.3e}, hermiticity = {worst_herm:.3e}, \
         min eigenvalue = {lowest_eig:.3e})"
    );
}

#[test]
fn criterion_03_stepper_matches_exact_propagator() {
    let p = ModelParams::default();
    let l = liouvillian::build(&p, &BuildOptions::default()).unwrap();
    let rho0 = dynamics::initial_state_phi(&p, -p.j()).unwrap();

    let mut opts = IntegratorOptions::default();
    opts.record_snapshots = true;
    let grid = dynamics::uniform_grid(10.0, 0.1).unwrap();
    let traj = dynamics::evolve(&l, &rho0, &grid, &opts).unwrap();
    let stepped = traj.snapshots().unwrap().last().unwrap();

    let u = dynamics::propagator_expm(&l, 10.0).unwrap();
    let exact = dynamics::propagate_state(&u, rho0.as_array()).unwrap();

    let mut dev = 0.0_f64;
    for (a, b) in stepped.as_array().iter().zip(exact.iter()) {
        dev = dev.max((a - b).norm());
    }
    assert!(
        dev < 1e-8,
        "FAIL criterion 3: adaptive stepper vs matrix exponential disagree by {dev:.3e} \
         entrywise at t = 10, needs < 1e-8"
    );
    println!(
        "PASS criterion 3: adaptive stepper matches exp(M t) propagator at t = 10 \
         (entrywise deviation {dev:.3e})"
    );
}

#[test]
fn criterion_04_quench_order_parameter_bifurcates() {
    let curves = quench_fixture();
    let w_of = |lambda: f64| -> f64 {
        curves
            .iter()
            .find(|c| c.lambda == lambda)
            .expect("scan coupling")
            .window_average
    };
    let alpha_of = |lambda: f64| -> f64 {
        let mut p = ModelParams::default();
        p.lambda = lambda;
        model::alpha(&p, -p.j()).unwrap().abs()
    };

    for lambda in [2.5, 5.0] {
        let (w, a) = (w_of(lambda), alpha_of(lambda));
        assert!(
            w.abs() < 0.1 * a,
            "FAIL criterion 4: |W({lambda})| = {:.4e} is not < 0.1 alpha = {:.4e}",
            w.abs(),
            0.1 * a
        );
    }
    for lambda in [17.5, 20.0] {
        let (w, a) = (w_of(lambda), alpha_of(lambda));
        assert!(
            w > 0.0 && w > 0.3 * a,
            "FAIL criterion 4: W({lambda}) = {w:.4e} is not positive and > 0.3 alpha = {:.4e}",
            0.3 * a
        );
    }
    let upper = [12.5, 15.0, 17.5, 20.0].map(w_of);
    for pair in upper.windows(2) {
        assert!(
            pair[1] >= pair[0],
            "FAIL criterion 4: W is not non-decreasing across the upper scan: {upper:?}"
        );
    }
    println!(
        "PASS criterion 4: W vanishes below the crossover and grows above it \
         (W(2.5) = {:.2e}, W(20) = {:.3} = {:.2} alpha)",
        w_of(2.5),
        w_of(20.0),
        w_of(20.0) / alpha_of(20.0)
    );
}

#[test]
fn criterion_05_parity_mirror_flips_the_order_parameter() {
    let grid = dynamics::uniform_grid(50.0, 0.05).unwrap();
    let mut worst = 0.0_f64;
    for curve in quench_fixture() {
        let mut p = ModelParams::default();
        p.lambda = curve.lambda;
        let l = liouvillian::build(&p, &BuildOptions::default()).unwrap();
        let rho0 = dynamics::initial_state_phi(&p, p.j()).unwrap();
        let traj = dynamics::evolve(&l, &rho0, &grid, &IntegratorOptions::default()).unwrap();
        let plus = traj.real_series("re_a").unwrap();
        let minus = curve.trajectory.real_series("re_a").unwrap();
        for k in 0..plus.len() {
            let dev = (plus[k] + minus[k]).abs();
            assert!(
                dev < 1e-10,
                "FAIL criterion 5: Re<a> from |phi_+J> is not the sign flip of |phi_-J> \
                 (deviation {dev:.3e} at lambda = {}, t = {})",
                curve.lambda,
                grid[k]
            );
            worst = worst.max(dev);
        }
    }
    println!(
        "PASS criterion 5: parity-mirrored quenches flip Re<a> pointwise \
         (worst deviation {worst:.3e} over 8 couplings)"
    );
}

#[test]
fn criterion_06_bath_correlation_oracle() {
    let r = reference_reservoir();

    // Detailed balance of the spectral function, exact to roundoff.
    let mut worst_db = 0.0_f64;
    for omega in [0.5 / BETA, 1.0 / BETA, 2.0 / BETA, 400.0] {
        let plus = reservoir::spectral_correlation(&r, omega);
        let minus = reservoir::spectral_correlation(&r, -omega);
        let dev = (minus - (-BETA * omega).exp() * plus).abs() / plus.abs();
        assert!(
            dev < 1e-12,
            "FAIL criterion 6: detailed balance violated by {dev:.3e} at omega = {omega}"
        );
        worst_db = worst_db.max(dev);
    }

    // Cutoff-free closed form vs finite-cutoff quadrature at Lambda =
    // 1e4 / beta over t in [0.1 beta, 5 beta].
    let mut worst_rel = 0.0_f64;
    let mut best_rel = f64::INFINITY;
    let n_points = 21;
    let ratio: f64 = 50.0_f64.powf(1.0 / (n_points - 1) as f64);
    for k in 0..n_points {
        let t = 0.1 * BETA * ratio.powi(k);
        let closed = reservoir::correlation_closed_form(&r, t).unwrap();
        let q = reservoir::correlation_quadrature(&r, t).unwrap();
        let dev = ((q.re - closed).powi(2) + q.im.powi(2)).sqrt() / closed.abs();
        worst_rel = worst_rel.max(dev);
        best_rel = best_rel.min(dev);
    }
    assert!(
        worst_rel < 1e-6,
        "FAIL criterion 6: closed-form correlation vs finite-cutoff quadrature relative \
         deviation is {best_rel:.3e}..{worst_rel:.3e} over t in [0.1 beta, 5 beta], needs \
         < 1e-6 (detailed balance itself passed at {worst_db:.3e}); the finite cutoff \
         leaves a power-law kernel tail ~2 eta/t^2 that the cutoff-free closed form lacks, \
         so the two genuinely differ at every t in the window"
    );
    println!(
        "PASS criterion 6: closed-form correlation matches quadrature to {worst_rel:.3e}, \
         detailed balance to {worst_db:.3e}"
    );
}

#[test]
fn criterion_07_dissipator_rate_oracle() {
    let p = ModelParams::new(4, 1.0, 400.0, 10.0, 100.0).unwrap();
    let r = reference_reservoir();
    let report = oracle::dissipator_numeric_oracle(&p, &r, 0.5).unwrap();

    // The reconstruction itself is solid: the flat integral pins the cutoff
    // scale and the dephasing table keeps its exact quadratic index scaling.
    assert!(
        (report.i_flat_im + r.eta * 1e4 / BETA).abs() < 1e-9 * r.eta * 1e4 / BETA,
        "FAIL criterion 7: Im I_flat = {} does not pin -eta Lambda",
        report.i_flat_im
    );
    let scaling = report
        .checks
        .iter()
        .find(|c| c.name.contains("quadratic"))
        .unwrap();
    assert!(scaling.pass, "FAIL criterion 7: quadratic scaling spread {:.3e}", scaling.measured);

    let exc_dev = (report.excitation_rate_ratio - 1.0).abs();
    let dep_dev = report.dephasing_max_rel_dev;
    assert!(
        exc_dev < 1e-6 && dep_dev < 1e-6,
        "FAIL criterion 7: reservoir-integral rates vs closed-form table: excitation off by \
         {exc_dev:.6e} relative (ratio = {:.8} = pi e^(-omega_c/Lambda)), dephasing off by \
         {dep_dev:.6e} relative (= pi - 1), needs < 1e-6; the half-line integrals carry the \
         full spectral weight pi C~(omega) while the rate table is built from C~(omega) \
         directly, so the factor pi is structural",
        report.excitation_rate_ratio
    );
    println!(
        "PASS criterion 7: reservoir integrals reproduce the rate table \
         (excitation {exc_dev:.3e}, dephasing {dep_dev:.3e})"
    );
}

#[test]
fn criterion_08_dressed_subspace_oracle() {
    let p = ModelParams::new(4, 1.0, 400.0, 10.0, 100.0).unwrap();
    let report = oracle::dressed_subspace_check(&p, &FockTruncation::new(40).unwrap()).unwrap();

    assert!(
        report.gram_deviation < 1e-10,
        "FAIL criterion 8: dressed-vacua Gram matrix deviates from identity by {:.3e}",
        report.gram_deviation
    );
    assert!(
        report.energy_offset.abs() < 1e-10,
        "FAIL criterion 8: dressed energy offset {:.3e}",
        report.energy_offset
    );
    let proj = report.projection_deviation;
    assert!(
        proj < 1e-10,
        "FAIL criterion 8: projected full Hamiltonian vs subspace Hamiltonian deviate by \
         {proj:.6e} (Gram matrix passed at {:.3e}), needs < 1e-10; the projection attenuates \
         hopping elements by the Franck-Condon overlap exp(-(Delta alpha)^2/2) of neighboring \
         displaced vacua, a physical O(lambda^2 N / omega_c^2) defect of the reduction, \
         exactly (sqrt(6)/2)(1 - exp(-(Delta alpha)^2/2)) = 3.8267e-4 here",
        report.gram_deviation
    );
    println!(
        "PASS criterion 8: dressed subspace projection exact \
         (Gram {:.3e}, projection {proj:.3e})",
        report.gram_deviation
    );
}

#[test]
fn criterion_09_coherence_function_phenomenology() {
    let grid = dynamics::uniform_grid(50.0, 0.05).unwrap();

    // Weak coupling: oscillatory coherence with a zero crossing.
    let mut p = ModelParams::default();
    p.lambda = 2.5;
    let l = liouvillian::build(&p, &BuildOptions::default()).unwrap();
    let weak = correlation::g1(&l, &grid).unwrap();
    assert!(
        weak.values[0].re == 1.0 && weak.values[0].im == 0.0,
        "FAIL criterion 9: g1(0) = {} is not exactly 1",
        weak.values[0]
    );
    let max_im = weak.values.iter().map(|v| v.im.abs()).fold(0.0_f64, f64::max);
    assert!(
        max_im < 1e-10,
        "FAIL criterion 9: |Im g1| reaches {max_im:.3e} at lambda = 2.5"
    );
    let crossing = grid
        .iter()
        .zip(weak.re_values().windows(2))
        .find(|(_, w)| w[0] > 0.0 && w[1] <= 0.0)
        .map(|(t, _)| *t);
    assert!(
        crossing.is_some(),
        "FAIL criterion 9: Re g1 never crosses zero within t <= 50 at lambda = 2.5"
    );

    // Strong coupling: positive monotone-envelope decay.
    p.lambda = 20.0;
    let l = liouvillian::build(&p, &BuildOptions::default()).unwrap();
    let strong = correlation::g1(&l, &grid).unwrap();
    assert!(
        strong.values[0].re == 1.0 && strong.values[0].im == 0.0,
        "FAIL criterion 9: g1(0) = {} is not exactly 1",
        strong.values[0]
    );
    let max_im_s = strong.values.iter().map(|v| v.im.abs()).fold(0.0_f64, f64::max);
    assert!(
        max_im_s < 1e-10,
        "FAIL criterion 9: |Im g1| reaches {max_im_s:.3e} at lambda = 20"
    );
    let min_re = strong.re_values().iter().cloned().fold(f64::INFINITY, f64::min);
    assert!(
        min_re > 0.0,
        "FAIL criterion 9: Re g1 dips to {min_re:.4e} at lambda = 20, must stay positive"
    );
    println!(
        "PASS criterion 9: g1(0) = 1 exactly, Im g1 < {:.1e}, zero crossing at t = {} \
         for lambda = 2.5, Re g1 >= {min_re:.4} > 0 for lambda = 20",
        max_im.max(max_im_s),
        crossing.unwrap()
    );
}

#[test]
fn criterion_10_coherence_time_scaling() {
    let p = ModelParams::default();
    let lambdas = [25.0, 30.0, 35.0, 40.0];
    let opts = SweepOptions::default();
    let main = correlation::tau_c_sweep(&p, &[16], &[100.0, 400.0], &lambdas, &opts).unwrap();
    let large = correlation::tau_c_sweep(&p, &[32], &[100.0], &lambdas, &opts).unwrap();

    let tau = |table: &correlation::TauSweepTable, n: usize, g: f64, l: f64| -> f64 {
        table.row(n, g, l).expect("sweep cell").tau_c
    };

    // Linear growth with coupling at the reference dissipation.
    let taus: Vec<f64> = lambdas.iter().map(|&l| tau(&main, 16, 100.0, l)).collect();
    for pair in taus.windows(2) {
        assert!(
            pair[1] > pair[0],
            "FAIL criterion 10: tau_c not strictly increasing in lambda at gamma = 100: {taus:?}"
        );
    }
    let r2 = main.group(16, 100.0).unwrap().r_squared;
    assert!(
        r2 > 0.9,
        "FAIL criterion 10: linear fit of tau_c(lambda) has R^2 = {r2:.4}, needs > 0.9"
    );

    // Stronger dissipation shortens the coherence time pointwise.
    for &l in &lambdas {
        let (lo, hi) = (tau(&main, 16, 400.0, l), tau(&main, 16, 100.0, l));
        assert!(
            lo < hi,
            "FAIL criterion 10: tau_c(gamma = 400) = {lo:.2} is not below \
             tau_c(gamma = 100) = {hi:.2} at lambda = {l}"
        );
    }
    // Larger systems cohere longer pointwise.
    for &l in &lambdas {
        let (small, big) = (tau(&main, 16, 100.0, l), tau(&large, 32, 100.0, l));
        assert!(
            big > small,
            "FAIL criterion 10: tau_c(N = 32) = {big:.2} is not above \
             tau_c(N = 16) = {small:.2} at lambda = {l}"
        );
    }
    println!(
        "PASS criterion 10: tau_c = {:.1}..{:.1} grows linearly in lambda (R^2 = {r2:.4}), \
         is suppressed by gamma and enhanced by N",
        taus[0],
        taus[3]
    );
}

#[test]
fn criterion_11_exponential_fit_is_exact_on_synthetic_data() {
    let times = dynamics::uniform_grid(20.0, 0.1).unwrap();
    let policy = FitPolicy::default();
    let mut worst = 0.0_f64;
    for (c, tau) in [(1.0, 5.0), (3.7, 5.3), (0.4, 12.0)] {
        let values: Vec<f64> = times.iter().map(|t| c * (-t / tau).exp()).collect();
        let fit = correlation::fit_exponential(&times, &values, &policy).unwrap();
        let dc = (fit.amplitude - c).abs() / c;
        let dt = (fit.tau_c - tau).abs() / tau;
        assert!(
            dc < 1e-10 && dt < 1e-10,
            "FAIL criterion 11: fit of C = {c}, tau = {tau} returned C = {}, tau = {} \
             (relative errors {dc:.3e}, {dt:.3e}), needs < 1e-10",
            fit.amplitude,
            fit.tau_c
        );
        worst = worst.max(dc.max(dt));
    }
    println!(
        "PASS criterion 11: exponential fits recover synthetic (C, tau_c) to {worst:.3e}"
    );
}
