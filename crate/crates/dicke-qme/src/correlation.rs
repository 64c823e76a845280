// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Steady-state first-order coherence of the cavity field.
//!
//! By the quantum regression theorem the normalized two-time function
//!
//! ```text
//! g1(tau) = tr(a_sub e^{L tau}[a_sub rho_ss]) / tr(a_sub a_sub rho_ss)
//! ```
//!
//! is obtained by evolving the operator `B(0) = a_sub rho_ss` under the same
//! generator as a density matrix and reading out the displacement-weighted
//! diagonal. In the dressed subspace `a_sub` is diagonal, so `B(0)` is
//! diagonal and real, the numerator at `tau = 0` reproduces the steady photon
//! number term by term, and `g1(0) = 1` holds *bit-exactly* (the two sums run
//! the same floating-point operations in the same order).
//!
//! On uniform grids [`g1`] exponentiates the dense superoperator once per
//! spacing and iterates matrix–vector products; on irregular grids it falls
//! back to the adaptive stepper. [`fit_exponential`] extracts the coherence
//! time `tau_c` from the exponential envelope of `Re g1`, and [`tau_c_sweep`]
//! maps `tau_c` over a `(N, gamma, lambda)` grid with per-group linear
//! regression statistics of `tau_c` against `lambda`.

use crate::dynamics::{self, displacement_table};
use crate::error::{Error, Result};
use crate::liouvillian::{self, Liouvillian};
use crate::model::ModelParams;
use crate::numerics::{linalg, ode};
use ndarray::{Array1, Array2};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Steady-state subspace photon number `<a_sub^2>_ss = sum_mu alpha_mu^2 / (N+1)`.
///
/// This is the `tau = 0` normalization of `g1`; it vanishes at `lambda = 0`,
/// where the coherence function is undefined, so that case is rejected.
pub fn steady_photon_number(p: &ModelParams) -> Result<f64> {
    p.validate()?;
    if p.lambda == 0.0 {
        return Err(Error::InvalidParameter(
            "steady photon number vanishes at lambda = 0; g1 is undefined there".into(),
        ));
    }
    let alphas = displacement_table(p)?;
    let c = 1.0 / p.dim() as f64;
    // Summation-order contract with the g1 numerator: ascending index,
    // each term alpha * (alpha * c).
    let mut acc = 0.0;
    for &a in &alphas {
        acc += a * (a * c);
    }
    Ok(acc)
}

/// Normalized first-order coherence sampled on a grid.
#[derive(Debug, Clone)]
pub struct G1Series {
    /// Delay grid, starting at zero.
    pub times: Vec<f64>,
    /// `g1(tau)` at each delay; `values[0]` is exactly `1 + 0i`.
    pub values: Vec<Complex64>,
    /// Largest modulus over the grid.
    pub max_modulus: f64,
}

impl G1Series {
    /// Real parts, the quantity the exponential fits act on.
    pub fn re_values(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.re).collect()
    }

    /// Imaginary parts (diagnostic: they vanish to rounding for this model).
    pub fn im_values(&self) -> Vec<f64> {
        self.values.iter().map(|z| z.im).collect()
    }
}

/// Relative spacing jitter below which a grid counts as uniform and the
/// propagator-power fast path applies.
const UNIFORM_GRID_REL_TOL: f64 = 1e-9;

fn uniform_spacing(grid: &[f64]) -> Option<f64> {
    let d0 = grid[1] - grid[0];
    if d0 <= 0.0 {
        return None;
    }
    for w in grid.windows(2) {
        if ((w[1] - w[0]) - d0).abs() > UNIFORM_GRID_REL_TOL * d0 {
            return None;
        }
    }
    Some(d0)
}

/// Computes `g1` on `t_grid` (strictly increasing, first entry `0`).
///
/// Uniform grids use the exact propagator `exp(M dt)` applied as repeated
/// matrix–vector products in split real/imaginary form; irregular grids fall
/// back to adaptive integration of `dB/dtau = L B` at the default
/// tolerances. Both paths emit the identical, bit-exact `g1(0) = 1`.
pub fn g1(l: &Liouvillian, t_grid: &[f64]) -> Result<G1Series> {
    if t_grid.len() < 2 {
        return Err(Error::InvalidParameter(
            "g1 needs at least two delay points".into(),
        ));
    }
    if t_grid[0] != 0.0 {
        return Err(Error::InvalidParameter(format!(
            "g1 grid must start at delay 0, got {}",
            t_grid[0]
        )));
    }
    if l.includes_excitation_loss() {
        return Err(Error::InvalidParameter(
            "g1 is defined relative to the steady state, which requires the loss channel disabled"
                .into(),
        ));
    }
    let p = *l.params();
    let npn = steady_photon_number(&p)?;
    let alphas = displacement_table(&p)?;
    let dim = p.dim();
    let c = 1.0 / dim as f64;

    // B(0) = a_sub rho_ss: diagonal and real.
    let mut b0 = Array2::<Complex64>::zeros((dim, dim));
    for i in 0..dim {
        b0[[i, i]] = Complex64::new(alphas[i] * c, 0.0);
    }

    let readout = |b: &Array2<Complex64>| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, &a) in alphas.iter().enumerate() {
            acc += b[[i, i]] * a;
        }
        Complex64::new(acc.re / npn, acc.im / npn)
    };

    let mut values = vec![Complex64::new(0.0, 0.0); t_grid.len()];
    if let Some(dt) = uniform_spacing(t_grid) {
        // Fast path: one matrix exponential, then vector iteration.
        let m = l.superoperator_matrix()?;
        let prop = linalg::expm(&m.mapv(|z| z * dt))?;
        let (p_re, p_im) = linalg::split_complex(&prop);
        let sup = dim * dim;
        let mut y_re = Array1::<f64>::zeros(sup);
        let mut y_im = Array1::<f64>::zeros(sup);
        for i in 0..dim {
            y_re[i * dim + i] = b0[[i, i]].re;
        }
        let diag_readout = |re: &Array1<f64>, im: &Array1<f64>| -> Complex64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, &a) in alphas.iter().enumerate() {
                acc += Complex64::new(re[i * dim + i], im[i * dim + i]) * a;
            }
            Complex64::new(acc.re / npn, acc.im / npn)
        };
        values[0] = diag_readout(&y_re, &y_im);
        for slot in values.iter_mut().skip(1) {
            let new_re = p_re.dot(&y_re) - p_im.dot(&y_im);
            let new_im = p_re.dot(&y_im) + p_im.dot(&y_re);
            y_re = new_re;
            y_im = new_im;
            *slot = diag_readout(&y_re, &y_im);
        }
    } else {
        ode::dormand_prince(
            |y| l.apply_unchecked(y),
            &b0,
            t_grid,
            1e-10,
            1e-13,
            |k, _t, y| {
                values[k] = readout(y);
                Ok(())
            },
        )?;
    }
    let max_modulus = values.iter().map(|z| z.norm()).fold(0.0_f64, f64::max);
    Ok(G1Series {
        times: t_grid.to_vec(),
        values,
        max_modulus,
    })
}

/// Window-selection policy for [`fit_exponential`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitPolicy {
    /// Delays before `t_min` are excluded (initial transient).
    pub t_min: f64,
    /// The window ends at the first sample at or below this floor, keeping
    /// the fit clear of the noise/recurrence region.
    pub floor: f64,
    /// Minimum number of samples the window must retain.
    pub min_points: usize,
}

impl Default for FitPolicy {
    fn default() -> Self {
        Self {
            t_min: 1.0,
            floor: 0.02,
            min_points: 8,
        }
    }
}

/// Result of a log-domain exponential fit `y ~ amplitude * exp(-t / tau_c)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    /// Envelope amplitude at `t = 0` extrapolated from the window.
    pub amplitude: f64,
    /// Coherence time (negative inverse log-slope).
    pub tau_c: f64,
    /// RMS misfit of `ln y` inside the window.
    pub residual: f64,
    /// Fitted window `(t_first, t_last)`.
    pub window: (f64, f64),
    /// Number of samples in the window.
    pub points: usize,
}

/// Fits `values ~ C exp(-t / tau_c)` by linear least squares in the log
/// domain.
///
/// The window starts at the first local maximum of `|values|` at or past
/// `policy.t_min` (falling back to the first sample past `t_min` when the
/// data is monotone) and extends until a sample drops to `policy.floor` or
/// the grid ends. Every sample inside the window must be strictly positive
/// and the fitted slope strictly negative, otherwise [`Error::FitWindow`] is
/// returned.
pub fn fit_exponential(times: &[f64], values: &[f64], policy: &FitPolicy) -> Result<FitResult> {
    if times.len() != values.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} times vs {} values",
            times.len(),
            values.len()
        )));
    }
    if times.len() < 2 {
        return Err(Error::FitWindow("need at least two samples".into()));
    }
    if policy.min_points < 2 || !(policy.floor > 0.0) || !policy.t_min.is_finite() {
        return Err(Error::InvalidParameter(
            "fit policy needs min_points >= 2, floor > 0, finite t_min".into(),
        ));
    }
    let n = times.len();
    let first_eligible = match times.iter().position(|&t| t >= policy.t_min) {
        Some(k) => k,
        None => {
            return Err(Error::FitWindow(format!(
                "no samples at or past t_min = {}",
                policy.t_min
            )))
        }
    };
    // First interior local maximum of |values| at or past t_min.
    let mut start = first_eligible;
    for k in first_eligible.max(1)..n.saturating_sub(1) {
        if values[k].abs() >= values[k - 1].abs() && values[k].abs() >= values[k + 1].abs() {
            start = k;
            break;
        }
    }
    // Window ends at the first sample at or below the floor.
    let mut end = n;
    for k in start..n {
        if values[k] <= policy.floor {
            end = k;
            break;
        }
    }
    let count = end - start;
    if count < policy.min_points {
        return Err(Error::FitWindow(format!(
            "window [{start}, {end}) keeps {count} samples, need {}",
            policy.min_points
        )));
    }
    let ts = &times[start..end];
    let ys = &values[start..end];
    if let Some(bad) = ys.iter().find(|y| !(**y > 0.0)) {
        return Err(Error::FitWindow(format!(
            "non-positive sample {bad} inside the fit window"
        )));
    }
    // Least squares for ln y = intercept + slope * t.
    let m = count as f64;
    let mean_t: f64 = ts.iter().sum::<f64>() / m;
    let mean_l: f64 = ys.iter().map(|y| y.ln()).sum::<f64>() / m;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&t, &y) in ts.iter().zip(ys) {
        let dt = t - mean_t;
        sxx += dt * dt;
        sxy += dt * (y.ln() - mean_l);
    }
    if sxx == 0.0 {
        return Err(Error::FitWindow("degenerate time window".into()));
    }
    let slope = sxy / sxx;
    if !(slope < 0.0) {
        return Err(Error::FitWindow(format!(
            "fitted log-slope {slope:.3e} is not negative; no exponential decay in window"
        )));
    }
    let intercept = mean_l - slope * mean_t;
    let mut ss = 0.0;
    for (&t, &y) in ts.iter().zip(ys) {
        let r = y.ln() - (intercept + slope * t);
        ss += r * r;
    }
    Ok(FitResult {
        amplitude: intercept.exp(),
        tau_c: -1.0 / slope,
        residual: (ss / m).sqrt(),
        window: (ts[0], ts[count - 1]),
        points: count,
    })
}

/// One `(N, gamma, lambda)` cell of a coherence-time sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n_atoms: usize,
    pub gamma: f64,
    pub lambda: f64,
    pub tau_c: f64,
    pub amplitude: f64,
    pub residual: f64,
}

/// Linear-regression statistics of `tau_c` against `lambda` within one
/// `(N, gamma)` group.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepGroup {
    pub n_atoms: usize,
    pub gamma: f64,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

/// Output of [`tau_c_sweep`]: rows in scan order (`N` outermost, `lambda`
/// innermost) plus per-`(N, gamma)` regression groups (present when the scan
/// has at least two couplings).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TauSweepTable {
    pub rows: Vec<SweepRow>,
    pub groups: Vec<SweepGroup>,
}

impl TauSweepTable {
    /// The row at exact scan coordinates, if present.
    pub fn row(&self, n_atoms: usize, gamma: f64, lambda: f64) -> Option<&SweepRow> {
        self.rows
            .iter()
            .find(|r| r.n_atoms == n_atoms && r.gamma == gamma && r.lambda == lambda)
    }

    /// The group at exact scan coordinates, if present.
    pub fn group(&self, n_atoms: usize, gamma: f64) -> Option<&SweepGroup> {
        self.groups
            .iter()
            .find(|g| g.n_atoms == n_atoms && g.gamma == gamma)
    }
}

/// Controls for [`tau_c_sweep`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    /// Delay-grid extent; long enough that `Re g1` reaches the fit floor
    /// for every cell of interest.
    pub t_max: f64,
    /// Delay-grid spacing (uniform, so every cell takes the propagator fast
    /// path).
    pub dt: f64,
    /// Window policy for the per-cell exponential fit.
    pub fit: FitPolicy,
    /// Worker threads (default: all available, capped by the cell count).
    pub workers: Option<usize>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            t_max: 600.0,
            dt: 0.25,
            fit: FitPolicy::default(),
            workers: None,
        }
    }
}

/// Maps the coherence time over the Cartesian scan `ns x gammas x lambdas`.
///
/// Each cell rebuilds the model at its `(N, gamma, lambda)`, computes `g1`
/// on the shared uniform delay grid, and fits the exponential envelope.
/// Cells run in parallel; results are deterministic and in scan order.
pub fn tau_c_sweep(
    p_base: &ModelParams,
    ns: &[usize],
    gammas: &[f64],
    lambdas: &[f64],
    opts: &SweepOptions,
) -> Result<TauSweepTable> {
    p_base.validate()?;
    if ns.is_empty() || gammas.is_empty() || lambdas.is_empty() {
        return Err(Error::InvalidParameter(
            "sweep needs at least one N, gamma, and lambda".into(),
        ));
    }
    let grid = dynamics::uniform_grid(opts.t_max, opts.dt)?;
    let mut cells: Vec<(usize, usize, usize)> = Vec::new();
    for a in 0..ns.len() {
        for b in 0..gammas.len() {
            for c in 0..lambdas.len() {
                cells.push((a, b, c));
            }
        }
    }
    let fit = opts.fit;
    let rows = dynamics::run_indexed(&cells, opts.workers, |(a, b, c)| {
        let mut p = *p_base;
        p.n_atoms = ns[a];
        p.gamma = gammas[b];
        p.lambda = lambdas[c];
        p.validate()?;
        let l = liouvillian::build(&p, &liouvillian::BuildOptions::default())?;
        let series = g1(&l, &grid)?;
        let fitres = fit_exponential(&series.times, &series.re_values(), &fit)?;
        Ok(SweepRow {
            n_atoms: p.n_atoms,
            gamma: p.gamma,
            lambda: p.lambda,
            tau_c: fitres.tau_c,
            amplitude: fitres.amplitude,
            residual: fitres.residual,
        })
    })?;

    let mut groups = Vec::new();
    if lambdas.len() >= 2 {
        for (a, &n_atoms) in ns.iter().enumerate() {
            for (b, &gamma) in gammas.iter().enumerate() {
                let taus: Vec<(f64, f64)> = rows
                    .iter()
                    .skip((a * gammas.len() + b) * lambdas.len())
                    .take(lambdas.len())
                    .map(|r| (r.lambda, r.tau_c))
                    .collect();
                groups.push(regress_group(n_atoms, gamma, &taus)?);
            }
        }
    }
    Ok(TauSweepTable { rows, groups })
}

fn regress_group(n_atoms: usize, gamma: f64, pts: &[(f64, f64)]) -> Result<SweepGroup> {
    let m = pts.len() as f64;
    let mean_x: f64 = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let mean_y: f64 = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for &(x, y) in pts {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
        syy += (y - mean_y) * (y - mean_y);
    }
    if sxx == 0.0 {
        return Err(Error::FitWindow(
            "coherence-time regression needs at least two distinct couplings".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let r_squared = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    Ok(SweepGroup {
        n_atoms,
        gamma,
        slope,
        intercept,
        r_squared,
    })
}
