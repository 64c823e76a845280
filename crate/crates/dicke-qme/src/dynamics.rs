// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Time evolution of dressed-basis density matrices.
//!
//! [`evolve`] integrates `d rho / dt = L rho` over a caller-supplied output
//! grid with either an adaptive Dormand–Prince 5(4) stepper or fixed-step
//! classical RK4, recording observable series (`re_a`, `trace`, `min_eig`,
//! `herm_dev`, `purity`) and enforcing physicality invariants at every output
//! point. [`propagator_expm`] builds the exact matrix-exponential propagator
//! of the dense superoperator for cross-validation of the steppers.
//!
//! [`quench_experiment`] runs the coupling-quench protocol: prepare the
//! dressed ground state `|phi_{-J}>`, evolve it at fixed coupling, and
//! average the cavity displacement `Re<a>` over the late-time half of the
//! window. The resulting order parameter `W(lambda)` interpolates between
//! zero (dephasing spreads the populations symmetrically) and a finite
//! fraction of the edge displacement `alpha_{-J}` (self-trapping at strong
//! coupling), which is the finite-size echo of the superradiant transition.

use crate::error::{Error, Result};
use crate::liouvillian::{self, Liouvillian};
use crate::model::{self, ModelParams};
use crate::numerics::{linalg, ode};
use ndarray::Array2;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::sync::Mutex;
use std::sync::atomic::{AtomicUsize, Ordering};

/// Tolerance on `|tr rho - 1|` (and on `|Im tr rho|`).
pub const TRACE_TOL: f64 = 1e-10;
/// Tolerance on the Hermiticity deviation `max |rho - rho^dagger|`.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Most negative admissible eigenvalue of a physical state.
pub const MIN_EIGENVALUE_FLOOR: f64 = -1e-8;

/// A validated density matrix in the dressed basis.
///
/// Construction checks Hermiticity (to [`HERMITICITY_TOL`]), the trace
/// (to [`TRACE_TOL`], or trace in `(0, 1]` via
/// [`DensityMatrix::with_trace_loss`]), and positivity (smallest eigenvalue
/// at least [`MIN_EIGENVALUE_FLOOR`]).
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    data: Array2<Complex64>,
}

impl DensityMatrix {
    /// Validates and wraps a unit-trace state.
    pub fn new(data: Array2<Complex64>) -> Result<Self> {
        Self::validated(data, false)
    }

    /// Validates and wraps a state whose trace may have decayed below one
    /// (excitation-loss channel active).
    pub fn with_trace_loss(data: Array2<Complex64>) -> Result<Self> {
        Self::validated(data, true)
    }

    fn validated(data: Array2<Complex64>, allow_trace_loss: bool) -> Result<Self> {
        if data.nrows() != data.ncols() || data.nrows() == 0 {
            return Err(Error::DimensionMismatch(format!(
                "density matrix must be square and non-empty, got {}x{}",
                data.nrows(),
                data.ncols()
            )));
        }
        let herm = linalg::hermitian_deviation(&data);
        if herm > HERMITICITY_TOL {
            return Err(Error::InvalidParameter(format!(
                "density matrix is not Hermitian: deviation {herm:.3e} exceeds {HERMITICITY_TOL:.1e}"
            )));
        }
        let tr: Complex64 = (0..data.nrows()).map(|i| data[[i, i]]).sum();
        if tr.im.abs() > TRACE_TOL {
            return Err(Error::InvalidParameter(format!(
                "density matrix trace has imaginary part {:.3e}",
                tr.im
            )));
        }
        let trace_ok = if allow_trace_loss {
            tr.re > 0.0 && tr.re <= 1.0 + TRACE_TOL
        } else {
            (tr.re - 1.0).abs() <= TRACE_TOL
        };
        if !trace_ok {
            return Err(Error::InvalidParameter(format!(
                "density matrix trace {:.15} is out of range",
                tr.re
            )));
        }
        let out = Self { data };
        let min_eig = out.min_eigenvalue()?;
        if min_eig < MIN_EIGENVALUE_FLOOR {
            return Err(Error::InvalidParameter(format!(
                "density matrix has negative eigenvalue {min_eig:.3e} below {MIN_EIGENVALUE_FLOOR:.1e}"
            )));
        }
        Ok(out)
    }

    /// Wraps data whose invariants were already enforced by the caller.
    pub(crate) fn from_checked(data: Array2<Complex64>) -> Self {
        Self { data }
    }

    /// State dimension `N + 1`.
    pub fn dim(&self) -> usize {
        self.data.nrows()
    }

    /// The underlying matrix.
    pub fn as_array(&self) -> &Array2<Complex64> {
        &self.data
    }

    /// Consumes the wrapper.
    pub fn into_array(self) -> Array2<Complex64> {
        self.data
    }

    /// Real part of the trace.
    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.data[[i, i]].re).sum()
    }

    /// `max |rho - rho^dagger|` over entries.
    pub fn hermitian_deviation(&self) -> f64 {
        linalg::hermitian_deviation(&self.data)
    }

    /// Smallest eigenvalue of the Hermitian part `(rho + rho^dagger)/2`.
    pub fn min_eigenvalue(&self) -> Result<f64> {
        min_eigenvalue_of(&self.data)
    }

    /// `tr(rho rho^dagger)`, which equals `tr(rho^2)` for Hermitian states.
    pub fn purity(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }
}

fn min_eigenvalue_of(m: &Array2<Complex64>) -> Result<f64> {
    let dim = m.nrows();
    let mut h = Array2::<Complex64>::zeros((dim, dim));
    for i in 0..dim {
        for j in 0..dim {
            h[[i, j]] = 0.5 * (m[[i, j]] + m[[j, i]].conj());
        }
    }
    let w = linalg::eigvalsh_hermitian(&h)?;
    Ok(w[0])
}

/// One recorded observable along a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub enum Series {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

/// Output of [`evolve`]: the time grid, named observable series of matching
/// length, and (optionally) the full state at every output time.
#[derive(Debug, Clone)]
pub struct Trajectory {
    times: Vec<f64>,
    series: BTreeMap<String, Series>,
    snapshots: Option<Vec<DensityMatrix>>,
}

impl Trajectory {
    /// Creates an empty trajectory over a strictly increasing grid.
    pub fn new(times: Vec<f64>) -> Result<Self> {
        if times.len() < 2 || times.windows(2).any(|w| !(w[1] > w[0])) || times
            .iter()
            .any(|t| !t.is_finite())
        {
            return Err(Error::InvalidParameter(
                "trajectory grid must contain at least two strictly increasing finite times"
                    .into(),
            ));
        }
        Ok(Self {
            times,
            series: BTreeMap::new(),
            snapshots: None,
        })
    }

    /// Number of output points.
    pub fn len(&self) -> usize {
        self.times.len()
    }

    /// True when there are no output points (never for validated grids).
    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// The output grid.
    pub fn times(&self) -> &[f64] {
        &self.times
    }

    /// Adds a real-valued series; its length must match the grid.
    pub fn insert_real(&mut self, name: &str, values: Vec<f64>) -> Result<()> {
        self.insert(name, Series::Real(values))
    }

    /// Adds a complex-valued series; its length must match the grid.
    pub fn insert_complex(&mut self, name: &str, values: Vec<Complex64>) -> Result<()> {
        self.insert(name, Series::Complex(values))
    }

    fn insert(&mut self, name: &str, series: Series) -> Result<()> {
        let len = match &series {
            Series::Real(v) => v.len(),
            Series::Complex(v) => v.len(),
        };
        if len != self.times.len() {
            return Err(Error::DimensionMismatch(format!(
                "series '{name}' has {len} values for {} grid points",
                self.times.len()
            )));
        }
        self.series.insert(name.to_string(), series);
        Ok(())
    }

    /// A real series by name, if recorded.
    pub fn real_series(&self, name: &str) -> Option<&[f64]> {
        match self.series.get(name) {
            Some(Series::Real(v)) => Some(v),
            _ => None,
        }
    }

    /// A complex series by name, if recorded.
    pub fn complex_series(&self, name: &str) -> Option<&[Complex64]> {
        match self.series.get(name) {
            Some(Series::Complex(v)) => Some(v),
            _ => None,
        }
    }

    /// Names of all recorded series, sorted.
    pub fn series_names(&self) -> Vec<&str> {
        self.series.keys().map(String::as_str).collect()
    }

    /// Recorded states, present when snapshot recording was requested.
    pub fn snapshots(&self) -> Option<&[DensityMatrix]> {
        self.snapshots.as_deref()
    }

    fn set_snapshots(&mut self, snaps: Vec<DensityMatrix>) {
        self.snapshots = Some(snaps);
    }
}

/// Stepper selection for [`evolve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Adaptive Dormand–Prince 5(4) with PI-free step control.
    Adaptive,
    /// Classical RK4 with `substeps` equal steps per grid interval.
    FixedStep { substeps: usize },
}

/// Integration controls. Defaults favor accuracy over speed: the adaptive
/// stepper at `rtol = 1e-10` keeps trajectories well inside the 1e-10
/// trace/Hermiticity invariant budget over hundreds of time units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorOptions {
    /// Relative tolerance per entry of the state.
    pub rtol: f64,
    /// Absolute tolerance per entry of the state.
    pub atol: f64,
    /// Stepper selection.
    pub method: Method,
    /// Store the full state at every output time.
    pub record_snapshots: bool,
    /// Abort with [`Error::InvariantViolation`] when trace, Hermiticity, or
    /// positivity drifts out of tolerance at an output point.
    pub enforce_invariants: bool,
}

impl Default for IntegratorOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-13,
            method: Method::Adaptive,
            record_snapshots: false,
            enforce_invariants: true,
        }
    }
}

/// The dressed ground-state dyad `|phi_{mu0}><phi_{mu0}|`.
///
/// `mu0` must be a valid ladder index for the given atom number; the usual
/// quench initial condition is the edge state `mu0 = -N/2`.
pub fn initial_state_phi(p: &ModelParams, mu0: f64) -> Result<DensityMatrix> {
    p.validate()?;
    let idx = p.index_of_mu(mu0)?;
    let dim = p.dim();
    let mut rho = Array2::<Complex64>::zeros((dim, dim));
    rho[[idx, idx]] = Complex64::new(1.0, 0.0);
    Ok(DensityMatrix::from_checked(rho))
}

/// Subspace expectation `Re<a> = sum_mu alpha_mu rho_{mu mu}`.
pub fn expect_re_a(p: &ModelParams, rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != p.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state dimension {} does not match N = {}",
            rho.dim(),
            p.n_atoms
        )));
    }
    let alphas = displacement_table(p)?;
    Ok(expect_re_a_raw(&alphas, rho.as_array()))
}

/// `Re<a>` from a precomputed displacement table, diagonal sum in ascending
/// index order (the summation-order contract shared with the coherence
/// normalization, so that `g1(0) = 1` holds bit-exactly).
pub(crate) fn expect_re_a_raw(alphas: &[f64], rho: &Array2<Complex64>) -> f64 {
    let mut acc = 0.0;
    for (i, &a) in alphas.iter().enumerate() {
        acc += a * rho[[i, i]].re;
    }
    acc
}

/// Displacement amplitudes `alpha_mu` indexed by ladder position.
pub(crate) fn displacement_table(p: &ModelParams) -> Result<Vec<f64>> {
    (0..p.dim())
        .map(|i| model::alpha(p, p.mu_of_index(i)))
        .collect()
}

/// Uniform output grid `t_k = k * t_max / n` with `n = round(t_max / dt)`
/// intervals; the returned spacing is exactly uniform in floating point.
pub fn uniform_grid(t_max: f64, dt: f64) -> Result<Vec<f64>> {
    if !(t_max.is_finite() && t_max > 0.0) || !(dt.is_finite() && dt > 0.0) || dt > t_max {
        return Err(Error::InvalidParameter(format!(
            "uniform grid requires 0 < dt <= t_max, got dt = {dt}, t_max = {t_max}"
        )));
    }
    let n = (t_max / dt).round().max(1.0) as usize;
    let step = t_max / n as f64;
    Ok((0..=n).map(|k| k as f64 * step).collect())
}

/// Integrates `d rho / dt = L rho` from `rho0` over `t_grid`, recording at
/// every grid point the series
///
/// - `re_a` — cavity displacement `sum_mu alpha_mu rho_{mu mu}`,
/// - `trace` — `Re tr rho`,
/// - `min_eig` — smallest eigenvalue of the Hermitian part,
/// - `herm_dev` — `max |rho - rho^dagger|`,
/// - `purity` — `tr(rho rho^dagger)`.
///
/// With `enforce_invariants` set (the default) the run aborts with
/// [`Error::InvariantViolation`] as soon as the trace leaves
/// `1 ± 1e-10` (or `(0, 1]` when the loss channel is active), the
/// Hermiticity deviation exceeds `1e-10`, or an eigenvalue drops below
/// `-1e-8`.
pub fn evolve(
    l: &Liouvillian,
    rho0: &DensityMatrix,
    t_grid: &[f64],
    opts: &IntegratorOptions,
) -> Result<Trajectory> {
    if rho0.dim() != l.dim() {
        return Err(Error::DimensionMismatch(format!(
            "initial state dimension {} does not match generator dimension {}",
            rho0.dim(),
            l.dim()
        )));
    }
    if !(opts.rtol > 0.0 && opts.atol > 0.0) {
        return Err(Error::InvalidParameter(
            "integrator tolerances must be positive".into(),
        ));
    }
    let alphas = displacement_table(l.params())?;
    let allow_trace_loss = l.includes_excitation_loss();
    let n_out = t_grid.len();

    let mut re_a = Vec::with_capacity(n_out);
    let mut trace = Vec::with_capacity(n_out);
    let mut min_eig = Vec::with_capacity(n_out);
    let mut herm_dev = Vec::with_capacity(n_out);
    let mut purity = Vec::with_capacity(n_out);
    let mut snaps: Vec<DensityMatrix> = if opts.record_snapshots {
        Vec::with_capacity(n_out)
    } else {
        Vec::new()
    };

    {
        let record = |_k: usize, t: f64, y: &Array2<Complex64>| -> Result<()> {
            let tr: Complex64 = (0..y.nrows()).map(|i| y[[i, i]]).sum();
            let herm = linalg::hermitian_deviation(y);
            let low = min_eigenvalue_of(y)?;
            if opts.enforce_invariants {
                if tr.im.abs() > TRACE_TOL {
                    return Err(invariant(t, "Im tr rho", tr.im.abs(), TRACE_TOL));
                }
                if allow_trace_loss {
                    if !(tr.re > 0.0 && tr.re <= 1.0 + TRACE_TOL) {
                        return Err(invariant(t, "tr rho (loss channel)", tr.re, TRACE_TOL));
                    }
                } else if (tr.re - 1.0).abs() > TRACE_TOL {
                    return Err(invariant(t, "|tr rho - 1|", (tr.re - 1.0).abs(), TRACE_TOL));
                }
                if herm > HERMITICITY_TOL {
                    return Err(invariant(t, "hermiticity deviation", herm, HERMITICITY_TOL));
                }
                if low < MIN_EIGENVALUE_FLOOR {
                    return Err(invariant(t, "min eigenvalue", low, MIN_EIGENVALUE_FLOOR));
                }
            }
            re_a.push(expect_re_a_raw(&alphas, y));
            trace.push(tr.re);
            min_eig.push(low);
            herm_dev.push(herm);
            purity.push(y.iter().map(|z| z.norm_sqr()).sum());
            if opts.record_snapshots {
                snaps.push(DensityMatrix::from_checked(y.clone()));
            }
            Ok(())
        };

        match opts.method {
            Method::Adaptive => {
                ode::dormand_prince(
                    |y| l.apply_unchecked(y),
                    rho0.as_array(),
                    t_grid,
                    opts.rtol,
                    opts.atol,
                    record,
                )?;
            }
            Method::FixedStep { substeps } => {
                ode::rk4_fixed(
                    |y| l.apply_unchecked(y),
                    rho0.as_array(),
                    t_grid,
                    substeps,
                    record,
                )?;
            }
        }
    }

    let mut traj = Trajectory::new(t_grid.to_vec())?;
    traj.insert_real("re_a", re_a)?;
    traj.insert_real("trace", trace)?;
    traj.insert_real("min_eig", min_eig)?;
    traj.insert_real("herm_dev", herm_dev)?;
    traj.insert_real("purity", purity)?;
    if opts.record_snapshots {
        traj.set_snapshots(snaps);
    }
    Ok(traj)
}

fn invariant(t: f64, what: &'static str, value: f64, tolerance: f64) -> Error {
    Error::InvariantViolation {
        t,
        what,
        value,
        tolerance,
    }
}

/// The exact propagator `exp(M t)` of the dense superoperator, acting on
/// row-major vectorized states. Independent of the steppers, so it serves as
/// their cross-check.
pub fn propagator_expm(l: &Liouvillian, t: f64) -> Result<Array2<Complex64>> {
    if !t.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "propagator time must be finite, got {t}"
        )));
    }
    let m = l.superoperator_matrix()?;
    linalg::expm(&m.mapv(|z| z * t))
}

/// Applies a propagator from [`propagator_expm`] to a state.
pub fn propagate_state(
    propagator: &Array2<Complex64>,
    rho: &Array2<Complex64>,
) -> Result<Array2<Complex64>> {
    let dim = rho.nrows();
    if propagator.nrows() != dim * dim || propagator.ncols() != dim * dim {
        return Err(Error::DimensionMismatch(format!(
            "propagator is {}x{}, state needs {}x{}",
            propagator.nrows(),
            propagator.ncols(),
            dim * dim,
            dim * dim
        )));
    }
    let v = liouvillian::vectorize(rho);
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for (r, slot) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, vc) in v.iter().enumerate() {
            acc += propagator[[r, c]] * vc;
        }
        *slot = acc;
    }
    liouvillian::unvectorize(&out, dim)
}

/// One coupling in a quench scan: the full trajectory plus the late-time
/// window average `W = <Re<a>>` over `[t_max/2, t_max]`.
#[derive(Debug, Clone)]
pub struct QuenchCurve {
    /// Coupling strength this curve was run at.
    pub lambda: f64,
    /// Full evolution from the dressed ground state `|phi_{-J}>`.
    pub trajectory: Trajectory,
    /// Mean of `re_a` over the averaging window.
    pub window_average: f64,
    /// Averaging window `(t_lo, t_hi)` actually used.
    pub window: (f64, f64),
}

/// Runs [`quench_experiment_with`] on the default grid (`dt = 0.05`) and
/// integrator options, one coupling per worker thread.
pub fn quench_experiment(
    p_base: &ModelParams,
    lambdas: &[f64],
    t_max: f64,
) -> Result<Vec<QuenchCurve>> {
    let grid = uniform_grid(t_max, 0.05)?;
    quench_experiment_with(p_base, lambdas, &grid, &IntegratorOptions::default(), None)
}

/// Quench protocol over a coupling scan: for each `lambda` the model is
/// rebuilt, the edge dressed state `|phi_{-J}>` is evolved over `grid`, and
/// `re_a` is averaged over the second half of the window.
///
/// Couplings are independent, so they run on `workers` threads (default: all
/// available, capped by the scan length); results are returned in scan order
/// regardless of scheduling.
pub fn quench_experiment_with(
    p_base: &ModelParams,
    lambdas: &[f64],
    grid: &[f64],
    opts: &IntegratorOptions,
    workers: Option<usize>,
) -> Result<Vec<QuenchCurve>> {
    p_base.validate()?;
    if lambdas.is_empty() {
        return Err(Error::InvalidParameter(
            "quench scan needs at least one coupling".into(),
        ));
    }
    let run_one = |lambda: f64| -> Result<QuenchCurve> {
        let mut p = *p_base;
        p.lambda = lambda;
        let l = liouvillian::build(&p, &liouvillian::BuildOptions::default())?;
        let mu0 = -p.j();
        let rho0 = initial_state_phi(&p, mu0)?;
        let trajectory = evolve(&l, &rho0, grid, opts)?;
        let t_end = *grid.last().expect("validated grid");
        let t_lo = 0.5 * t_end;
        let re_a = trajectory
            .real_series("re_a")
            .expect("evolve always records re_a");
        let mut acc = 0.0;
        let mut count = 0usize;
        for (k, &t) in grid.iter().enumerate() {
            if t >= t_lo - 1e-9 {
                acc += re_a[k];
                count += 1;
            }
        }
        Ok(QuenchCurve {
            lambda,
            trajectory,
            window_average: acc / count as f64,
            window: (t_lo, t_end),
        })
    };
    run_indexed(lambdas, workers, run_one)
}

/// Runs `job` over `items` on a small thread pool, preserving input order in
/// the output and reporting the lowest-index failure.
pub(crate) fn run_indexed<T, U, F>(items: &[T], workers: Option<usize>, job: F) -> Result<Vec<U>>
where
    T: Copy + Send + Sync,
    U: Send,
    F: Fn(T) -> Result<U> + Send + Sync,
{
    let n = items.len();
    let hardware = std::thread::available_parallelism()
        .map(|v| v.get())
        .unwrap_or(1);
    let workers = workers.unwrap_or(hardware).clamp(1, n.max(1));
    let slots: Mutex<Vec<Option<Result<U>>>> =
        Mutex::new((0..n).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= n {
                    break;
                }
                let outcome = job(items[k]);
                slots.lock().expect("result mutex")[k] = Some(outcome);
            });
        }
    });
    let collected = slots.into_inner().expect("result mutex");
    let mut out = Vec::with_capacity(n);
    for slot in collected {
        out.push(slot.expect("every index visited")?);
    }
    Ok(out)
}
