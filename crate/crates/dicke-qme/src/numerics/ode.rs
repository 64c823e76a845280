// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Initial-value integrators for autonomous matrix-valued ODEs
//! `dY/dt = F(Y)` with `Y` a complex matrix.
//!
//! [`dormand_prince`] is the workhorse: the embedded 5(4) pair with FSAL,
//! a PI-free step controller (factor clamped to `[0.2, 5]`), and steps
//! clipped to land exactly on the requested output grid, so output states
//! are genuine integration states rather than interpolants. The error norm
//! is the max over entries of `|e_ij| / (atol + rtol * |y_ij|)`.
//!
//! [`rk4_fixed`] is the classical fourth-order rule with a fixed number of
//! substeps per output interval, for deterministic regression runs.

use crate::error::{Error, Result};
use ndarray::Array2;
use num_complex::Complex64;

type State = Array2<Complex64>;

// Dormand–Prince 5(4) tableau.
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// Embedded fourth-order weights.
const BS1: f64 = 5179.0 / 57600.0;
const BS3: f64 = 7571.0 / 16695.0;
const BS4: f64 = 393.0 / 640.0;
const BS5: f64 = -92097.0 / 339200.0;
const BS6: f64 = 187.0 / 2100.0;
const BS7: f64 = 1.0 / 40.0;

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidParameter("empty time grid".into()));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter(
            "time grid must be strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Weighted max-norm of the local error estimate.
fn error_norm(err: &State, y: &State, y_new: &State, atol: f64, rtol: f64) -> f64 {
    let mut worst = 0.0_f64;
    for ((e, a), b) in err.iter().zip(y.iter()).zip(y_new.iter()) {
        let scale = atol + rtol * a.norm().max(b.norm());
        worst = worst.max(e.norm() / scale);
    }
    worst
}

/// Adaptive Dormand–Prince 5(4) integration over a strictly increasing
/// output grid.
///
/// `on_output(k, t_k, y)` is invoked for every grid index, including `k = 0`
/// with the initial state; its error return aborts the integration (used by
/// callers to surface invariant violations with context).
pub fn dormand_prince<R, O>(
    rhs: R,
    y0: &State,
    grid: &[f64],
    rtol: f64,
    atol: f64,
    mut on_output: O,
) -> Result<()>
where
    R: Fn(&State) -> State,
    O: FnMut(usize, f64, &State) -> Result<()>,
{
    check_grid(grid)?;
    let mut y = y0.clone();
    let mut t = grid[0];
    on_output(0, t, &y)?;
    if grid.len() == 1 {
        return Ok(());
    }

    let span = grid[grid.len() - 1] - grid[0];
    let mut k1 = rhs(&y);

    // Initial step from the scaled magnitudes of the state and its slope.
    let mut d0 = 0.0_f64;
    let mut d1 = 0.0_f64;
    for (yv, fv) in y.iter().zip(k1.iter()) {
        let scale = atol + rtol * yv.norm();
        d0 = d0.max(yv.norm() / scale);
        d1 = d1.max(fv.norm() / scale);
    }
    let first_interval = grid[1] - grid[0];
    let mut h = if d1 > 0.0 {
        (0.01 * d0 / d1).min(first_interval)
    } else {
        first_interval / 10.0
    };
    if !(h > 0.0) {
        h = first_interval / 10.0;
    }

    let mut next = 1usize;
    let max_attempts: u64 = 50_000_000;
    let mut attempts: u64 = 0;

    while next < grid.len() {
        let target = grid[next];
        let mut clipped = false;
        if t + h >= target {
            h = target - t;
            clipped = true;
        }
        attempts += 1;
        if attempts > max_attempts {
            return Err(Error::StepSizeUnderflow { t, step: h });
        }
        if h <= 1e-14 * span.max(t.abs()) {
            return Err(Error::StepSizeUnderflow { t, step: h });
        }

        let k2 = rhs(&(&y + &k1.mapv(|z| z * (h * A21))));
        let k3 = rhs(&(&y + &k1.mapv(|z| z * (h * A31)) + &k2.mapv(|z| z * (h * A32))));
        let k4 = rhs(
            &(&y + &k1.mapv(|z| z * (h * A41))
                + &k2.mapv(|z| z * (h * A42))
                + &k3.mapv(|z| z * (h * A43))),
        );
        let k5 = rhs(
            &(&y + &k1.mapv(|z| z * (h * A51))
                + &k2.mapv(|z| z * (h * A52))
                + &k3.mapv(|z| z * (h * A53))
                + &k4.mapv(|z| z * (h * A54))),
        );
        let k6 = rhs(
            &(&y + &k1.mapv(|z| z * (h * A61))
                + &k2.mapv(|z| z * (h * A62))
                + &k3.mapv(|z| z * (h * A63))
                + &k4.mapv(|z| z * (h * A64))
                + &k5.mapv(|z| z * (h * A65))),
        );
        let y_new = &y
            + &k1.mapv(|z| z * (h * B1))
            + &k3.mapv(|z| z * (h * B3))
            + &k4.mapv(|z| z * (h * B4))
            + &k5.mapv(|z| z * (h * B5))
            + &k6.mapv(|z| z * (h * B6));
        let k7 = rhs(&y_new);

        let err = k1.mapv(|z| z * (h * (B1 - BS1)))
            + &k3.mapv(|z| z * (h * (B3 - BS3)))
            + &k4.mapv(|z| z * (h * (B4 - BS4)))
            + &k5.mapv(|z| z * (h * (B5 - BS5)))
            + &k6.mapv(|z| z * (h * (B6 - BS6)))
            + &k7.mapv(|z| z * (h * (-BS7)));
        let err_norm = error_norm(&err, &y, &y_new, atol, rtol);

        if err_norm <= 1.0 {
            t += h;
            y = y_new;
            k1 = k7; // FSAL
            if clipped {
                // Landed exactly on the grid point.
                t = target;
                on_output(next, t, &y)?;
                next += 1;
            }
            let factor = if err_norm > 0.0 {
                (0.9 * err_norm.powf(-0.2)).clamp(0.2, 5.0)
            } else {
                5.0
            };
            h *= factor;
        } else {
            let factor = if err_norm.is_finite() {
                (0.9 * err_norm.powf(-0.2)).clamp(0.1, 0.9)
            } else {
                0.1
            };
            h *= factor;
        }
    }
    Ok(())
}

/// Classical fourth-order Runge–Kutta with `substeps` equal steps per output
/// interval. Fully deterministic for regression baselines.
pub fn rk4_fixed<R, O>(
    rhs: R,
    y0: &State,
    grid: &[f64],
    substeps: usize,
    mut on_output: O,
) -> Result<()>
where
    R: Fn(&State) -> State,
    O: FnMut(usize, f64, &State) -> Result<()>,
{
    check_grid(grid)?;
    if substeps == 0 {
        return Err(Error::InvalidParameter(
            "rk4_fixed requires at least one substep per interval".into(),
        ));
    }
    let mut y = y0.clone();
    on_output(0, grid[0], &y)?;
    for next in 1..grid.len() {
        let t0 = grid[next - 1];
        let h = (grid[next] - t0) / substeps as f64;
        for _ in 0..substeps {
            let k1 = rhs(&y);
            let k2 = rhs(&(&y + &k1.mapv(|z| z * (0.5 * h))));
            let k3 = rhs(&(&y + &k2.mapv(|z| z * (0.5 * h))));
            let k4 = rhs(&(&y + &k3.mapv(|z| z * h)));
            y = &y
                + &(k1 + &k2.mapv(|z| z * 2.0) + &k3.mapv(|z| z * 2.0) + &k4)
                    .mapv(|z| z * (h / 6.0));
        }
        on_output(next, grid[next], &y)?;
    }
    Ok(())
}
