// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Numerical integration kernels.
//!
//! Three integrators cover the shapes that appear in the bath integrals:
//!
//! - [`adaptive_complex`] / [`adaptive`] — globally adaptive Gauss–Kronrod
//!   7/15 quadrature: the segment with the largest error estimate is bisected
//!   until the summed estimate meets the tolerance. Handles the smooth but
//!   multi-scale integrands (thermal correlation tails, dissipator kernels
//!   with structure on the cutoff time scale).
//! - [`oscillatory_half_line`] — `∫ env(w) · exp(-i w t) dw` over `[0, w_max]`
//!   by half-period panels of width `pi/t`, one 15-point Kronrod rule per
//!   panel, combined by pairwise (tree) summation so that the near-cancelling
//!   alternating panel values do not lose precision.
//! - [`principal_value`] — Cauchy principal value across a simple pole at the
//!   origin by symmetric exclusion of `(-eps, eps)` and Richardson
//!   extrapolation in `eps`.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::BinaryHeap;

/// 15-point Kronrod abscissae on `[-1, 1]` (non-negative half; symmetric).
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];

/// Kronrod weights matching [`XGK`].
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];

/// Embedded 7-point Gauss weights; the Gauss nodes are `XGK[1], XGK[3],
/// XGK[5], XGK[7]`.
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

/// Result of an adaptive quadrature.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    /// Integral value.
    pub value: Complex64,
    /// Sum of per-segment `|K15 - G7|` error estimates (conservative).
    pub error_estimate: f64,
    /// Number of segments in the final partition.
    pub segments: usize,
}

/// One Gauss–Kronrod 7/15 panel on `[a, b]`: returns the Kronrod value, the
/// `|K15 - G7|` error estimate, and the Kronrod value of `|f|` (the
/// absolute scale, which bounds the panel's floating-point noise floor at
/// `~eps` times itself).
fn kronrod_panel<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_scale = WGK[7] * fc.norm();
    for i in 0..7 {
        let dx = half * XGK[i];
        let (lo, hi) = (f(center - dx), f(center + dx));
        let fsum = lo + hi;
        kronrod += WGK[i] * fsum;
        abs_scale += WGK[i] * (lo.norm() + hi.norm());
        if i % 2 == 1 {
            gauss += WG[i / 2] * fsum;
        }
    }
    kronrod *= half;
    gauss *= half;
    abs_scale *= half.abs();
    (kronrod, (kronrod - gauss).norm(), abs_scale)
}

/// Max-heap entry for the globally adaptive scheme, ordered by error.
struct Segment {
    error: f64,
    a: f64,
    b: f64,
    value: Complex64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Globally adaptive Gauss–Kronrod integration of a complex-valued function
/// over `[a, b]`.
///
/// Refinement stops once the summed error estimate drops below
/// `max(abs_tol, rel_tol * |value|)`. Exceeding `max_segments` (or a
/// non-finite integrand value) reports [`Error::QuadratureNonConvergence`].
pub fn adaptive_complex<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
    context: &str,
) -> Result<Quadrature> {
    let (value, error, _) = kronrod_panel(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        error,
        a,
        b,
        value,
    });
    let mut total = value;
    let mut total_err = error;

    loop {
        let tol = abs_tol.max(rel_tol * total.norm());
        if total_err <= tol {
            break;
        }
        if heap.len() >= max_segments || !total_err.is_finite() {
            return Err(Error::QuadratureNonConvergence {
                context: context.to_string(),
                estimate: total_err,
                requested: tol,
            });
        }
        let worst = heap.pop().expect("heap cannot be empty while error > 0");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval no longer bisectable in f64; error estimate stalls.
            return Err(Error::QuadratureNonConvergence {
                context: context.to_string(),
                estimate: total_err,
                requested: tol,
            });
        }
        let (lv, le, _) = kronrod_panel(&f, worst.a, mid);
        let (rv, re, _) = kronrod_panel(&f, mid, worst.b);
        total += lv + rv - worst.value;
        total_err += le + re - worst.error;
        heap.push(Segment {
            error: le,
            a: worst.a,
            b: mid,
            value: lv,
        });
        heap.push(Segment {
            error: re,
            a: mid,
            b: worst.b,
            value: rv,
        });
    }

    // Recompute the totals from the final partition: the incremental updates
    // above accumulate rounding over many refinements.
    let mut value = Complex64::new(0.0, 0.0);
    let mut error_estimate = 0.0;
    let segments: Vec<Segment> = heap.into_vec();
    for s in &segments {
        value += s.value;
        error_estimate += s.error;
    }
    Ok(Quadrature {
        value,
        error_estimate,
        segments: segments.len(),
    })
}

/// Real-valued convenience wrapper around [`adaptive_complex`].
pub fn adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
    max_segments: usize,
    context: &str,
) -> Result<(f64, f64)> {
    let q = adaptive_complex(
        |x| Complex64::new(f(x), 0.0),
        a,
        b,
        abs_tol,
        rel_tol,
        max_segments,
        context,
    )?;
    Ok((q.value.re, q.error_estimate))
}

/// Sums a slice by adjacent pairwise (tree) reduction.
///
/// Alternating near-cancelling sequences (half-period panel values of an
/// oscillatory integral) lose precision under left-to-right summation; the
/// tree reduction performs the cancellations between neighbours first, where
/// they are benign.
fn pairwise_sum(mut vals: Vec<Complex64>) -> Complex64 {
    while vals.len() > 1 {
        let mut next = Vec::with_capacity(vals.len() / 2 + 1);
        let mut it = vals.chunks_exact(2);
        for pair in &mut it {
            next.push(pair[0] + pair[1]);
        }
        if let [last] = it.remainder() {
            next.push(*last);
        }
        vals = next;
    }
    vals.first().copied().unwrap_or(Complex64::new(0.0, 0.0))
}

/// `∫_0^{omega_max} env(w) · exp(-i w t) dw` for a smooth, eventually
/// decaying envelope and `t > 0`.
///
/// The domain is cut at the zeros of the oscillation (panels of width
/// `pi/t`). Each panel gets a 15-point Kronrod rule; panels where the
/// embedded Gauss rule disagrees (the envelope has structure finer than the
/// oscillation) are refined adaptively. Panel values are combined by
/// pairwise summation. With fewer than four panels the problem is not
/// oscillatory at this scale and is delegated to the adaptive rule.
///
/// Accuracy note: the alternating panel values cancel down to the result,
/// so the achievable absolute error is bounded below by roughly
/// `eps * ∫ |env|` regardless of the panel rule. For strongly cancelling
/// integrals (`∫ |env| >> |result|`) the relative error degrades by that
/// conditioning ratio.
pub fn oscillatory_half_line<F: Fn(f64) -> f64>(
    env: F,
    t: f64,
    omega_max: f64,
    context: &str,
) -> Result<Complex64> {
    if !(t > 0.0) || !(omega_max > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "oscillatory integral needs t > 0 and omega_max > 0 (got t = {t}, omega_max = {omega_max})"
        )));
    }
    let f = |w: f64| {
        let (s, c) = (w * t).sin_cos();
        env(w) * Complex64::new(c, -s)
    };
    let h = std::f64::consts::PI / t;
    let n_panels = (omega_max / h).ceil() as usize;
    const MAX_PANELS: usize = 8_000_000;
    if n_panels > MAX_PANELS {
        return Err(Error::QuadratureNonConvergence {
            context: format!("{context}: {n_panels} half-period panels exceed the limit"),
            estimate: f64::INFINITY,
            requested: 0.0,
        });
    }
    if n_panels < 4 {
        return Ok(adaptive_complex(f, 0.0, omega_max, 1e-14, 1e-12, 2000, context)?.value);
    }
    let mut panels = Vec::with_capacity(n_panels);
    let mut scale = 0.0_f64;
    for j in 0..n_panels {
        let a = j as f64 * h;
        let b = ((j + 1) as f64 * h).min(omega_max);
        let (v, e, _) = kronrod_panel(&f, a, b);
        panels.push((v, e, a, b));
        scale = scale.max(v.norm());
    }
    // Refine panels whose single-rule estimate is above the relative noise
    // floor of the largest panel (the envelope has structure finer than
    // the oscillation there). Refinement is best-effort: it cuts real
    // truncation error geometrically and stops harmlessly at the depth
    // bound once only floating-point noise is left.
    let panel_tol = 1e-15 * scale;
    let mut values = Vec::with_capacity(n_panels);
    for (v, e, a, b) in panels {
        values.push(refine_panel(&f, a, b, v, e, panel_tol, 8));
    }
    Ok(pairwise_sum(values))
}

/// Bisects a Kronrod panel until its `|K15 - G7|` estimate drops below the
/// tolerance or the depth budget runs out, returning the best available
/// value. Unlike the globally adaptive rule this cannot fail, so it is
/// safe on panels whose estimate floors at floating-point noise: halving
/// the panel also halves that noise floor, so the recursion terminates.
fn refine_panel<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    tol: f64,
    depth: usize,
) -> Complex64 {
    if error <= tol || depth == 0 {
        return value;
    }
    let mid = 0.5 * (a + b);
    if mid <= a || mid >= b {
        return value;
    }
    let (lv, le, _) = kronrod_panel(f, a, mid);
    let (rv, re, _) = kronrod_panel(f, mid, b);
    refine_panel(f, a, mid, lv, le, tol, depth - 1)
        + refine_panel(f, mid, b, rv, re, tol, depth - 1)
}

/// Cauchy principal value `PV ∫_{-w}^{w} f(x) dx` for `f` with a simple pole
/// at the origin.
///
/// The symmetric fold `g(x) = f(x) + f(-x)` is integrated over `[eps, w]`;
/// the excluded mass expands as `a·eps + b·eps^3 + O(eps^5)`, and two
/// Richardson levels over `eps`, `eps/2`, `eps/4` remove both leading terms.
pub fn principal_value<F: Fn(f64) -> f64>(
    f: F,
    half_width: f64,
    eps: f64,
    abs_tol: f64,
    rel_tol: f64,
    context: &str,
) -> Result<f64> {
    if !(half_width > 0.0) || !(eps > 0.0) || eps >= half_width {
        return Err(Error::InvalidParameter(format!(
            "principal value needs 0 < eps < half_width (got eps = {eps}, half_width = {half_width})"
        )));
    }
    let folded = |x: f64| f(x) + f(-x);
    let (coarse, _) = adaptive(&folded, eps, half_width, abs_tol, rel_tol, 20_000, context)?;
    let (mid, _) = adaptive(&folded, 0.5 * eps, eps, abs_tol, rel_tol, 20_000, context)?;
    let (inner, _) = adaptive(&folded, 0.25 * eps, 0.5 * eps, abs_tol, rel_tol, 20_000, context)?;
    // I(e) = PV - a·e - b·e^3 + O(e^5); J(e) = 2 I(e/2) - I(e) = PV + (3/4) b e^3.
    let i_eps = coarse;
    let i_half = coarse + mid;
    let i_quarter = coarse + mid + inner;
    let j_eps = 2.0 * i_half - i_eps;
    let j_half = 2.0 * i_quarter - i_half;
    // (8 J(e/2) - J(e)) / 7 = PV + O(e^5).
    Ok((8.0 * j_half - j_eps) / 7.0)
}
