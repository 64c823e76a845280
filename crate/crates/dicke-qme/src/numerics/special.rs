// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Complex trigamma function.
//!
//! The finite-cutoff ohmic bath correlation function has an exact closed form
//! in terms of `psi'(z)`, the derivative of the digamma function, evaluated
//! at complex arguments with positive real part. This module implements
//! `psi'` by the standard combination of the recurrence
//! `psi'(z) = psi'(z+1) + 1/z^2` (applied until `|z|` is large) and the
//! asymptotic expansion
//!
//! ```text
//! psi'(z) ~ 1/z + 1/(2 z^2) + sum_k B_{2k} / z^{2k+1}
//! ```
//!
//! with Bernoulli numbers `B_2 .. B_14`. For `|z| >= 20` the truncation error
//! of the series is far below `f64` round-off.

use num_complex::Complex64;

/// Bernoulli numbers `B_2, B_4, ..., B_14` entering the asymptotic series.
const BERNOULLI: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

/// Modulus above which the asymptotic series is applied directly.
const ASYMPTOTIC_RADIUS: f64 = 20.0;

/// Trigamma function `psi'(z)` for complex `z` with `Re z > 0`.
///
/// Arguments in the left half-plane are mapped over by the reflection
/// formula `psi'(z) + psi'(1 - z) = pi^2 / sin^2(pi z)`, so the function is
/// defined everywhere except the non-positive integers (poles).
pub fn trigamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Reflection into the right half-plane; keeps the recurrence short
        // and avoids cancellation near the negative real axis.
        let pi = std::f64::consts::PI;
        let s = (pi * z).sin();
        return Complex64::new(pi * pi, 0.0) / (s * s) - trigamma(Complex64::new(1.0, 0.0) - z);
    }

    let mut w = z;
    let mut acc = Complex64::new(0.0, 0.0);
    while w.norm() < ASYMPTOTIC_RADIUS {
        acc += 1.0 / (w * w);
        w += 1.0;
    }

    // Asymptotic series at the shifted argument.
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut series = inv + 0.5 * inv2;
    let mut pow = inv * inv2; // 1/w^3, 1/w^5, ...
    for b in BERNOULLI {
        series += b * pow;
        pow *= inv2;
    }
    acc + series
}
