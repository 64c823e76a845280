// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Ohmic reservoir characterization.
//!
//! The cavity couples to a bosonic bath with ohmic spectral density
//! `J(omega) = eta * omega`. Everything the master equation needs from the
//! bath reduces to its correlation function `C(t)` and spectral correlation
//! `C~(omega)`:
//!
//! - [`correlation_closed_form`] — the cutoff-free result
//!   `C(t) = -eta pi^2 / (beta^2 sinh^2(pi t / beta))`;
//! - [`correlation_quadrature`] — direct numerical integration of the
//!   defining frequency integral at finite exponential cutoff `Lambda`
//!   (the oracle for the closed form);
//! - [`correlation_finite_cutoff`] — the exact finite-cutoff closed form in
//!   terms of the trigamma function, used to cross-check the quadrature at
//!   matched cutoff and as the kernel of the dissipator oracle;
//! - [`spectral_correlation`] — `C~(omega) = J(|omega|)[n_B(|omega|) +
//!   theta(omega)]`, with `C~(0) = eta / beta`;
//! - the closed-form rates: [`gamma_from_reservoir`] (`gamma = 16 eta /
//!   beta`), [`excitation_rate`] (`2 C~(-omega_c)`), and [`dephasing_rate`]
//!   (`gamma lambda^2 (mu - nu)^2 / (N omega_c^2)`);
//! - [`lamb_shift_diagnostic`] — the cutoff-dependent cavity-frequency
//!   renormalization, reported but never applied (the cavity frequency is
//!   treated as already renormalized).
//!
//! Sign and transform conventions: `C(t) = ∫ dω C~(ω) e^{-iωt}` with
//! `C~(ω) ≥ 0`; the finite-cutoff regulator is `e^{-ω/Λ}` and appears only
//! in quadrature and diagnostic paths — closed forms take `Λ → ∞`.

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::numerics::quad::{oscillatory_half_line, principal_value};
use crate::numerics::special::trigamma;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Ohmic bath parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReservoirParams {
    /// Dimensionless dissipation strength `eta >= 0`.
    pub eta: f64,
    /// Inverse temperature `beta > 0` (units of inverse atomic splitting).
    pub beta: f64,
    /// Exponential cutoff frequency `Lambda`, used only by quadrature and
    /// diagnostic paths; closed forms are cutoff-free.
    pub cutoff: Option<f64>,
}

impl ReservoirParams {
    /// Validated constructor.
    pub fn new(eta: f64, beta: f64, cutoff: Option<f64>) -> Result<Self> {
        let r = Self { eta, beta, cutoff };
        r.validate()?;
        Ok(r)
    }

    /// Bath with dissipation strength chosen so that the dephasing-rate
    /// parameter `16 eta / beta` equals `gamma` at inverse temperature
    /// `beta`.
    pub fn from_gamma(gamma: f64, beta: f64, cutoff: Option<f64>) -> Result<Self> {
        if !(gamma >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "gamma must be non-negative, got {gamma}"
            )));
        }
        Self::new(gamma * beta / 16.0, beta, cutoff)
    }

    /// Checks `eta >= 0`, `beta > 0`, `cutoff > 0` when supplied, all finite.
    pub fn validate(&self) -> Result<()> {
        if !self.eta.is_finite() || self.eta < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "eta must be finite and non-negative, got {}",
                self.eta
            )));
        }
        if !self.beta.is_finite() || self.beta <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "beta must be finite and positive, got {}",
                self.beta
            )));
        }
        if let Some(c) = self.cutoff {
            if !c.is_finite() || c <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "cutoff must be finite and positive when supplied, got {c}"
                )));
            }
        }
        Ok(())
    }

    /// The finite cutoff, or an error for the paths that need one.
    pub fn require_cutoff(&self) -> Result<f64> {
        self.cutoff.ok_or_else(|| {
            Error::InvalidParameter(
                "a finite cutoff is required for this path; set ReservoirParams::cutoff".into(),
            )
        })
    }
}

/// Ohmic spectral density `J(omega) = eta * omega` for `omega >= 0`.
/// The exponential cutoff is deliberately absent here; it enters only the
/// quadrature/diagnostic paths.
pub fn spectral_density(r: &ReservoirParams, omega: f64) -> Result<f64> {
    r.validate()?;
    if !(omega >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "spectral density is defined for omega >= 0, got {omega}"
        )));
    }
    Ok(r.eta * omega)
}

/// Bose–Einstein occupation `n_B(omega) = 1 / (e^{beta omega} - 1)` for
/// `omega > 0`. The `omega -> 0` limit is handled inside
/// [`spectral_correlation`], so `omega <= 0` is rejected here.
pub fn bose_einstein(beta: f64, omega: f64) -> Result<f64> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "beta must be finite and positive, got {beta}"
        )));
    }
    if !(omega > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "bose_einstein requires omega > 0, got {omega}"
        )));
    }
    Ok(1.0 / (beta * omega).exp_m1())
}

/// Cutoff-free bath correlation function
/// `C(t) = -eta pi^2 / (beta^2 sinh^2(pi |t| / beta))`: real, even in `t`,
/// strictly negative, decaying as `e^{-2 pi |t| / beta}` for `|t| >> beta`.
///
/// The `t = 0` value diverges (the regularized short-time behaviour is
/// cutoff-dominated) and is rejected.
pub fn correlation_closed_form(r: &ReservoirParams, t: f64) -> Result<f64> {
    r.validate()?;
    if t == 0.0 || !t.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "correlation_closed_form requires finite t != 0, got {t}"
        )));
    }
    let x = std::f64::consts::PI * t.abs() / r.beta;
    // 1/sinh^2(x) = 4 e^{-2x} / (1 - e^{-2x})^2, overflow-free for all x > 0.
    let em = (-2.0 * x).exp_m1(); // e^{-2x} - 1, in (-1, 0)
    let inv_sinh2 = 4.0 * (-2.0 * x).exp() / (em * em);
    let pi2 = std::f64::consts::PI * std::f64::consts::PI;
    Ok(-r.eta * pi2 / (r.beta * r.beta) * inv_sinh2)
}

/// Exact finite-cutoff correlation function, in closed form via the trigamma
/// function `psi'`:
///
/// `C_Lambda(t) = (eta / beta^2) [ psi'((delta + i t)/beta) + psi'(1 + (delta - i t)/beta) ]`
///
/// with `delta = 1/Lambda`. Satisfies `C_Lambda(-t) = conj(C_Lambda(t))` and
/// reduces to [`correlation_closed_form`] as `Lambda -> infinity` (by the
/// trigamma reflection formula). This is the sharp cross-check target for
/// [`correlation_quadrature`] at matched cutoff, and the kernel used by the
/// dissipator oracle.
pub fn correlation_finite_cutoff(r: &ReservoirParams, t: f64) -> Result<Complex64> {
    r.validate()?;
    let cutoff = r.require_cutoff()?;
    let delta = 1.0 / cutoff;
    let z1 = Complex64::new(delta / r.beta, t / r.beta);
    let z2 = Complex64::new(1.0 + delta / r.beta, -t / r.beta);
    Ok((trigamma(z1) + trigamma(z2)) * (r.eta / (r.beta * r.beta)))
}

/// Real and imaginary parts of the bath correlation function obtained by
/// direct quadrature of the defining integral.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureCorrelation {
    /// `Re C(t)` — the physically used part, oracle for the closed form.
    pub re: f64,
    /// `Im C(t)` — diagnostic only (vacuum contribution; odd in `t`).
    pub im: f64,
}

/// Bath correlation function by direct numerical integration of
/// `∫_0^∞ dω J(ω) e^{-ω/Λ} [ 2 n_B(ω) cos(ωt) + e^{-iωt} ]`,
/// requiring a finite cutoff `Λ`. Serves as the oracle for
/// [`correlation_closed_form`] (up to `O(Λ^{-1})` cutoff effects) and is
/// cross-checked sharply against [`correlation_finite_cutoff`].
///
/// The thermal term is real by construction (a cosine transform); the
/// imaginary diagnostic comes from the vacuum term alone.
pub fn correlation_quadrature(r: &ReservoirParams, t: f64) -> Result<QuadratureCorrelation> {
    r.validate()?;
    if t == 0.0 || !t.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "correlation_quadrature requires finite t != 0, got {t}"
        )));
    }
    let cutoff = r.require_cutoff()?;
    if r.eta == 0.0 {
        return Ok(QuadratureCorrelation { re: 0.0, im: 0.0 });
    }
    let delta = 1.0 / cutoff;
    let tt = t.abs();
    let eta = r.eta;
    let beta = r.beta;

    // Vacuum part: ∫_0^∞ η ω e^{-δω} e^{-iωt} dω.
    let vacuum = oscillatory_half_line(
        |w| eta * w * (-delta * w).exp(),
        tt,
        60.0 * cutoff,
        "bath correlation, vacuum part",
    )?;

    // Thermal part: ∫_0^∞ 2 η ω e^{-δω} n_B(ω) cos(ωt) dω, evaluated as the
    // real part of the corresponding e^{-iωt} transform. The envelope is
    // finite at ω = 0 (limit 2η/β).
    let thermal_env = |w: f64| {
        if w == 0.0 {
            2.0 * eta / beta
        } else {
            2.0 * eta * w * (-delta * w).exp() / (beta * w).exp_m1()
        }
    };
    let thermal = oscillatory_half_line(
        thermal_env,
        tt,
        (120.0 / beta).min(60.0 * cutoff),
        "bath correlation, thermal part",
    )?;

    let re = vacuum.re + thermal.re;
    let im = if t < 0.0 { -vacuum.im } else { vacuum.im };
    Ok(QuadratureCorrelation { re, im })
}

/// Spectral correlation `C~(omega) = J(|omega|) [ n_B(|omega|) + theta(omega) ]`
/// for all real `omega`, with the removable singularity at `omega = 0`
/// filled by its limit `eta / beta`. Non-negative and continuous.
pub fn spectral_correlation(r: &ReservoirParams, omega: f64) -> f64 {
    if omega == 0.0 {
        return r.eta / r.beta;
    }
    let a = omega.abs();
    let n_b = 1.0 / (r.beta * a).exp_m1();
    let step = if omega > 0.0 { 1.0 } else { 0.0 };
    r.eta * a * (n_b + step)
}

/// The single dephasing-rate parameter of the master equation,
/// `gamma = 16 eta / beta`.
pub fn gamma_from_reservoir(r: &ReservoirParams) -> f64 {
    16.0 * r.eta / r.beta
}

/// Trace-loss rate of the excitation channel,
/// `Gamma_ex = 2 C~(-omega_c) = 2 eta omega_c n_B(omega_c)` —
/// exponentially small for `beta omega_c >> 1`.
///
/// Precondition: `omega_c > 0` (guaranteed by validated [`ModelParams`]).
pub fn excitation_rate(r: &ReservoirParams, omega_c: f64) -> f64 {
    debug_assert!(omega_c > 0.0, "excitation_rate requires omega_c > 0");
    2.0 * spectral_correlation(r, -omega_c)
}

/// Dephasing rate between dressed states `mu` and `nu`:
/// `Gamma_de = gamma lambda^2 (mu - nu)^2 / (N omega_c^2)`,
/// quadratic in the index separation and zero on the diagonal.
pub fn dephasing_rate(p: &ModelParams, mu: f64, nu: f64) -> Result<f64> {
    p.validate()?;
    p.index_of_mu(mu)?;
    p.index_of_mu(nu)?;
    let d = mu - nu;
    Ok(p.gamma * p.lambda * p.lambda * d * d / (p.n_atoms as f64 * p.omega_c * p.omega_c))
}

/// Cavity-frequency renormalization `delta omega_c = 4 PV ∫ dω C~(ω)/ω`
/// with the exponential cutoff applied, computed by symmetric-exclusion
/// quadrature with Richardson extrapolation in the exclusion radius.
///
/// Diagnostic only: the value grows linearly with the cutoff (the folded
/// integrand tends to `4 eta e^{-ω/Λ}`, so the result is `4 eta Lambda` for
/// the pure ohmic density) and is never applied to the dynamics — `omega_c`
/// is treated as the renormalized frequency throughout.
pub fn lamb_shift_diagnostic(r: &ReservoirParams, cutoff: f64) -> Result<f64> {
    r.validate()?;
    if !(cutoff > 0.0) || !cutoff.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "lamb_shift_diagnostic requires a finite positive cutoff, got {cutoff}"
        )));
    }
    if r.eta == 0.0 {
        return Ok(0.0);
    }
    let with_cutoff = ReservoirParams {
        cutoff: Some(cutoff),
        ..*r
    };
    let integrand = |omega: f64| {
        spectral_correlation(&with_cutoff, omega) * (-omega.abs() / cutoff).exp() / omega
    };
    let scale = r.eta * cutoff;
    let value = principal_value(
        integrand,
        40.0 * cutoff,
        1e-4 * r.beta.min(cutoff),
        1e-12 * scale,
        1e-10,
        "cavity frequency renormalization",
    )?;
    Ok(4.0 * value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn bath(eta: f64, beta: f64, cutoff: Option<f64>) -> ReservoirParams {
        ReservoirParams::new(eta, beta, cutoff).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(ReservoirParams::new(-0.1, 1.0, None).is_err());
        assert!(ReservoirParams::new(0.1, 0.0, None).is_err());
        assert!(ReservoirParams::new(0.1, 1.0, Some(-5.0)).is_err());
        assert!(ReservoirParams::new(0.0, 1.0, Some(1e4)).is_ok());
        let r = ReservoirParams::from_gamma(100.0, 0.02, None).unwrap();
        assert_eq!(r.eta, 0.125);
        assert_eq!(gamma_from_reservoir(&r), 100.0);
    }

    #[test]
    fn spectral_density_is_linear_and_guarded() {
        let r = bath(0.1, 1.0, None);
        assert_eq!(spectral_density(&r, 0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(spectral_density(&r, 2.0).unwrap(), 0.2, epsilon = 1e-16);
        let j1 = spectral_density(&r, 3.7).unwrap();
        let j2 = spectral_density(&r, 7.4).unwrap();
        assert_abs_diff_eq!(j2, 2.0 * j1, epsilon = 1e-16);
        assert!(spectral_density(&r, -1.0).is_err());
    }

    #[test]
    fn bose_einstein_reference_values() {
        // beta*omega = ln 2 => exactly 1.
        assert_relative_eq!(
            bose_einstein(1.0, std::f64::consts::LN_2).unwrap(),
            1.0,
            max_relative = 1e-14
        );
        // beta*omega = 1 => 1/(e - 1).
        assert_relative_eq!(
            bose_einstein(1.0, 1.0).unwrap(),
            0.5819767068693265,
            max_relative = 1e-15
        );
        // beta*omega -> infinity => 0.
        assert!(bose_einstein(1.0, 800.0).unwrap() < 1e-300);
        assert!(bose_einstein(1.0, 0.0).is_err());
        assert!(bose_einstein(1.0, -1.0).is_err());
        assert!(bose_einstein(0.0, 1.0).is_err());
    }

    #[test]
    fn closed_form_reference_value_and_symmetries() {
        let r = bath(0.1, 1.0, None);
        // -0.1 pi^2 / sinh^2(pi), frozen from a 30-digit evaluation.
        assert_relative_eq!(
            correlation_closed_form(&r, 1.0).unwrap(),
            -7.399980675447243e-3,
            max_relative = 1e-14
        );
        for t in [0.05, 0.3, 1.7, 12.0] {
            let plus = correlation_closed_form(&r, t).unwrap();
            let minus = correlation_closed_form(&r, -t).unwrap();
            assert_eq!(plus, minus, "C(t) must be exactly even");
            assert!(plus < 0.0, "C(t) must be strictly negative");
        }
        // Monotone decay of |C| and vanishing tail.
        assert!(
            correlation_closed_form(&r, 2.0).unwrap().abs()
                < correlation_closed_form(&r, 1.0).unwrap().abs()
        );
        assert_eq!(correlation_closed_form(&r, 400.0).unwrap(), -0.0);
        assert!(correlation_closed_form(&r, 0.0).is_err());
    }

    #[test]
    fn closed_form_exponential_tail() {
        // |C(t)| / [(4 eta pi^2 / beta^2) e^{-2 pi t / beta}] -> 1; at
        // t = 3 beta the residual is ~1.3e-8, far inside the 1% envelope.
        let r = bath(0.1, 0.7, None);
        let t = 3.0 * r.beta;
        let pi = std::f64::consts::PI;
        let tail = -4.0 * r.eta * pi * pi / (r.beta * r.beta) * (-2.0 * pi * t / r.beta).exp();
        let ratio = correlation_closed_form(&r, t).unwrap() / tail;
        assert!((ratio - 1.0).abs() < 1e-2, "tail ratio {ratio}");
        assert_relative_eq!(ratio, 1.0, max_relative = 1e-7);
    }

    #[test]
    fn finite_cutoff_closed_form_properties() {
        let r = bath(0.1, 1.0, Some(1e4));
        // Conjugate symmetry C(-t) = conj C(t).
        let plus = correlation_finite_cutoff(&r, 0.37).unwrap();
        let minus = correlation_finite_cutoff(&r, -0.37).unwrap();
        assert_eq!(plus.re, minus.re);
        assert_eq!(plus.im, -minus.im);
        // Frozen reference at t = 0.1, Lambda = 1e4. The imaginary part is
        // the exact vacuum response eta * Im[1/(delta + i t)^2]
        // = -2 eta delta t / (delta^2 + t^2)^2 with delta = 1/Lambda.
        let c = correlation_finite_cutoff(&r, 0.1).unwrap();
        let (delta, t) = (1e-4, 0.1);
        let vac_im = -2.0 * r.eta * delta * t / (delta * delta + t * t).powi(2);
        assert_relative_eq!(c.re, -9.6774224268268622, max_relative = 1e-13);
        assert_relative_eq!(c.im, vac_im, max_relative = 1e-12);
        assert!(correlation_finite_cutoff(&bath(0.1, 1.0, None), 0.1).is_err());
    }

    #[test]
    fn finite_cutoff_deviation_scales_as_inverse_cutoff() {
        let t = 0.5;
        let exact = correlation_closed_form(&bath(0.1, 1.0, None), t).unwrap();
        let dev = |lam: f64| {
            (correlation_finite_cutoff(&bath(0.1, 1.0, Some(lam)), t)
                .unwrap()
                .re
                - exact)
                .abs()
        };
        let ratio = dev(1e3) / dev(2e3);
        assert!(
            (ratio - 2.0).abs() < 0.15,
            "cutoff deviation should halve when Lambda doubles, ratio {ratio}"
        );
    }

    #[test]
    fn quadrature_matches_finite_cutoff_closed_form() {
        // Sharp cross-check at matched cutoff. Cancellation in the
        // oscillatory integrals leaves a small absolute floor, so the
        // bound is mixed: measured deviations are below 8e-9 absolute and
        // the tolerances here carry a >10x margin.
        let r = bath(0.1, 1.0, Some(1e4));
        for t in [0.1, 0.25, 0.5, 1.0, 1.5] {
            let q = correlation_quadrature(&r, t).unwrap();
            let c = correlation_finite_cutoff(&r, t).unwrap();
            let bound_re = 1e-7 * c.re.abs() + 1e-7;
            let bound_im = 1e-7 * c.im.abs() + 1e-7;
            assert!(
                (q.re - c.re).abs() <= bound_re,
                "Re deviation {} at t = {t}",
                (q.re - c.re).abs()
            );
            assert!(
                (q.im - c.im).abs() <= bound_im,
                "Im deviation {} at t = {t}",
                (q.im - c.im).abs()
            );
        }
        // Imaginary diagnostic against the exact vacuum response.
        let (delta, t) = (1e-4, 0.1);
        let vac_im = -2.0 * r.eta * delta * t / (delta * delta + t * t).powi(2);
        let q = correlation_quadrature(&r, t).unwrap();
        assert_relative_eq!(q.im, vac_im, max_relative = 1e-6);
        let qm = correlation_quadrature(&r, -t).unwrap();
        assert_eq!(q.im, -qm.im, "Im C must be odd in t");
        assert_eq!(q.re, qm.re, "Re C must be even in t");
    }

    #[test]
    fn quadrature_approaches_cutoff_free_form() {
        // At Lambda = 1e4 / beta the finite-cutoff correlation still
        // deviates from the cutoff-free form by ~1e-3 relative at t = beta;
        // the matched-cutoff comparison above is the sharp one.
        let r = bath(0.1, 1.0, Some(1e4));
        let q = correlation_quadrature(&r, 1.0).unwrap();
        let exact = correlation_closed_form(&r, 1.0).unwrap();
        assert_relative_eq!(q.re, exact, max_relative = 2e-3);
        // Zero dissipation strength short-circuits to zero.
        let r0 = bath(0.0, 1.0, Some(1e4));
        let q0 = correlation_quadrature(&r0, 1.0).unwrap();
        assert_eq!(q0.re, 0.0);
        assert_eq!(q0.im, 0.0);
        assert!(correlation_quadrature(&r, 0.0).is_err());
        assert!(correlation_quadrature(&bath(0.1, 1.0, None), 1.0).is_err());
    }

    #[test]
    fn spectral_correlation_limits_and_detailed_balance() {
        let r = bath(0.125, 0.02, None);
        assert_eq!(spectral_correlation(&r, 0.0), 0.125 / 0.02);
        // Continuity at omega = 0 from both sides.
        for omega in [1e-9, -1e-9] {
            assert_relative_eq!(
                spectral_correlation(&r, omega),
                0.125 / 0.02,
                max_relative = 1e-8
            );
        }
        // C~(-omega_c) = eta omega_c n_B(omega_c).
        let expect = 0.125 * 400.0 * bose_einstein(0.02, 400.0).unwrap();
        assert_relative_eq!(spectral_correlation(&r, -400.0), expect, max_relative = 1e-14);
        // Detailed balance C~(-omega)/C~(omega) = e^{-beta omega}.
        for omega in [5.0, 50.0, 400.0, 900.0] {
            let ratio = spectral_correlation(&r, -omega) / spectral_correlation(&r, omega);
            assert_relative_eq!(ratio, (-r.beta * omega).exp(), max_relative = 1e-12);
        }
        // Non-negative everywhere; ~ eta*omega for beta*omega >> 1.
        for omega in [-1000.0, -1.0, -1e-3, 1e-3, 1.0, 1000.0] {
            assert!(spectral_correlation(&r, omega) >= 0.0);
        }
        assert_relative_eq!(
            spectral_correlation(&r, 5000.0),
            0.125 * 5000.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn gamma_and_excitation_rate_reference_values() {
        let r = bath(0.125, 0.02, None);
        assert_eq!(gamma_from_reservoir(&r), 100.0);
        let r0 = bath(0.0, 0.02, None);
        assert_eq!(gamma_from_reservoir(&r0), 0.0);
        assert_eq!(
            gamma_from_reservoir(&bath(0.25, 0.02, None)),
            200.0,
            "doubling eta doubles gamma"
        );
        // Gamma_ex = 2 * 0.125 * 400 * n_B(8), frozen from a 30-digit
        // evaluation.
        assert_relative_eq!(
            excitation_rate(&r, 400.0),
            3.3557520084124496e-2,
            max_relative = 1e-14
        );
        // Deep quantum regime: rate is exponentially frozen out.
        assert!(excitation_rate(&bath(0.125, 2.0, None), 400.0) < 1e-300);
        // Gamma_ex / (2 C~(0)) ~ beta omega_c e^{-beta omega_c} up to the
        // O(e^{-beta omega_c}) stimulated correction.
        let ratio = excitation_rate(&r, 400.0) / (2.0 * spectral_correlation(&r, 0.0));
        assert_relative_eq!(ratio, 8.0 * (-8.0_f64).exp(), max_relative = 1e-3);
    }

    #[test]
    fn dephasing_rate_reference_values() {
        let p = ModelParams::default();
        // gamma lambda^2 / (N omega_c^2) = 100*100/(16*160000), an exact dyadic.
        assert_eq!(dephasing_rate(&p, 1.0, 0.0).unwrap(), 3.90625e-3);
        assert_eq!(
            dephasing_rate(&p, 2.0, 0.0).unwrap(),
            4.0 * dephasing_rate(&p, 1.0, 0.0).unwrap(),
            "quadratic in the index separation"
        );
        assert_eq!(dephasing_rate(&p, 3.0, 3.0).unwrap(), 0.0);
        assert_eq!(
            dephasing_rate(&p, -5.0, 2.0).unwrap(),
            dephasing_rate(&p, 2.0, -5.0).unwrap()
        );
        assert!(dephasing_rate(&p, 9.0, 0.0).is_err());
        assert!(dephasing_rate(&p, 1.5, 0.0).is_err());
    }

    #[test]
    fn lamb_shift_is_linear_in_cutoff_and_eta() {
        let r = bath(0.1, 1.0, None);
        // Folded integrand is eta e^{-omega/Lambda}: PV integral = eta*Lambda,
        // so the diagnostic equals 4 eta Lambda.
        let v100 = lamb_shift_diagnostic(&r, 100.0).unwrap();
        assert_relative_eq!(v100, 40.0, max_relative = 1e-6);
        let v200 = lamb_shift_diagnostic(&r, 200.0).unwrap();
        assert_relative_eq!(v200, 2.0 * v100, max_relative = 1e-6);
        let r2 = bath(0.2, 1.0, None);
        assert_relative_eq!(
            lamb_shift_diagnostic(&r2, 100.0).unwrap(),
            2.0 * v100,
            max_relative = 1e-10
        );
        assert_eq!(lamb_shift_diagnostic(&bath(0.0, 1.0, None), 100.0).unwrap(), 0.0);
        assert!(lamb_shift_diagnostic(&r, -1.0).is_err());
    }
}
