// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dressed low-energy subspace of the dispersive Dicke model.
//!
//! `N` two-level atoms form a collective spin `J = N/2`. In the dispersive
//! regime the cavity follows the atoms adiabatically and the low-energy
//! subspace is spanned by `N + 1` dressed states `|phi_mu>`, labelled by the
//! `J_1` quantum number `mu ∈ {-J, …, J}` — each a `J_1` eigenstate tensored
//! with a cavity coherent state of amplitude `alpha_mu`. This module builds
//! the subspace operators in that basis:
//!
//! - [`j3_in_j1_basis`] — `J_3` rewritten in the `J_1` eigenbasis (real
//!   symmetric tridiagonal under the phase convention fixed here);
//! - [`build_h1`] — the effective Hamiltonian
//!   `H_1 = -(4 lambda^2 / (N omega_c)) J_1^2 + omega_a J_3`, of
//!   Lipkin–Meshkov–Glick form;
//! - [`alpha`] / [`a_subspace`] — the coherent displacement per dressed state
//!   and the photon annihilation operator projected onto the subspace (it is
//!   diagonal there);
//! - [`parity_map`] — the `mu -> -mu` involution that commutes with `H_1`;
//! - [`validate_regime`] — quantitative checks of the dispersive and
//!   Markovian inequalities behind the effective description.
//!
//! Basis indexing is `i = mu + J` throughout, so index `0` is `mu = -J` and
//! index `N` is `mu = +J`. All frequencies are in units of the atomic
//! splitting `omega_a`.

use crate::error::{Error, Result};
use crate::reservoir::ReservoirParams;
use ndarray::Array2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Physical parameters of the atom–cavity system.
///
/// All frequencies are in units of the atomic splitting, so `omega_a` is
/// normally `1.0`. `gamma` is the single dephasing-rate knob of the dissipative
/// part (`gamma = 16 eta / beta` when derived from a reservoir).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Number of two-level atoms `N >= 1`; the collective spin is `J = N/2`.
    pub n_atoms: usize,
    /// Atomic level splitting (the frequency unit; `> 0`).
    pub omega_a: f64,
    /// Cavity frequency (`> 0`, far above `omega_a` in the dispersive regime).
    pub omega_c: f64,
    /// Atom–cavity coupling strength (`>= 0`).
    pub lambda: f64,
    /// Dephasing rate parameter of the dissipator (`>= 0`).
    pub gamma: f64,
}

impl ModelParams {
    /// Validated constructor; see [`ModelParams::validate`] for the rules.
    pub fn new(
        n_atoms: usize,
        omega_a: f64,
        omega_c: f64,
        lambda: f64,
        gamma: f64,
    ) -> Result<Self> {
        let p = Self {
            n_atoms,
            omega_a,
            omega_c,
            lambda,
            gamma,
        };
        p.validate()?;
        Ok(p)
    }

    /// Checks the domain invariants: `n_atoms >= 1`, `omega_a > 0`,
    /// `omega_c > 0`, `lambda >= 0`, `gamma >= 0`, all finite.
    pub fn validate(&self) -> Result<()> {
        if self.n_atoms < 1 {
            return Err(Error::InvalidParameter(
                "n_atoms must be at least 1".into(),
            ));
        }
        for (name, value, positive) in [
            ("omega_a", self.omega_a, true),
            ("omega_c", self.omega_c, true),
            ("lambda", self.lambda, false),
            ("gamma", self.gamma, false),
        ] {
            if !value.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite, got {value}"
                )));
            }
            if positive && value <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {value}"
                )));
            }
            if !positive && value < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be non-negative, got {value}"
                )));
            }
        }
        Ok(())
    }

    /// Collective spin `J = N/2`.
    pub fn j(&self) -> f64 {
        self.n_atoms as f64 / 2.0
    }

    /// Subspace dimension `N + 1`.
    pub fn dim(&self) -> usize {
        self.n_atoms + 1
    }

    /// Dressed index `mu` for the 0-based basis index `i`, i.e. `mu = i - J`.
    pub fn mu_of_index(&self, i: usize) -> f64 {
        i as f64 - self.j()
    }

    /// 0-based basis index of a dressed index, `i = mu + J`, rejecting `mu`
    /// outside `{-J, …, J}` or off the half-integer ladder.
    pub fn index_of_mu(&self, mu: f64) -> Result<usize> {
        let j = self.j();
        let shifted = mu + j;
        let rounded = shifted.round();
        if !(0.0..=(self.n_atoms as f64)).contains(&rounded)
            || (shifted - rounded).abs() > 1e-9
        {
            return Err(Error::IndexOutOfRange {
                mu,
                n_atoms: self.n_atoms,
                max: j,
            });
        }
        Ok(rounded as usize)
    }
}

impl Default for ModelParams {
    /// The reference operating point used throughout the examples:
    /// `N = 16`, `omega_c = 400`, `lambda = 10`, `gamma = 100` (units of
    /// `omega_a`).
    fn default() -> Self {
        Self {
            n_atoms: 16,
            omega_a: 1.0,
            omega_c: 400.0,
            lambda: 10.0,
            gamma: 100.0,
        }
    }
}

/// A square complex matrix acting on the dressed subspace, indexed by
/// `i = mu + J`.
///
/// Instances created through [`OperatorMatrix::hermitian`] are checked
/// against `M = M†` (entrywise, 1e-12 absolute) and remember the result via
/// [`OperatorMatrix::is_hermitian`].
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    matrix: Array2<Complex64>,
    hermitian: bool,
}

impl OperatorMatrix {
    /// Wraps a matrix after verifying it is square and Hermitian to 1e-12.
    pub fn hermitian(matrix: Array2<Complex64>) -> Result<Self> {
        Self::ensure_square(&matrix)?;
        let dev = crate::numerics::linalg::hermitian_deviation(&matrix);
        if dev > 1e-12 {
            return Err(Error::SelfCheck(format!(
                "matrix flagged Hermitian deviates from M = M† by {dev:.3e}"
            )));
        }
        Ok(Self {
            matrix,
            hermitian: true,
        })
    }

    /// Wraps a general (not necessarily Hermitian) square matrix.
    pub fn general(matrix: Array2<Complex64>) -> Result<Self> {
        Self::ensure_square(&matrix)?;
        Ok(Self {
            matrix,
            hermitian: false,
        })
    }

    fn ensure_square(matrix: &Array2<Complex64>) -> Result<()> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::DimensionMismatch(format!(
                "operator matrix must be square, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(())
    }

    /// Matrix dimension (`N + 1` for subspace operators).
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Whether the instance passed the Hermiticity check at construction.
    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// The underlying complex matrix.
    pub fn as_array(&self) -> &Array2<Complex64> {
        &self.matrix
    }

    /// Consumes the wrapper and returns the matrix.
    pub fn into_array(self) -> Array2<Complex64> {
        self.matrix
    }
}

/// `J_3` expressed in the `J_1` eigenbasis.
///
/// Under the phase convention used throughout (basis phases chosen so ladder
/// matrix elements are real and non-negative), the result is real symmetric
/// tridiagonal with zero diagonal and off-diagonal elements
/// `<mu+1| J_3 |mu> = sqrt(J(J+1) - mu(mu+1)) / 2`. Its spectrum is exactly
/// `{-J, …, J}`: rotating the spin quantization axis permutes the operators
/// `J_1 -> J_3` but cannot change eigenvalues.
pub fn j3_in_j1_basis(n_atoms: usize) -> Result<OperatorMatrix> {
    if n_atoms < 1 {
        return Err(Error::InvalidParameter(
            "n_atoms must be at least 1".into(),
        ));
    }
    let j = n_atoms as f64 / 2.0;
    let dim = n_atoms + 1;
    let mut m = Array2::<Complex64>::zeros((dim, dim));
    for i in 0..dim - 1 {
        let mu = i as f64 - j;
        let elem = 0.5 * (j * (j + 1.0) - mu * (mu + 1.0)).sqrt();
        m[[i, i + 1]] = Complex64::new(elem, 0.0);
        m[[i + 1, i]] = Complex64::new(elem, 0.0);
    }
    OperatorMatrix::hermitian(m)
}

/// Effective subspace Hamiltonian
/// `H_1 = -(4 lambda^2 / (N omega_c)) J_1^2 + omega_a J_3`
/// in the dressed basis: diagonal entries `-4 lambda^2 mu^2 / (N omega_c)`
/// plus the tridiagonal `omega_a J_3` coupling from [`j3_in_j1_basis`].
pub fn build_h1(p: &ModelParams) -> Result<OperatorMatrix> {
    p.validate()?;
    let mut m = j3_in_j1_basis(p.n_atoms)?.into_array();
    m.mapv_inplace(|z| z * p.omega_a);
    let coeff = -4.0 * p.lambda * p.lambda / (p.n_atoms as f64 * p.omega_c);
    for i in 0..p.dim() {
        let mu = p.mu_of_index(i);
        m[[i, i]] += Complex64::new(coeff * mu * mu, 0.0);
    }
    OperatorMatrix::hermitian(m)
}

/// Coherent displacement of the cavity field conditioned on the dressed
/// index: `alpha_mu = -2 lambda mu / (sqrt(N) omega_c)`.
///
/// Odd in `mu`; rejects `mu` outside `{-J, …, J}`.
pub fn alpha(p: &ModelParams, mu: f64) -> Result<f64> {
    p.validate()?;
    p.index_of_mu(mu)?;
    Ok(-2.0 * p.lambda * mu / ((p.n_atoms as f64).sqrt() * p.omega_c))
}

/// Photon annihilation operator projected onto the dressed subspace:
/// `<phi_mu| a |phi_nu> = delta_{mu nu} alpha_mu`, a real diagonal matrix.
///
/// Off-diagonal elements vanish because distinct dressed states contain
/// orthogonal atomic factors.
pub fn a_subspace(p: &ModelParams) -> Result<OperatorMatrix> {
    p.validate()?;
    let dim = p.dim();
    let mut m = Array2::<Complex64>::zeros((dim, dim));
    for i in 0..dim {
        let mu = p.mu_of_index(i);
        m[[i, i]] = Complex64::new(alpha(p, mu)?, 0.0);
    }
    OperatorMatrix::hermitian(m)
}

/// Parity permutation on basis indices: `mu -> -mu`, i.e. `i -> N - i`.
/// Involutive, and conjugating `H_1` by it is an exact symmetry.
pub fn parity_map(n_atoms: usize) -> Result<Vec<usize>> {
    if n_atoms < 1 {
        return Err(Error::InvalidParameter(
            "n_atoms must be at least 1".into(),
        ));
    }
    Ok((0..=n_atoms).rev().collect())
}

/// One inequality behind the effective description, reported as the
/// dimensionless ratio that must be small.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegimeCheck {
    /// Which inequality the ratio quantifies.
    pub name: String,
    /// The computed ratio (small is good).
    pub value: f64,
    /// Pass threshold the ratio was compared against.
    pub threshold: f64,
    /// `value <= threshold`.
    pub pass: bool,
}

/// Outcome of [`validate_regime`]: the four dimensionless ratios plus the
/// separating timescales. Reporting only — no operation is refused based on
/// this.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RegimeReport {
    /// The four inequality checks, in a fixed order:
    /// dispersive coupling, dispersive detuning, cavity quantumness,
    /// reservoir-memory vs. system timescale.
    pub checks: Vec<RegimeCheck>,
    /// Slowest system timescale `tau_S = min(omega_c/(N lambda^2), 2/(N omega_a))`.
    pub tau_system: f64,
    /// Reservoir correlation time `tau_R = beta / (2 pi)`.
    pub tau_reservoir: f64,
    /// Conjunction of all individual checks.
    pub all_pass: bool,
}

impl std::fmt::Display for RegimeReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for c in &self.checks {
            writeln!(
                f,
                "  {:<40} {:>12.6e}  (<= {:.2})  {}",
                c.name,
                c.value,
                c.threshold,
                if c.pass { "pass" } else { "FAIL" }
            )?;
        }
        write!(
            f,
            "  tau_system = {:.6e}, tau_reservoir = {:.6e}  =>  {}",
            self.tau_system,
            self.tau_reservoir,
            if self.all_pass { "regime ok" } else { "OUTSIDE REGIME" }
        )
    }
}

/// Default operationalization of "much smaller than": ratio at most `0.2`.
pub const DEFAULT_REGIME_THRESHOLD: f64 = 0.2;

/// Checks the dispersive and Markovian inequalities with the default
/// threshold of [`DEFAULT_REGIME_THRESHOLD`]. See
/// [`validate_regime_with_threshold`].
pub fn validate_regime(p: &ModelParams, r: &ReservoirParams) -> RegimeReport {
    validate_regime_with_threshold(p, r, DEFAULT_REGIME_THRESHOLD)
}

/// Checks the four inequalities behind the effective master equation and
/// reports each as a ratio that must stay below `threshold`:
///
/// 1. `sqrt(N) lambda / omega_c` — the collective coupling must sit far below
///    the cavity frequency for the dispersive elimination;
/// 2. `N omega_a / (2 omega_c)` — the low-energy atomic band must sit far
///    below the cavity frequency;
/// 3. `1 / (beta omega_c)` — the reservoir must be cold on the cavity scale
///    so real photon exchange is frozen out;
/// 4. `beta * max(N lambda^2 / omega_c, N omega_a / 2)` — the reservoir
///    memory `beta` must be short compared to the slowest system timescale
///    (Markov condition, equal to `2 pi tau_R / tau_S`).
///
/// This reports and never aborts: out-of-regime parameters are still
/// simulable, the effective description just loses accuracy.
pub fn validate_regime_with_threshold(
    p: &ModelParams,
    r: &ReservoirParams,
    threshold: f64,
) -> RegimeReport {
    let n = p.n_atoms as f64;
    let coupling = n.sqrt() * p.lambda / p.omega_c;
    let detuning = n * p.omega_a / (2.0 * p.omega_c);
    let quantumness = 1.0 / (r.beta * p.omega_c);
    let system_rate = (n * p.lambda * p.lambda / p.omega_c).max(n * p.omega_a / 2.0);
    let markov = r.beta * system_rate;
    let checks = vec![
        RegimeCheck {
            name: "dispersive coupling sqrt(N) lambda / omega_c".into(),
            value: coupling,
            threshold,
            pass: coupling <= threshold,
        },
        RegimeCheck {
            name: "dispersive detuning N omega_a / (2 omega_c)".into(),
            value: detuning,
            threshold,
            pass: detuning <= threshold,
        },
        RegimeCheck {
            name: "cavity quantumness 1 / (beta omega_c)".into(),
            value: quantumness,
            threshold,
            pass: quantumness <= threshold,
        },
        RegimeCheck {
            name: "Markov window beta * max(N lambda^2/omega_c, N omega_a/2)".into(),
            value: markov,
            threshold,
            pass: markov <= threshold,
        },
    ];
    let all_pass = checks.iter().all(|c| c.pass);
    RegimeReport {
        checks,
        tau_system: 1.0 / system_rate,
        tau_reservoir: r.beta / (2.0 * std::f64::consts::PI),
        all_pass,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::linalg::{eigh_symmetric, expm, max_abs};
    use approx::assert_abs_diff_eq;

    fn reference_params() -> ModelParams {
        ModelParams::default()
    }

    #[test]
    fn params_validation_rejects_bad_inputs() {
        assert!(ModelParams::new(0, 1.0, 400.0, 10.0, 100.0).is_err());
        assert!(ModelParams::new(16, 0.0, 400.0, 10.0, 100.0).is_err());
        assert!(ModelParams::new(16, 1.0, -1.0, 10.0, 100.0).is_err());
        assert!(ModelParams::new(16, 1.0, 400.0, -0.5, 100.0).is_err());
        assert!(ModelParams::new(16, 1.0, 400.0, 10.0, -1.0).is_err());
        assert!(ModelParams::new(16, 1.0, 400.0, f64::NAN, 100.0).is_err());
        assert!(ModelParams::new(1, 1.0, 400.0, 0.0, 0.0).is_ok());
    }

    #[test]
    fn index_mapping_round_trips_and_rejects() {
        let p = reference_params();
        assert_eq!(p.index_of_mu(-8.0).unwrap(), 0);
        assert_eq!(p.index_of_mu(0.0).unwrap(), 8);
        assert_eq!(p.index_of_mu(8.0).unwrap(), 16);
        assert!(p.index_of_mu(9.0).is_err());
        assert!(p.index_of_mu(-8.5).is_err());
        assert!(p.index_of_mu(0.5).is_err(), "off-ladder mu for even N");
        // Odd N: half-integer ladder.
        let p3 = ModelParams::new(3, 1.0, 400.0, 10.0, 100.0).unwrap();
        assert_eq!(p3.index_of_mu(-1.5).unwrap(), 0);
        assert_eq!(p3.index_of_mu(0.5).unwrap(), 2);
        assert!(p3.index_of_mu(0.0).is_err());
    }

    #[test]
    fn j3_single_atom_is_half_off_diagonal() {
        let m = j3_in_j1_basis(1).unwrap();
        assert_eq!(m.dim(), 2);
        let a = m.as_array();
        assert_abs_diff_eq!(a[[0, 1]].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(a[[1, 0]].re, 0.5, epsilon = 1e-15);
        assert_eq!(a[[0, 0]], Complex64::new(0.0, 0.0));
        assert_eq!(a[[1, 1]], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn j3_sixteen_atoms_has_expected_element_and_zero_diagonal() {
        let m = j3_in_j1_basis(16).unwrap();
        let a = m.as_array();
        // mu = 7 <-> mu = 8 sits at indices (15, 16): sqrt(72 - 56)/2 = 2.
        assert_abs_diff_eq!(a[[15, 16]].re, 2.0, epsilon = 1e-14);
        for i in 0..a.nrows() {
            assert_eq!(a[[i, i]], Complex64::new(0.0, 0.0));
            for k in 0..a.ncols() {
                assert_eq!(a[[i, k]].im, 0.0, "matrix must be real");
                if k > i + 1 || i > k + 1 {
                    assert_eq!(a[[i, k]].re, 0.0, "matrix must be tridiagonal");
                }
            }
        }
        assert!(m.is_hermitian());
        assert!(j3_in_j1_basis(0).is_err());
    }

    #[test]
    fn j3_spectrum_is_integer_ladder() {
        for n in [1usize, 2, 5, 16] {
            let m = j3_in_j1_basis(n).unwrap();
            let real = m.as_array().mapv(|z| z.re);
            let (eigs, _) = eigh_symmetric(&real).unwrap();
            let j = n as f64 / 2.0;
            for (k, e) in eigs.iter().enumerate() {
                assert_abs_diff_eq!(*e, k as f64 - j, epsilon = 1e-10);
            }
        }
    }

    /// Independent construction: build `J_2` and `J_3` in the standard `J_3`
    /// eigenbasis, rotate by `exp(-i pi J_2 / 2)` (which maps the `J_3` axis
    /// onto the `J_1` axis), and compare the rotated `J_3` against
    /// `j3_in_j1_basis` up to basis phases (entrywise moduli).
    #[test]
    fn j3_matches_rotation_of_standard_basis() {
        let n = 16usize;
        let j = n as f64 / 2.0;
        let dim = n + 1;
        let mut j3_std = Array2::<Complex64>::zeros((dim, dim));
        let mut j2_std = Array2::<Complex64>::zeros((dim, dim));
        for i in 0..dim {
            let m = i as f64 - j;
            j3_std[[i, i]] = Complex64::new(m, 0.0);
            if i + 1 < dim {
                // <m+1| J_+ |m> = sqrt(J(J+1) - m(m+1))
                let plus = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
                // J_2 = (J_+ - J_-) / (2i)
                j2_std[[i + 1, i]] = Complex64::new(0.0, -0.5) * plus;
                j2_std[[i, i + 1]] = Complex64::new(0.0, 0.5) * plus;
            }
        }
        let rot = expm(&j2_std.mapv(|z| z * Complex64::new(0.0, -std::f64::consts::FRAC_PI_2)))
            .unwrap();
        let rot_dag = {
            let mut d = Array2::<Complex64>::zeros((dim, dim));
            for r in 0..dim {
                for c in 0..dim {
                    d[[r, c]] = rot[[c, r]].conj();
                }
            }
            d
        };
        let rotated = rot.dot(&j3_std).dot(&rot_dag);
        let reference = j3_in_j1_basis(n).unwrap();
        let mut dev = 0.0_f64;
        for r in 0..dim {
            for c in 0..dim {
                dev = dev.max((rotated[[r, c]].norm() - reference.as_array()[[r, c]].norm()).abs());
            }
        }
        assert!(dev < 1e-12, "entrywise modulus deviation {dev:.3e}");
    }

    #[test]
    fn h1_has_expected_diagonal_and_coupling() {
        let p = reference_params();
        let h1 = build_h1(&p).unwrap();
        let a = h1.as_array();
        // mu = 8 at index 16: -4 * 100 * 64 / (16 * 400) = -4.
        assert_abs_diff_eq!(a[[16, 16]].re, -4.0, epsilon = 1e-12);
        // Coupling element inherited from J_3.
        assert_abs_diff_eq!(a[[15, 16]].re, 2.0, epsilon = 1e-14);
        assert!(h1.is_hermitian());
        for i in 0..a.nrows() {
            for k in 0..a.ncols() {
                assert_eq!(a[[i, k]].im, 0.0, "H_1 must be real under the phase convention");
            }
        }
    }

    #[test]
    fn h1_at_zero_coupling_is_pure_j3() {
        let p = ModelParams::new(16, 1.0, 400.0, 0.0, 100.0).unwrap();
        let h1 = build_h1(&p).unwrap();
        let j3 = j3_in_j1_basis(16).unwrap();
        let diff = h1.as_array() - j3.as_array();
        assert!(max_abs(&diff) < 1e-15);
    }

    #[test]
    fn h1_is_parity_invariant_exactly() {
        let p = reference_params();
        let h1 = build_h1(&p).unwrap();
        let a = h1.as_array();
        let perm = parity_map(p.n_atoms).unwrap();
        for r in 0..a.nrows() {
            for c in 0..a.ncols() {
                assert_eq!(
                    a[[r, c]],
                    a[[perm[r], perm[c]]],
                    "parity conjugation must leave H_1 invariant bit-for-bit"
                );
            }
        }
    }

    #[test]
    fn alpha_values_and_symmetry() {
        let p = reference_params();
        assert_eq!(alpha(&p, 0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(alpha(&p, -8.0).unwrap(), 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(alpha(&p, 8.0).unwrap(), -0.1, epsilon = 1e-15);
        for i in 0..p.dim() {
            let mu = p.mu_of_index(i);
            assert_eq!(
                alpha(&p, -mu).unwrap(),
                -alpha(&p, mu).unwrap(),
                "alpha must be odd in mu"
            );
        }
        assert!(alpha(&p, 8.5).is_err());
        assert!(alpha(&p, -9.0).is_err());
    }

    #[test]
    fn a_subspace_is_diagonal_traceless_and_matches_alpha() {
        let p = reference_params();
        let a = a_subspace(&p).unwrap();
        assert!(a.is_hermitian());
        let m = a.as_array();
        let mut trace = Complex64::new(0.0, 0.0);
        for i in 0..m.nrows() {
            trace += m[[i, i]];
            let mu = p.mu_of_index(i);
            assert_abs_diff_eq!(m[[i, i]].re, alpha(&p, mu).unwrap(), epsilon = 1e-15);
            for k in 0..m.ncols() {
                if i != k {
                    assert_eq!(m[[i, k]], Complex64::new(0.0, 0.0));
                }
            }
        }
        assert_abs_diff_eq!(trace.norm(), 0.0, epsilon = 1e-15);
        // lambda = 0 => zero operator.
        let p0 = ModelParams::new(16, 1.0, 400.0, 0.0, 100.0).unwrap();
        assert!(max_abs(a_subspace(&p0).unwrap().as_array()) == 0.0);
    }

    #[test]
    fn parity_map_is_reversal_and_involutive() {
        assert_eq!(parity_map(2).unwrap(), vec![2, 1, 0]);
        let perm = parity_map(16).unwrap();
        for (i, &pi) in perm.iter().enumerate() {
            assert_eq!(perm[pi], i, "parity must be an involution");
            assert_eq!(pi, 16 - i);
        }
        assert!(parity_map(0).is_err());
    }

    #[test]
    fn regime_report_at_reference_point() {
        let p = reference_params();
        let r = ReservoirParams::new(0.125, 0.02, None).unwrap();
        let report = validate_regime(&p, &r);
        let values: Vec<f64> = report.checks.iter().map(|c| c.value).collect();
        assert_abs_diff_eq!(values[0], 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(values[1], 0.02, epsilon = 1e-15);
        assert_abs_diff_eq!(values[2], 0.125, epsilon = 1e-15);
        assert_abs_diff_eq!(values[3], 0.16, epsilon = 1e-15);
        assert!(report.all_pass);
        // tau_S = min(400/1600, 2/16) = 0.125; tau_R = beta / (2 pi).
        assert_abs_diff_eq!(report.tau_system, 0.125, epsilon = 1e-15);
        assert_abs_diff_eq!(
            report.tau_reservoir,
            0.02 / (2.0 * std::f64::consts::PI),
            epsilon = 1e-17
        );
    }

    #[test]
    fn regime_report_flags_violations() {
        let p = reference_params();
        // Very cold reservoir: the Markov window check must fail.
        let cold = ReservoirParams::new(0.125, 1e6, None).unwrap();
        let report = validate_regime(&p, &cold);
        assert!(!report.checks[3].pass);
        assert!(!report.all_pass);
        // Strong coupling: sqrt(16) * 100 / 400 = 1 fails the first check.
        let strong = ModelParams::new(16, 1.0, 400.0, 100.0, 100.0).unwrap();
        let report = validate_regime(&strong, &ReservoirParams::new(0.125, 0.02, None).unwrap());
        assert_abs_diff_eq!(report.checks[0].value, 1.0, epsilon = 1e-15);
        assert!(!report.checks[0].pass);
    }
}
