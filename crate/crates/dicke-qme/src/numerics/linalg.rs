// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Dense linear algebra on small matrices.
//!
//! The state dimension is `N + 1` (tens) and the superoperator dimension is
//! `(N + 1)^2` (hundreds), so textbook algorithms with good numerical
//! behavior are entirely adequate:
//!
//! - [`eigh_symmetric`] — cyclic Jacobi rotations for real symmetric
//!   matrices (eigenvalues ascending + orthogonal eigenvectors);
//! - [`eigvalsh_hermitian`] — Hermitian eigenvalues via the real symmetric
//!   embedding `[[Re, -Im], [Im, Re]]`, whose spectrum is that of the
//!   Hermitian matrix doubled;
//! - [`eig_complex`] — general complex eigenvalues by Householder
//!   Hessenberg reduction followed by explicit shifted QR with Givens
//!   rotations (Wilkinson shifts, occasional exceptional shifts);
//! - [`expm`] — scaling-and-squaring matrix exponential with the
//!   degree-13 Padé approximant;
//! - [`solve`] — Gaussian elimination with partial pivoting for multiple
//!   right-hand sides.

use crate::error::{Error, Result};
use ndarray::Array2;
use num_complex::Complex64;

/// Largest entry modulus, `max_{ij} |m_ij|`.
pub fn max_abs(m: &Array2<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Induced 1-norm (maximum absolute column sum).
pub fn one_norm(m: &Array2<Complex64>) -> f64 {
    let mut best = 0.0_f64;
    for j in 0..m.ncols() {
        let s: f64 = m.column(j).iter().map(|z| z.norm()).sum();
        best = best.max(s);
    }
    best
}

/// Deviation from Hermiticity, `max_{ij} |m_ij - conj(m_ji)|`.
pub fn hermitian_deviation(m: &Array2<Complex64>) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0_f64;
    for i in 0..n {
        for j in 0..n {
            dev = dev.max((m[[i, j]] - m[[j, i]].conj()).norm());
        }
    }
    dev
}

/// Splits a complex matrix into its real and imaginary parts.
pub fn split_complex(m: &Array2<Complex64>) -> (Array2<f64>, Array2<f64>) {
    (m.mapv(|z| z.re), m.mapv(|z| z.im))
}

/// Recombines real and imaginary parts into a complex matrix.
pub fn join_complex(re: &Array2<f64>, im: &Array2<f64>) -> Array2<Complex64> {
    let mut out = Array2::<Complex64>::zeros(re.raw_dim());
    for ((o, r), i) in out.iter_mut().zip(re.iter()).zip(im.iter()) {
        *o = Complex64::new(*r, *i);
    }
    out
}

/// Complex matrix product computed as four real products,
/// `(A_r + i A_i)(B_r + i B_i) = (A_r B_r - A_i B_i) + i (A_r B_i + A_i B_r)`.
///
/// The real products dispatch to the optimized `f64` matmul kernel, which is
/// far faster than the generic complex fallback at superoperator dimensions
/// (hundreds to ~1100).
pub fn matmul(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
    let (ar, ai) = split_complex(a);
    let (br, bi) = split_complex(b);
    let mut re = ar.dot(&br);
    re -= &ai.dot(&bi);
    let mut im = ar.dot(&bi);
    im += &ai.dot(&br);
    join_complex(&re, &im)
}

fn ensure_square<T>(m: &Array2<T>, what: &str) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "{what}: expected square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(m.nrows())
}

const JACOBI_MAX_SWEEPS: usize = 64;

/// Eigendecomposition of a real symmetric matrix by cyclic Jacobi rotations.
///
/// Returns eigenvalues in ascending order and the orthogonal matrix whose
/// columns are the matching eigenvectors (`A = V · diag(w) · V^T`).
pub fn eigh_symmetric(a: &Array2<f64>) -> Result<(Vec<f64>, Array2<f64>)> {
    let n = ensure_square(a, "eigh_symmetric")?;
    let mut m = a.clone();
    let mut v = Array2::<f64>::eye(n);
    let fro: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if fro == 0.0 || n == 1 {
        let w = (0..n).map(|i| m[[i, i]]).collect();
        return Ok((w, v));
    }

    let mut converged = false;
    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[[p, q]] * m[[p, q]];
            }
        }
        if off.sqrt() <= 1e-14 * fro {
            converged = true;
            break;
        }
        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = m[[p, q]];
                if apq.abs() <= 1e-300 || apq.abs() <= 1e-20 * fro {
                    continue;
                }
                let tau = (m[[q, q]] - m[[p, p]]) / (2.0 * apq);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // A <- J^T A J with J(p,q): J_pp = J_qq = c, J_pq = s, J_qp = -s.
                for k in 0..n {
                    let akp = m[[k, p]];
                    let akq = m[[k, q]];
                    m[[k, p]] = c * akp - s * akq;
                    m[[k, q]] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = m[[p, k]];
                    let aqk = m[[q, k]];
                    m[[p, k]] = c * apk - s * aqk;
                    m[[q, k]] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[[k, p]];
                    let vkq = v[[k, q]];
                    v[[k, p]] = c * vkp - s * vkq;
                    v[[k, q]] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged {
        return Err(Error::EigenConvergence(format!(
            "Jacobi sweeps exceeded {JACOBI_MAX_SWEEPS} on a {n}x{n} matrix"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[[i, i]].total_cmp(&m[[j, j]]));
    let w: Vec<f64> = order.iter().map(|&i| m[[i, i]]).collect();
    let mut vs = Array2::<f64>::zeros((n, n));
    for (dst, &src) in order.iter().enumerate() {
        for k in 0..n {
            vs[[k, dst]] = v[[k, src]];
        }
    }
    Ok((w, vs))
}

/// Eigenvalues (ascending) of a Hermitian matrix.
///
/// Uses the real symmetric embedding `[[Re A, -Im A], [Im A, Re A]]`, whose
/// `2n` eigenvalues are those of `A`, each doubled; every second sorted
/// value is returned.
pub fn eigvalsh_hermitian(a: &Array2<Complex64>) -> Result<Vec<f64>> {
    let n = ensure_square(a, "eigvalsh_hermitian")?;
    let mut emb = Array2::<f64>::zeros((2 * n, 2 * n));
    for i in 0..n {
        for j in 0..n {
            let z = a[[i, j]];
            emb[[i, j]] = z.re;
            emb[[i, j + n]] = -z.im;
            emb[[i + n, j]] = z.im;
            emb[[i + n, j + n]] = z.re;
        }
    }
    let (w, _) = eigh_symmetric(&emb)?;
    Ok(w.into_iter().step_by(2).collect())
}

/// In-place Householder reduction to upper Hessenberg form.
fn hessenberg(h: &mut Array2<Complex64>) {
    let n = h.nrows();
    for k in 0..n.saturating_sub(2) {
        // Reflector zeroing column k below the first subdiagonal.
        let mut norm_x = 0.0_f64;
        for i in (k + 1)..n {
            norm_x += h[[i, k]].norm_sqr();
        }
        let norm_x = norm_x.sqrt();
        if norm_x <= 1e-300 {
            continue;
        }
        let x0 = h[[k + 1, k]];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm_x;
        // v = x - alpha e1, normalized.
        let mut v = vec![Complex64::new(0.0, 0.0); n];
        let mut norm_v = 0.0_f64;
        for i in (k + 1)..n {
            let vi = if i == k + 1 { h[[i, k]] - alpha } else { h[[i, k]] };
            v[i] = vi;
            norm_v += vi.norm_sqr();
        }
        let norm_v = norm_v.sqrt();
        if norm_v <= 1e-300 {
            continue;
        }
        for vi in v.iter_mut() {
            *vi /= norm_v;
        }
        // H <- (I - 2 v v†) H
        for j in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in (k + 1)..n {
                dot += v[i].conj() * h[[i, j]];
            }
            let dot = 2.0 * dot;
            for i in (k + 1)..n {
                let correction = v[i] * dot;
                h[[i, j]] -= correction;
            }
        }
        // H <- H (I - 2 v v†)
        for i in 0..n {
            let mut dot = Complex64::new(0.0, 0.0);
            for j in (k + 1)..n {
                dot += h[[i, j]] * v[j];
            }
            let dot = 2.0 * dot;
            for j in (k + 1)..n {
                let correction = dot * v[j].conj();
                h[[i, j]] -= correction;
            }
        }
    }
}

/// Eigenvalues of the trailing 2x2 block, with the one closer to the
/// bottom-right entry first (Wilkinson shift choice).
fn trailing_eigs(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> (Complex64, Complex64) {
    let half_tr = 0.5 * (a + d);
    let det = a * d - b * c;
    let disc = (half_tr * half_tr - det).sqrt();
    let e1 = half_tr + disc;
    let e2 = half_tr - disc;
    if (e1 - d).norm() <= (e2 - d).norm() {
        (e1, e2)
    } else {
        (e2, e1)
    }
}

/// Eigenvalues of a general complex matrix (unsorted).
///
/// Householder Hessenberg reduction followed by explicit single-shift QR
/// with complex Givens rotations. Wilkinson shifts give cubic convergence on
/// the trailing eigenvalue; an exceptional shift is injected if a
/// subdiagonal stagnates.
pub fn eig_complex(a: &Array2<Complex64>) -> Result<Vec<Complex64>> {
    let n = ensure_square(a, "eig_complex")?;
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut h = a.clone();
    hessenberg(&mut h);

    let mut eigs = Vec::with_capacity(n);
    let mut hi = n; // active block is h[lo..hi, lo..hi]
    let mut stagnation = 0usize;
    let mut total_iters = 0usize;
    let guard = 40 * n + 200;

    while hi > 0 {
        if hi == 1 {
            eigs.push(h[[0, 0]]);
            hi = 0;
            continue;
        }
        // Find the start of the trailing unreduced block.
        let mut lo = hi - 1;
        while lo > 0 {
            let scale = h[[lo - 1, lo - 1]].norm() + h[[lo, lo]].norm();
            let scale = if scale == 0.0 { 1.0 } else { scale };
            if h[[lo, lo - 1]].norm() <= f64::EPSILON * scale {
                h[[lo, lo - 1]] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi - 1 {
            // 1x1 block deflated.
            eigs.push(h[[hi - 1, hi - 1]]);
            hi -= 1;
            stagnation = 0;
            continue;
        }
        if lo == hi - 2 {
            // 2x2 block: close the pair directly.
            let (e1, e2) = trailing_eigs(
                h[[hi - 2, hi - 2]],
                h[[hi - 2, hi - 1]],
                h[[hi - 1, hi - 2]],
                h[[hi - 1, hi - 1]],
            );
            eigs.push(e1);
            eigs.push(e2);
            hi -= 2;
            stagnation = 0;
            continue;
        }

        total_iters += 1;
        stagnation += 1;
        if total_iters > guard {
            return Err(Error::EigenConvergence(format!(
                "QR iteration guard ({guard}) exceeded on a {n}x{n} matrix"
            )));
        }
        let sigma = if stagnation % 16 == 0 {
            // Exceptional shift to break symmetric stagnation.
            h[[hi - 1, hi - 1]] + 0.75 * h[[hi - 1, hi - 2]].norm()
        } else {
            trailing_eigs(
                h[[hi - 2, hi - 2]],
                h[[hi - 2, hi - 1]],
                h[[hi - 1, hi - 2]],
                h[[hi - 1, hi - 1]],
            )
            .0
        };

        // Explicit shifted QR sweep on the active block.
        for i in lo..hi {
            h[[i, i]] -= sigma;
        }
        let mut rotations: Vec<(f64, Complex64)> = Vec::with_capacity(hi - lo - 1);
        for i in lo..(hi - 1) {
            let aa = h[[i, i]];
            let bb = h[[i + 1, i]];
            let r = (aa.norm_sqr() + bb.norm_sqr()).sqrt();
            let (c, s) = if r == 0.0 {
                (1.0, Complex64::new(0.0, 0.0))
            } else if aa.norm() == 0.0 {
                (0.0, Complex64::new(1.0, 0.0))
            } else {
                let phase = aa / aa.norm();
                (aa.norm() / r, phase * bb.conj() / r)
            };
            // Rows i, i+1 <- G · rows.
            for j in i..hi {
                let hij = h[[i, j]];
                let hij1 = h[[i + 1, j]];
                h[[i, j]] = c * hij + s * hij1;
                h[[i + 1, j]] = -s.conj() * hij + c * hij1;
            }
            rotations.push((c, s));
        }
        for (idx, &(c, s)) in rotations.iter().enumerate() {
            let i = lo + idx;
            // Columns i, i+1 <- columns · G†.
            let top = (i + 2).min(hi);
            for k in lo..top {
                let hki = h[[k, i]];
                let hki1 = h[[k, i + 1]];
                h[[k, i]] = c * hki + s.conj() * hki1;
                h[[k, i + 1]] = -s * hki + c * hki1;
            }
        }
        for i in lo..hi {
            h[[i, i]] += sigma;
        }
    }
    Ok(eigs)
}

/// Solves `A X = B` by Gaussian elimination with partial pivoting.
pub fn solve(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Result<Array2<Complex64>> {
    let n = ensure_square(a, "solve")?;
    if b.nrows() != n {
        return Err(Error::DimensionMismatch(format!(
            "solve: rhs has {} rows, matrix has {n}",
            b.nrows()
        )));
    }
    let m = b.ncols();
    let mut lu = a.clone();
    let mut x = b.clone();
    for k in 0..n {
        // Partial pivot.
        let mut pivot_row = k;
        let mut pivot_mag = lu[[k, k]].norm();
        for i in (k + 1)..n {
            let mag = lu[[i, k]].norm();
            if mag > pivot_mag {
                pivot_mag = mag;
                pivot_row = i;
            }
        }
        if pivot_mag <= 1e-300 {
            return Err(Error::SelfCheck(format!(
                "solve: singular pivot at column {k}"
            )));
        }
        if pivot_row != k {
            for j in 0..n {
                lu.swap([k, j], [pivot_row, j]);
            }
            for j in 0..m {
                x.swap([k, j], [pivot_row, j]);
            }
        }
        let inv_piv = 1.0 / lu[[k, k]];
        for i in (k + 1)..n {
            let factor = lu[[i, k]] * inv_piv;
            if factor.norm() == 0.0 {
                continue;
            }
            for j in k..n {
                let sub = factor * lu[[k, j]];
                lu[[i, j]] -= sub;
            }
            for j in 0..m {
                let sub = factor * x[[k, j]];
                x[[i, j]] -= sub;
            }
        }
    }
    for k in (0..n).rev() {
        let inv_piv = 1.0 / lu[[k, k]];
        for j in 0..m {
            let mut acc = x[[k, j]];
            for i in (k + 1)..n {
                acc -= lu[[k, i]] * x[[i, j]];
            }
            x[[k, j]] = acc * inv_piv;
        }
    }
    Ok(x)
}

/// Degree-13 Padé numerator coefficients for the matrix exponential.
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// 1-norm threshold above which the argument is scaled for Padé-13.
const PADE13_THETA: f64 = 5.371920351148152;

/// Matrix exponential by scaling and squaring with the degree-13 Padé
/// approximant.
pub fn expm(a: &Array2<Complex64>) -> Result<Array2<Complex64>> {
    let n = ensure_square(a, "expm")?;
    let norm = one_norm(a);
    let s = if norm > PADE13_THETA {
        ((norm / PADE13_THETA).log2().ceil() as i32).max(0)
    } else {
        0
    };
    let scale = 2.0_f64.powi(-s);
    let a1 = a.mapv(|z| z * scale);
    let a2 = matmul(&a1, &a1);
    let a4 = matmul(&a2, &a2);
    let a6 = matmul(&a2, &a4);
    let eye = Array2::<Complex64>::eye(n);

    let b = &PADE13;
    let u_poly_hi = a6.mapv(|z| z * b[13]) + &a4.mapv(|z| z * b[11]) + &a2.mapv(|z| z * b[9]);
    let u_poly_lo = a6.mapv(|z| z * b[7]) + &a4.mapv(|z| z * b[5]) + &a2.mapv(|z| z * b[3]) + &eye.mapv(|z| z * b[1]);
    let u = matmul(&a1, &(matmul(&a6, &u_poly_hi) + &u_poly_lo));
    let v_poly_hi = a6.mapv(|z| z * b[12]) + &a4.mapv(|z| z * b[10]) + &a2.mapv(|z| z * b[8]);
    let v = matmul(&a6, &v_poly_hi) + &a6.mapv(|z| z * b[6]) + &a4.mapv(|z| z * b[4]) + &a2.mapv(|z| z * b[2]) + &eye.mapv(|z| z * b[0]);

    let num = &v + &u;
    let den = &v - &u;
    let mut result = solve(&den, &num)?;
    for _ in 0..s {
        result = matmul(&result, &result);
    }
    Ok(result)
}
