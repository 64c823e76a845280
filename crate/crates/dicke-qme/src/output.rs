// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! Deterministic artifact emission.
//!
//! Every CSV artifact starts with `# key = value` metadata lines recording
//! the exact configuration that produced it, followed by a header row and
//! data rows. Floats are rendered with Rust's shortest-roundtrip formatter,
//! so artifacts are byte-identical across runs of the same configuration
//! and the metadata parses back ([`parse_metadata`]) into the values that
//! were used. All files are UTF-8 with `\n` line endings.
//!
//! File-name conventions:
//!
//! - `fig1_lambda<v>.csv` — quench trajectory (`t,Re_a,trace,min_eig`);
//! - `fig2_lambda<v>.csv` — coherence decay (`t,Re_g1,Im_g1`);
//! - `fig4.csv` — coherence-time sweep
//!   (`N,gamma,lambda,tau_c,C,residual,R2`).

use crate::correlation::{G1Series, TauSweepTable};
use crate::dynamics::QuenchCurve;
use crate::error::{Error, Result};
use serde::Serialize;
use std::fs;
use std::path::{Path, PathBuf};

/// Sweep-table artifact name.
pub const SWEEP_CSV_NAME: &str = "fig4.csv";

/// Shortest-roundtrip decimal rendering of a float (what `{}` produces;
/// parsing the result with `str::parse::<f64>()` recovers the value bit for
/// bit).
pub fn format_float(x: f64) -> String {
    format!("{x}")
}

/// Comma-joined list rendering used in metadata values.
pub fn format_float_list(xs: &[f64]) -> String {
    xs.iter()
        .map(|x| format_float(*x))
        .collect::<Vec<_>>()
        .join(",")
}

/// Quench artifact name for one coupling.
pub fn quench_csv_name(lambda: f64) -> String {
    format!("fig1_lambda{}.csv", format_float(lambda))
}

/// Coherence artifact name for one coupling.
pub fn g1_csv_name(lambda: f64) -> String {
    format!("fig2_lambda{}.csv", format_float(lambda))
}

fn render_csv(metadata: &[(String, String)], header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    for (key, value) in metadata {
        out.push_str("# ");
        out.push_str(key);
        out.push_str(" = ");
        out.push_str(value);
        out.push('\n');
    }
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn write_file(path: &Path, content: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(path, content)?;
    Ok(())
}

/// Writes a generic CSV artifact; `rows` must all match the header width.
pub fn write_csv(
    path: &Path,
    metadata: &[(String, String)],
    header: &[&str],
    rows: &[Vec<String>],
) -> Result<()> {
    for (k, row) in rows.iter().enumerate() {
        if row.len() != header.len() {
            return Err(Error::DimensionMismatch(format!(
                "CSV row {k} has {} fields for {} header columns",
                row.len(),
                header.len()
            )));
        }
    }
    write_file(path, &render_csv(metadata, header, rows))
}

/// Extracts `# key = value` metadata pairs from the head of an artifact.
pub fn parse_metadata(text: &str) -> Vec<(String, String)> {
    let mut pairs = Vec::new();
    for line in text.lines() {
        let Some(rest) = line.strip_prefix('#') else {
            break;
        };
        if let Some((key, value)) = rest.trim_start().split_once(" = ") {
            pairs.push((key.trim().to_string(), value.trim().to_string()));
        }
    }
    pairs
}

/// Writes one quench trajectory as `fig1_lambda<v>.csv` in `dir`.
///
/// Columns: `t,Re_a,trace,min_eig`.
pub fn write_quench_curve(
    dir: &Path,
    curve: &QuenchCurve,
    metadata: &[(String, String)],
) -> Result<PathBuf> {
    let traj = &curve.trajectory;
    let re_a = traj
        .real_series("re_a")
        .ok_or_else(|| Error::DimensionMismatch("trajectory lacks the re_a series".into()))?;
    let trace = traj
        .real_series("trace")
        .ok_or_else(|| Error::DimensionMismatch("trajectory lacks the trace series".into()))?;
    let min_eig = traj
        .real_series("min_eig")
        .ok_or_else(|| Error::DimensionMismatch("trajectory lacks the min_eig series".into()))?;
    let rows: Vec<Vec<String>> = traj
        .times()
        .iter()
        .enumerate()
        .map(|(k, t)| {
            vec![
                format_float(*t),
                format_float(re_a[k]),
                format_float(trace[k]),
                format_float(min_eig[k]),
            ]
        })
        .collect();
    let path = dir.join(quench_csv_name(curve.lambda));
    write_csv(&path, metadata, &["t", "Re_a", "trace", "min_eig"], &rows)?;
    Ok(path)
}

/// Writes one coherence series as `fig2_lambda<v>.csv` in `dir`.
///
/// Columns: `t,Re_g1,Im_g1`.
pub fn write_g1_series(
    dir: &Path,
    lambda: f64,
    series: &G1Series,
    metadata: &[(String, String)],
) -> Result<PathBuf> {
    let rows: Vec<Vec<String>> = series
        .times
        .iter()
        .zip(&series.values)
        .map(|(t, v)| {
            vec![
                format_float(*t),
                format_float(v.re),
                format_float(v.im),
            ]
        })
        .collect();
    let path = dir.join(g1_csv_name(lambda));
    write_csv(&path, metadata, &["t", "Re_g1", "Im_g1"], &rows)?;
    Ok(path)
}

/// Writes a coherence-time sweep as `fig4.csv` in `dir`.
///
/// Columns: `N,gamma,lambda,tau_c,C,residual,R2`; `R2` is the per-`(N,
/// gamma)` group statistic repeated on each of the group's rows (`NaN` when
/// the scan had fewer than two couplings).
pub fn write_sweep_table(
    dir: &Path,
    table: &TauSweepTable,
    metadata: &[(String, String)],
) -> Result<PathBuf> {
    let rows: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|row| {
            let r2 = table
                .group(row.n_atoms, row.gamma)
                .map(|g| g.r_squared)
                .unwrap_or(f64::NAN);
            vec![
                row.n_atoms.to_string(),
                format_float(row.gamma),
                format_float(row.lambda),
                format_float(row.tau_c),
                format_float(row.amplitude),
                format_float(row.residual),
                format_float(r2),
            ]
        })
        .collect();
    let path = dir.join(SWEEP_CSV_NAME);
    write_csv(
        &path,
        metadata,
        &["N", "gamma", "lambda", "tau_c", "C", "residual", "R2"],
        &rows,
    )?;
    Ok(path)
}

/// Serializes `value` as pretty JSON (with a trailing newline) at `path`.
pub fn write_json_pretty<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Config(format!("JSON serialization failed: {e}")))?;
    text.push('\n');
    write_file(path, &text)
}
