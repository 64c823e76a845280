// Copyright 2026 dicke-qme Contributors
// SPDX-License-Identifier: Apache-2.0

//! The experiment runner behind the `dicke-qme` binary.
//!
//! Six subcommands cover the standard experiments:
//!
//! - `quench` — coupling-quench scan; writes one `fig1_lambda<v>.csv` per
//!   coupling (`t,Re_a,trace,min_eig`);
//! - `g1` — steady-state coherence decay at one coupling; writes
//!   `fig2_lambda<v>.csv` (`t,Re_g1,Im_g1`);
//! - `tau-sweep` — coherence-time scan over `(N, gamma, lambda)`; writes
//!   `fig4.csv` (`N,gamma,lambda,tau_c,C,residual,R2`);
//! - `steady-state` — builds the generator, verifies its maximally mixed
//!   steady state, and writes `steady_state.json` (optionally the dense
//!   superoperator);
//! - `validate` — regime ratios, parity covariance, steady-state residual,
//!   and superoperator spectrum; writes `validate.json`;
//! - `oracle` — the brute-force validators of [`crate::oracle`]; writes
//!   `oracle.json`.
//!
//! Configuration is layered: command-line flags override the environment
//! (`DICKE_QME_OUT_DIR`, `DICKE_QME_WORKERS`), which overrides a `--config`
//! file of flat `key = value` lines, which overrides the built-in defaults.
//! Every CSV artifact embeds its resolved configuration as `# key = value`
//! metadata that [`RunConfig::from_metadata`] parses back, and repeated runs
//! of the same configuration produce byte-identical files.
//!
//! Dispersive-regime violations are reported as warnings on stderr; they
//! abort the run (configuration error, exit code 2) only under `--strict`.
//! Numerical failures (non-convergence, invariant violations, fit windows)
//! exit with code 3.

use crate::correlation::{self, FitPolicy, SweepOptions};
use crate::dynamics::{self, IntegratorOptions};
use crate::error::{Error, Result};
use crate::liouvillian::{self, BuildOptions};
use crate::model::{self, ModelParams, RegimeReport};
use crate::numerics::linalg;
use crate::oracle::{self, FockTruncation};
use crate::output;
use crate::reservoir::ReservoirParams;
use clap::{Parser, Subcommand};
use serde::Serialize;
use std::path::{Path, PathBuf};

/// Relative mismatch allowed between an explicitly configured `gamma` and
/// the one implied by explicit reservoir parameters (`16 eta / beta`).
pub const GAMMA_CONSISTENCY_TOL: f64 = 1e-12;

/// Command-line interface of the `dicke-qme` binary.
#[derive(Debug, Parser)]
#[command(
    name = "dicke-qme",
    version,
    about = "Dressed-basis master-equation experiments for the dissipative Dicke model"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Flat `key = value` configuration file (lowest-precedence layer above
    /// the defaults).
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Directory artifacts are written to.
    #[arg(long, global = true, value_name = "DIR")]
    pub out_dir: Option<PathBuf>,

    /// Worker threads for scans (default: all available).
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Treat dispersive-regime warnings (and non-passing reports) as errors.
    #[arg(long, global = true)]
    pub strict: bool,

    /// Number of atoms.
    #[arg(long = "N", global = true)]
    pub n_atoms: Option<usize>,

    /// Atomic splitting (the frequency unit).
    #[arg(long = "wa", global = true)]
    pub omega_a: Option<f64>,

    /// Cavity frequency.
    #[arg(long = "wc", global = true)]
    pub omega_c: Option<f64>,

    /// Dephasing-rate parameter of the master equation.
    #[arg(long, global = true)]
    pub gamma: Option<f64>,

    /// Inverse reservoir temperature.
    #[arg(long, global = true)]
    pub beta: Option<f64>,
}

/// Subcommand selection and per-command knobs.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coupling-quench scan: evolve |phi_{-J}> and record Re<a>.
    #[command(name = "quench")]
    Quench {
        /// Couplings to scan, comma-separated.
        #[arg(long, value_delimiter = ',')]
        lambdas: Option<Vec<f64>>,
        /// Trajectory length.
        #[arg(long)]
        tmax: Option<f64>,
        /// Output-grid spacing.
        #[arg(long)]
        dt: Option<f64>,
    },
    /// Steady-state coherence decay g1(tau) at one coupling.
    #[command(name = "g1")]
    G1 {
        /// Coupling strength.
        #[arg(long)]
        lambda: Option<f64>,
        /// Delay-grid extent.
        #[arg(long)]
        tmax: Option<f64>,
        /// Delay-grid spacing.
        #[arg(long)]
        dt: Option<f64>,
    },
    /// Coherence-time scan over (N, gamma, lambda).
    #[command(name = "tau-sweep")]
    TauSweep {
        /// Atom numbers, comma-separated.
        #[arg(long, value_delimiter = ',')]
        ns: Option<Vec<usize>>,
        /// Dephasing parameters, comma-separated.
        #[arg(long, value_delimiter = ',')]
        gammas: Option<Vec<f64>>,
        /// Couplings, comma-separated.
        #[arg(long, value_delimiter = ',')]
        lambdas: Option<Vec<f64>>,
        /// Delay-grid extent per cell.
        #[arg(long)]
        tmax: Option<f64>,
        /// Delay-grid spacing per cell.
        #[arg(long)]
        dt: Option<f64>,
    },
    /// Verify and report the maximally mixed steady state.
    #[command(name = "steady-state")]
    SteadyState {
        /// Coupling strength.
        #[arg(long)]
        lambda: Option<f64>,
        /// Also dump the dense superoperator to superoperator.json.
        #[arg(long)]
        dump_superoperator: bool,
    },
    /// Regime ratios plus generator self-checks.
    #[command(name = "validate")]
    Validate {
        /// Coupling strength.
        #[arg(long)]
        lambda: Option<f64>,
    },
    /// Brute-force validators: full-model projection and reservoir
    /// integrals.
    #[command(name = "oracle")]
    Oracle {
        /// Coupling strength.
        #[arg(long)]
        lambda: Option<f64>,
        /// Fock truncation for the full-model check.
        #[arg(long)]
        n_max: Option<usize>,
        /// Quadrature window for the reservoir integrals.
        #[arg(long)]
        s_max: Option<f64>,
    },
}

/// Resolved run configuration after layering defaults, file, environment,
/// and flags.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n_atoms: usize,
    pub omega_a: f64,
    pub omega_c: f64,
    pub gamma: f64,
    pub beta: f64,
    /// Explicit reservoir strength; when absent it is derived from `gamma`
    /// and `beta`. When present it must be consistent with `gamma`.
    pub eta: Option<f64>,
    /// Optional reservoir frequency cutoff.
    pub cutoff: Option<f64>,
    pub lambda: f64,
    pub lambdas: Option<Vec<f64>>,
    pub ns: Option<Vec<usize>>,
    pub gammas: Option<Vec<f64>>,
    pub tmax: Option<f64>,
    pub dt: Option<f64>,
    pub n_max: usize,
    pub s_max: f64,
    pub out_dir: PathBuf,
    pub workers: Option<usize>,
    pub strict: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n_atoms: 16,
            omega_a: 1.0,
            omega_c: 400.0,
            gamma: 100.0,
            beta: 0.02,
            eta: None,
            cutoff: None,
            lambda: 10.0,
            lambdas: None,
            ns: None,
            gammas: None,
            tmax: None,
            dt: None,
            n_max: 40,
            s_max: 0.5,
            out_dir: PathBuf::from("."),
            workers: None,
            strict: false,
        }
    }
}

fn parse_scalar<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("cannot parse '{value}' for key '{key}'")))
}

fn parse_list<T: std::str::FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    let items: Result<Vec<T>> = value
        .split(',')
        .map(|piece| parse_scalar(key, piece))
        .collect();
    let items = items?;
    if items.is_empty() {
        return Err(Error::Config(format!("key '{key}' needs a non-empty list")));
    }
    Ok(items)
}

impl RunConfig {
    /// Applies one `key = value` pair (config-file key set). The metadata
    /// key `command` is accepted and ignored so artifact metadata can be
    /// fed back verbatim.
    pub fn apply_pair(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "command" => {}
            "N" => self.n_atoms = parse_scalar(key, value)?,
            "wa" => self.omega_a = parse_scalar(key, value)?,
            "wc" => self.omega_c = parse_scalar(key, value)?,
            "gamma" => self.gamma = parse_scalar(key, value)?,
            "beta" => self.beta = parse_scalar(key, value)?,
            "eta" => self.eta = Some(parse_scalar(key, value)?),
            "cutoff" => self.cutoff = Some(parse_scalar(key, value)?),
            "lambda" => self.lambda = parse_scalar(key, value)?,
            "lambdas" => self.lambdas = Some(parse_list(key, value)?),
            "ns" => self.ns = Some(parse_list(key, value)?),
            "gammas" => self.gammas = Some(parse_list(key, value)?),
            "tmax" => self.tmax = Some(parse_scalar(key, value)?),
            "dt" => self.dt = Some(parse_scalar(key, value)?),
            "n_max" => self.n_max = parse_scalar(key, value)?,
            "s_max" => self.s_max = parse_scalar(key, value)?,
            "out_dir" => self.out_dir = PathBuf::from(value.trim()),
            "workers" => self.workers = Some(parse_scalar(key, value)?),
            "strict" => self.strict = parse_scalar(key, value)?,
            other => {
                return Err(Error::Config(format!(
                    "unknown configuration key '{other}'"
                )))
            }
        }
        Ok(())
    }

    /// Parses a flat `key = value` configuration file body. Empty lines and
    /// `#` comments are skipped.
    pub fn apply_config_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "config line {} is not 'key = value': {raw:?}",
                    lineno + 1
                )));
            };
            self.apply_pair(key.trim(), value.trim())?;
        }
        Ok(())
    }

    /// Rebuilds a configuration from artifact metadata pairs (on top of the
    /// defaults), so an artifact fully describes the run that made it.
    pub fn from_metadata(pairs: &[(String, String)]) -> Result<Self> {
        let mut config = Self::default();
        for (key, value) in pairs {
            config.apply_pair(key, value)?;
        }
        Ok(config)
    }

    fn apply_env_lookup(&mut self, get: impl Fn(&str) -> Option<String>) -> Result<()> {
        if let Some(dir) = get("DICKE_QME_OUT_DIR") {
            self.out_dir = PathBuf::from(dir);
        }
        if let Some(workers) = get("DICKE_QME_WORKERS") {
            self.workers = Some(parse_scalar("DICKE_QME_WORKERS", &workers)?);
        }
        Ok(())
    }

    fn apply_cli(&mut self, cli: &Cli) {
        if let Some(v) = cli.n_atoms {
            self.n_atoms = v;
        }
        if let Some(v) = cli.omega_a {
            self.omega_a = v;
        }
        if let Some(v) = cli.omega_c {
            self.omega_c = v;
        }
        if let Some(v) = cli.gamma {
            self.gamma = v;
        }
        if let Some(v) = cli.beta {
            self.beta = v;
        }
        if let Some(dir) = &cli.out_dir {
            self.out_dir = dir.clone();
        }
        if let Some(v) = cli.workers {
            self.workers = Some(v);
        }
        if cli.strict {
            self.strict = true;
        }
    }

    /// Model parameters at a given coupling.
    pub fn model_params(&self, lambda: f64) -> Result<ModelParams> {
        ModelParams::new(self.n_atoms, self.omega_a, self.omega_c, lambda, self.gamma)
    }

    /// Reservoir parameters; an explicit `eta` must reproduce `gamma` via
    /// `gamma = 16 eta / beta` to within [`GAMMA_CONSISTENCY_TOL`].
    pub fn reservoir(&self) -> Result<ReservoirParams> {
        match self.eta {
            Some(eta) => {
                let r = ReservoirParams::new(eta, self.beta, self.cutoff)?;
                let implied = 16.0 * eta / self.beta;
                let scale = self.gamma.abs().max(1.0);
                if (implied - self.gamma).abs() > GAMMA_CONSISTENCY_TOL * scale {
                    return Err(Error::Config(format!(
                        "inconsistent reservoir: gamma = {} but 16 eta / beta = {}",
                        output::format_float(self.gamma),
                        output::format_float(implied)
                    )));
                }
                Ok(r)
            }
            None => ReservoirParams::from_gamma(self.gamma, self.beta, self.cutoff),
        }
    }

    /// The `# key = value` metadata block shared by every artifact: enough
    /// of the configuration to reproduce the run via [`Self::from_metadata`].
    pub fn common_metadata(&self, command: &str) -> Vec<(String, String)> {
        let mut pairs = vec![
            ("command".to_string(), command.to_string()),
            ("N".to_string(), self.n_atoms.to_string()),
            ("wa".to_string(), output::format_float(self.omega_a)),
            ("wc".to_string(), output::format_float(self.omega_c)),
            ("gamma".to_string(), output::format_float(self.gamma)),
            ("beta".to_string(), output::format_float(self.beta)),
        ];
        if let Some(eta) = self.eta {
            pairs.push(("eta".to_string(), output::format_float(eta)));
        }
        if let Some(cutoff) = self.cutoff {
            pairs.push(("cutoff".to_string(), output::format_float(cutoff)));
        }
        pairs
    }
}

/// Builds the layered configuration for a parsed command line.
pub fn resolve_config(cli: &Cli) -> Result<RunConfig> {
    let mut config = RunConfig::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::Config(format!("cannot read config file {}: {e}", path.display()))
        })?;
        config.apply_config_text(&text)?;
    }
    config.apply_env_lookup(|key| std::env::var(key).ok())?;
    config.apply_cli(cli);
    Ok(config)
}

/// Prints regime warnings; under `--strict` they become a configuration
/// error. The check runs at the largest coupling the command will touch
/// (the regime ratios grow monotonically with `lambda`).
fn gate_regime(config: &RunConfig, worst_lambda: f64) -> Result<RegimeReport> {
    let p = config.model_params(worst_lambda)?;
    let r = config.reservoir()?;
    let report = model::validate_regime(&p, &r);
    if !report.all_pass {
        for check in report.checks.iter().filter(|c| !c.pass) {
            eprintln!(
                "warning: dispersive-regime ratio '{}' = {} exceeds {}",
                check.name,
                output::format_float(check.value),
                output::format_float(check.threshold)
            );
        }
        if config.strict {
            return Err(Error::Config(format!(
                "dispersive-regime check failed at lambda = {} under --strict",
                output::format_float(worst_lambda)
            )));
        }
    }
    Ok(report)
}

/// Report written by `steady-state`.
#[derive(Debug, Serialize)]
pub struct SteadyStateReport {
    pub n_atoms: usize,
    pub lambda: f64,
    pub gamma: f64,
    pub dim: usize,
    pub diagonal_value: f64,
    pub residual_max: f64,
    pub parity_covariance: bool,
}

/// Report written by `validate`.
#[derive(Debug, Serialize)]
pub struct ValidateReport {
    pub regime: RegimeReport,
    pub parity_covariance: bool,
    pub steady_state_residual: f64,
    pub kernel_multiplicity: usize,
    pub max_spectral_real_part: f64,
    pub pass: bool,
}

/// Report written by `oracle`.
#[derive(Debug, Serialize)]
pub struct OracleArtifact {
    pub subspace: oracle::SubspaceReport,
    pub dissipator: oracle::DissipatorOracleReport,
}

/// Executes a parsed command line. Errors map to process exit codes via
/// [`Error::exit_code`]: configuration problems exit 2, numerical failures
/// exit 3.
pub fn run(cli: &Cli) -> Result<()> {
    let config = resolve_config(cli)?;
    match &cli.command {
        Command::Quench { lambdas, tmax, dt } => {
            let lambdas = lambdas
                .clone()
                .or_else(|| config.lambdas.clone())
                .unwrap_or_else(|| vec![2.5, 5.0, 7.5, 10.0, 12.5, 15.0, 17.5, 20.0]);
            let tmax = tmax.or(config.tmax).unwrap_or(50.0);
            let dt = dt.or(config.dt).unwrap_or(0.05);
            run_quench(&config, &lambdas, tmax, dt)
        }
        Command::G1 { lambda, tmax, dt } => {
            let lambda = lambda.unwrap_or(config.lambda);
            let tmax = tmax.or(config.tmax).unwrap_or(50.0);
            let dt = dt.or(config.dt).unwrap_or(0.05);
            run_g1(&config, lambda, tmax, dt)
        }
        Command::TauSweep {
            ns,
            gammas,
            lambdas,
            tmax,
            dt,
        } => {
            let ns = ns
                .clone()
                .or_else(|| config.ns.clone())
                .unwrap_or_else(|| vec![16, 32]);
            let gammas = gammas
                .clone()
                .or_else(|| config.gammas.clone())
                .unwrap_or_else(|| vec![100.0, 400.0]);
            let lambdas = lambdas
                .clone()
                .or_else(|| config.lambdas.clone())
                .unwrap_or_else(|| vec![25.0, 30.0, 35.0, 40.0]);
            let tmax = tmax.or(config.tmax).unwrap_or(600.0);
            let dt = dt.or(config.dt).unwrap_or(0.25);
            run_tau_sweep(&config, &ns, &gammas, &lambdas, tmax, dt)
        }
        Command::SteadyState {
            lambda,
            dump_superoperator,
        } => run_steady_state(&config, lambda.unwrap_or(config.lambda), *dump_superoperator),
        Command::Validate { lambda } => run_validate(&config, lambda.unwrap_or(config.lambda)),
        Command::Oracle {
            lambda,
            n_max,
            s_max,
        } => run_oracle(
            &config,
            lambda.unwrap_or(config.lambda),
            n_max.unwrap_or(config.n_max),
            s_max.unwrap_or(config.s_max),
        ),
    }
}

fn run_quench(config: &RunConfig, lambdas: &[f64], tmax: f64, dt: f64) -> Result<()> {
    let worst = lambdas.iter().copied().fold(0.0_f64, f64::max);
    gate_regime(config, worst)?;
    let p_base = config.model_params(config.lambda)?;
    let grid = dynamics::uniform_grid(tmax, dt)?;
    let curves = dynamics::quench_experiment_with(
        &p_base,
        lambdas,
        &grid,
        &IntegratorOptions::default(),
        config.workers,
    )?;
    let mut metadata = config.common_metadata("quench");
    metadata.push((
        "lambdas".to_string(),
        output::format_float_list(lambdas),
    ));
    metadata.push(("tmax".to_string(), output::format_float(tmax)));
    metadata.push(("dt".to_string(), output::format_float(dt)));
    for curve in &curves {
        let mut file_metadata = metadata.clone();
        file_metadata.push(("lambda".to_string(), output::format_float(curve.lambda)));
        let path = output::write_quench_curve(&config.out_dir, curve, &file_metadata)?;
        println!(
            "lambda = {:<6} W = {:<22} window = [{}, {}] -> {}",
            output::format_float(curve.lambda),
            output::format_float(curve.window_average),
            output::format_float(curve.window.0),
            output::format_float(curve.window.1),
            path.display()
        );
    }
    Ok(())
}

fn run_g1(config: &RunConfig, lambda: f64, tmax: f64, dt: f64) -> Result<()> {
    gate_regime(config, lambda)?;
    let p = config.model_params(lambda)?;
    let l = liouvillian::build(&p, &BuildOptions::default())?;
    let grid = dynamics::uniform_grid(tmax, dt)?;
    let series = correlation::g1(&l, &grid)?;
    let mut metadata = config.common_metadata("g1");
    metadata.push(("lambda".to_string(), output::format_float(lambda)));
    metadata.push(("tmax".to_string(), output::format_float(tmax)));
    metadata.push(("dt".to_string(), output::format_float(dt)));
    let path = output::write_g1_series(&config.out_dir, lambda, &series, &metadata)?;
    let worst_im = series
        .im_values()
        .iter()
        .map(|x| x.abs())
        .fold(0.0_f64, f64::max);
    let min_re = series
        .re_values()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    println!(
        "lambda = {:<6} g1(0) = {} max|Im g1| = {} min Re g1 = {} -> {}",
        output::format_float(lambda),
        output::format_float(series.values[0].re),
        output::format_float(worst_im),
        output::format_float(min_re),
        path.display()
    );
    Ok(())
}

fn run_tau_sweep(
    config: &RunConfig,
    ns: &[usize],
    gammas: &[f64],
    lambdas: &[f64],
    tmax: f64,
    dt: f64,
) -> Result<()> {
    let worst = lambdas.iter().copied().fold(0.0_f64, f64::max);
    gate_regime(config, worst)?;
    let p_base = config.model_params(config.lambda)?;
    let opts = SweepOptions {
        t_max: tmax,
        dt,
        fit: FitPolicy::default(),
        workers: config.workers,
    };
    let table = correlation::tau_c_sweep(&p_base, ns, gammas, lambdas, &opts)?;
    let mut metadata = config.common_metadata("tau-sweep");
    metadata.push((
        "ns".to_string(),
        ns.iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(","),
    ));
    metadata.push(("gammas".to_string(), output::format_float_list(gammas)));
    metadata.push(("lambdas".to_string(), output::format_float_list(lambdas)));
    metadata.push(("tmax".to_string(), output::format_float(tmax)));
    metadata.push(("dt".to_string(), output::format_float(dt)));
    let path = output::write_sweep_table(&config.out_dir, &table, &metadata)?;
    for group in &table.groups {
        println!(
            "N = {:<3} gamma = {:<6} tau_c slope = {:<22} R2 = {} -> {}",
            group.n_atoms,
            output::format_float(group.gamma),
            output::format_float(group.slope),
            output::format_float(group.r_squared),
            path.display()
        );
    }
    if table.groups.is_empty() {
        println!("wrote {} ({} rows)", path.display(), table.rows.len());
    }
    Ok(())
}

fn run_steady_state(config: &RunConfig, lambda: f64, dump_superoperator: bool) -> Result<()> {
    gate_regime(config, lambda)?;
    let p = config.model_params(lambda)?;
    let l = liouvillian::build(&p, &BuildOptions::default())?;
    let rho = l.steady_state()?;
    let residual = linalg::max_abs(&l.apply(rho.as_array())?);
    let report = SteadyStateReport {
        n_atoms: p.n_atoms,
        lambda,
        gamma: p.gamma,
        dim: l.dim(),
        diagonal_value: rho.as_array()[[0, 0]].re,
        residual_max: residual,
        parity_covariance: l.parity_covariance_check(),
    };
    let path = config.out_dir.join("steady_state.json");
    output::write_json_pretty(&path, &report)?;
    println!(
        "steady state diag = {} residual = {} parity covariance = {} -> {}",
        output::format_float(report.diagonal_value),
        output::format_float(report.residual_max),
        report.parity_covariance,
        path.display()
    );
    if dump_superoperator {
        let dump = l.superoperator_dump()?;
        let dump_path = config.out_dir.join("superoperator.json");
        output::write_json_pretty(&dump_path, &dump)?;
        println!(
            "superoperator ({}x{}, {} stacking) -> {}",
            dump.dim,
            dump.dim,
            dump.stacking,
            dump_path.display()
        );
    }
    Ok(())
}

fn run_validate(config: &RunConfig, lambda: f64) -> Result<()> {
    let p = config.model_params(lambda)?;
    let r = config.reservoir()?;
    let regime = model::validate_regime(&p, &r);
    for check in regime.checks.iter().filter(|c| !c.pass) {
        eprintln!(
            "warning: dispersive-regime ratio '{}' = {} exceeds {}",
            check.name,
            output::format_float(check.value),
            output::format_float(check.threshold)
        );
    }
    let l = liouvillian::build(&p, &BuildOptions::default())?;
    let rho = l.steady_state()?;
    let steady_state_residual = linalg::max_abs(&l.apply(rho.as_array())?);
    let parity_covariance = l.parity_covariance_check();
    let m = l.superoperator_matrix()?;
    let eigs = linalg::eig_complex(&m)?;
    let max_spectral_real_part = eigs.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max);
    let kernel_multiplicity = eigs.iter().filter(|z| z.norm() <= 1e-8).count();
    let pass = regime.all_pass
        && parity_covariance
        && steady_state_residual < 1e-12
        && kernel_multiplicity == 1
        && max_spectral_real_part <= 1e-12;
    let report = ValidateReport {
        regime,
        parity_covariance,
        steady_state_residual,
        kernel_multiplicity,
        max_spectral_real_part,
        pass,
    };
    let path = config.out_dir.join("validate.json");
    output::write_json_pretty(&path, &report)?;
    println!(
        "regime pass = {} parity = {} residual = {} kernel = {} max Re eig = {} -> {}",
        report.regime.all_pass,
        report.parity_covariance,
        output::format_float(report.steady_state_residual),
        report.kernel_multiplicity,
        output::format_float(report.max_spectral_real_part),
        path.display()
    );
    if config.strict && !report.pass {
        return Err(Error::Config(
            "validation did not pass under --strict".into(),
        ));
    }
    Ok(())
}

fn run_oracle(config: &RunConfig, lambda: f64, n_max: usize, s_max: f64) -> Result<()> {
    let p = config.model_params(lambda)?;
    // The dissipator oracle needs a finite regularization scale; default to
    // the reference cutoff Lambda = 1e4 / beta when none is configured.
    let mut r = config.reservoir()?;
    if r.cutoff.is_none() {
        r.cutoff = Some(1e4 / r.beta);
    }
    let trunc = FockTruncation::new(n_max)?;
    let subspace = oracle::dressed_subspace_check(&p, &trunc)?;
    let dissipator = oracle::dissipator_numeric_oracle(&p, &r, s_max)?;
    let artifact = OracleArtifact {
        subspace,
        dissipator,
    };
    let path = config.out_dir.join("oracle.json");
    output::write_json_pretty(&path, &artifact)?;
    for check in artifact
        .subspace
        .checks
        .iter()
        .chain(artifact.dissipator.checks.iter())
    {
        println!(
            "[{}] {}: measured = {} expected = {} bound = {}{}",
            if check.pass { "PASS" } else { "FAIL" },
            check.name,
            output::format_float(check.measured),
            output::format_float(check.expected),
            output::format_float(check.bound),
            if check.relative { " (relative)" } else { "" }
        );
    }
    println!("oracle report -> {}", path.display());
    if config.strict && !(artifact.subspace.pass && artifact.dissipator.pass) {
        return Err(Error::Config(
            "oracle checks did not pass under --strict".into(),
        ));
    }
    Ok(())
}

/// Convenience entry point for the binary: parse, run, map errors to exit
/// codes.
pub fn main_entry() -> std::process::ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => std::process::ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::ExitCode::from(e.exit_code() as u8)
        }
    }
}

/// Directory helper shared by the integration tests and examples: artifacts
/// land under `base/name`.
pub fn artifact_dir(base: &Path, name: &str) -> PathBuf {
    base.join(name)
}
