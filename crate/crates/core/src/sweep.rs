//! Parameter sweeps: grid construction, per-point evaluation of the requested
//! quantities with automatic Fock-cutoff escalation, and deterministic CSV
//! output.
//!
//! Grid points are independent and evaluated on a worker pool; a deterministic
//! reducer orders rows by grid index before writing, so serial and parallel
//! runs produce identical files (the `wall_time_ms` diagnostic column is the
//! only part of a row that varies between runs).

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagnostics::{non_gaussianity, DiagnosticsError};
use crate::estimation::{
    cfi_error_propagation_at, cfi_projective, default_step, qfi, qfim, sld, sld_compatibility,
    sld_residual, EstimationError, ObservableId, ParamId, ProbePoint,
};
use crate::linalg::{expectation, trace, CMat, LinalgError};
use crate::model::{ModelConfig, ModelError};
use crate::par::map_indexed;
use crate::wigner::{linspace, wigner_grid_with_threads, WignerError};

/// Cutoff escalation step: both mode cutoffs grow together by this amount.
pub const CUTOFF_STEP: usize = 5;

/// Named bundle of numerical defaults. The `paper-default` profile is the one
/// every figure-style run uses unless overridden.
#[derive(Debug, Clone)]
pub struct Profile {
    pub name: &'static str,
    pub cutoff: (usize, usize),
    pub convergence_tol: f64,
    pub max_cutoff: usize,
    pub eigenvalue_floor: f64,
    pub prob_floor: f64,
    /// Wigner grid spans `[-extent, extent]` on both axes.
    pub wigner_extent: f64,
    pub wigner_points: usize,
}

impl Default for Profile {
    fn default() -> Self {
        Profile {
            name: "paper-default",
            cutoff: (20, 20),
            convergence_tol: 1e-6,
            max_cutoff: 40,
            eigenvalue_floor: crate::estimation::EIGENVALUE_FLOOR,
            prob_floor: crate::estimation::PROB_FLOOR,
            wigner_extent: 5.0,
            wigner_points: 201,
        }
    }
}

/// Parameter swept along one grid axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisParam {
    Temperature,
    BExt,
    G,
}

impl std::fmt::Display for AxisParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxisParam::Temperature => write!(f, "temperature"),
            AxisParam::BExt => write!(f, "b_ext"),
            AxisParam::G => write!(f, "g"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepAxis {
    pub name: AxisParam,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl SweepAxis {
    pub fn values(&self) -> Vec<f64> {
        linspace(self.min, self.max, self.count)
    }
}

/// A quantity evaluated at every grid point. Each maps to one or more CSV
/// columns (see [`quantity_columns`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    QfiT,
    QfiB,
    Qfim,
    Cfi { observable: ObservableId, param: ParamId },
    Wigner,
    Nongauss,
    SldCheck,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergenceSpec {
    #[serde(default = "default_true")]
    pub enabled: bool,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_cutoff")]
    pub max_cutoff: usize,
}

fn default_true() -> bool {
    true
}
fn default_tol() -> f64 {
    1e-6
}
fn default_max_cutoff() -> usize {
    40
}

impl Default for ConvergenceSpec {
    fn default() -> Self {
        ConvergenceSpec { enabled: true, tol: 1e-6, max_cutoff: 40 }
    }
}

/// Full description of one sweep run. The JSON config file mirrors this
/// structure field for field; unknown keys are a hard error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub base: ModelConfig,
    pub axes: Vec<SweepAxis>,
    pub quantities: Vec<Quantity>,
    #[serde(default)]
    pub convergence: ConvergenceSpec,
    #[serde(default)]
    pub output_path: String,
}

/// One evaluated grid point.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub coords: Vec<f64>,
    /// One entry per scalar column, in schema order; `None` marks a
    /// per-point failure recorded in `error_code`.
    pub values: Vec<Option<f64>>,
    pub converged: bool,
    pub cutoff: (usize, usize),
    pub error_code: Option<String>,
    pub wall_time_ms: u64,
}

#[derive(Debug, Clone)]
pub struct SweepResult {
    /// Full CSV header, including coordinates and trailing bookkeeping.
    pub columns: Vec<String>,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Model(#[from] ModelError),

    #[error(transparent)]
    Estimation(#[from] EstimationError),

    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error(transparent)]
    Wigner(#[from] WignerError),

    #[error(transparent)]
    Diagnostics(#[from] DiagnosticsError),
}

pub type SweepOutcome<T> = Result<T, SweepError>;

/// Parse a sweep spec from JSON with line/field diagnostics.
pub fn parse_spec(json: &str) -> SweepOutcome<SweepSpec> {
    let spec: SweepSpec =
        serde_json::from_str(json).map_err(|e| SweepError::Config(e.to_string()))?;
    spec.validate()?;
    Ok(spec)
}

pub fn load_spec(path: impl AsRef<Path>) -> SweepOutcome<SweepSpec> {
    let text = std::fs::read_to_string(path.as_ref()).map_err(|e| {
        SweepError::Config(format!("cannot read config {}: {e}", path.as_ref().display()))
    })?;
    parse_spec(&text)
}

impl SweepSpec {
    pub fn validate(&self) -> SweepOutcome<()> {
        self.base
            .validate()
            .map_err(|e| SweepError::Config(format!("base: {e}")))?;
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(SweepError::Config(format!(
                "axes: expected 1 or 2 swept parameters, got {}",
                self.axes.len()
            )));
        }
        for ax in &self.axes {
            if !(ax.min < ax.max) {
                return Err(SweepError::Config(format!(
                    "axes.{}: bounds must be strictly increasing ({} .. {})",
                    ax.name, ax.min, ax.max
                )));
            }
            if ax.count < 2 {
                return Err(SweepError::Config(format!(
                    "axes.{}: count must be at least 2, got {}",
                    ax.name, ax.count
                )));
            }
        }
        if self.axes.len() == 2 && self.axes[0].name == self.axes[1].name {
            return Err(SweepError::Config(format!(
                "axes: swept names must be distinct, got {} twice",
                self.axes[0].name
            )));
        }
        if self.quantities.is_empty() {
            return Err(SweepError::Config("quantities: at least one required".into()));
        }
        let mut seen: Vec<String> = Vec::new();
        for q in &self.quantities {
            for col in quantity_columns(q) {
                if seen.contains(&col) {
                    return Err(SweepError::Config(format!(
                        "quantities: duplicate column {col}"
                    )));
                }
                seen.push(col);
            }
        }
        if !(self.convergence.tol > 0.0) {
            return Err(SweepError::Config(format!(
                "convergence.tol must be positive, got {}",
                self.convergence.tol
            )));
        }
        if self.convergence.enabled
            && self.convergence.max_cutoff < self.base.n_a.max(self.base.n_b)
        {
            return Err(SweepError::Config(format!(
                "convergence.max_cutoff {} below initial cutoffs ({}, {})",
                self.convergence.max_cutoff, self.base.n_a, self.base.n_b
            )));
        }
        Ok(())
    }

    /// Grid coordinates in row-major axis order.
    pub fn grid(&self) -> Vec<Vec<f64>> {
        match self.axes.len() {
            1 => self.axes[0].values().into_iter().map(|v| vec![v]).collect(),
            2 => {
                let outer = self.axes[0].values();
                let inner = self.axes[1].values();
                let mut out = Vec::with_capacity(outer.len() * inner.len());
                for &a in &outer {
                    for &b in &inner {
                        out.push(vec![a, b]);
                    }
                }
                out
            }
            _ => unreachable!("validated axis count"),
        }
    }

    fn config_at(&self, coords: &[f64]) -> ModelConfig {
        let mut cfg = self.base.clone();
        for (ax, &v) in self.axes.iter().zip(coords.iter()) {
            match ax.name {
                AxisParam::Temperature => cfg.temperature = v,
                AxisParam::BExt => cfg.b_ext = v,
                AxisParam::G => cfg.g = v,
            }
        }
        cfg
    }
}

/// Scalar CSV columns contributed by a quantity, in schema order.
pub fn quantity_columns(q: &Quantity) -> Vec<String> {
    match q {
        Quantity::QfiT => vec!["qfi_t".into()],
        Quantity::QfiB => vec!["qfi_b".into()],
        Quantity::Qfim => ["f_tt", "f_bb", "f_tb", "det_fq", "c_tb", "r_tb"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        Quantity::Cfi { observable, param } => vec![
            format!("cfi_errprop_{observable}_{param}"),
            format!("cfi_proj_{observable}_{param}"),
        ],
        Quantity::Wigner => ["wigner_min", "wigner_negative_volume", "wigner_total_integral"]
            .iter()
            .map(|s| s.to_string())
            .collect(),
        Quantity::Nongauss => {
            ["delta", "kurtosis_x", "kurtosis_p", "min_rotated_variance", "symplectic_nu"]
                .iter()
                .map(|s| s.to_string())
                .collect()
        }
        Quantity::SldCheck => [
            "sld_residual_t",
            "sld_residual_b",
            "sld_mean_t",
            "sld_mean_b",
            "sld_qfi_relerr_t",
            "sld_qfi_relerr_b",
            "sld_c_tb",
            "sld_r_tb",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect(),
    }
}

/// Full CSV header for a spec: coordinates, quantity columns in spec order,
/// then `converged,cutoff_na,cutoff_nb,error_code,wall_time_ms`.
pub fn schema_columns(spec: &SweepSpec) -> Vec<String> {
    let mut cols: Vec<String> = spec.axes.iter().map(|a| a.name.to_string()).collect();
    for q in &spec.quantities {
        cols.extend(quantity_columns(q));
    }
    cols.extend(
        ["converged", "cutoff_na", "cutoff_nb", "error_code", "wall_time_ms"]
            .iter()
            .map(|s| s.to_string()),
    );
    cols
}

fn code_of_estimation(e: &EstimationError) -> String {
    match e {
        EstimationError::DegenerateVariance { .. } => "degenerate_variance".into(),
        EstimationError::InvalidStep { .. } => "invalid_step".into(),
        EstimationError::DimensionMismatch(_) => "dimension_mismatch".into(),
        EstimationError::InvalidDerivative(_) => "invalid_derivative".into(),
        EstimationError::Model(_) => "model_error".into(),
        EstimationError::Linalg(LinalgError::NoConvergence { .. }) => "eigh_no_convergence".into(),
        EstimationError::Linalg(_) => "linalg_error".into(),
    }
}

struct PointValues {
    values: Vec<Option<f64>>,
    error_code: Option<String>,
}

fn push_err(out: &mut PointValues, width: usize, code: String) {
    for _ in 0..width {
        out.values.push(None);
    }
    if out.error_code.is_none() {
        out.error_code = Some(code);
    }
}

/// Evaluate every requested quantity at one configuration. Per-quantity
/// failures null the affected cells and record an error code; they never
/// abort the point.
fn evaluate_point(cfg: &ModelConfig, quantities: &[Quantity], profile: &Profile) -> PointValues {
    let floor = profile.eigenvalue_floor;
    let total_width: usize = quantities.iter().map(|q| quantity_columns(q).len()).sum();
    let mut out = PointValues { values: Vec::with_capacity(total_width), error_code: None };

    let point = match ProbePoint::new(cfg) {
        Ok(p) => p,
        Err(e) => {
            push_err(&mut out, total_width, code_of_estimation(&e));
            return out;
        }
    };

    let need_dt = quantities.iter().any(|q| {
        matches!(q, Quantity::QfiT | Quantity::Qfim | Quantity::SldCheck)
            || matches!(q, Quantity::Cfi { param: ParamId::Temperature, .. })
    });
    let need_db = quantities.iter().any(|q| {
        matches!(q, Quantity::QfiB | Quantity::Qfim | Quantity::SldCheck)
            || matches!(q, Quantity::Cfi { param: ParamId::MagneticField, .. })
    });

    let d_t = if need_dt {
        Some(point.derivative(ParamId::Temperature, default_step(cfg, ParamId::Temperature)))
    } else {
        None
    };
    let d_b = if need_db {
        Some(point.derivative(ParamId::MagneticField, default_step(cfg, ParamId::MagneticField)))
    } else {
        None
    };
    let deriv = |param: ParamId| -> &Result<CMat, EstimationError> {
        match param {
            ParamId::Temperature => d_t.as_ref().expect("temperature derivative requested"),
            ParamId::MagneticField => d_b.as_ref().expect("drive derivative requested"),
        }
    };

    for q in quantities {
        let width = quantity_columns(q).len();
        match q {
            Quantity::QfiT | Quantity::QfiB => {
                let param = if matches!(q, Quantity::QfiT) {
                    ParamId::Temperature
                } else {
                    ParamId::MagneticField
                };
                match deriv(param) {
                    Ok(d) => match qfi(&point.probe, d, floor) {
                        Ok(v) => out.values.push(Some(v)),
                        Err(e) => push_err(&mut out, width, code_of_estimation(&e)),
                    },
                    Err(e) => push_err(&mut out, width, code_of_estimation(e)),
                }
            }
            Quantity::Qfim => match (deriv(ParamId::Temperature), deriv(ParamId::MagneticField)) {
                (Ok(dt), Ok(db)) => match qfim(&point.probe, dt, db, floor) {
                    Ok(r) => {
                        for v in [r.f_tt, r.f_bb, r.f_tb, r.det, r.c_tb, r.r_tb] {
                            out.values.push(Some(v));
                        }
                    }
                    Err(e) => push_err(&mut out, width, code_of_estimation(&e)),
                },
                (Err(e), _) | (_, Err(e)) => push_err(&mut out, width, code_of_estimation(e)),
            },
            Quantity::Cfi { observable, param } => {
                let step = default_step(cfg, *param);
                match cfi_error_propagation_at(&point, *observable, *param, step) {
                    Ok(v) => out.values.push(Some(v)),
                    Err(e) => {
                        out.values.push(None);
                        if out.error_code.is_none() {
                            out.error_code = Some(code_of_estimation(&e));
                        }
                    }
                }
                match deriv(*param) {
                    Ok(d) => match cfi_projective(&point.probe, d, *observable, profile.prob_floor) {
                        Ok(v) => out.values.push(Some(v)),
                        Err(e) => {
                            out.values.push(None);
                            if out.error_code.is_none() {
                                out.error_code = Some(code_of_estimation(&e));
                            }
                        }
                    },
                    Err(e) => {
                        out.values.push(None);
                        if out.error_code.is_none() {
                            out.error_code = Some(code_of_estimation(e));
                        }
                    }
                }
            }
            Quantity::Wigner => {
                let xs = linspace(-profile.wigner_extent, profile.wigner_extent, profile.wigner_points);
                match wigner_grid_with_threads(&point.probe, &xs, &xs, 1) {
                    Ok(g) => {
                        out.values.push(Some(g.min_value));
                        out.values.push(Some(g.negative_volume));
                        out.values.push(Some(g.total_integral));
                    }
                    Err(_) => push_err(&mut out, width, "wigner_grid".into()),
                }
            }
            Quantity::Nongauss => match non_gaussianity(&point.probe) {
                Ok(s) => {
                    for v in [s.delta, s.kurtosis_x, s.kurtosis_p, s.min_rotated_variance, s.symplectic_nu] {
                        out.values.push(Some(v));
                    }
                }
                Err(DiagnosticsError::CutoffTooSmall { .. }) => {
                    push_err(&mut out, width, "cutoff_too_small".into())
                }
                Err(_) => push_err(&mut out, width, "diagnostics_error".into()),
            },
            Quantity::SldCheck => {
                let pair = (deriv(ParamId::Temperature), deriv(ParamId::MagneticField));
                let (dt, db) = match pair {
                    (Ok(a), Ok(b)) => (a, b),
                    (Err(e), _) | (_, Err(e)) => {
                        push_err(&mut out, width, code_of_estimation(e));
                        continue;
                    }
                };
                let checks = (|| -> Result<[f64; 8], EstimationError> {
                    let l_t = sld(&point.probe, dt, floor)?;
                    let l_b = sld(&point.probe, db, floor)?;
                    let resid_t = sld_residual(&point.probe, dt, &l_t, floor)?;
                    let resid_b = sld_residual(&point.probe, db, &l_b, floor)?;
                    let mean_t = trace(&point.probe.matrix.dot(&l_t)).norm();
                    let mean_b = trace(&point.probe.matrix.dot(&l_b)).norm();
                    let f_t = qfi(&point.probe, dt, floor)?;
                    let f_b = qfi(&point.probe, db, floor)?;
                    let tr_t = expectation(&point.probe.matrix, &l_t.dot(&l_t));
                    let tr_b = expectation(&point.probe.matrix, &l_b.dot(&l_b));
                    let relerr_t = (tr_t - f_t).abs() / f_t.max(1e-12);
                    let relerr_b = (tr_b - f_b).abs() / f_b.max(1e-12);
                    let (c_tb, r_tb) = sld_compatibility(&point.probe, &l_t, &l_b)?;
                    Ok([resid_t, resid_b, mean_t, mean_b, relerr_t, relerr_b, c_tb, r_tb])
                })();
                match checks {
                    Ok(vals) => out.values.extend(vals.into_iter().map(Some)),
                    Err(e) => push_err(&mut out, width, code_of_estimation(&e)),
                }
            }
        }
    }
    out
}

/// Result of one cutoff-escalation run.
#[derive(Debug, Clone, Copy)]
pub struct Convergence {
    pub value: f64,
    pub cutoff: (usize, usize),
    pub converged: bool,
}

/// Escalate both Fock cutoffs together in steps of [`CUTOFF_STEP`] until the
/// scalar stabilizes within `tol * max(|value|, 1e-12)` or `max_cutoff` is
/// hit. Never fails on non-convergence; the flag carries it.
pub fn converge_cutoff<F>(
    cfg: &ModelConfig,
    eval: F,
    tol: f64,
    max_cutoff: usize,
) -> SweepOutcome<Convergence>
where
    F: Fn(&ModelConfig) -> SweepOutcome<f64>,
{
    if !(tol > 0.0) {
        return Err(SweepError::Config(format!("tol must be positive, got {tol}")));
    }
    if max_cutoff < cfg.n_a.max(cfg.n_b) {
        return Err(SweepError::Config(format!(
            "max_cutoff {} below initial cutoffs ({}, {})",
            max_cutoff, cfg.n_a, cfg.n_b
        )));
    }
    let mut cur = cfg.clone();
    let mut value = eval(&cur)?;
    loop {
        if cur.n_a + CUTOFF_STEP > max_cutoff || cur.n_b + CUTOFF_STEP > max_cutoff {
            return Ok(Convergence { value, cutoff: (cur.n_a, cur.n_b), converged: false });
        }
        let next_cfg = cur.with_cutoffs(cur.n_a + CUTOFF_STEP, cur.n_b + CUTOFF_STEP);
        let next = eval(&next_cfg)?;
        if (next - value).abs() <= tol * next.abs().max(1e-12) {
            return Ok(Convergence { value: next, cutoff: (next_cfg.n_a, next_cfg.n_b), converged: true });
        }
        value = next;
        cur = next_cfg;
    }
}

fn pair_converged(prev: &PointValues, next: &PointValues, tol: f64) -> bool {
    if prev.values.len() != next.values.len() {
        return false;
    }
    prev.values.iter().zip(next.values.iter()).all(|(a, b)| match (a, b) {
        (Some(x), Some(y)) => (x - y).abs() <= tol * y.abs().max(1e-12),
        (None, None) => true,
        _ => false,
    })
}

fn evaluate_row(
    base: &ModelConfig,
    quantities: &[Quantity],
    conv: &ConvergenceSpec,
    profile: &Profile,
) -> (PointValues, bool, (usize, usize)) {
    if !conv.enabled {
        let vals = evaluate_point(base, quantities, profile);
        return (vals, false, (base.n_a, base.n_b));
    }
    let mut cfg = base.clone();
    let mut prev = evaluate_point(&cfg, quantities, profile);
    loop {
        if cfg.n_a + CUTOFF_STEP > conv.max_cutoff || cfg.n_b + CUTOFF_STEP > conv.max_cutoff {
            return (prev, false, (cfg.n_a, cfg.n_b));
        }
        let next_cfg = cfg.with_cutoffs(cfg.n_a + CUTOFF_STEP, cfg.n_b + CUTOFF_STEP);
        let next = evaluate_point(&next_cfg, quantities, profile);
        if pair_converged(&prev, &next, conv.tol) {
            return (next, true, (next_cfg.n_a, next_cfg.n_b));
        }
        prev = next;
        cfg = next_cfg;
    }
}

/// Evaluate the whole grid without touching the filesystem. Row order is the
/// row-major grid order regardless of the worker count.
pub fn evaluate_sweep(spec: &SweepSpec, threads: usize) -> SweepOutcome<SweepResult> {
    spec.validate()?;
    let grid = spec.grid();
    let profile = Profile::default();
    let rows: Vec<SweepRow> = map_indexed(grid.len(), threads, |i| {
        let coords = grid[i].clone();
        let started = Instant::now();
        let cfg = spec.config_at(&coords);
        let (vals, converged, cutoff) = evaluate_row(&cfg, &spec.quantities, &spec.convergence, &profile);
        SweepRow {
            coords,
            values: vals.values,
            converged,
            cutoff,
            error_code: vals.error_code,
            wall_time_ms: started.elapsed().as_millis() as u64,
        }
    });
    Ok(SweepResult { columns: schema_columns(spec), rows })
}

/// Run the sweep and write the CSV to `spec.output_path`.
pub fn run_sweep(spec: &SweepSpec, threads: usize) -> SweepOutcome<SweepResult> {
    if spec.output_path.is_empty() {
        return Err(SweepError::Config("output_path must not be empty".into()));
    }
    let result = evaluate_sweep(spec, threads)?;
    write_sweep_csv(&result, &spec.output_path)?;
    Ok(result)
}

/// Scientific notation with 17 significant digits, `.` decimal separator.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_sweep_csv(result: &SweepResult, path: impl AsRef<Path>) -> SweepOutcome<()> {
    let path = path.as_ref();
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "{}", result.columns.join(","))?;
    for row in &result.rows {
        let mut fields: Vec<String> = Vec::with_capacity(result.columns.len());
        for c in &row.coords {
            fields.push(format_value(*c));
        }
        for v in &row.values {
            fields.push(v.map(format_value).unwrap_or_default());
        }
        fields.push(row.converged.to_string());
        fields.push(row.cutoff.0.to_string());
        fields.push(row.cutoff.1.to_string());
        fields.push(row.error_code.clone().unwrap_or_default());
        fields.push(row.wall_time_ms.to_string());
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

/// Write a Wigner grid as CSV with columns `x,p,w` (x-major order).
pub fn write_wigner_csv(grid: &crate::wigner::WignerGrid, path: impl AsRef<Path>) -> SweepOutcome<()> {
    let path = path.as_ref();
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)?;
        }
    }
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "x,p,w")?;
    for (ix, &x) in grid.xs.iter().enumerate() {
        for (ip, &p) in grid.ps.iter().enumerate() {
            writeln!(
                out,
                "{},{},{}",
                format_value(x),
                format_value(p),
                format_value(grid.values[(ix, ip)])
            )?;
        }
    }
    Ok(())
}
