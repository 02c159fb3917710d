//! Parameter estimation on the reduced probe state: numerical derivatives,
//! single-parameter quantum Fisher information, the 2x2 QFI matrix for
//! (temperature, drive amplitude), symmetric logarithmic derivatives with
//! compatibility statistics, and classical Fisher information for a fixed set
//! of practical observables.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    dagger, eigh, expectation, hermiticity_error, max_abs, trace, CMat, LinalgError,
    SpectralDecomposition, Subsystem,
};
use crate::model::{
    build_hamiltonian, gibbs_from_spectral, DensityMatrix, ModeDims, ModelConfig, ModelError,
};

/// Terms with `q_m + q_n` at or below this floor are dropped from the
/// spectral QFI sum and the SLD.
pub const EIGENVALUE_FLOOR: f64 = 1e-12;
/// Outcome probabilities at or below this floor are dropped from the
/// projective classical Fisher information.
pub const PROB_FLOOR: f64 = 1e-14;
/// Observables with variance at or below this floor are rejected as
/// uninformative in the error-propagation form.
pub const VARIANCE_FLOOR: f64 = 1e-12;

/// The two parameters encoded in the probe state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParamId {
    #[serde(rename = "temperature")]
    Temperature,
    #[serde(rename = "b_ext")]
    MagneticField,
}

impl std::fmt::Display for ParamId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamId::Temperature => write!(f, "temperature"),
            ParamId::MagneticField => write!(f, "b_ext"),
        }
    }
}

/// Hermitian single-mode observables measured on the probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObservableId {
    PhotonNumber,
    QuadratureX,
    QuadratureXSquared,
    Parity,
}

impl std::fmt::Display for ObservableId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ObservableId::PhotonNumber => "photon_number",
            ObservableId::QuadratureX => "quadrature_x",
            ObservableId::QuadratureXSquared => "quadrature_x_squared",
            ObservableId::Parity => "parity",
        };
        write!(f, "{s}")
    }
}

/// 2x2 quantum Fisher information matrix for (T, B_ext) with derived
/// statistics. `c_tb` and `r_tb` are the imaginary- and real-part statistics
/// of the SLD commutator expectation; `c_tb ~ 0` means the two optimal
/// measurements are compatible.
#[derive(Debug, Clone, Copy)]
pub struct QfimResult {
    pub f_tt: f64,
    pub f_bb: f64,
    pub f_tb: f64,
    pub det: f64,
    pub c_tb: f64,
    pub r_tb: f64,
}

impl QfimResult {
    /// Smaller eigenvalue of the symmetric 2x2 matrix; PSD within numerical
    /// slack means this is `>= -1e-8`.
    pub fn min_eigenvalue(&self) -> f64 {
        let half_tr = 0.5 * (self.f_tt + self.f_bb);
        let rad = (0.5 * (self.f_tt - self.f_bb)).hypot(self.f_tb);
        half_tr - rad
    }
}

#[derive(Debug, Error)]
pub enum EstimationError {
    #[error("invalid finite-difference step {step}: {reason}")]
    InvalidStep { step: f64, reason: String },

    #[error("observable variance {variance:.3e} is at the degeneracy floor; measurement carries no information")]
    DegenerateVariance { variance: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid derivative input: {0}")]
    InvalidDerivative(String),

    #[error(transparent)]
    Model(#[from] ModelError),

    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type EstimationResult<T> = Result<T, EstimationError>;

/// Default central-difference step: `1e-4 * max(|theta|, 0.01)`.
pub fn default_step(cfg: &ModelConfig, param: ParamId) -> f64 {
    let theta = match param {
        ParamId::Temperature => cfg.temperature,
        ParamId::MagneticField => cfg.b_ext,
    };
    1e-4 * theta.abs().max(0.01)
}

fn shifted_config(cfg: &ModelConfig, param: ParamId, delta: f64) -> EstimationResult<ModelConfig> {
    let mut out = cfg.clone();
    match param {
        ParamId::Temperature => {
            out.temperature += delta;
            if !(out.temperature > 0.0) {
                return Err(EstimationError::InvalidStep {
                    step: delta.abs(),
                    reason: format!("temperature {} shifted to {}", cfg.temperature, out.temperature),
                });
            }
        }
        // the Hamiltonian is defined for any real drive, so b_ext may cross 0
        ParamId::MagneticField => out.b_ext += delta,
    }
    Ok(out)
}

fn reduce_to_probe(joint: &CMat, cfg: &ModelConfig) -> EstimationResult<CMat> {
    Ok(crate::linalg::partial_trace(joint, cfg.n_a, cfg.n_b, Subsystem::A)?)
}

/// Shared per-configuration computation: the joint Hamiltonian's spectral
/// decomposition and the reduced probe state. Temperature shifts reuse the
/// decomposition; drive shifts rebuild the Hamiltonian.
pub struct ProbePoint {
    pub cfg: ModelConfig,
    spectral: SpectralDecomposition,
    pub probe: DensityMatrix,
}

impl ProbePoint {
    pub fn new(cfg: &ModelConfig) -> EstimationResult<Self> {
        cfg.validate()?;
        let h = build_hamiltonian(cfg)?;
        let spectral = eigh(&h)?;
        let joint = gibbs_from_spectral(&spectral, cfg.temperature);
        let reduced = reduce_to_probe(&joint, cfg)?;
        let probe = DensityMatrix::new(reduced, ModeDims::Single(cfg.n_a))?;
        Ok(ProbePoint { cfg: cfg.clone(), spectral, probe })
    }

    /// Reduced probe state at a shifted parameter value.
    pub fn probe_shifted(&self, param: ParamId, delta: f64) -> EstimationResult<CMat> {
        let cfg = shifted_config(&self.cfg, param, delta)?;
        match param {
            ParamId::Temperature => {
                let joint = gibbs_from_spectral(&self.spectral, cfg.temperature);
                reduce_to_probe(&joint, &cfg)
            }
            ParamId::MagneticField => {
                let h = build_hamiltonian(&cfg)?;
                let spec = eigh(&h)?;
                let joint = gibbs_from_spectral(&spec, cfg.temperature);
                reduce_to_probe(&joint, &cfg)
            }
        }
    }

    /// Central finite difference `[rho(theta+h) - rho(theta-h)] / (2h)` of the
    /// reduced probe state.
    pub fn derivative(&self, param: ParamId, step: f64) -> EstimationResult<CMat> {
        if !(step > 0.0) || !step.is_finite() {
            return Err(EstimationError::InvalidStep { step, reason: "step must be positive".into() });
        }
        let plus = self.probe_shifted(param, step)?;
        let minus = self.probe_shifted(param, -step)?;
        let scale = C64::new(1.0 / (2.0 * step), 0.0);
        Ok((&plus - &minus).mapv(|z| z * scale))
    }
}

/// Central finite difference of the reduced probe state with respect to one
/// parameter. The result is Hermitian and traceless up to round-off.
pub fn probe_derivative(cfg: &ModelConfig, param: ParamId, step: f64) -> EstimationResult<CMat> {
    ProbePoint::new(cfg)?.derivative(param, step)
}

fn check_derivative_input(rho: &DensityMatrix, drho: &CMat) -> EstimationResult<()> {
    if drho.dim() != (rho.dim(), rho.dim()) {
        return Err(EstimationError::DimensionMismatch(format!(
            "state dimension {} vs derivative {:?}", rho.dim(), drho.dim()
        )));
    }
    let scale = max_abs(drho).max(1.0);
    let herm = hermiticity_error(drho);
    if herm > 1e-6 * scale {
        return Err(EstimationError::InvalidDerivative(format!(
            "derivative not Hermitian (deviation {herm:.3e})"
        )));
    }
    let tr = trace(drho).norm();
    if tr > 1e-6 * scale {
        return Err(EstimationError::InvalidDerivative(format!(
            "derivative not traceless (trace {tr:.3e})"
        )));
    }
    Ok(())
}

fn qfi_core(q: &[f64], a: &CMat, floor: f64) -> f64 {
    let n = q.len();
    let mut f = 0.0;
    for m in 0..n {
        for k in 0..n {
            let s = q[m] + q[k];
            if s > floor {
                f += 2.0 * a[(m, k)].norm_sqr() / s;
            }
        }
    }
    f
}

fn qfi_cross_core(q: &[f64], a_t: &CMat, a_b: &CMat, floor: f64) -> f64 {
    let n = q.len();
    let mut f = 0.0;
    for m in 0..n {
        for k in 0..n {
            let s = q[m] + q[k];
            if s > floor {
                f += 2.0 * (a_t[(m, k)] * a_b[(k, m)]).re / s;
            }
        }
    }
    f
}

fn sld_eigenbasis(q: &[f64], a: &CMat, floor: f64) -> CMat {
    let n = q.len();
    let mut l = CMat::zeros((n, n));
    for m in 0..n {
        for k in 0..n {
            let s = q[m] + q[k];
            if s > floor {
                l[(m, k)] = a[(m, k)] * (2.0 / s);
            }
        }
    }
    l
}

/// Single-parameter quantum Fisher information through the spectral form
/// `sum_{m,n} 2 |<phi_m| drho |phi_n>|^2 / (q_m + q_n)` over pairs above the
/// eigenvalue floor.
pub fn qfi(rho: &DensityMatrix, drho: &CMat, floor: f64) -> EstimationResult<f64> {
    check_derivative_input(rho, drho)?;
    let spec = eigh(&rho.matrix)?;
    let a = spec.to_eigenbasis(drho);
    Ok(qfi_core(&spec.eigenvalues, &a, floor))
}

/// Quantum Fisher information matrix for (T, B_ext) together with the SLD
/// compatibility statistics.
pub fn qfim(
    rho: &DensityMatrix,
    drho_t: &CMat,
    drho_b: &CMat,
    floor: f64,
) -> EstimationResult<QfimResult> {
    check_derivative_input(rho, drho_t)?;
    check_derivative_input(rho, drho_b)?;
    let spec = eigh(&rho.matrix)?;
    let a_t = spec.to_eigenbasis(drho_t);
    let a_b = spec.to_eigenbasis(drho_b);
    let q = &spec.eigenvalues;
    let f_tt = qfi_core(q, &a_t, floor);
    let f_bb = qfi_core(q, &a_b, floor);
    let f_tb = qfi_cross_core(q, &a_t, &a_b, floor);
    let l_t = spec.from_eigenbasis(&sld_eigenbasis(q, &a_t, floor));
    let l_b = spec.from_eigenbasis(&sld_eigenbasis(q, &a_b, floor));
    let (c_tb, r_tb) = sld_compatibility(rho, &l_t, &l_b)?;
    Ok(QfimResult { f_tt, f_bb, f_tb, det: f_tt * f_bb - f_tb * f_tb, c_tb, r_tb })
}

/// Symmetric logarithmic derivative: in the eigenbasis of `rho`,
/// `L_mn = 2 <phi_m|drho|phi_n> / (q_m + q_n)` where the denominator exceeds
/// the floor, zero elsewhere; returned in the original basis.
pub fn sld(rho: &DensityMatrix, drho: &CMat, floor: f64) -> EstimationResult<CMat> {
    check_derivative_input(rho, drho)?;
    let spec = eigh(&rho.matrix)?;
    let a = spec.to_eigenbasis(drho);
    let l = spec.from_eigenbasis(&sld_eigenbasis(&spec.eigenvalues, &a, floor));
    Ok((&l + &dagger(&l)) * C64::new(0.5, 0.0))
}

/// Max residual of the Lyapunov equation `drho = (L rho + rho L)/2` restricted
/// to the support subspace (eigenvalue pairs above the floor).
pub fn sld_residual(rho: &DensityMatrix, drho: &CMat, l: &CMat, floor: f64) -> EstimationResult<f64> {
    let spec = eigh(&rho.matrix)?;
    let lr = l.dot(&rho.matrix);
    let sym = (&lr + &dagger(&lr)) * C64::new(0.5, 0.0);
    let resid = spec.to_eigenbasis(&(drho - &sym));
    let q = &spec.eigenvalues;
    let mut worst = 0.0f64;
    for m in 0..q.len() {
        for k in 0..q.len() {
            if q[m] + q[k] > floor {
                worst = worst.max(resid[(m, k)].norm());
            }
        }
    }
    Ok(worst)
}

/// Compatibility statistics of two SLDs:
/// `c_tb = (1/2i) tr[rho (L_T L_B - L_B L_T)]` reported as a real number (the
/// trace is purely imaginary for Hermitian inputs) and
/// `r_tb = Re tr[rho (L_T L_B - L_B L_T)]`, which is analytically zero and
/// serves as a numerical-consistency check.
pub fn sld_compatibility(
    rho: &DensityMatrix,
    l_t: &CMat,
    l_b: &CMat,
) -> EstimationResult<(f64, f64)> {
    let d = rho.dim();
    if l_t.dim() != (d, d) || l_b.dim() != (d, d) {
        return Err(EstimationError::DimensionMismatch(format!(
            "SLD dimensions {:?}/{:?} vs state {}", l_t.dim(), l_b.dim(), d
        )));
    }
    let comm = &l_t.dot(l_b) - &l_b.dot(l_t);
    let z = trace(&rho.matrix.dot(&comm));
    Ok((0.5 * z.im, z.re))
}

/// Hermitian matrix of one of the named probe observables at the given cutoff.
pub fn observable_matrix(obs: ObservableId, dim: usize) -> EstimationResult<CMat> {
    let m = match obs {
        ObservableId::PhotonNumber => crate::model::number_operator(dim)?,
        ObservableId::QuadratureX => crate::model::quadratures(dim)?.0,
        ObservableId::QuadratureXSquared => {
            let x = crate::model::quadratures(dim)?.0;
            x.dot(&x)
        }
        ObservableId::Parity => {
            let mut p = CMat::zeros((dim, dim));
            for n in 0..dim {
                p[(n, n)] = C64::new(if n % 2 == 0 { 1.0 } else { -1.0 }, 0.0);
            }
            p
        }
    };
    Ok(m)
}

/// Error-propagation sensitivity `(d<O>/d lambda)^2 / Var(O)` on the probe
/// state, with the scalar mean differentiated by central differences.
pub fn cfi_error_propagation(
    cfg: &ModelConfig,
    obs: ObservableId,
    param: ParamId,
    step: f64,
) -> EstimationResult<f64> {
    let point = ProbePoint::new(cfg)?;
    cfi_error_propagation_at(&point, obs, param, step)
}

/// As [`cfi_error_propagation`], reusing a precomputed [`ProbePoint`].
pub fn cfi_error_propagation_at(
    point: &ProbePoint,
    obs: ObservableId,
    param: ParamId,
    step: f64,
) -> EstimationResult<f64> {
    if !(step > 0.0) || !step.is_finite() {
        return Err(EstimationError::InvalidStep { step, reason: "step must be positive".into() });
    }
    let op = observable_matrix(obs, point.cfg.n_a)?;
    let mean = expectation(&point.probe.matrix, &op);
    let mean_sq = expectation(&point.probe.matrix, &op.dot(&op));
    let var = mean_sq - mean * mean;
    if var <= VARIANCE_FLOOR {
        return Err(EstimationError::DegenerateVariance { variance: var });
    }
    let plus = expectation(&point.probe_shifted(param, step)?, &op);
    let minus = expectation(&point.probe_shifted(param, -step)?, &op);
    let dmean = (plus - minus) / (2.0 * step);
    Ok(dmean * dmean / var)
}

/// Classical Fisher information of a projective measurement:
/// `sum_x (dp_x)^2 / p_x` over outcomes with `p_x` above the floor.
///
/// Outcomes per observable: Fock populations (photon number), the two parity
/// sectors, and eigenprojectors of the truncated quadrature operator (for
/// `QuadratureXSquared`, the +/- x eigenvector pairs merge into one outcome).
pub fn cfi_projective(
    rho: &DensityMatrix,
    drho: &CMat,
    obs: ObservableId,
    prob_floor: f64,
) -> EstimationResult<f64> {
    check_derivative_input(rho, drho)?;
    let d = rho.dim();
    let (probs, dprobs): (Vec<f64>, Vec<f64>) = match obs {
        ObservableId::PhotonNumber => (
            (0..d).map(|n| rho.matrix[(n, n)].re).collect(),
            (0..d).map(|n| drho[(n, n)].re).collect(),
        ),
        ObservableId::Parity => {
            let mut p = [0.0f64; 2];
            let mut dp = [0.0f64; 2];
            for n in 0..d {
                p[n % 2] += rho.matrix[(n, n)].re;
                dp[n % 2] += drho[(n, n)].re;
            }
            (p.to_vec(), dp.to_vec())
        }
        ObservableId::QuadratureX | ObservableId::QuadratureXSquared => {
            let x = crate::model::quadratures(d)?.0;
            let spec = eigh(&x)?;
            let rho_x = spec.to_eigenbasis(&rho.matrix);
            let drho_x = spec.to_eigenbasis(drho);
            let p: Vec<f64> = (0..d).map(|k| rho_x[(k, k)].re).collect();
            let dp: Vec<f64> = (0..d).map(|k| drho_x[(k, k)].re).collect();
            if obs == ObservableId::QuadratureX {
                (p, dp)
            } else {
                // the truncated X spectrum is symmetric, so eigenvectors k and
                // d-1-k share an X^2 eigenvalue and merge into one projector
                let half = d / 2;
                let mut pg = Vec::with_capacity(half + d % 2);
                let mut dpg = Vec::with_capacity(half + d % 2);
                for k in 0..half {
                    pg.push(p[k] + p[d - 1 - k]);
                    dpg.push(dp[k] + dp[d - 1 - k]);
                }
                if d % 2 == 1 {
                    pg.push(p[half]);
                    dpg.push(dp[half]);
                }
                (pg, dpg)
            }
        }
    };
    let mut f = 0.0;
    for (p, dp) in probs.iter().zip(dprobs.iter()) {
        if *p > prob_floor {
            f += dp * dp / p;
        }
    }
    Ok(f)
}
