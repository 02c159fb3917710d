//! Truncated-Fock-space model of two coupled resonators: ladder operators,
//! the two interaction Hamiltonians, global Gibbs states and the reduced
//! probe state of resonator A.
//!
//! Units: everything is expressed in units of the probe frequency
//! (`omega_a = 1`), with `hbar = k_B = 1`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{
    self, eigh, eye, hermiticity_error, kron, partial_trace, trace, CMat, LinalgError,
    SpectralDecomposition, Subsystem,
};

/// Default Fock cutoff per mode; sweeps may escalate it.
pub const DEFAULT_CUTOFF: usize = 20;

/// Form of the resonator-resonator coupling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Interaction {
    /// `g (a + a\u{2020})^2 (b + b\u{2020})`: couples the squared field
    /// quadrature of A to the displacement of B. Contains counter-rotating
    /// terms that generate equilibrium squeezing and non-Gaussianity.
    Quadratic,
    /// `g a\u{2020}a (b + b\u{2020})`: couples the excitation number of A to
    /// the displacement of B. Number-conserving on A, so the reduced probe
    /// state stays diagonal in the Fock basis.
    RadiationPressure,
}

impl std::fmt::Display for Interaction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Interaction::Quadratic => write!(f, "quadratic"),
            Interaction::RadiationPressure => write!(f, "radiation_pressure"),
        }
    }
}

fn default_cutoff() -> usize {
    DEFAULT_CUTOFF
}

/// Full physical and numerical specification of one model instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    /// Probe frequency (the unit of every other rate).
    pub omega_a: f64,
    /// Frequency of resonator B.
    pub omega_b: f64,
    /// Coupling strength.
    pub g: f64,
    /// Drive amplitude on resonator B.
    pub b_ext: f64,
    /// Bath temperature.
    pub temperature: f64,
    pub interaction: Interaction,
    /// Fock cutoff of mode A (levels `0..n_a`).
    #[serde(default = "default_cutoff")]
    pub n_a: usize,
    /// Fock cutoff of mode B.
    #[serde(default = "default_cutoff")]
    pub n_b: usize,
}

impl ModelConfig {
    /// Validate the user-facing invariants. Internal derivative evaluations
    /// may probe `b_ext < 0` (the Hamiltonian is well defined for any real
    /// drive), which bypasses this check.
    pub fn validate(&self) -> Result<(), ModelError> {
        if !(self.omega_a > 0.0) || !self.omega_a.is_finite() {
            return Err(ModelError::InvalidConfig(format!("omega_a must be positive, got {}", self.omega_a)));
        }
        if !(self.omega_b > 0.0) || !self.omega_b.is_finite() {
            return Err(ModelError::InvalidConfig(format!("omega_b must be positive, got {}", self.omega_b)));
        }
        if !(self.temperature > 0.0) || !self.temperature.is_finite() {
            return Err(ModelError::InvalidConfig(format!("temperature must be positive, got {}", self.temperature)));
        }
        if !(self.g >= 0.0) || !self.g.is_finite() {
            return Err(ModelError::InvalidConfig(format!("g must be nonnegative, got {}", self.g)));
        }
        if !(self.b_ext >= 0.0) || !self.b_ext.is_finite() {
            return Err(ModelError::InvalidConfig(format!("b_ext must be nonnegative, got {}", self.b_ext)));
        }
        if self.n_a < 2 || self.n_b < 2 {
            return Err(ModelError::InvalidConfig(format!(
                "Fock cutoffs must be at least 2, got n_a={} n_b={}", self.n_a, self.n_b
            )));
        }
        Ok(())
    }

    pub fn with_cutoffs(&self, n_a: usize, n_b: usize) -> Self {
        ModelConfig { n_a, n_b, ..self.clone() }
    }

    /// Dimension of the joint A (x) B space.
    pub fn joint_dim(&self) -> usize {
        self.n_a * self.n_b
    }
}

/// Tensor factorization carried by a density matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeDims {
    Single(usize),
    /// A is the first Kronecker factor.
    Pair { dim_a: usize, dim_b: usize },
}

impl ModeDims {
    pub fn total(&self) -> usize {
        match *self {
            ModeDims::Single(d) => d,
            ModeDims::Pair { dim_a, dim_b } => dim_a * dim_b,
        }
    }
}

/// Hermitian, unit-trace, positive-semidefinite operator on a truncated Fock
/// space. Hermiticity and trace are checked on construction; positivity is
/// guaranteed by the constructors used in the pipeline and can be re-checked
/// with [`DensityMatrix::min_eigenvalue`].
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    pub matrix: CMat,
    pub dims: ModeDims,
}

/// Tolerance on Hermiticity and trace of a density matrix.
pub const STATE_TOL: f64 = 1e-9;

impl DensityMatrix {
    pub fn new(matrix: CMat, dims: ModeDims) -> Result<Self, ModelError> {
        let (r, c) = matrix.dim();
        if r != c || r != dims.total() {
            return Err(ModelError::DimensionMismatch(format!(
                "density matrix is {r}x{c} but dims declare {}", dims.total()
            )));
        }
        let dev = hermiticity_error(&matrix);
        if dev > STATE_TOL {
            return Err(ModelError::StateNotHermitian { deviation: dev });
        }
        let tr = trace(&matrix);
        if (tr - C64::new(1.0, 0.0)).norm() > STATE_TOL {
            return Err(ModelError::StateTraceNotOne { trace: tr.re });
        }
        Ok(DensityMatrix { matrix, dims })
    }

    pub fn dim(&self) -> usize {
        self.dims.total()
    }

    /// Smallest eigenvalue; the state invariant is `>= -1e-9`.
    pub fn min_eigenvalue(&self) -> Result<f64, ModelError> {
        let spec = eigh(&self.matrix)?;
        Ok(spec.eigenvalues[0])
    }

    /// Reinterpret the factorization metadata (dimensions must agree).
    pub fn with_dims(mut self, dims: ModeDims) -> Result<Self, ModelError> {
        if dims.total() != self.dim() {
            return Err(ModelError::DimensionMismatch(format!(
                "cannot reinterpret dimension {} as {}", self.dim(), dims.total()
            )));
        }
        self.dims = dims;
        Ok(self)
    }

    /// Fock state `|n><n|` on a `dim`-level mode.
    pub fn fock(dim: usize, n: usize) -> Result<Self, ModelError> {
        if dim < 2 {
            return Err(ModelError::InvalidDimension { dim });
        }
        if n >= dim {
            return Err(ModelError::DimensionMismatch(format!(
                "Fock level {n} outside cutoff {dim}"
            )));
        }
        let mut m = CMat::zeros((dim, dim));
        m[(n, n)] = C64::new(1.0, 0.0);
        DensityMatrix::new(m, ModeDims::Single(dim))
    }

    /// Single-mode thermal state with mean occupation `nbar`, renormalized on
    /// the truncated space.
    pub fn thermal(dim: usize, nbar: f64) -> Result<Self, ModelError> {
        if dim < 2 {
            return Err(ModelError::InvalidDimension { dim });
        }
        if !(nbar >= 0.0) {
            return Err(ModelError::InvalidConfig(format!("nbar must be nonnegative, got {nbar}")));
        }
        let x = nbar / (1.0 + nbar);
        let mut p: Vec<f64> = (0..dim).map(|n| x.powi(n as i32)).collect();
        let z: f64 = p.iter().sum();
        p.iter_mut().for_each(|v| *v /= z);
        let mut m = CMat::zeros((dim, dim));
        for (n, &pn) in p.iter().enumerate() {
            m[(n, n)] = C64::new(pn, 0.0);
        }
        DensityMatrix::new(m, ModeDims::Single(dim))
    }
}

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("invalid mode dimension {dim} (need at least 2 levels)")]
    InvalidDimension { dim: usize },

    #[error("invalid model configuration: {0}")]
    InvalidConfig(String),

    #[error("temperature must be positive, got {temperature}")]
    NonPositiveTemperature { temperature: f64 },

    #[error("density matrix is not Hermitian (deviation {deviation:.3e})")]
    StateNotHermitian { deviation: f64 },

    #[error("density matrix trace is {trace}, expected 1")]
    StateTraceNotOne { trace: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Annihilation operator on a `dim`-level truncated Fock space:
/// `<k|a|k+1> = sqrt(k+1)`.
pub fn annihilation(dim: usize) -> Result<CMat, ModelError> {
    if dim < 2 {
        return Err(ModelError::InvalidDimension { dim });
    }
    let mut a = CMat::zeros((dim, dim));
    for k in 0..dim - 1 {
        a[(k, k + 1)] = C64::new(((k + 1) as f64).sqrt(), 0.0);
    }
    Ok(a)
}

/// Number operator `a\u{2020}a = diag(0, 1, ..., dim-1)`.
pub fn number_operator(dim: usize) -> Result<CMat, ModelError> {
    if dim < 2 {
        return Err(ModelError::InvalidDimension { dim });
    }
    let mut n = CMat::zeros((dim, dim));
    for k in 0..dim {
        n[(k, k)] = C64::new(k as f64, 0.0);
    }
    Ok(n)
}

/// Quadrature operators `X = (a + a\u{2020})/sqrt(2)` and
/// `P = (a - a\u{2020})/(i sqrt(2))`; vacuum variance 1/2 in this convention.
pub fn quadratures(dim: usize) -> Result<(CMat, CMat), ModelError> {
    let a = annihilation(dim)?;
    let ad = linalg::dagger(&a);
    let s = 1.0 / 2.0f64.sqrt();
    let x = (&a + &ad).mapv(|z| z * s);
    let p = (&a - &ad).mapv(|z| z * C64::new(0.0, -s));
    Ok((x, p))
}

/// Builds the joint Hamiltonian on the A (x) B ordering:
/// `omega_a a\u{2020}a (x) I + I (x) omega_b b\u{2020}b + I (x) b_ext (b + b\u{2020})`
/// plus the interaction term selected by the configuration. All matrix
/// elements are real. Negative `b_ext` is accepted (derivative probes).
pub fn build_hamiltonian(cfg: &ModelConfig) -> Result<CMat, ModelError> {
    if cfg.n_a < 2 || cfg.n_b < 2 {
        return Err(ModelError::InvalidDimension { dim: cfg.n_a.min(cfg.n_b) });
    }
    let a = annihilation(cfg.n_a)?;
    let b = annihilation(cfg.n_b)?;
    let num_a = number_operator(cfg.n_a)?;
    let num_b = number_operator(cfg.n_b)?;
    let xb = &b + &linalg::dagger(&b);
    let ia = eye(cfg.n_a);
    let ib = eye(cfg.n_b);

    let coupling_a = match cfg.interaction {
        Interaction::Quadratic => {
            let xa = &a + &linalg::dagger(&a);
            xa.dot(&xa)
        }
        Interaction::RadiationPressure => num_a.clone(),
    };

    let mut h = kron(&num_a.mapv(|z| z * cfg.omega_a), &ib);
    h = &h + &kron(&ia, &num_b.mapv(|z| z * cfg.omega_b));
    h = &h + &kron(&ia, &xb.mapv(|z| z * cfg.b_ext));
    h = &h + &kron(&coupling_a.mapv(|z| z * cfg.g), &xb);
    Ok(h)
}

/// Boltzmann weights `exp(-(E_n - E_0)/T)` for an ascending spectrum,
/// normalized to unit sum. The ground-energy shift is exact and avoids
/// underflow at low temperature.
pub fn gibbs_weights(eigenvalues: &[f64], temperature: f64) -> Vec<f64> {
    let e0 = eigenvalues[0];
    let mut w: Vec<f64> = eigenvalues.iter().map(|&e| (-(e - e0) / temperature).exp()).collect();
    let z: f64 = w.iter().sum();
    w.iter_mut().for_each(|v| *v /= z);
    w
}

/// Global Gibbs state `exp(-(H - E_0)/T) / tr[...]` of a Hermitian
/// Hamiltonian. The returned state carries single-space metadata; use
/// [`joint_gibbs`] for the bipartite pipeline.
pub fn gibbs_state(h: &CMat, temperature: f64) -> Result<DensityMatrix, ModelError> {
    if !(temperature > 0.0) {
        return Err(ModelError::NonPositiveTemperature { temperature });
    }
    let spec = eigh(h)?;
    let rho = gibbs_from_spectral(&spec, temperature);
    DensityMatrix::new(rho, ModeDims::Single(spec.dim()))
}

/// Gibbs state from a precomputed spectral decomposition of `H`.
pub fn gibbs_from_spectral(spec: &SpectralDecomposition, temperature: f64) -> CMat {
    let w = gibbs_weights(&spec.eigenvalues, temperature);
    spec.reconstruct(&w)
}

/// Convenience: build the Hamiltonian for `cfg`, form the global Gibbs state
/// and tag it with the A (x) B factorization.
pub fn joint_gibbs(cfg: &ModelConfig) -> Result<DensityMatrix, ModelError> {
    let h = build_hamiltonian(cfg)?;
    let rho = gibbs_state(&h, cfg.temperature)?;
    rho.with_dims(ModeDims::Pair { dim_a: cfg.n_a, dim_b: cfg.n_b })
}

/// Reduced state of resonator A (partial trace over B).
pub fn probe_state(rho_joint: &DensityMatrix, cfg: &ModelConfig) -> Result<DensityMatrix, ModelError> {
    match rho_joint.dims {
        ModeDims::Pair { dim_a, dim_b } if dim_a == cfg.n_a && dim_b == cfg.n_b => {
            let reduced = partial_trace(&rho_joint.matrix, dim_a, dim_b, Subsystem::A)?;
            DensityMatrix::new(reduced, ModeDims::Single(dim_a))
        }
        ModeDims::Pair { dim_a, dim_b } => Err(ModelError::DimensionMismatch(format!(
            "joint state has cutoffs ({dim_a},{dim_b}) but config declares ({},{})",
            cfg.n_a, cfg.n_b
        ))),
        ModeDims::Single(_) => Err(ModelError::DimensionMismatch(
            "probe reduction requires a bipartite state".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{dagger, expectation, max_abs, max_abs_diff};
    use approx::assert_abs_diff_eq;

    fn base_cfg() -> ModelConfig {
        ModelConfig {
            omega_a: 1.0,
            omega_b: 0.04,
            g: 0.0,
            b_ext: 0.0,
            temperature: 0.3,
            interaction: Interaction::Quadratic,
            n_a: 8,
            n_b: 8,
        }
    }

    #[test]
    fn annihilation_two_level() {
        let a = annihilation(2).unwrap();
        assert_eq!(a[(0, 1)], C64::new(1.0, 0.0));
        assert_eq!(a[(0, 0)], C64::new(0.0, 0.0));
        assert_eq!(a[(1, 0)], C64::new(0.0, 0.0));
        assert_eq!(a[(1, 1)], C64::new(0.0, 0.0));
    }

    #[test]
    fn annihilation_entries_are_sqrt_ladder() {
        let a = annihilation(3).unwrap();
        assert_abs_diff_eq!(a[(0, 1)].re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(a[(1, 2)].re, 2.0f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn annihilation_rejects_small_dimension() {
        assert!(matches!(annihilation(1), Err(ModelError::InvalidDimension { dim: 1 })));
    }

    #[test]
    fn commutator_is_identity_up_to_truncation() {
        let d = 20;
        let a = annihilation(d).unwrap();
        let ad = dagger(&a);
        let comm = &a.dot(&ad) - &ad.dot(&a);
        for k in 0..d - 1 {
            assert_abs_diff_eq!(comm[(k, k)].re, 1.0, epsilon = 1e-12);
        }
        // truncation artifact at the top of the ladder: 1 - d
        assert_abs_diff_eq!(comm[(d - 1, d - 1)].re, 1.0 - d as f64, epsilon = 1e-12);
    }

    #[test]
    fn quadrature_x_two_level() {
        let (x, _) = quadratures(2).unwrap();
        let s = 1.0 / 2.0f64.sqrt();
        assert_abs_diff_eq!(x[(0, 1)].re, s, epsilon = 1e-15);
        assert_abs_diff_eq!(x[(1, 0)].re, s, epsilon = 1e-15);
    }

    #[test]
    fn vacuum_quadrature_variance_is_half() {
        for d in [2usize, 5, 12] {
            let (x, _) = quadratures(d).unwrap();
            let vac = DensityMatrix::fock(d, 0).unwrap();
            let x2 = x.dot(&x);
            assert_abs_diff_eq!(expectation(&vac.matrix, &x2), 0.5, epsilon = 1e-14);
        }
    }

    #[test]
    fn quadrature_commutator_is_i_up_to_truncation() {
        let d = 20;
        let (x, p) = quadratures(d).unwrap();
        let comm = &x.dot(&p) - &p.dot(&x);
        for k in 0..d - 1 {
            assert!((comm[(k, k)] - C64::new(0.0, 1.0)).norm() <= 1e-12);
        }
        // last diagonal entry is a truncation artifact
        assert!((comm[(d - 1, d - 1)] - C64::new(0.0, 1.0)).norm() > 1.0);
    }

    #[test]
    fn quadratures_are_hermitian() {
        let (x, p) = quadratures(9).unwrap();
        assert!(hermiticity_error(&x) == 0.0);
        assert!(hermiticity_error(&p) == 0.0);
    }

    #[test]
    fn decoupled_hamiltonian_is_diagonal() {
        let cfg = base_cfg();
        let h = build_hamiltonian(&cfg).unwrap();
        for m in 0..cfg.n_a {
            for k in 0..cfg.n_b {
                let idx = m * cfg.n_b + k;
                let expect = cfg.omega_a * m as f64 + cfg.omega_b * k as f64;
                assert_abs_diff_eq!(h[(idx, idx)].re, expect, epsilon = 1e-12);
            }
        }
        let diag_part: f64 = (0..h.nrows()).map(|i| h[(i, i)].norm()).sum();
        let total: f64 = h.iter().map(|z| z.norm()).sum();
        assert_abs_diff_eq!(diag_part, total, epsilon = 1e-12);
    }

    #[test]
    fn quadratic_matrix_element_from_ladder_expansion() {
        // <2,1|H|0,0> = g sqrt(2): (a†)^2|0> = sqrt(2)|2> and b†|0> = |1>
        let cfg = ModelConfig { g: 0.13, b_ext: 0.0, n_a: 3, n_b: 2, ..base_cfg() };
        let h = build_hamiltonian(&cfg).unwrap();
        let row = 2 * cfg.n_b + 1;
        assert_abs_diff_eq!(h[(row, 0)].re, cfg.g * 2.0f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn radiation_pressure_matrix_elements() {
        let cfg = ModelConfig {
            g: 0.2,
            b_ext: 0.0,
            interaction: Interaction::RadiationPressure,
            n_a: 4,
            n_b: 3,
            ..base_cfg()
        };
        let h = build_hamiltonian(&cfg).unwrap();
        // <1,1|H|1,0> = g * 1
        assert_abs_diff_eq!(h[(1 * cfg.n_b + 1, 1 * cfg.n_b)].re, cfg.g, epsilon = 1e-14);
        // vacuum of A decouples: <0,k|H_int|0,k'> has no g contribution
        for k in 0..cfg.n_b {
            for kp in 0..cfg.n_b {
                if k != kp {
                    // only b_ext (here 0) could connect these
                    assert_abs_diff_eq!(h[(k, kp)].re, 0.0, epsilon = 1e-14);
                }
            }
        }
    }

    #[test]
    fn hamiltonian_is_hermitian_for_valid_configs() {
        for interaction in [Interaction::Quadratic, Interaction::RadiationPressure] {
            let cfg = ModelConfig { g: 0.07, b_ext: 0.05, interaction, ..base_cfg() };
            let h = build_hamiltonian(&cfg).unwrap();
            assert!(hermiticity_error(&h) <= 1e-12);
        }
    }

    #[test]
    fn decoupled_models_agree_exactly() {
        let quad = ModelConfig { g: 0.0, b_ext: 0.03, ..base_cfg() };
        let rp = ModelConfig { interaction: Interaction::RadiationPressure, ..quad.clone() };
        let hq = build_hamiltonian(&quad).unwrap();
        let hr = build_hamiltonian(&rp).unwrap();
        assert_eq!(max_abs_diff(&hq, &hr), 0.0);
    }

    #[test]
    fn gibbs_two_level_populations() {
        let mut h = CMat::zeros((2, 2));
        h[(1, 1)] = C64::new(1.0, 0.0);
        let rho = gibbs_state(&h, 1.0).unwrap();
        let z = 1.0 + (-1.0f64).exp();
        assert_abs_diff_eq!(rho.matrix[(0, 0)].re, 1.0 / z, epsilon = 1e-12);
        assert_abs_diff_eq!(rho.matrix[(1, 1)].re, (-1.0f64).exp() / z, epsilon = 1e-12);
    }

    #[test]
    fn gibbs_infinite_temperature_limit() {
        let cfg = ModelConfig { g: 0.02, b_ext: 0.01, n_a: 4, n_b: 4, ..base_cfg() };
        let h = build_hamiltonian(&cfg).unwrap();
        let hnorm = max_abs(&h);
        let rho = gibbs_state(&h, 1e6 * hnorm).unwrap();
        let uniform = eye(16).mapv(|z| z / 16.0);
        assert!(max_abs_diff(&rho.matrix, &uniform) <= 1e-5);
    }

    #[test]
    fn gibbs_commutes_with_hamiltonian() {
        let cfg = ModelConfig { g: 0.05, b_ext: 0.02, ..base_cfg() };
        let h = build_hamiltonian(&cfg).unwrap();
        let rho = gibbs_state(&h, 0.2).unwrap();
        let comm = &h.dot(&rho.matrix) - &rho.matrix.dot(&h);
        assert!(max_abs(&comm) <= 1e-10);
    }

    #[test]
    fn gibbs_rejects_nonpositive_temperature() {
        let h = eye(2);
        assert!(matches!(gibbs_state(&h, 0.0), Err(ModelError::NonPositiveTemperature { .. })));
        assert!(matches!(gibbs_state(&h, -1.0), Err(ModelError::NonPositiveTemperature { .. })));
    }

    #[test]
    fn gibbs_populations_nonincreasing_in_energy() {
        let cfg = ModelConfig { g: 0.03, b_ext: 0.05, ..base_cfg() };
        let h = build_hamiltonian(&cfg).unwrap();
        let spec = eigh(&h).unwrap();
        let w = gibbs_weights(&spec.eigenvalues, 0.1);
        for pair in w.windows(2) {
            assert!(pair[0] >= pair[1]);
        }
    }

    #[test]
    fn probe_of_decoupled_model_is_single_mode_thermal() {
        let cfg = ModelConfig { temperature: 0.4, ..base_cfg() };
        let rho = joint_gibbs(&cfg).unwrap();
        let probe = probe_state(&rho, &cfg).unwrap();
        // single-mode Boltzmann weights on the truncated space
        let beta = 1.0 / cfg.temperature;
        let w: Vec<f64> = (0..cfg.n_a).map(|n| (-beta * n as f64).exp()).collect();
        let z: f64 = w.iter().sum();
        for n in 0..cfg.n_a {
            assert_abs_diff_eq!(probe.matrix[(n, n)].re, w[n] / z, epsilon = 1e-10);
        }
    }

    #[test]
    fn drive_on_b_leaves_decoupled_probe_unchanged() {
        let cfg0 = base_cfg();
        let cfg1 = ModelConfig { b_ext: 0.35, ..base_cfg() };
        let p0 = probe_state(&joint_gibbs(&cfg0).unwrap(), &cfg0).unwrap();
        let p1 = probe_state(&joint_gibbs(&cfg1).unwrap(), &cfg1).unwrap();
        assert!(max_abs_diff(&p0.matrix, &p1.matrix) <= 1e-12);
    }

    #[test]
    fn probe_trace_is_one() {
        let cfg = ModelConfig { g: 0.04, b_ext: 0.06, temperature: 0.05, ..base_cfg() };
        let probe = probe_state(&joint_gibbs(&cfg).unwrap(), &cfg).unwrap();
        assert!((trace(&probe.matrix) - C64::new(1.0, 0.0)).norm() <= 1e-10);
    }

    #[test]
    fn probe_rejects_mismatched_cutoffs() {
        let cfg = base_cfg();
        let rho = joint_gibbs(&cfg).unwrap();
        let other = cfg.with_cutoffs(9, 9);
        assert!(matches!(probe_state(&rho, &other), Err(ModelError::DimensionMismatch(_))));
    }

    #[test]
    fn density_matrix_rejects_bad_trace() {
        let m = eye(2);
        assert!(matches!(
            DensityMatrix::new(m, ModeDims::Single(2)),
            Err(ModelError::StateTraceNotOne { .. })
        ));
    }

    #[test]
    fn config_validation() {
        let mut cfg = base_cfg();
        assert!(cfg.validate().is_ok());
        cfg.temperature = 0.0;
        assert!(cfg.validate().is_err());
        cfg = base_cfg();
        cfg.n_a = 1;
        assert!(cfg.validate().is_err());
        cfg = base_cfg();
        cfg.b_ext = -0.1;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn thermal_constructor_matches_gibbs_of_single_oscillator() {
        // thermal(nbar) with nbar = 1/(e^{omega/T}-1) equals the single-mode
        // Gibbs state up to truncation of the tail
        let (omega, t, d) = (1.0f64, 0.7f64, 30);
        let nbar = 1.0 / ((omega / t).exp() - 1.0);
        let th = DensityMatrix::thermal(d, nbar).unwrap();
        let mut h = CMat::zeros((d, d));
        for k in 0..d {
            h[(k, k)] = C64::new(omega * k as f64, 0.0);
        }
        let gb = gibbs_state(&h, t).unwrap();
        assert!(max_abs_diff(&th.matrix, &gb.matrix) <= 1e-10);
    }
}
