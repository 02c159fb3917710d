//! Quadrature-moment analysis of the probe state: variances and covariance,
//! squeezing, von Neumann entropy, relative-entropy non-Gaussianity and
//! kurtosis.
//!
//! Entropies are in nats throughout.

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::linalg::{eigh, expectation, eye, LinalgError};
use crate::model::{DensityMatrix, ModeDims, ModelError};

/// A state counts as squeezed when the minimum rotated variance sits below
/// `1/2 - SQUEEZE_MARGIN`.
pub const SQUEEZE_MARGIN: f64 = 1e-6;
/// Eigenvalues below this floor are dropped from the entropy sum.
pub const ENTROPY_EIGENVALUE_FLOOR: f64 = 1e-14;
/// Probe eigenvalues in `[-NEGATIVE_EIGENVALUE_TOL, 0)` are clipped to zero;
/// more negative values are an error.
pub const NEGATIVE_EIGENVALUE_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum DiagnosticsError {
    #[error("cutoff {dim} too small for fourth moments (need at least {min})")]
    CutoffTooSmall { dim: usize, min: usize },

    #[error("state has eigenvalue {eigenvalue:.3e} below the positivity tolerance")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    #[error("diagnostics require a single-mode state")]
    MultiModeState,

    #[error(transparent)]
    Model(#[from] ModelError),

    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type DiagnosticsResult<T> = Result<T, DiagnosticsError>;

/// First, second and fourth quadrature moments plus Gaussian-reference
/// statistics of a single-mode state.
///
/// [`quadrature_moments`] fills everything except the entropy fields, which
/// stay `NaN` until [`non_gaussianity`] populates them.
#[derive(Debug, Clone, Copy)]
pub struct GaussianSummary {
    pub mean_x: f64,
    pub mean_p: f64,
    pub var_x: f64,
    pub var_p: f64,
    /// Symmetrized covariance `<{dX, dP}>/2`.
    pub cov_xp: f64,
    /// Smaller eigenvalue of the 2x2 covariance matrix.
    pub min_rotated_variance: f64,
    /// Symplectic eigenvalue `sqrt(var_x var_p - cov^2)`; `>= 1/2` for
    /// physical states.
    pub symplectic_nu: f64,
    /// Entropy of the Gaussian reference state with the same first and second
    /// moments (nats).
    pub entropy_gaussian: f64,
    /// Von Neumann entropy of the state itself (nats).
    pub entropy_state: f64,
    /// Non-Gaussianity `entropy_gaussian - entropy_state` (nats).
    pub delta: f64,
    /// `<dX^4>/<dX^2>^2`; 3 for Gaussian statistics.
    pub kurtosis_x: f64,
    pub kurtosis_p: f64,
}

fn require_single_mode(rho: &DensityMatrix) -> DiagnosticsResult<usize> {
    match rho.dims {
        ModeDims::Single(d) => Ok(d),
        ModeDims::Pair { .. } => Err(DiagnosticsError::MultiModeState),
    }
}

/// Means, central variances, symmetrized covariance and fourth central
/// moments of the quadratures, computed as operator expectations.
pub fn quadrature_moments(rho: &DensityMatrix) -> DiagnosticsResult<GaussianSummary> {
    let d = require_single_mode(rho)?;
    // fourth powers of the ladder operators need headroom in the truncated
    // space
    if d < 6 {
        return Err(DiagnosticsError::CutoffTooSmall { dim: d, min: 6 });
    }
    let (x, p) = crate::model::quadratures(d)?;
    let mean_x = expectation(&rho.matrix, &x);
    let mean_p = expectation(&rho.matrix, &p);
    let xc = &x - &eye(d).mapv(|z| z * mean_x);
    let pc = &p - &eye(d).mapv(|z| z * mean_p);
    let xc2 = xc.dot(&xc);
    let pc2 = pc.dot(&pc);
    let var_x = expectation(&rho.matrix, &xc2);
    let var_p = expectation(&rho.matrix, &pc2);
    let sym = (&xc.dot(&pc) + &pc.dot(&xc)).mapv(|z| z * C64::new(0.5, 0.0));
    let cov_xp = expectation(&rho.matrix, &sym);
    let m4_x = expectation(&rho.matrix, &xc2.dot(&xc2));
    let m4_p = expectation(&rho.matrix, &pc2.dot(&pc2));

    let half_tr = 0.5 * (var_x + var_p);
    let rad = (0.5 * (var_x - var_p)).hypot(cov_xp);
    let min_rotated_variance = half_tr - rad;
    let symplectic_nu = (var_x * var_p - cov_xp * cov_xp).max(0.0).sqrt();

    Ok(GaussianSummary {
        mean_x,
        mean_p,
        var_x,
        var_p,
        cov_xp,
        min_rotated_variance,
        symplectic_nu,
        entropy_gaussian: f64::NAN,
        entropy_state: f64::NAN,
        delta: f64::NAN,
        kurtosis_x: m4_x / (var_x * var_x),
        kurtosis_p: m4_p / (var_p * var_p),
    })
}

/// Smaller eigenvalue of the covariance matrix and whether it sits below the
/// vacuum level `1/2` by more than [`SQUEEZE_MARGIN`].
pub fn squeezing_analysis(summary: &GaussianSummary) -> (f64, bool) {
    let v = summary.min_rotated_variance;
    (v, v < 0.5 - SQUEEZE_MARGIN)
}

/// Von Neumann entropy `-sum q ln q` (nats) over eigenvalues above
/// [`ENTROPY_EIGENVALUE_FLOOR`].
pub fn von_neumann_entropy(rho: &DensityMatrix) -> DiagnosticsResult<f64> {
    let spec = eigh(&rho.matrix)?;
    if spec.eigenvalues[0] < -NEGATIVE_EIGENVALUE_TOL {
        return Err(DiagnosticsError::NotPositiveSemidefinite { eigenvalue: spec.eigenvalues[0] });
    }
    let s: f64 = spec
        .eigenvalues
        .iter()
        .filter(|&&q| q > ENTROPY_EIGENVALUE_FLOOR)
        .map(|&q| -q * q.ln())
        .sum();
    Ok(s.max(0.0))
}

/// Entropy of the single-mode Gaussian state with symplectic eigenvalue `nu`:
/// `(nu+1/2) ln(nu+1/2) - (nu-1/2) ln(nu-1/2)`, with the `nu -> 1/2` limit
/// defined as 0.
pub fn gaussian_entropy(nu: f64) -> f64 {
    let a = nu + 0.5;
    let b = nu - 0.5;
    let upper = a * a.ln();
    if b <= 0.0 {
        // slightly sub-Heisenberg nu only arises from round-off
        return upper.max(0.0);
    }
    (upper - b * b.ln()).max(0.0)
}

/// Fully populated summary including the relative-entropy non-Gaussianity
/// `delta = S(rho_G) - S(rho)` against the Gaussian reference state sharing
/// the first and second moments.
pub fn non_gaussianity(rho: &DensityMatrix) -> DiagnosticsResult<GaussianSummary> {
    let mut summary = quadrature_moments(rho)?;
    summary.entropy_state = von_neumann_entropy(rho)?;
    summary.entropy_gaussian = gaussian_entropy(summary.symplectic_nu);
    summary.delta = summary.entropy_gaussian - summary.entropy_state;
    Ok(summary)
}
