//! Wigner quasiprobability distribution of a single-mode state on a
//! rectangular phase-space grid, with negativity statistics.
//!
//! Conventions: quadratures `X = (a + a\u{2020})/sqrt(2)`,
//! `P = (a - a\u{2020})/(i sqrt(2))`, so the vacuum is
//! `W(x,p) = exp(-x^2-p^2)/pi` and `int W dx dp = 1`.
//!
//! Fock dyads are evaluated through the associated-Laguerre closed form: for
//! `m >= n`,
//!
//! ```text
//! W_{|m><n|}(x,p) = (-1)^n/pi sqrt(n!/m!) (sqrt(2)(x-ip))^{m-n}
//!                   e^{-(x^2+p^2)} L_n^{m-n}(2(x^2+p^2))
//! ```
//!
//! and `W_{|n><m|}` is its complex conjugate. The kernel sum over a Hermitian
//! density matrix is real; the imaginary residue is checked against 1e-9 and
//! discarded.

use std::f64::consts::PI;

use ndarray::Array2;
use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::model::{DensityMatrix, ModeDims};
use crate::par::map_indexed;

/// Default grid-adequacy tolerance on the total integral.
pub const GRID_ADEQUACY_TOL: f64 = 1e-2;
/// Allowed imaginary residue of the kernel sum per cell.
pub const IMAG_RESIDUE_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum WignerError {
    #[error("grid axis must be strictly increasing and uniformly spaced ({0})")]
    NonUniformGrid(String),

    #[error("Wigner evaluation requires a single-mode state")]
    MultiModeState,

    #[error("kernel sum has imaginary residue {residue:.3e} at cell ({ix},{ip}); state is not Hermitian enough")]
    ImaginaryResidue { residue: f64, ix: usize, ip: usize },
}

/// Rectangular phase-space grid of Wigner values with summary statistics.
#[derive(Debug, Clone)]
pub struct WignerGrid {
    pub xs: Vec<f64>,
    pub ps: Vec<f64>,
    /// `values[(ix, ip)] = W(xs[ix], ps[ip])`.
    pub values: Array2<f64>,
    pub cell_area: f64,
    pub min_value: f64,
    /// `int max(-W, 0) dx dp` over the grid.
    pub negative_volume: f64,
    pub total_integral: f64,
}

impl WignerGrid {
    /// Whether the grid covers the state's support well enough for the
    /// Riemann normalization to hold at the given tolerance.
    pub fn adequate(&self, tol: f64) -> bool {
        (self.total_integral - 1.0).abs() <= tol
    }
}

/// Default axes: x, p in [-5, 5] with 201 points each.
pub fn default_axes() -> (Vec<f64>, Vec<f64>) {
    (linspace(-5.0, 5.0, 201), linspace(-5.0, 5.0, 201))
}

pub fn linspace(min: f64, max: f64, count: usize) -> Vec<f64> {
    assert!(count >= 2, "axis needs at least 2 points");
    let step = (max - min) / (count - 1) as f64;
    (0..count).map(|i| min + step * i as f64).collect()
}

fn check_axis(axis: &[f64], name: &str) -> Result<f64, WignerError> {
    if axis.len() < 2 {
        return Err(WignerError::NonUniformGrid(format!("{name}: need at least 2 points")));
    }
    let step = axis[1] - axis[0];
    if !(step > 0.0) {
        return Err(WignerError::NonUniformGrid(format!("{name}: not increasing")));
    }
    for w in axis.windows(2) {
        let s = w[1] - w[0];
        if !(s > 0.0) || (s - step).abs() > 1e-9 * step.abs().max(1.0) {
            return Err(WignerError::NonUniformGrid(format!("{name}: nonuniform spacing")));
        }
    }
    Ok(step)
}

/// Wigner value at a single phase-space point.
fn wigner_point(rho: &Array2<C64>, x: f64, p: f64) -> C64 {
    let d = rho.nrows();
    let r2 = x * x + p * p;
    let z = 2.0 * r2;
    let gauss = (-r2).exp() / PI;
    let base = C64::new(x, -p) * 2.0f64.sqrt();
    let mut pow = C64::new(1.0, 0.0);
    let mut pref_k = 1.0f64; // 1/sqrt(k!)
    let mut acc = C64::new(0.0, 0.0);
    for k in 0..d {
        if k > 0 {
            pow *= base;
            pref_k /= (k as f64).sqrt();
        }
        // associated Laguerre L_n^k(z) by upward recurrence in n
        let mut l_prev = 0.0f64;
        let mut l = 1.0f64;
        let mut pref = pref_k; // sqrt(n!/(n+k)!)
        for n in 0..d - k {
            let m = n + k;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let coef = sign * pref * l * gauss;
            if k == 0 {
                acc += rho[(n, n)] * coef;
            } else {
                acc += (rho[(m, n)] * pow + rho[(n, m)] * pow.conj()) * coef;
            }
            let nf = n as f64;
            let l_next = ((2.0 * nf + k as f64 + 1.0 - z) * l - (nf + k as f64) * l_prev)
                / (nf + 1.0);
            l_prev = l;
            l = l_next;
            pref *= ((nf + 1.0) / (nf + 1.0 + k as f64)).sqrt();
        }
    }
    acc
}

/// Evaluate the Wigner function of a single-mode state on the grid, using
/// the given number of workers (0 = default pool, 1 = sequential).
pub fn wigner_grid_with_threads(
    rho: &DensityMatrix,
    xs: &[f64],
    ps: &[f64],
    threads: usize,
) -> Result<WignerGrid, WignerError> {
    match rho.dims {
        ModeDims::Single(_) => {}
        ModeDims::Pair { .. } => return Err(WignerError::MultiModeState),
    }
    let dx = check_axis(xs, "x")?;
    let dp = check_axis(ps, "p")?;
    let cell_area = dx * dp;

    // rows of constant x are independent
    let rows: Vec<Result<Vec<f64>, WignerError>> = map_indexed(xs.len(), threads, |ix| {
        let x = xs[ix];
        let mut row = Vec::with_capacity(ps.len());
        for (ip, &p) in ps.iter().enumerate() {
            let w = wigner_point(&rho.matrix, x, p);
            if w.im.abs() > IMAG_RESIDUE_TOL {
                return Err(WignerError::ImaginaryResidue { residue: w.im.abs(), ix, ip });
            }
            row.push(w.re);
        }
        Ok(row)
    });

    let mut values = Array2::<f64>::zeros((xs.len(), ps.len()));
    for (ix, row) in rows.into_iter().enumerate() {
        let row = row?;
        for (ip, w) in row.into_iter().enumerate() {
            values[(ix, ip)] = w;
        }
    }

    let mut min_value = f64::INFINITY;
    let mut negative_volume = 0.0;
    let mut total = 0.0;
    for &w in values.iter() {
        if w < min_value {
            min_value = w;
        }
        if w < 0.0 {
            negative_volume -= w * cell_area;
        }
        total += w * cell_area;
    }

    Ok(WignerGrid {
        xs: xs.to_vec(),
        ps: ps.to_vec(),
        values,
        cell_area,
        min_value,
        negative_volume,
        total_integral: total,
    })
}

/// Evaluate the Wigner function on the grid (default worker pool).
pub fn wigner_grid(rho: &DensityMatrix, xs: &[f64], ps: &[f64]) -> Result<WignerGrid, WignerError> {
    wigner_grid_with_threads(rho, xs, ps, 0)
}

/// Minimum cell value and the Riemann sum of the negative part.
pub fn wigner_negativity(grid: &WignerGrid) -> (f64, f64) {
    let mut min_value = f64::INFINITY;
    let mut negative_volume = 0.0;
    for &w in grid.values.iter() {
        if w < min_value {
            min_value = w;
        }
        if w < 0.0 {
            negative_volume -= w * grid.cell_area;
        }
    }
    (min_value, negative_volume)
}
