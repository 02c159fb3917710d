//! Dense complex-matrix foundation: Hermitian eigendecomposition, operator
//! functions, Kronecker products and the partial trace over a bipartite
//! factorization.
//!
//! Matrices are `ndarray::Array2<Complex64>` throughout. Eigendecompositions
//! are delegated to LAPACK's divide-and-conquer drivers (`dsyevd`/`zheevd`);
//! inputs whose imaginary parts are exactly zero take the real-symmetric path,
//! which is what every Hamiltonian and Gibbs state in this crate hits in
//! practice.

use std::os::raw::c_char;

use ndarray::{Array1, Array2, ShapeBuilder};
use thiserror::Error;

/// Complex scalar used throughout the crate.
pub type C64 = num_complex::Complex64;

/// Dense complex matrix in row-major logical order.
pub type CMat = Array2<C64>;

/// Entrywise tolerance for the Hermiticity check on eigensolver inputs.
pub const HERMITICITY_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |M - M\u{2020}| = {deviation:.3e} exceeds {tol:.1e}")]
    NotHermitian { deviation: f64, tol: f64 },

    #[error("eigensolver exceeded its iteration budget (lapack info = {info})")]
    NoConvergence { info: i32 },

    #[error("scalar function undefined on eigenvalue {eigenvalue:.6e}")]
    DomainError { eigenvalue: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

pub type LinalgResult<T> = Result<T, LinalgError>;

/// Which tensor factor to keep in a partial trace. Resonator A is always the
/// first Kronecker factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    /// Eigenvalues sorted ascending.
    pub eigenvalues: Vec<f64>,
    /// Unitary matrix whose columns are the corresponding eigenvectors.
    pub eigenvectors: CMat,
}

extern "C" {
    fn openblas_set_num_threads(num_threads: i32);
}

/// Pin the number of threads used inside BLAS/LAPACK calls. The crate's own
/// parallelism is at the level of independent parameter points, so callers
/// normally pin this to 1.
pub fn set_blas_threads(n: usize) {
    unsafe { openblas_set_num_threads(n.max(1) as i32) };
}

fn square_dim(m: &CMat) -> LinalgResult<usize> {
    let (r, c) = m.dim();
    if r != c {
        return Err(LinalgError::NotSquare { rows: r, cols: c });
    }
    Ok(r)
}

/// Max entrywise deviation from Hermiticity, `max_ij |M_ij - conj(M_ji)|`.
pub fn hermiticity_error(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            if d > dev {
                dev = d;
            }
        }
    }
    dev
}

/// Max entrywise absolute value.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

/// Max entrywise absolute difference.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    debug_assert_eq!(a.dim(), b.dim());
    a.iter()
        .zip(b.iter())
        .fold(0.0f64, |acc, (x, y)| acc.max((x - y).norm()))
}

/// Conjugate transpose.
pub fn dagger(m: &CMat) -> CMat {
    m.t().mapv(|z| z.conj())
}

pub fn trace(m: &CMat) -> C64 {
    m.diag().sum()
}

/// `Re tr(rho op)`, the expectation value of a Hermitian operator.
pub fn expectation(rho: &CMat, op: &CMat) -> f64 {
    let n = rho.nrows();
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += rho[(i, j)] * op[(j, i)];
        }
    }
    acc.re
}

/// Returns the real part as an `Array2<f64>` when every imaginary part is
/// exactly zero, which holds for all operators built from real ladder data.
fn real_view(m: &CMat) -> Option<Array2<f64>> {
    if m.iter().all(|z| z.im == 0.0) {
        Some(m.mapv(|z| z.re))
    } else {
        None
    }
}

fn complexify(m: &Array2<f64>) -> CMat {
    m.mapv(|x| C64::new(x, 0.0))
}

/// Kronecker product; dimensions multiply. The first argument is the first
/// tensor factor everywhere in this crate.
pub fn kron(a: &CMat, b: &CMat) -> CMat {
    ndarray::linalg::kron(a, b)
}

fn lapack_dsyevd(n: usize, a: &mut [f64]) -> Result<Vec<f64>, i32> {
    let mut w = vec![0.0f64; n];
    let mut info = 0i32;
    let nn = n as i32;
    let jobz = b'V' as c_char;
    let uplo = b'L' as c_char;
    unsafe {
        let (mut wkopt, mut iwkopt, query) = (0.0f64, 0i32, -1i32);
        lapack_sys::dsyevd_(
            &jobz, &uplo, &nn, a.as_mut_ptr(), &nn, w.as_mut_ptr(),
            &mut wkopt, &query, &mut iwkopt, &query, &mut info,
        );
        if info != 0 {
            return Err(info);
        }
        let lwork = wkopt as i32;
        let liwork = iwkopt;
        let mut work = vec![0.0f64; lwork as usize];
        let mut iwork = vec![0i32; liwork as usize];
        lapack_sys::dsyevd_(
            &jobz, &uplo, &nn, a.as_mut_ptr(), &nn, w.as_mut_ptr(),
            work.as_mut_ptr(), &lwork, iwork.as_mut_ptr(), &liwork, &mut info,
        );
    }
    if info != 0 {
        return Err(info);
    }
    Ok(w)
}

fn lapack_zheevd(n: usize, a: &mut [C64]) -> Result<Vec<f64>, i32> {
    let mut w = vec![0.0f64; n];
    let mut info = 0i32;
    let nn = n as i32;
    let jobz = b'V' as c_char;
    let uplo = b'L' as c_char;
    unsafe {
        let mut wkopt = C64::new(0.0, 0.0);
        let mut rwkopt = 0.0f64;
        let mut iwkopt = 0i32;
        let query = -1i32;
        lapack_sys::zheevd_(
            &jobz, &uplo, &nn, a.as_mut_ptr() as *mut _, &nn, w.as_mut_ptr(),
            &mut wkopt as *mut _ as *mut _, &query,
            &mut rwkopt, &query, &mut iwkopt, &query, &mut info,
        );
        if info != 0 {
            return Err(info);
        }
        let lwork = wkopt.re as i32;
        let lrwork = rwkopt as i32;
        let liwork = iwkopt;
        let mut work = vec![C64::new(0.0, 0.0); lwork as usize];
        let mut rwork = vec![0.0f64; lrwork as usize];
        let mut iwork = vec![0i32; liwork as usize];
        lapack_sys::zheevd_(
            &jobz, &uplo, &nn, a.as_mut_ptr() as *mut _, &nn, w.as_mut_ptr(),
            work.as_mut_ptr() as *mut _, &lwork,
            rwork.as_mut_ptr(), &lrwork, iwork.as_mut_ptr(), &liwork, &mut info,
        );
    }
    if info != 0 {
        return Err(info);
    }
    Ok(w)
}

/// Hermitian eigendecomposition with eigenvalues in ascending order.
///
/// Inputs must be Hermitian within [`HERMITICITY_TOL`]. Real-symmetric inputs
/// (exactly zero imaginary parts) are dispatched to the faster real driver.
pub fn eigh(m: &CMat) -> LinalgResult<SpectralDecomposition> {
    let n = square_dim(m)?;
    let dev = hermiticity_error(m);
    if dev > HERMITICITY_TOL {
        return Err(LinalgError::NotHermitian { deviation: dev, tol: HERMITICITY_TOL });
    }
    if let Some(re) = real_view(m) {
        // column-major copy for LAPACK
        let mut a: Vec<f64> = re.t().iter().cloned().collect();
        let w = lapack_dsyevd(n, &mut a).map_err(|info| LinalgError::NoConvergence { info })?;
        let vr = Array2::from_shape_vec((n, n).f(), a).expect("eigenvector shape");
        Ok(SpectralDecomposition { eigenvalues: w, eigenvectors: complexify(&vr) })
    } else {
        let mut a: Vec<C64> = m.t().iter().cloned().collect();
        let w = lapack_zheevd(n, &mut a).map_err(|info| LinalgError::NoConvergence { info })?;
        let v = Array2::from_shape_vec((n, n).f(), a).expect("eigenvector shape");
        Ok(SpectralDecomposition { eigenvalues: w, eigenvectors: v })
    }
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V diag(w) V†` for an arbitrary real spectrum `w`. Stays on the real
    /// BLAS path when the eigenvectors carry no imaginary parts. The result is
    /// re-symmetrized as `(M + M†)/2` to suppress round-off drift.
    pub fn reconstruct(&self, weights: &[f64]) -> CMat {
        let n = self.dim();
        assert_eq!(weights.len(), n, "weight count must match dimension");
        if let Some(vr) = real_view(&self.eigenvectors) {
            let mut vw = vr.clone();
            for (j, &w) in weights.iter().enumerate() {
                vw.column_mut(j).mapv_inplace(|x| x * w);
            }
            let raw = vw.dot(&vr.t());
            let sym = (&raw + &raw.t()) * 0.5;
            complexify(&sym)
        } else {
            let mut vw = self.eigenvectors.clone();
            for (j, &w) in weights.iter().enumerate() {
                vw.column_mut(j).mapv_inplace(|z| z * w);
            }
            let raw = vw.dot(&dagger(&self.eigenvectors));
            (&raw + &dagger(&raw)) * C64::new(0.5, 0.0)
        }
    }

    /// Transform an operator into the eigenbasis: `V† op V`.
    pub fn to_eigenbasis(&self, op: &CMat) -> CMat {
        dagger(&self.eigenvectors).dot(op).dot(&self.eigenvectors)
    }

    /// Transform an operator from the eigenbasis back: `V op V†`.
    pub fn from_eigenbasis(&self, op: &CMat) -> CMat {
        self.eigenvectors.dot(op).dot(&dagger(&self.eigenvectors))
    }

    /// Largest reconstruction residual `max |V diag(lambda) V† - M|` against a
    /// reference matrix.
    pub fn reconstruction_residual(&self, m: &CMat) -> f64 {
        max_abs_diff(&self.reconstruct(&self.eigenvalues), m)
    }
}

/// Apply a real scalar function to a Hermitian matrix through its spectrum:
/// `V diag(f(lambda)) V†`.
pub fn herm_func(m: &CMat, f: impl Fn(f64) -> f64) -> LinalgResult<CMat> {
    let spec = eigh(m)?;
    let mut vals = Vec::with_capacity(spec.dim());
    for &lam in &spec.eigenvalues {
        let y = f(lam);
        if !y.is_finite() {
            return Err(LinalgError::DomainError { eigenvalue: lam });
        }
        vals.push(y);
    }
    Ok(spec.reconstruct(&vals))
}

/// Partial trace of an operator on a bipartite space of dimension
/// `dim_a * dim_b`, keeping the requested factor. Mode A is the first factor:
/// the joint index is `i_a * dim_b + i_b`.
pub fn partial_trace(
    rho: &CMat,
    dim_a: usize,
    dim_b: usize,
    keep: Subsystem,
) -> LinalgResult<CMat> {
    let n = square_dim(rho)?;
    if n != dim_a * dim_b {
        return Err(LinalgError::DimensionMismatch(format!(
            "operator dimension {n} does not factor as {dim_a} x {dim_b}"
        )));
    }
    match keep {
        Subsystem::A => {
            let mut out = CMat::zeros((dim_a, dim_a));
            for i in 0..dim_a {
                for j in 0..dim_a {
                    let mut acc = C64::new(0.0, 0.0);
                    for k in 0..dim_b {
                        acc += rho[(i * dim_b + k, j * dim_b + k)];
                    }
                    out[(i, j)] = acc;
                }
            }
            Ok(out)
        }
        Subsystem::B => {
            let mut out = CMat::zeros((dim_b, dim_b));
            for i in 0..dim_b {
                for j in 0..dim_b {
                    let mut acc = C64::new(0.0, 0.0);
                    for k in 0..dim_a {
                        acc += rho[(k * dim_b + i, k * dim_b + j)];
                    }
                    out[(i, j)] = acc;
                }
            }
            Ok(out)
        }
    }
}

/// Identity matrix.
pub fn eye(n: usize) -> CMat {
    let mut m = CMat::zeros((n, n));
    for i in 0..n {
        m[(i, i)] = C64::new(1.0, 0.0);
    }
    m
}

/// Eigenvalues of a Hermitian matrix, ascending, without eigenvectors.
pub fn eigvalsh(m: &CMat) -> LinalgResult<Array1<f64>> {
    Ok(Array1::from(eigh(m)?.eigenvalues))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, seed: u64) -> CMat {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = CMat::zeros((n, n));
        for i in 0..n {
            m[(i, i)] = C64::new(rng.gen_range(-1.0..1.0), 0.0);
            for j in i + 1..n {
                let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    fn diag(vals: &[f64]) -> CMat {
        let mut m = CMat::zeros((vals.len(), vals.len()));
        for (i, &v) in vals.iter().enumerate() {
            m[(i, i)] = C64::new(v, 0.0);
        }
        m
    }

    #[test]
    fn kron_identity() {
        let i2 = eye(2);
        let out = kron(&i2, &i2);
        assert_eq!(max_abs_diff(&out, &eye(4)), 0.0);
    }

    #[test]
    fn kron_diagonal() {
        let out = kron(&diag(&[1.0, 2.0]), &diag(&[1.0, 0.0]));
        assert_eq!(max_abs_diff(&out, &diag(&[1.0, 0.0, 2.0, 0.0])), 0.0);
    }

    #[test]
    fn kron_matches_per_entry_action_on_product_vectors() {
        // (a (x) b)(v (x) w) = (a v) (x) (b w) for random 2x2 a, b
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut cval = || C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let a = CMat::from_shape_fn((2, 2), |_| cval());
        let b = CMat::from_shape_fn((2, 2), |_| cval());
        let v: Vec<C64> = (0..2).map(|_| cval()).collect();
        let w: Vec<C64> = (0..2).map(|_| cval()).collect();

        let big = kron(&a, &b);
        let mut vw = vec![C64::new(0.0, 0.0); 4];
        for i in 0..2 {
            for k in 0..2 {
                vw[i * 2 + k] = v[i] * w[k];
            }
        }
        let lhs: Vec<C64> = (0..4)
            .map(|r| (0..4).map(|c| big[(r, c)] * vw[c]).sum())
            .collect();

        let av: Vec<C64> = (0..2)
            .map(|r| (0..2).map(|c| a[(r, c)] * v[c]).sum())
            .collect();
        let bw: Vec<C64> = (0..2)
            .map(|r| (0..2).map(|c| b[(r, c)] * w[c]).sum())
            .collect();
        for i in 0..2 {
            for k in 0..2 {
                assert!((lhs[i * 2 + k] - av[i] * bw[k]).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn eigh_diagonal_sorts_ascending() {
        let spec = eigh(&diag(&[3.0, 1.0, 2.0])).unwrap();
        assert_abs_diff_eq!(spec.eigenvalues[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(spec.eigenvalues[1], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(spec.eigenvalues[2], 3.0, epsilon = 1e-12);
        // permutation eigenvectors: each column is a basis vector
        for j in 0..3 {
            let col = spec.eigenvectors.column(j);
            let big = col.iter().filter(|z| z.norm() > 0.5).count();
            assert_eq!(big, 1);
        }
    }

    #[test]
    fn eigh_pauli_x() {
        let mut m = CMat::zeros((2, 2));
        m[(0, 1)] = C64::new(1.0, 0.0);
        m[(1, 0)] = C64::new(1.0, 0.0);
        let spec = eigh(&m).unwrap();
        assert_abs_diff_eq!(spec.eigenvalues[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(spec.eigenvalues[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn eigh_reconstructs_random_hermitian() {
        let m = random_hermitian(6, 42);
        let spec = eigh(&m).unwrap();
        assert!(spec.reconstruction_residual(&m) <= 1e-10 * max_abs(&m).max(1.0));
        // orthonormality: V†V = I
        let vtv = dagger(&spec.eigenvectors).dot(&spec.eigenvectors);
        assert!(max_abs_diff(&vtv, &eye(6)) <= 1e-10);
    }

    #[test]
    fn eigh_eigenvalue_sum_equals_trace() {
        let m = random_hermitian(8, 3);
        let spec = eigh(&m).unwrap();
        let sum: f64 = spec.eigenvalues.iter().sum();
        let tr = trace(&m).re;
        assert_abs_diff_eq!(sum, tr, epsilon = 1e-10 * tr.abs().max(1.0));
    }

    #[test]
    fn eigh_rejects_non_hermitian() {
        let mut m = CMat::zeros((2, 2));
        m[(0, 1)] = C64::new(1.0, 0.0);
        assert!(matches!(eigh(&m), Err(LinalgError::NotHermitian { .. })));
    }

    #[test]
    fn eigh_rejects_non_square() {
        let m = CMat::zeros((2, 3));
        assert!(matches!(eigh(&m), Err(LinalgError::NotSquare { .. })));
    }

    #[test]
    fn herm_func_exp_of_zero_is_identity() {
        let m = CMat::zeros((3, 3));
        let out = herm_func(&m, f64::exp).unwrap();
        assert!(max_abs_diff(&out, &eye(3)) <= 1e-12);
    }

    #[test]
    fn herm_func_sqrt_diagonal() {
        let out = herm_func(&diag(&[1.0, 4.0]), f64::sqrt).unwrap();
        assert!(max_abs_diff(&out, &diag(&[1.0, 2.0])) <= 1e-12);
    }

    #[test]
    fn herm_func_domain_error_on_log_of_negative() {
        let err = herm_func(&diag(&[1.0, -2.0]), f64::ln).unwrap_err();
        assert!(matches!(err, LinalgError::DomainError { .. }));
    }

    /// Scaled-Taylor matrix exponential, the independent oracle for
    /// `herm_func(_, exp)`.
    fn expm_taylor(m: &CMat) -> CMat {
        let norm = max_abs(m) * m.nrows() as f64;
        let s = norm.log2().ceil().max(0.0) as u32 + 1;
        let scale = 1.0 / f64::powi(2.0, s as i32);
        let ms = m.mapv(|z| z * scale);
        let n = m.nrows();
        let mut term = eye(n);
        let mut acc = eye(n);
        for k in 1..30 {
            term = term.dot(&ms).mapv(|z| z / k as f64);
            acc = &acc + &term;
        }
        for _ in 0..s {
            acc = acc.dot(&acc);
        }
        acc
    }

    #[test]
    fn herm_func_exp_matches_taylor_series() {
        let m = random_hermitian(4, 11);
        let via_spec = herm_func(&m, f64::exp).unwrap();
        let via_taylor = expm_taylor(&m);
        assert!(max_abs_diff(&via_spec, &via_taylor) <= 1e-9);
    }

    #[test]
    fn herm_func_trace_is_sum_of_mapped_eigenvalues() {
        let m = random_hermitian(5, 19);
        let spec = eigh(&m).unwrap();
        let expect: f64 = spec.eigenvalues.iter().map(|&l| l.exp()).sum();
        let got = trace(&herm_func(&m, f64::exp).unwrap()).re;
        assert_abs_diff_eq!(got, expect, epsilon = 1e-10 * expect.abs());
    }

    fn random_density(n: usize, seed: u64) -> CMat {
        // A† A normalized to unit trace is a valid density matrix.
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = CMat::from_shape_fn((n, n), |_| {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        });
        let p = dagger(&a).dot(&a);
        let t = trace(&p);
        p.mapv(|z| z / t)
    }

    #[test]
    fn partial_trace_recovers_product_factor() {
        let ra = random_density(2, 5);
        let rb = random_density(3, 6);
        let joint = kron(&ra, &rb);
        let got_a = partial_trace(&joint, 2, 3, Subsystem::A).unwrap();
        assert!(max_abs_diff(&got_a, &ra) <= 1e-12);
        let got_b = partial_trace(&joint, 2, 3, Subsystem::B).unwrap();
        assert!(max_abs_diff(&got_b, &rb) <= 1e-12);
    }

    #[test]
    fn partial_trace_maximally_mixed() {
        let rho = eye(4).mapv(|z| z * 0.25);
        let got = partial_trace(&rho, 2, 2, Subsystem::B).unwrap();
        assert!(max_abs_diff(&got, &eye(2).mapv(|z| z * 0.5)) <= 1e-15);
    }

    #[test]
    fn partial_trace_bell_state_is_maximally_mixed() {
        // |phi+> = (|00> + |11>)/sqrt(2); reduced state is I/2
        let mut rho = CMat::zeros((4, 4));
        for &i in &[0usize, 3] {
            for &j in &[0usize, 3] {
                rho[(i, j)] = C64::new(0.5, 0.0);
            }
        }
        let got = partial_trace(&rho, 2, 2, Subsystem::A).unwrap();
        assert!(max_abs_diff(&got, &eye(2).mapv(|z| z * 0.5)) <= 1e-15);
    }

    #[test]
    fn partial_trace_preserves_trace() {
        let rho = random_density(6, 9);
        let got = partial_trace(&rho, 2, 3, Subsystem::A).unwrap();
        assert!((trace(&got) - trace(&rho)).norm() <= 1e-12);
    }

    #[test]
    fn partial_trace_dimension_mismatch() {
        let rho = random_density(5, 9);
        assert!(matches!(
            partial_trace(&rho, 2, 3, Subsystem::A),
            Err(LinalgError::DimensionMismatch(_))
        ));
    }

    #[test]
    fn partial_trace_is_local() {
        // tr_B[(x (x) I) rho] = x tr_B[rho]
        let rho = random_density(6, 21);
        let x = random_hermitian(2, 22);
        let lifted = kron(&x, &eye(3)).dot(&rho);
        let lhs = partial_trace(&lifted, 2, 3, Subsystem::A).unwrap();
        let rhs = x.dot(&partial_trace(&rho, 2, 3, Subsystem::A).unwrap());
        assert!(max_abs_diff(&lhs, &rhs) <= 1e-10);
    }

    proptest! {
        #[test]
        fn kron_is_associative(seed in 0u64..500) {
            // small integer entries keep every scalar product exact, so the
            // check pins the index layout with zero tolerance
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut m = |n: usize| CMat::from_shape_fn((n, n), |_| {
                C64::new(rng.gen_range(-2i32..=2) as f64, rng.gen_range(-2i32..=2) as f64)
            });
            let (a, b, c) = (m(2), m(3), m(2));
            let lhs = kron(&kron(&a, &b), &c);
            let rhs = kron(&a, &kron(&b, &c));
            prop_assert!(max_abs_diff(&lhs, &rhs) == 0.0);
        }

        #[test]
        fn eigh_reconstruction_property(seed in 0u64..200) {
            let m = random_hermitian(5, seed);
            let spec = eigh(&m).unwrap();
            prop_assert!(spec.reconstruction_residual(&m) <= 1e-10 * max_abs(&m).max(1.0));
            for w in spec.eigenvalues.windows(2) {
                prop_assert!(w[0] <= w[1]);
            }
        }
    }
}
