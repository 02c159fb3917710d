//! Equilibrium sensing diagnostics for two coupled bosonic resonators.
//!
//! The crate models a pair of single-mode resonators A and B in a truncated
//! Fock space. Resonator B is driven by an external field and both modes
//! thermalize with a common bath, so the joint state is a global Gibbs state.
//! Local measurements on resonator A then carry information about the bath
//! temperature and the drive amplitude. The modules below provide
//!
//! - [`linalg`]: dense complex-matrix primitives (Hermitian eigendecomposition,
//!   operator functions, Kronecker products, partial trace),
//! - [`model`]: ladder operators, the two interaction Hamiltonians, Gibbs
//!   states and the reduced probe state,
//! - [`estimation`]: parameter derivatives, quantum Fisher information (matrix),
//!   symmetric logarithmic derivatives and classical Fisher information for a
//!   fixed set of observables,
//! - [`wigner`]: phase-space quasiprobability grids and negativity statistics,
//! - [`diagnostics`]: quadrature moments, squeezing, entropies and
//!   relative-entropy non-Gaussianity,
//! - [`sweep`]: deterministic parameter sweeps with automatic Fock-cutoff
//!   escalation and CSV output.
//!
//! All computations are pure functions of their inputs; nothing in the crate
//! uses randomness. With the `parallel` feature (on by default) sweeps and
//! Wigner grids are evaluated on a rayon worker pool; the sequential fallback
//! produces bit-identical results.

extern crate blas_src;

pub mod diagnostics;
pub mod estimation;
pub mod linalg;
pub mod model;
mod par;
pub mod sweep;
pub mod wigner;

pub use linalg::{CMat, C64, SpectralDecomposition};
pub use model::{DensityMatrix, Interaction, ModeDims, ModelConfig};
pub use estimation::{ObservableId, ParamId, QfimResult};
