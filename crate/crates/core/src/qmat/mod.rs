//! Dense complex linear algebra for multipartite operators.
//!
//! Subsystems are ordered row-major: a product basis label `n` decodes into
//! per-subsystem indices `i_k` with `n = sum_k i_k * prod_{l>k} d_l`, so the
//! first subsystem is the slowest index of a Kronecker product.

mod eig;
mod entropy;
mod matrix;
mod multipartite;

pub use eig::{herm_eig, Eigen, Spectrum};
pub use entropy::{entropy_term, shannon_entropy, von_neumann_entropy};
pub use matrix::{c64, ComplexMatrix};
pub use multipartite::{
    decode_index, diag_probs, encode_index, partial_trace, partial_transpose, tensor,
};

/// Eigenvalues and probabilities in `[-CLAMP_TOL, 0)` are treated as round-off and set to zero.
pub const CLAMP_TOL: f64 = 1e-10;

/// Anything below `-HARD_NEG_TOL` is rejected outright.
pub const HARD_NEG_TOL: f64 = 1e-8;
