//! Measures of nonclassical correlation for finite-dimensional multipartite
//! density matrices.
//!
//! A state is classically correlated when it has an eigenbasis made of product
//! vectors. The quantifiers here vanish on such states and are invariant under
//! local unitaries:
//!
//! - **D**: minimal entropy of the diagonal over local bases, minus the von
//!   Neumann entropy (estimated by random search, see [`search`]).
//! - **G**: mismatch between each reduced spectrum and the best grouping of
//!   the total spectrum into that many equal-size bins.
//! - **D_G**: entropy gained by dephasing in the marginals' eigenbases.
//! - **K**: distance between the spectrum of a state and of its partial transpose.
//! - **N**: negativity, the absolute sum of negative partial-transpose eigenvalues.

pub mod cli;
pub mod error;
pub mod measures;
pub mod qmat;
pub mod rng;
pub mod search;
pub mod states;
pub mod sweep;
pub mod verify;

pub use error::{Error, Result};
pub use measures::{evaluate, MeasureId, MeasureOptions, MeasureReport};
pub use search::{ProductBasis, SearchConfig};
pub use states::DensityMatrix;
