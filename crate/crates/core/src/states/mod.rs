//! Density matrices: validation, the example families, random generators,
//! the product-eigenbasis detector and JSON state files.

mod detect;
mod families;
mod io;
mod random;

pub use detect::{has_product_eigenbasis_nondegenerate, DEGENERACY_GAP, MARGINAL_PURITY_TOL};
pub use families::{
    make_classically_correlated, make_horodecki, make_pseudo_entangled, make_sigma,
};
pub use io::{from_json_str, load_state, store_state, to_json_string};
pub use random::random_density_matrix;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmat::{self, herm_eig, ComplexMatrix, Spectrum, HARD_NEG_TOL};
use crate::search::ProductBasis;

pub const HERMITIAN_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-8;
pub const MIN_EIGENVALUE_TOL: f64 = HARD_NEG_TOL;

/// A multipartite state: subsystem dimensions plus its `d_tot x d_tot` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dims: Vec<usize>,
    matrix: ComplexMatrix,
}

/// Outcome of [`DensityMatrix::validate`].
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    pub hermiticity_deviation: f64,
    pub trace_deviation: f64,
    pub min_eigenvalue: Option<f64>,
    pub failures: Vec<String>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl DensityMatrix {
    /// Validating constructor.
    pub fn new(dims: Vec<usize>, matrix: ComplexMatrix) -> Result<Self> {
        let rho = Self { dims, matrix };
        let report = rho.validate();
        if report.passed() {
            Ok(rho)
        } else {
            Err(Error::ValidationFailure(report.failures.join("; ")))
        }
    }

    /// Wraps a matrix known to be a valid state (e.g. produced by a
    /// state-preserving operation on a validated input).
    pub(crate) fn from_parts_unchecked(dims: Vec<usize>, matrix: ComplexMatrix) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>(), matrix.rows());
        Self { dims, matrix }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn total_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn parties(&self) -> usize {
        self.dims.len()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let total: usize = self.dims.iter().product();
        if self.dims.is_empty() || self.dims.iter().any(|&d| d < 2) {
            failures.push(format!("subsystem dims {:?} must all be >= 2", self.dims));
        }
        if !self.matrix.is_square() || self.matrix.rows() != total {
            failures.push(format!(
                "{}x{} matrix does not match dims {:?}",
                self.matrix.rows(),
                self.matrix.cols(),
                self.dims
            ));
            return ValidationReport {
                hermiticity_deviation: f64::NAN,
                trace_deviation: f64::NAN,
                min_eigenvalue: None,
                failures,
            };
        }
        if !self.matrix.is_finite() {
            failures.push("non-finite entries".into());
            return ValidationReport {
                hermiticity_deviation: f64::NAN,
                trace_deviation: f64::NAN,
                min_eigenvalue: None,
                failures,
            };
        }
        let hermiticity_deviation = self.matrix.hermiticity_deviation();
        if hermiticity_deviation > HERMITIAN_TOL {
            failures.push(format!("Hermiticity deviation {hermiticity_deviation:e}"));
        }
        let trace_deviation = (self.matrix.trace() - 1.0).norm();
        if trace_deviation > TRACE_TOL {
            failures.push(format!("trace deviation {trace_deviation:e}"));
        }
        let min_eigenvalue = herm_eig(&self.matrix.hermitian_part())
            .map(|e| e.spectrum.min())
            .map_err(|e| failures.push(format!("eigen-decomposition failed: {e}")))
            .ok();
        if let Some(m) = min_eigenvalue {
            if m < -MIN_EIGENVALUE_TOL {
                failures.push(format!("minimum eigenvalue {m:e}"));
            }
        }
        ValidationReport {
            hermiticity_deviation,
            trace_deviation,
            min_eigenvalue,
            failures,
        }
    }

    /// Descending spectrum with round-off negatives lifted to zero.
    pub fn spectrum(&self) -> Result<Spectrum> {
        herm_eig(&self.matrix)?
            .spectrum
            .clamp_negative(HARD_NEG_TOL)
    }

    pub fn von_neumann_entropy(&self) -> Result<f64> {
        qmat::von_neumann_entropy(&self.matrix)
    }

    /// Reduced state on the subsystems in `keep`.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let (m, dims) = qmat::partial_trace(&self.matrix, &self.dims, keep)?;
        Ok(Self::from_parts_unchecked(dims, m))
    }

    /// Reduced state of a single subsystem.
    pub fn marginal(&self, k: usize) -> Result<DensityMatrix> {
        self.partial_trace(&[k])
    }

    pub fn partial_transpose(&self, side: &[usize]) -> Result<ComplexMatrix> {
        qmat::partial_transpose(&self.matrix, &self.dims, side)
    }

    /// Diagonal of the state in a product basis.
    pub fn diag_probs(&self, basis: &ProductBasis) -> Result<Vec<f64>> {
        qmat::diag_probs(&self.matrix, &self.dims, basis.factors())
    }

    /// `self (x) other`, with the subsystems of `other` appended.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        let dims = self.dims.iter().chain(&other.dims).copied().collect();
        Self::from_parts_unchecked(dims, qmat::tensor(&self.matrix, &other.matrix))
    }

    /// `U rho U^dagger` for the local unitary `U = U_1 (x) ... (x) U_m`.
    pub fn apply_local_unitary(&self, basis: &ProductBasis) -> Result<DensityMatrix> {
        if basis.dims() != self.dims {
            return Err(Error::DimensionMismatch(format!(
                "local unitary dims {:?} vs state dims {:?}",
                basis.dims(),
                self.dims
            )));
        }
        let u = basis.full_unitary();
        Ok(Self::from_parts_unchecked(
            self.dims.clone(),
            self.matrix.conjugate_by(&u),
        ))
    }

    /// `tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        self.matrix.matmul(&self.matrix).trace().re
    }
}
