use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::qmat::{herm_eig, partial_trace, ComplexMatrix};

/// Eigenvalue gaps at or below this make the eigenbasis ill-defined.
pub const DEGENERACY_GAP: f64 = 1e-7;

/// An eigenvector counts as a product vector when every single-subsystem
/// marginal has purity at least `1 - MARGINAL_PURITY_TOL`.
pub const MARGINAL_PURITY_TOL: f64 = 1e-9;

/// Whether a state with nondegenerate spectrum has a fully product eigenbasis.
///
/// With a nondegenerate spectrum the eigenbasis is unique up to phases, so it
/// suffices to check that every eigenvector is an m-fold product vector.
/// Degenerate spectra are rejected; use the measures to quantify those states.
pub fn has_product_eigenbasis_nondegenerate(rho: &DensityMatrix) -> Result<bool> {
    let eig = herm_eig(rho.matrix())?;
    let gap = eig.spectrum.min_gap();
    if gap <= DEGENERACY_GAP {
        return Err(Error::DegenerateSpectrum { gap });
    }
    for j in 0..rho.total_dim() {
        let proj = ComplexMatrix::projector(&eig.vectors.column(j));
        for k in 0..rho.parties() {
            let (marginal, _) = partial_trace(&proj, rho.dims(), &[k])?;
            let purity = marginal.matmul(&marginal).trace().re;
            if purity < 1.0 - MARGINAL_PURITY_TOL {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
