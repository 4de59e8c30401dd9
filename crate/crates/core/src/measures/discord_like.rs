use super::{Diagnostics, MeasureId, MeasureReport, Witness};
use crate::error::Result;
use crate::search::{diag_entropy, min_diag_entropy, ProductBasis, SearchConfig};
use crate::states::DensityMatrix;

/// D: minimal diagonal entropy over product bases minus the von Neumann
/// entropy. The search makes this an upper bound on the true value.
pub fn measure_d(rho: &DensityMatrix, cfg: &SearchConfig) -> Result<MeasureReport> {
    let s = rho.von_neumann_entropy()?;
    let out = min_diag_entropy(rho, cfg)?;
    Ok(MeasureReport {
        measure: MeasureId::D,
        value: out.entropy - s,
        diagnostics: Diagnostics {
            candidates_evaluated: Some(out.candidates_evaluated),
            winner: Some(out.winner),
            refine_accepted: Some(out.refine_accepted),
            dephased_entropy: Some(out.entropy),
            von_neumann_entropy: Some(s),
            ..Diagnostics::default()
        },
        witness: Witness::Basis(out.basis),
    })
}

/// D_G: entropy gained by dephasing `rho` in the product of its marginals'
/// eigenbases. Degenerate marginals use the eigensolver's basis as returned.
pub fn measure_dg(rho: &DensityMatrix) -> Result<MeasureReport> {
    let basis = ProductBasis::marginal_eigenbasis(rho)?;
    let dephased = diag_entropy(rho, &basis)?;
    let s = rho.von_neumann_entropy()?;
    Ok(MeasureReport {
        measure: MeasureId::DG,
        value: dephased - s,
        witness: Witness::Basis(basis),
        diagnostics: Diagnostics {
            dephased_entropy: Some(dephased),
            von_neumann_entropy: Some(s),
            ..Diagnostics::default()
        },
    })
}
