//! Partial-transposition quantifiers: the spectral distance K and the negativity N.
//!
//! Multipartite states are handled by minimizing over the `2^(m-1) - 1`
//! bipartite splittings. Splitting `s` (counting from 1) transposes the
//! subsystems `t + 1` for every set bit `t` of `s`; the side containing
//! subsystem 0 is left alone. Transposing the other side instead only changes
//! the result by a full transpose, which preserves the spectrum.

use super::{Diagnostics, MeasureId, MeasureReport, Witness};
use crate::error::Result;
use crate::qmat::{herm_eig, CLAMP_TOL};
use crate::states::DensityMatrix;

/// Transposed sides of all bipartite splittings of `parties` subsystems.
pub fn bipartite_splittings(parties: usize) -> Vec<Vec<usize>> {
    let others = parties.saturating_sub(1);
    (1u64..(1u64 << others))
        .map(|mask| {
            (0..others)
                .filter(|t| mask >> t & 1 == 1)
                .map(|t| t + 1)
                .collect()
        })
        .collect()
}

/// `sum_x |e_x - e~_x|` between the descending spectra of `rho` and of its
/// partial transpose on `side`.
pub fn spectral_distance(rho: &DensityMatrix, side: &[usize]) -> Result<f64> {
    let e = herm_eig(rho.matrix())?.spectrum;
    let pt = herm_eig(&rho.partial_transpose(side)?)?.spectrum;
    Ok(e.values()
        .iter()
        .zip(pt.values())
        .map(|(a, b)| (a - b).abs())
        .sum())
}

/// `|sum of negative eigenvalues|` of the partial transpose on `side`.
/// Eigenvalues in `[-1e-10, 0)` count as round-off.
pub fn pt_negativity(rho: &DensityMatrix, side: &[usize]) -> Result<f64> {
    let pt = herm_eig(&rho.partial_transpose(side)?)?.spectrum;
    Ok(-pt.values().iter().filter(|&&v| v < -CLAMP_TOL).sum::<f64>())
}

fn minimize_over_splittings(
    rho: &DensityMatrix,
    id: MeasureId,
    f: impl Fn(&DensityMatrix, &[usize]) -> Result<f64>,
) -> Result<MeasureReport> {
    let splittings = bipartite_splittings(rho.parties());
    let mut per_splitting = Vec::with_capacity(splittings.len());
    let mut best = (f64::INFINITY, Vec::new());
    for side in splittings {
        let v = f(rho, &side)?;
        per_splitting.push(v);
        if v < best.0 {
            best = (v, side);
        }
    }
    // A single subsystem has no splitting and nothing to detect.
    let value = if per_splitting.is_empty() {
        0.0
    } else {
        best.0
    };
    Ok(MeasureReport {
        measure: id,
        value,
        witness: Witness::Splitting { side: best.1 },
        diagnostics: Diagnostics {
            per_splitting,
            ..Diagnostics::default()
        },
    })
}

pub fn measure_k(rho: &DensityMatrix) -> Result<MeasureReport> {
    minimize_over_splittings(rho, MeasureId::K, spectral_distance)
}

/// Negativity without the conventional factor of two.
pub fn negativity(rho: &DensityMatrix) -> Result<MeasureReport> {
    minimize_over_splittings(rho, MeasureId::N, pt_negativity)
}
