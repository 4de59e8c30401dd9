use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::qmat::ComplexMatrix;
use crate::rng::{complex_gaussian, seeded_rng};

/// `G G^dagger / tr(G G^dagger)` for a seeded complex Gaussian `d_tot x rank`
/// matrix `G` (induced measure).
pub fn random_density_matrix(dims: &[usize], rank: usize, seed: u64) -> Result<DensityMatrix> {
    if dims.is_empty() || dims.iter().any(|&d| d < 2) {
        return Err(Error::ParamOutOfRange(format!(
            "subsystem dims {dims:?} must all be >= 2"
        )));
    }
    let total: usize = dims.iter().product();
    if rank == 0 || rank > total {
        return Err(Error::ParamOutOfRange(format!(
            "rank {rank} outside [1, {total}]"
        )));
    }
    let mut rng = seeded_rng(seed);
    let g = ComplexMatrix::from_fn(total, rank, |_, _| complex_gaussian(&mut rng));
    let gg = g.matmul(&g.adjoint()).hermitian_part();
    let tr = gg.trace().re;
    Ok(DensityMatrix::from_parts_unchecked(
        dims.to_vec(),
        gg.scale_re(1.0 / tr),
    ))
}
