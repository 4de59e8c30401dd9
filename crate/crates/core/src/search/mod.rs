//! Minimization of the diagonal (dephased) entropy of a state over product bases.
//!
//! Candidates are evaluated in a fixed rank order: the computational basis,
//! the marginal eigenbasis, then `n_samples` Haar-random product bases. Sample
//! `i` is generated from its own seed `mix_seed(seed, i)`, so the minimum and
//! its witness do not depend on how the samples are spread over threads. Ties
//! go to the earliest candidate. An optional hill-climb then perturbs the
//! incumbent one factor at a time.

mod basis;

pub use basis::{haar_unitary, householder_qr, ProductBasis};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::qmat::{c64, herm_eig, shannon_entropy, ComplexMatrix};
use crate::rng::{complex_gaussian, mix_seed, seeded_rng};
use crate::states::DensityMatrix;

/// Seed-stream index reserved for the refinement phase.
const REFINE_STREAM: u64 = u64::MAX;

/// Refinement only accepts improvements larger than round-off.
const REFINE_MIN_GAIN: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchConfig {
    pub n_samples: usize,
    pub seed: u64,
    pub refine_steps: usize,
    /// Initial rotation angle (radians); multiplied by 0.9 after each rejected proposal.
    pub refine_step: f64,
    pub include_deterministic_candidates: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            n_samples: 40_000,
            seed: 1,
            refine_steps: 200,
            refine_step: 0.1,
            include_deterministic_candidates: true,
        }
    }
}

impl SearchConfig {
    /// Pure random search, no candidates seeded and no refinement.
    pub fn random_only(n_samples: usize, seed: u64) -> Self {
        Self {
            n_samples,
            seed,
            refine_steps: 0,
            include_deterministic_candidates: false,
            ..Self::default()
        }
    }
}

/// Which candidate produced the reported minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum Candidate {
    Computational,
    MarginalEigenbasis,
    Sample(usize),
    /// The incumbent after at least one accepted refinement step.
    Refined,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchOutcome {
    pub entropy: f64,
    pub basis: ProductBasis,
    pub winner: Candidate,
    pub candidates_evaluated: usize,
    pub refine_accepted: usize,
    /// Minimum before refinement.
    pub unrefined_entropy: f64,
}

/// Shannon entropy (bits) of the diagonal of `rho` in `basis`.
pub fn diag_entropy(rho: &DensityMatrix, basis: &ProductBasis) -> Result<f64> {
    shannon_entropy(&rho.diag_probs(basis)?)
}

/// Product basis drawn for sample `index` of a search seeded with `seed`.
pub fn haar_random_product_basis(dims: &[usize], seed: u64, index: u64) -> ProductBasis {
    ProductBasis::haar_random(dims, mix_seed(seed, index))
}

/// Upper bound on `min_B H(diag_B(rho))` over product bases `B`.
pub fn min_diag_entropy(rho: &DensityMatrix, cfg: &SearchConfig) -> Result<SearchOutcome> {
    let dims = rho.dims().to_vec();
    let mut best: Option<(f64, ProductBasis, Candidate)> = None;
    let mut evaluated = 0;

    let mut offer = |value: f64, basis: ProductBasis, who: Candidate| {
        if best.as_ref().is_none_or(|(v, _, _)| value < *v) {
            best = Some((value, basis, who));
        }
    };

    if cfg.include_deterministic_candidates {
        let comp = ProductBasis::computational(&dims);
        offer(diag_entropy(rho, &comp)?, comp, Candidate::Computational);
        let marg = ProductBasis::marginal_eigenbasis(rho)?;
        offer(
            diag_entropy(rho, &marg)?,
            marg,
            Candidate::MarginalEigenbasis,
        );
        evaluated += 2;
    }

    if cfg.n_samples > 0 {
        let (value, index) = (0..cfg.n_samples)
            .into_par_iter()
            .map(|i| {
                let b = haar_random_product_basis(&dims, cfg.seed, i as u64);
                diag_entropy(rho, &b).map(|v| (v, i))
            })
            .try_reduce(
                || (f64::INFINITY, usize::MAX),
                |a, b| Ok(lexicographic_min(a, b)),
            )?;
        offer(
            value,
            haar_random_product_basis(&dims, cfg.seed, index as u64),
            Candidate::Sample(index),
        );
        evaluated += cfg.n_samples;
    }

    // No candidates at all: fall back to the computational basis.
    let (mut value, mut basis, mut winner) = match best {
        Some(b) => b,
        None => {
            let comp = ProductBasis::computational(&dims);
            evaluated += 1;
            (diag_entropy(rho, &comp)?, comp, Candidate::Computational)
        }
    };
    let unrefined_entropy = value;

    let mut accepted = 0;
    if cfg.refine_steps > 0 {
        let mut rng = seeded_rng(mix_seed(cfg.seed, REFINE_STREAM));
        let mut step = cfg.refine_step;
        for _ in 0..cfg.refine_steps {
            let k = rng.random_range(0..dims.len());
            let w = small_unitary(dims[k], step, &mut rng)?;
            let mut proposal = basis.clone();
            proposal.replace_factor(k, w.matmul(&basis.factors()[k]));
            let v = diag_entropy(rho, &proposal)?;
            evaluated += 1;
            if v < value - REFINE_MIN_GAIN {
                value = v;
                basis = proposal;
                winner = Candidate::Refined;
                accepted += 1;
            } else {
                step *= 0.9;
            }
        }
    }

    Ok(SearchOutcome {
        entropy: value,
        basis,
        winner,
        candidates_evaluated: evaluated,
        refine_accepted: accepted,
        unrefined_entropy,
    })
}

fn lexicographic_min(a: (f64, usize), b: (f64, usize)) -> (f64, usize) {
    match a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)) {
        std::cmp::Ordering::Greater => b,
        _ => a,
    }
}

/// `exp(i * angle * H)` for a random Hermitian `H` with unit Frobenius norm.
fn small_unitary<R: Rng + ?Sized>(d: usize, angle: f64, rng: &mut R) -> Result<ComplexMatrix> {
    let g = ComplexMatrix::from_fn(d, d, |_, _| complex_gaussian(rng));
    let h = (&g + &g.adjoint()).scale_re(0.5);
    let h = h.scale_re(1.0 / h.frobenius_norm());
    let eig = herm_eig(&h)?;
    let phases = ComplexMatrix::from_fn(d, d, |i, j| {
        if i == j {
            c64::from_polar(1.0, angle * eig.spectrum.values()[i])
        } else {
            c64::new(0.0, 0.0)
        }
    });
    Ok(eig.vectors.matmul(&phases).matmul(&eig.vectors.adjoint()))
}
