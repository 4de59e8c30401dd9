//! Measure G: how well bin sums of the total spectrum ("mimic eigenvalues")
//! can reproduce the entropy of each single-subsystem spectrum.
//!
//! For subsystem `k` the `d_tot` total eigenvalues are split into `d_k` bins of
//! exactly `d_tot / d_k` eigenvalues each, the grouping a product eigenbasis
//! induces. `F_k` is the smallest `|sum_j s(mimic_j) - sum_j s(e_j)|` over all
//! such splits and `G = max_k F_k`.

use serde::Serialize;

use super::{Diagnostics, MeasureId, MeasureReport, Witness};
use crate::error::{Error, Result};
use crate::qmat::entropy_term;
use crate::states::DensityMatrix;

pub const DEFAULT_PARTITION_CAP: u64 = 1 << 24;

/// Bin index of every total-system eigenvalue (descending order) for subsystem `subsystem`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    pub subsystem: usize,
    pub assignment: Vec<usize>,
}

/// `|H(bin sums) - H(reduced)|` in bits for one assignment.
///
/// Bin sums accumulate in eigenvalue order starting from zero.
pub fn mimic_discrepancy(
    total: &[f64],
    assignment: &[usize],
    bins: usize,
    reduced_entropy: f64,
) -> f64 {
    let mut sums = vec![0.0; bins];
    for (&e, &j) in total.iter().zip(assignment) {
        sums[j] += e;
    }
    let mimic: f64 = sums.iter().map(|&x| entropy_term(x)).sum();
    (mimic - reduced_entropy).abs()
}

/// Visits every assignment of `n` items to `bins` bins holding `n / bins`
/// items each, in lexicographic order (item 0 most significant).
///
/// Returns the number of assignments visited.
pub fn enumerate_balanced(n: usize, bins: usize, mut visit: impl FnMut(&[usize])) -> u64 {
    assert!(
        bins > 0 && n.is_multiple_of(bins),
        "{n} items do not split evenly into {bins} bins"
    );
    let cap = n / bins;
    let mut assignment = vec![0usize; n];
    let mut counts = vec![0usize; bins];
    let mut visited = 0;

    fn recurse(
        pos: usize,
        cap: usize,
        assignment: &mut [usize],
        counts: &mut [usize],
        visited: &mut u64,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if pos == assignment.len() {
            *visited += 1;
            visit(assignment);
            return;
        }
        for j in 0..counts.len() {
            if counts[j] < cap {
                counts[j] += 1;
                assignment[pos] = j;
                recurse(pos + 1, cap, assignment, counts, visited, visit);
                counts[j] -= 1;
            }
        }
    }

    recurse(
        0,
        cap,
        &mut assignment,
        &mut counts,
        &mut visited,
        &mut visit,
    );
    visited
}

/// Requires `d_k^d_tot <= partition_cap` for every subsystem `k`.
pub fn measure_g(rho: &DensityMatrix, partition_cap: u64) -> Result<MeasureReport> {
    let n = rho.total_dim();
    for (k, &d) in rho.dims().iter().enumerate() {
        let needed = (d as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if needed > partition_cap as u128 {
            return Err(Error::PartitionCapExceeded {
                subsystem: k,
                needed,
                cap: partition_cap,
            });
        }
    }

    let total = rho.spectrum()?;
    let total = total.values();
    let mut f_k = Vec::with_capacity(rho.parties());
    let mut partitions = Vec::with_capacity(rho.parties());
    let mut evaluated = 0;

    for (k, &d) in rho.dims().iter().enumerate() {
        let reduced = rho.marginal(k)?.spectrum()?;
        let reduced_entropy: f64 = reduced.values().iter().map(|&x| entropy_term(x)).sum();
        let mut best = f64::INFINITY;
        let mut best_assignment = Vec::new();
        evaluated += enumerate_balanced(n, d, |a| {
            let f = mimic_discrepancy(total, a, d, reduced_entropy);
            if f < best {
                best = f;
                best_assignment = a.to_vec();
            }
        });
        f_k.push(best);
        partitions.push(Partition {
            subsystem: k,
            assignment: best_assignment,
        });
    }

    let value = f_k.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(MeasureReport {
        measure: MeasureId::G,
        value,
        witness: Witness::Partitions(partitions),
        diagnostics: Diagnostics {
            f_k,
            assignments_evaluated: Some(evaluated),
            ..Diagnostics::default()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{c64, ComplexMatrix};
    use crate::states::{make_pseudo_entangled, make_sigma};

    fn binary_entropy(x: f64) -> f64 {
        entropy_term(x) + entropy_term(1.0 - x)
    }

    #[test]
    fn balanced_enumeration_counts() {
        let mut seen = Vec::new();
        let n = enumerate_balanced(4, 2, |a| seen.push(a.to_vec()));
        assert_eq!(n, 6);
        assert_eq!(seen[0], vec![0, 0, 1, 1]);
        assert_eq!(seen[5], vec![1, 1, 0, 0]);
        // 8! / (2!)^4
        assert_eq!(enumerate_balanced(8, 4, |_| {}), 2520);
        assert_eq!(enumerate_balanced(6, 3, |_| {}), 90);
    }

    #[test]
    fn pseudo_entangled_closed_form() {
        let r = measure_g(&make_pseudo_entangled(0.6).unwrap(), DEFAULT_PARTITION_CAP).unwrap();
        assert!((r.value - (1.0 - binary_entropy(0.8))).abs() < 1e-12);
        assert!(
            (r.value - 0.278_071_905_112_638).abs() < 1e-9,
            "{}",
            r.value
        );
    }

    #[test]
    fn sigma_closed_form() {
        for i in 0..=20 {
            let p = 0.025 * i as f64;
            let r = measure_g(&make_sigma(p).unwrap(), DEFAULT_PARTITION_CAP).unwrap();
            let expected = (1.0 - binary_entropy(p + 0.5)).min(1.0 - binary_entropy(2.0 * p));
            assert!(
                (r.value - expected).abs() < 1e-10,
                "p={p}: {} vs {expected}",
                r.value
            );
        }
    }

    #[test]
    fn pure_product_state_is_zero() {
        let v = [c64::new(0.6, 0.0), c64::new(0.0, 0.8)];
        let w = [c64::new(0.0, 1.0), c64::new(0.0, 0.0), c64::new(0.0, 0.0)];
        let psi: Vec<c64> = v
            .iter()
            .flat_map(|a| w.iter().map(move |b| a * b))
            .collect();
        let rho = DensityMatrix::new(vec![2, 3], ComplexMatrix::projector(&psi)).unwrap();
        let r = measure_g(&rho, DEFAULT_PARTITION_CAP).unwrap();
        assert!(r.value.abs() < 1e-12);
        assert_eq!(r.diagnostics.f_k.len(), 2);
    }

    #[test]
    fn cap_exceeded() {
        let rho = make_sigma(0.1).unwrap();
        assert!(matches!(
            measure_g(&rho, 15),
            Err(Error::PartitionCapExceeded {
                subsystem: 0,
                needed: 16,
                cap: 15
            })
        ));
        assert!(measure_g(&rho, 16).is_ok());
    }
}
