use super::eig::herm_eig;
use super::matrix::ComplexMatrix;
use super::{CLAMP_TOL, HARD_NEG_TOL};
use crate::error::{Error, Result};

const SUM_TOL: f64 = 1e-8;

/// `-x log2 x`, with `0 log 0 = 0`.
#[inline]
pub fn entropy_term(x: f64) -> f64 {
    if x > 0.0 {
        -x * x.log2()
    } else {
        0.0
    }
}

/// Shannon entropy in bits.
///
/// Entries in `[-1e-10, 0)` count as zero; more negative entries or a total
/// further than `1e-8` from one are rejected.
pub fn shannon_entropy(p: &[f64]) -> Result<f64> {
    if p.is_empty() {
        return Err(Error::NotAProbabilityVector("empty vector".into()));
    }
    let mut sum = 0.0;
    for &x in p {
        if !x.is_finite() || x < -CLAMP_TOL {
            return Err(Error::NotAProbabilityVector(format!("entry {x:e}")));
        }
        sum += x;
    }
    if (sum - 1.0).abs() > SUM_TOL {
        return Err(Error::NotAProbabilityVector(format!(
            "entries sum to {sum}"
        )));
    }
    Ok(p.iter().map(|&x| entropy_term(x)).sum::<f64>().max(0.0))
}

/// Von Neumann entropy in bits of a density operator.
pub fn von_neumann_entropy(rho: &ComplexMatrix) -> Result<f64> {
    let spectrum = herm_eig(rho)?.spectrum.clamp_negative(HARD_NEG_TOL)?;
    shannon_entropy(spectrum.values())
}
