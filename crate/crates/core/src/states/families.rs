use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::qmat::{c64, ComplexMatrix};
use crate::search::ProductBasis;

fn check_range(name: &str, value: f64, lo: f64, hi: f64) -> Result<()> {
    if value.is_nan() || value < lo || value > hi {
        return Err(Error::ParamOutOfRange(format!(
            "{name} = {value} outside [{lo}, {hi}]"
        )));
    }
    Ok(())
}

/// Two-qubit Werner-type state `p |psi><psi| + (1 - p) I/4` with
/// `|psi> = (|00> + |11>)/sqrt(2)`, `0 <= p <= 1`.
pub fn make_pseudo_entangled(p: f64) -> Result<DensityMatrix> {
    check_range("p", p, 0.0, 1.0)?;
    let mut m = ComplexMatrix::from_real_diag(&[
        (1.0 + p) / 4.0,
        (1.0 - p) / 4.0,
        (1.0 - p) / 4.0,
        (1.0 + p) / 4.0,
    ]);
    m[(0, 3)] = c64::new(p / 2.0, 0.0);
    m[(3, 0)] = c64::new(p / 2.0, 0.0);
    Ok(DensityMatrix::from_parts_unchecked(vec![2, 2], m))
}

/// `(1/2 - p)(|00><00| + |11><11|) + 2p |phi><phi|` with
/// `|phi> = (|01> + |10>)/sqrt(2)`, `0 <= p <= 1/2`. Entangled for `p > 1/4`.
pub fn make_sigma(p: f64) -> Result<DensityMatrix> {
    check_range("p", p, 0.0, 0.5)?;
    let mut m = ComplexMatrix::from_real_diag(&[0.5 - p, p, p, 0.5 - p]);
    m[(1, 2)] = c64::new(p, 0.0);
    m[(2, 1)] = c64::new(p, 0.0);
    Ok(DensityMatrix::from_parts_unchecked(vec![2, 2], m))
}

/// Horodecki's 2x4 bound entangled state, `0 <= b <= 1`.
///
/// Labels `0..8` are `|a>|b>` with `a = n / 4`, `b = n % 4`.
pub fn make_horodecki(b: f64) -> Result<DensityMatrix> {
    check_range("b", b, 0.0, 1.0)?;
    let half = (1.0 + b) / 2.0;
    let mut m = ComplexMatrix::from_real_diag(&[b, b, b, b, half, b, b, half]);
    for (i, j) in [(0, 5), (1, 6), (2, 7)] {
        m[(i, j)] = c64::new(b, 0.0);
        m[(j, i)] = c64::new(b, 0.0);
    }
    let corner = (1.0 - b * b).sqrt() / 2.0;
    m[(4, 7)] = c64::new(corner, 0.0);
    m[(7, 4)] = c64::new(corner, 0.0);
    let m = m.scale_re(1.0 / (7.0 * b + 1.0));
    Ok(DensityMatrix::from_parts_unchecked(vec![2, 4], m))
}

/// `sum_n probs[n] |c_n><c_n|` over the product basis `basis`; `probs` is
/// indexed by product label (row-major in the subsystem indices).
///
/// Such a state has a product eigenbasis by construction.
pub fn make_classically_correlated(basis: &ProductBasis, probs: &[f64]) -> Result<DensityMatrix> {
    let total: usize = basis.dims().iter().product();
    if probs.len() != total {
        return Err(Error::DimensionMismatch(format!(
            "{} probabilities for dims {:?}",
            probs.len(),
            basis.dims()
        )));
    }
    if probs.iter().any(|&p| !p.is_finite() || p < 0.0) {
        return Err(Error::NotAProbabilityVector(
            "negative or non-finite entry".into(),
        ));
    }
    let sum: f64 = probs.iter().sum();
    if (sum - 1.0).abs() > 1e-8 {
        return Err(Error::NotAProbabilityVector(format!(
            "entries sum to {sum}"
        )));
    }
    let u = basis.full_unitary();
    let m = ComplexMatrix::from_real_diag(probs)
        .conjugate_by(&u)
        .hermitian_part();
    Ok(DensityMatrix::from_parts_unchecked(basis.dims(), m))
}
