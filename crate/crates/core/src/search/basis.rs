use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qmat::{c64, herm_eig, tensor, ComplexMatrix};
use crate::rng::{complex_gaussian, seeded_rng};
use crate::states::DensityMatrix;

const UNITARY_TOL: f64 = 1e-10;

/// One local orthonormal basis per subsystem. Column `j` of factor `k` is the
/// `j`-th basis vector of subsystem `k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductBasis {
    factors: Vec<ComplexMatrix>,
}

impl ProductBasis {
    /// Checks that every factor is square and unitary to `1e-10`.
    pub fn from_factors(factors: Vec<ComplexMatrix>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::DimensionMismatch(
                "product basis needs at least one factor".into(),
            ));
        }
        for (k, u) in factors.iter().enumerate() {
            if !u.is_square() {
                return Err(Error::DimensionMismatch(format!(
                    "factor {k} is not square"
                )));
            }
            let r = u.unitarity_residual();
            if r.is_nan() || r > UNITARY_TOL {
                return Err(Error::ValidationFailure(format!(
                    "factor {k} is not unitary (residual {r:e})"
                )));
            }
        }
        Ok(Self { factors })
    }

    pub fn computational(dims: &[usize]) -> Self {
        Self {
            factors: dims.iter().map(|&d| ComplexMatrix::identity(d)).collect(),
        }
    }

    /// Independent Haar-random factors drawn from one seeded stream.
    pub fn haar_random(dims: &[usize], seed: u64) -> Self {
        let mut rng = seeded_rng(seed);
        Self {
            factors: dims.iter().map(|&d| haar_unitary(d, &mut rng)).collect(),
        }
    }

    /// Eigenbasis of every single-subsystem marginal of `rho`.
    pub fn marginal_eigenbasis(rho: &DensityMatrix) -> Result<Self> {
        let factors = (0..rho.parties())
            .map(|k| Ok(herm_eig(rho.marginal(k)?.matrix())?.vectors))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[ComplexMatrix] {
        &self.factors
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(|u| u.rows()).collect()
    }

    /// `U_1 (x) ... (x) U_m`.
    pub fn full_unitary(&self) -> ComplexMatrix {
        let mut u = self.factors[0].clone();
        for f in &self.factors[1..] {
            u = tensor(&u, f);
        }
        u
    }

    /// Factor-wise product `frame_k U_k`.
    pub fn in_frame(&self, frame: &ProductBasis) -> Result<Self> {
        if frame.dims() != self.dims() {
            return Err(Error::DimensionMismatch(format!(
                "frame dims {:?} vs basis dims {:?}",
                frame.dims(),
                self.dims()
            )));
        }
        let factors = frame
            .factors
            .iter()
            .zip(&self.factors)
            .map(|(f, u)| f.matmul(u))
            .collect();
        Ok(Self { factors })
    }

    pub(crate) fn replace_factor(&mut self, k: usize, u: ComplexMatrix) {
        self.factors[k] = u;
    }

    pub fn unitarity_residual(&self) -> f64 {
        self.factors
            .iter()
            .map(|u| u.unitarity_residual())
            .fold(0.0, f64::max)
    }
}

/// Haar-random `d x d` unitary: Householder QR of a complex Ginibre matrix,
/// with the phases of `diag(R)` absorbed into the columns of `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> ComplexMatrix {
    let z = ComplexMatrix::from_fn(d, d, |_, _| complex_gaussian(rng));
    let (mut q, r) = householder_qr(&z);
    for j in 0..d {
        let rjj = r[(j, j)];
        let n = rjj.norm();
        let phase = if n > 0.0 { rjj / n } else { c64::new(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// `A = Q R` with `Q` unitary and `R` upper triangular.
pub fn householder_qr(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let (m, n) = (a.rows(), a.cols());
    let mut r = a.clone();
    let mut q = ComplexMatrix::identity(m);
    for k in 0..n.min(m.saturating_sub(1)) {
        let norm_x = (k..m).map(|i| r[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = r[(k, k)];
        let phase = if x0.norm() > 0.0 {
            x0 / x0.norm()
        } else {
            c64::new(1.0, 0.0)
        };
        let alpha = -phase * norm_x;
        let mut v: Vec<c64> = (k..m).map(|i| r[(i, k)]).collect();
        v[0] -= alpha;
        let v_norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if v_norm == 0.0 {
            continue;
        }
        for z in v.iter_mut() {
            *z /= v_norm;
        }
        // R <- (I - 2 v v^dagger) R on rows k..m
        for j in 0..n {
            let dot: c64 = v
                .iter()
                .enumerate()
                .map(|(t, vi)| vi.conj() * r[(k + t, j)])
                .sum();
            for (t, vi) in v.iter().enumerate() {
                r[(k + t, j)] -= vi * dot * 2.0;
            }
        }
        // Q <- Q (I - 2 v v^dagger) on columns k..m
        for i in 0..m {
            let dot: c64 = v.iter().enumerate().map(|(t, vi)| q[(i, k + t)] * vi).sum();
            for (t, vi) in v.iter().enumerate() {
                q[(i, k + t)] -= dot * vi.conj() * 2.0;
            }
        }
        for i in (k + 1)..m {
            r[(i, k)] = c64::new(0.0, 0.0);
        }
    }
    (q, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded_rng;

    #[test]
    fn qr_reconstructs() {
        let mut rng = seeded_rng(3);
        let a = ComplexMatrix::from_fn(4, 4, |_, _| complex_gaussian(&mut rng));
        let (q, r) = householder_qr(&a);
        assert!(q.unitarity_residual() < 1e-13);
        assert!(q.matmul(&r).max_abs_diff(&a) < 1e-13);
        for i in 0..4 {
            for j in 0..i {
                assert_eq!(r[(i, j)], c64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn haar_factors_are_unitary() {
        let b = ProductBasis::haar_random(&[2, 2], 11);
        assert_eq!(b.dims(), vec![2, 2]);
        assert!(b.unitarity_residual() <= 1e-12);
        for u in b.factors() {
            for j in 0..u.cols() {
                let norm: f64 = u.column(j).iter().map(|z| z.norm_sqr()).sum();
                assert!((norm - 1.0).abs() < 1e-12);
            }
        }
        assert_eq!(b, ProductBasis::haar_random(&[2, 2], 11));
    }

    #[test]
    fn haar_first_moment() {
        // Haar: E|U_00|^2 = 1/d.
        let n = 10_000;
        let mean: f64 = (0..n)
            .map(|s| ProductBasis::haar_random(&[2], s).factors()[0][(0, 0)].norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.5).abs() < 0.02, "mean {mean}");
    }

    #[test]
    fn haar_second_moment_d3() {
        // Haar: E|U_00|^4 = 2 / (d (d + 1)).
        let mut rng = seeded_rng(99);
        let n = 20_000;
        let m4: f64 = (0..n)
            .map(|_| haar_unitary(3, &mut rng)[(0, 0)].norm_sqr().powi(2))
            .sum::<f64>()
            / n as f64;
        assert!((m4 - 1.0 / 6.0).abs() < 0.01, "E|U00|^4 = {m4}");
    }

    #[test]
    fn from_factors_checks_unitarity() {
        assert!(ProductBasis::from_factors(vec![ComplexMatrix::identity(2)]).is_ok());
        assert!(
            ProductBasis::from_factors(vec![ComplexMatrix::identity(2).scale_re(2.0)]).is_err()
        );
        assert!(ProductBasis::from_factors(vec![ComplexMatrix::zeros(2, 3)]).is_err());
        assert!(ProductBasis::from_factors(vec![]).is_err());
    }
}
