use serde::{Deserialize, Serialize};

use super::matrix::{c64, ComplexMatrix};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const HERMITIAN_TOL: f64 = 1e-10;
const OFF_DIAGONAL_TOL: f64 = 1e-13;

/// Real eigenvalues sorted in descending order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
    clamped_count: usize,
}

impl Spectrum {
    /// Sorts `values` descending. NaNs are not expected here.
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self {
            values,
            clamped_count: 0,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Number of eigenvalues that were lifted from small negative values to zero.
    pub fn clamped_count(&self) -> usize {
        self.clamped_count
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    pub fn min(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// Smallest gap between consecutive eigenvalues (infinite for fewer than two).
    pub fn min_gap(&self) -> f64 {
        self.values
            .windows(2)
            .map(|w| w[0] - w[1])
            .fold(f64::INFINITY, f64::min)
    }

    /// Lifts values in `[-neg_tol, 0)` to zero; anything more negative is an error.
    pub fn clamp_negative(mut self, neg_tol: f64) -> Result<Self> {
        let min = self.min();
        if min < -neg_tol {
            return Err(Error::ValidationFailure(format!(
                "eigenvalue {min:e} below -{neg_tol:e}"
            )));
        }
        for v in self.values.iter_mut().filter(|v| **v < 0.0) {
            *v = 0.0;
            self.clamped_count += 1;
        }
        Ok(self)
    }
}

/// Eigen-decomposition of a Hermitian matrix.
///
/// Column `j` of `vectors` belongs to `spectrum.values()[j]`.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub spectrum: Spectrum,
    pub vectors: ComplexMatrix,
}

impl Eigen {
    /// `V diag(lambda) V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let lambda = ComplexMatrix::from_real_diag(self.spectrum.values());
        self.vectors.matmul(&lambda).matmul(&self.vectors.adjoint())
    }
}

/// Cyclic Jacobi eigensolver for complex Hermitian matrices.
///
/// Each rotation zeroes one off-diagonal pair `(p, q)`; pairs are visited in
/// row-major order on every sweep. Eigenvalues come back descending (stable for
/// ties, so a diagonal input keeps the computational basis). Every eigenvector
/// is rotated so its largest-magnitude component is real and non-negative.
pub fn herm_eig(h: &ComplexMatrix) -> Result<Eigen> {
    if !h.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigen-decomposition needs a square matrix, got {}x{}",
            h.rows(),
            h.cols()
        )));
    }
    if !h.is_finite() {
        return Err(Error::ValidationFailure(
            "matrix has non-finite entries".into(),
        ));
    }
    let deviation = h.hermiticity_deviation();
    if deviation > HERMITIAN_TOL * h.max_abs() {
        return Err(Error::NonHermitian { deviation });
    }

    let n = h.rows();
    let mut a = h.hermitian_part();
    for i in 0..n {
        a[(i, i)].im = 0.0;
    }
    let mut v = ComplexMatrix::identity(n);
    let target = OFF_DIAGONAL_TOL * a.frobenius_norm();

    let mut sweep = 0;
    loop {
        let off = off_diagonal_norm(&a);
        if off <= target {
            break;
        }
        if sweep == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps: MAX_SWEEPS,
                off_norm: off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweep += 1;
    }

    let diag = a.diagonal_re();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[j].total_cmp(&diag[i]));

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let mut lead = 0;
        let mut lead_abs = -1.0;
        for i in 0..n {
            let m = v[(i, src)].norm();
            if m > lead_abs {
                lead_abs = m;
                lead = i;
            }
        }
        let phase = if lead_abs > 0.0 {
            v[(lead, src)].conj() / lead_abs
        } else {
            c64::new(1.0, 0.0)
        };
        for i in 0..n {
            vectors[(i, col)] = v[(i, src)] * phase;
        }
        vectors[(lead, col)].im = 0.0;
    }

    Ok(Eigen {
        spectrum: Spectrum {
            values,
            clamped_count: 0,
        },
        vectors,
    })
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Applies `A <- G^dagger A G`, `V <- V G` with the unitary `G` that zeroes `A[p][q]`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let b = a[(p, q)];
    let b_abs = b.norm();
    if b_abs == 0.0 {
        return;
    }
    let phase = b / b_abs;
    let theta = (a[(q, q)].re - a[(p, p)].re) / (2.0 * b_abs);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // G = [[c, s e^{i phi}], [-s e^{-i phi}, c]] on rows/columns p, q.
    let g_pp = c64::new(c, 0.0);
    let g_pq = phase * s;
    let g_qp = -phase.conj() * s;
    let g_qq = c64::new(c, 0.0);

    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = c64::new(0.0, 0.0);
    a[(q, p)] = c64::new(0.0, 0.0);
    a[(p, p)].im = 0.0;
    a[(q, q)].im = 0.0;

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}
