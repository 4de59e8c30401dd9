use super::matrix::{c64, ComplexMatrix};
use super::HARD_NEG_TOL;
use crate::error::{Error, Result};

/// Kronecker product; `a` carries the slower index.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (br, bc) = (b.rows(), b.cols());
    ComplexMatrix::from_fn(a.rows() * br, a.cols() * bc, |i, j| {
        a[(i / br, j / bc)] * b[(i % br, j % bc)]
    })
}

/// Splits a product-basis label into per-subsystem indices.
pub fn decode_index(mut n: usize, dims: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; dims.len()];
    for (k, &d) in dims.iter().enumerate().rev() {
        digits[k] = n % d;
        n /= d;
    }
    digits
}

/// Inverse of [`decode_index`].
pub fn encode_index(digits: &[usize], dims: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (&i, &d)| acc * d + i)
}

fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

fn check_shape(m: &ComplexMatrix, dims: &[usize]) -> Result<()> {
    let total: usize = dims.iter().product();
    if !m.is_square() || m.rows() != total {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix does not match subsystem dims {dims:?}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// Sorted, deduplicated subsystem set; every index must be valid.
fn subsystem_set(indices: &[usize], parties: usize) -> Result<Vec<usize>> {
    if let Some(&index) = indices.iter().find(|&&k| k >= parties) {
        return Err(Error::BadSubsystemIndex { index, parties });
    }
    let mut set = indices.to_vec();
    set.sort_unstable();
    set.dedup();
    Ok(set)
}

/// Traces out every subsystem not in `keep`.
///
/// Returns the reduced operator and its subsystem dims (kept subsystems in
/// their original order).
pub fn partial_trace(
    m: &ComplexMatrix,
    dims: &[usize],
    keep: &[usize],
) -> Result<(ComplexMatrix, Vec<usize>)> {
    check_shape(m, dims)?;
    let keep = subsystem_set(keep, dims.len())?;
    if keep.is_empty() {
        return Err(Error::ParamOutOfRange(
            "partial trace needs at least one kept subsystem".into(),
        ));
    }
    let kept_dims: Vec<usize> = keep.iter().map(|&k| dims[k]).collect();
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !keep.contains(k)).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| dims[k]).collect();

    let n = m.rows();
    let mut kept_label = Vec::with_capacity(n);
    let mut traced_label = Vec::with_capacity(n);
    for i in 0..n {
        let digits = decode_index(i, dims);
        let kd: Vec<usize> = keep.iter().map(|&k| digits[k]).collect();
        let td: Vec<usize> = traced.iter().map(|&k| digits[k]).collect();
        kept_label.push(encode_index(&kd, &kept_dims));
        traced_label.push(encode_index(&td, &traced_dims));
    }

    let r: usize = kept_dims.iter().product();
    let mut out = ComplexMatrix::zeros(r, r);
    for i in 0..n {
        for j in 0..n {
            if traced_label[i] == traced_label[j] {
                out[(kept_label[i], kept_label[j])] += m[(i, j)];
            }
        }
    }
    Ok((out, kept_dims))
}

/// Transposes the subsystems listed in `side`, leaving the others untouched.
pub fn partial_transpose(
    m: &ComplexMatrix,
    dims: &[usize],
    side: &[usize],
) -> Result<ComplexMatrix> {
    check_shape(m, dims)?;
    let side = subsystem_set(side, dims.len())?;
    let stride = strides(dims);
    let n = m.rows();
    let digits: Vec<Vec<usize>> = (0..n).map(|i| decode_index(i, dims)).collect();

    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let (mut ti, mut tj) = (i, j);
            for &k in &side {
                let (a, b) = (digits[i][k], digits[j][k]);
                ti = ti - a * stride[k] + b * stride[k];
                tj = tj - b * stride[k] + a * stride[k];
            }
            out[(ti, tj)] = m[(i, j)];
        }
    }
    Ok(out)
}

/// Diagonal of `m` in the product basis whose factor `k` has the basis vectors
/// of subsystem `k` as columns.
///
/// Values in `[-1e-8, 0)` are lifted to zero; anything more negative is an error.
pub fn diag_probs(
    m: &ComplexMatrix,
    dims: &[usize],
    factors: &[ComplexMatrix],
) -> Result<Vec<f64>> {
    check_shape(m, dims)?;
    if factors.len() != dims.len()
        || factors
            .iter()
            .zip(dims)
            .any(|(u, &d)| u.rows() != d || u.cols() != d)
    {
        return Err(Error::DimensionMismatch(format!(
            "basis factors {:?} do not match dims {dims:?}",
            factors.iter().map(|u| u.rows()).collect::<Vec<_>>()
        )));
    }
    let mut u = factors[0].clone();
    for f in &factors[1..] {
        u = tensor(&u, f);
    }
    let mu = m.matmul(&u);
    let n = m.rows();
    let mut probs = Vec::with_capacity(n);
    for col in 0..n {
        let mut acc = c64::new(0.0, 0.0);
        for row in 0..n {
            acc += u[(row, col)].conj() * mu[(row, col)];
        }
        let p = acc.re;
        if p < -HARD_NEG_TOL {
            return Err(Error::NotAProbabilityVector(format!(
                "diagonal entry {p:e} of a density operator"
            )));
        }
        probs.push(p.max(0.0));
    }
    Ok(probs)
}
