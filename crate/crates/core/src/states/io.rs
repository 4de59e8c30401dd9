//! JSON state files:
//!
//! ```json
//! {"dims": [2, 2], "matrix": [[[re, im], ...], ...]}
//! ```
//!
//! `matrix` is row-major with `d_tot` rows. Numbers are written with 17
//! significant digits, which round-trips every finite `f64` exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::qmat::{c64, ComplexMatrix};

#[derive(Deserialize)]
struct StateFile {
    dims: Vec<usize>,
    matrix: Vec<Vec<[f64; 2]>>,
}

fn push_number(out: &mut String, x: f64) {
    write!(out, "{x:.16e}").expect("writing to a String");
}

pub fn to_json_string(rho: &DensityMatrix) -> String {
    let m = rho.matrix();
    let mut out = String::from("{\n  \"dims\": [");
    for (k, d) in rho.dims().iter().enumerate() {
        if k > 0 {
            out.push_str(", ");
        }
        write!(out, "{d}").unwrap();
    }
    out.push_str("],\n  \"matrix\": [\n");
    for i in 0..m.rows() {
        out.push_str("    [");
        for j in 0..m.cols() {
            if j > 0 {
                out.push_str(", ");
            }
            out.push('[');
            push_number(&mut out, m[(i, j)].re);
            out.push_str(", ");
            push_number(&mut out, m[(i, j)].im);
            out.push(']');
        }
        out.push(']');
        if i + 1 < m.rows() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push_str("  ]\n}\n");
    out
}

/// Parses and validates a state.
pub fn from_json_str(s: &str) -> Result<DensityMatrix> {
    let file: StateFile = serde_json::from_str(s).map_err(|e| Error::ParseError(e.to_string()))?;
    let n = file.matrix.len();
    if let Some((i, row)) = file.matrix.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::ParseError(format!(
            "row {i} has {} entries, expected {n}",
            row.len()
        )));
    }
    let data = file
        .matrix
        .iter()
        .flatten()
        .map(|&[re, im]| c64::new(re, im))
        .collect();
    let matrix = ComplexMatrix::from_vec(n, n, data).expect("square by construction");
    DensityMatrix::new(file.dims, matrix)
}

pub fn store_state(path: impl AsRef<Path>, rho: &DensityMatrix) -> Result<()> {
    fs::write(path, to_json_string(rho))?;
    Ok(())
}

pub fn load_state(path: impl AsRef<Path>) -> Result<DensityMatrix> {
    from_json_str(&fs::read_to_string(path)?)
}
