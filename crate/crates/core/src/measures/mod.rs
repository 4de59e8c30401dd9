//! The correlation quantifiers D, G, D_G, K and the negativity N.
//!
//! D, G and D_G are reported in bits; K and N are dimensionless.

mod discord_like;
mod mimic;
mod transpose;

pub use discord_like::{measure_d, measure_dg};
pub use mimic::{
    enumerate_balanced, measure_g, mimic_discrepancy, Partition, DEFAULT_PARTITION_CAP,
};
pub use transpose::{
    bipartite_splittings, measure_k, negativity, pt_negativity, spectral_distance,
};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::search::{Candidate, ProductBasis, SearchConfig};
use crate::states::DensityMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MeasureId {
    D,
    G,
    DG,
    K,
    N,
}

impl MeasureId {
    pub const ALL: [MeasureId; 5] = [
        MeasureId::D,
        MeasureId::G,
        MeasureId::DG,
        MeasureId::K,
        MeasureId::N,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            MeasureId::D => "D",
            MeasureId::G => "G",
            MeasureId::DG => "DG",
            MeasureId::K => "K",
            MeasureId::N => "N",
        }
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeasureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "D" => Ok(MeasureId::D),
            "G" => Ok(MeasureId::G),
            "DG" | "D_G" => Ok(MeasureId::DG),
            "K" => Ok(MeasureId::K),
            "N" => Ok(MeasureId::N),
            other => Err(Error::ParamOutOfRange(format!("unknown measure {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    /// Product basis attaining the reported entropy (D, D_G).
    Basis(ProductBasis),
    /// Minimizing partition for every subsystem (G).
    Partitions(Vec<Partition>),
    /// Subsystems transposed at the minimizing bipartite splitting (K, N).
    Splitting { side: Vec<usize> },
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Diagnostics {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates_evaluated: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub winner: Option<Candidate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub refine_accepted: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dephased_entropy: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub von_neumann_entropy: Option<f64>,
    /// `F_k` per subsystem (G).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub f_k: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assignments_evaluated: Option<u64>,
    /// Value at every bipartite splitting, in enumeration order (K, N).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub per_splitting: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MeasureReport {
    pub measure: MeasureId,
    pub value: f64,
    pub witness: Witness,
    pub diagnostics: Diagnostics,
}

/// Knobs shared by the measures that need them.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureOptions {
    pub search: SearchConfig,
    pub partition_cap: u64,
}

impl Default for MeasureOptions {
    fn default() -> Self {
        Self {
            search: SearchConfig::default(),
            partition_cap: DEFAULT_PARTITION_CAP,
        }
    }
}

pub fn evaluate(
    id: MeasureId,
    rho: &DensityMatrix,
    opts: &MeasureOptions,
) -> Result<MeasureReport> {
    match id {
        MeasureId::D => measure_d(rho, &opts.search),
        MeasureId::G => measure_g(rho, opts.partition_cap),
        MeasureId::DG => measure_dg(rho),
        MeasureId::K => measure_k(rho),
        MeasureId::N => negativity(rho),
    }
}
