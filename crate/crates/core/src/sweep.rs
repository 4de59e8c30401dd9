//! Parameter sweeps over the three example families, written as CSV.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::measures::{evaluate, MeasureId, MeasureOptions};
use crate::states::{make_horodecki, make_pseudo_entangled, make_sigma, DensityMatrix};

pub const CSV_HEADER: &str = "param,D,G,DG,K,N";
pub const CSV_SIGNIFICANT_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `p |psi><psi| + (1 - p) I/4`, `p` in `[0, 1]`.
    PseudoEntangled,
    /// The two-qubit `sigma(p)`, `p` in `[0, 1/2]`.
    Sigma,
    /// Horodecki's 2x4 bound entangled state, `b` in `[0, 1]`.
    Horodecki,
}

impl Family {
    pub fn domain(self) -> (f64, f64) {
        match self {
            Family::PseudoEntangled | Family::Horodecki => (0.0, 1.0),
            Family::Sigma => (0.0, 0.5),
        }
    }

    pub fn state(self, param: f64) -> Result<DensityMatrix> {
        match self {
            Family::PseudoEntangled => make_pseudo_entangled(param),
            Family::Sigma => make_sigma(param),
            Family::Horodecki => make_horodecki(param),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::PseudoEntangled => "ps",
            Family::Sigma => "sigma",
            Family::Horodecki => "horodecki",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ps" => Ok(Family::PseudoEntangled),
            "sigma" => Ok(Family::Sigma),
            "horodecki" => Ok(Family::Horodecki),
            other => Err(Error::ParamOutOfRange(format!(
                "unknown family {other:?} (expected ps, sigma or horodecki)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub family: Family,
    pub param_start: f64,
    pub param_end: f64,
    pub steps: usize,
    pub measures: Vec<MeasureId>,
    pub options: MeasureOptions,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        let (lo, hi) = self.family.domain();
        for (name, v) in [("from", self.param_start), ("to", self.param_end)] {
            if !(lo..=hi).contains(&v) {
                return Err(Error::ParamOutOfRange(format!(
                    "{name} = {v} outside the {} domain [{lo}, {hi}]",
                    self.family
                )));
            }
        }
        if self.steps < 2 {
            return Err(Error::ParamOutOfRange(format!(
                "steps = {} (need at least 2)",
                self.steps
            )));
        }
        if self.measures.is_empty() {
            return Err(Error::ParamOutOfRange("no measures requested".into()));
        }
        Ok(())
    }
}

/// One grid point; `values` follows the CSV column order D, G, DG, K, N.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    pub values: [Option<f64>; 5],
}

impl SweepRow {
    pub fn get(&self, id: MeasureId) -> Option<f64> {
        self.values[column(id)]
    }
}

fn column(id: MeasureId) -> usize {
    MeasureId::ALL
        .iter()
        .position(|&m| m == id)
        .expect("every id has a column")
}

/// `steps` linearly spaced points including both endpoints.
pub fn grid(start: f64, end: f64, steps: usize) -> Vec<f64> {
    let last = steps.saturating_sub(1).max(1);
    (0..steps)
        .map(|i| {
            if i == last {
                end
            } else {
                start + (end - start) * i as f64 / last as f64
            }
        })
        .collect()
}

pub fn measure_row(
    family: Family,
    param: f64,
    measures: &[MeasureId],
    opts: &MeasureOptions,
) -> Result<SweepRow> {
    let rho = family.state(param)?;
    let mut values = [None; 5];
    for &id in measures {
        values[column(id)] = Some(evaluate(id, &rho, opts)?.value);
    }
    Ok(SweepRow { param, values })
}

/// Evaluates every grid point; rows come back in parameter order whatever
/// order the points finish in.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    grid(spec.param_start, spec.param_end, spec.steps)
        .into_par_iter()
        .map(|p| measure_row(spec.family, p, &spec.measures, &spec.options))
        .collect()
}

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 80);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&format_significant(row.param, CSV_SIGNIFICANT_DIGITS));
        for v in &row.values {
            out.push(',');
            if let Some(v) = v {
                out.push_str(&format_significant(*v, CSV_SIGNIFICANT_DIGITS));
            }
        }
        out.push('\n');
    }
    out
}

/// C `%.{digits}g` formatting.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return if x.is_sign_negative() {
            "-0".into()
        } else {
            "0".into()
        };
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
