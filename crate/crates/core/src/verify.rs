//! Regression suite behind `ncorr verify`: the closed-form curves of the three
//! example families plus the structural properties every measure must satisfy.
//! Nothing here reads stored golden data.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::measures::{
    measure_d, measure_dg, measure_g, measure_k, negativity, MeasureId, MeasureOptions,
};
use crate::qmat::entropy_term;
use crate::rng::seeded_rng;
use crate::search::ProductBasis;
use crate::states::{
    make_classically_correlated, make_pseudo_entangled, make_sigma, random_density_matrix,
    DensityMatrix,
};
use crate::sweep::{grid, run_sweep, to_csv, Family, SweepSpec};

/// Closed forms for the example families (bits for D, G, D_G).
pub mod closed_form {
    use crate::qmat::entropy_term as s;

    pub fn binary_entropy(x: f64) -> f64 {
        s(x) + s(1.0 - x)
    }

    pub fn ps_dg(p: f64) -> f64 {
        2.0 * s((1.0 + p) / 4.0) - s((1.0 - p) / 4.0) - s((1.0 + 3.0 * p) / 4.0)
    }

    pub fn ps_g(p: f64) -> f64 {
        1.0 - binary_entropy((1.0 + p) / 2.0)
    }

    pub fn ps_k(p: f64) -> f64 {
        2.0 * p
    }

    pub fn ps_n(p: f64) -> f64 {
        (0.0f64.min((1.0 - 3.0 * p) / 4.0)).abs()
    }

    pub fn sigma_g(p: f64) -> f64 {
        (1.0 - binary_entropy(p + 0.5)).min(1.0 - binary_entropy(2.0 * p))
    }

    pub fn sigma_dg(p: f64) -> f64 {
        2.0 * s(p) - s(2.0 * p)
    }

    pub fn sigma_n(p: f64) -> f64 {
        (0.0f64.min(0.5 - 2.0 * p)).abs()
    }

    pub fn sigma_k(p: f64) -> f64 {
        if p <= 1.0 / 6.0 {
            4.0 * p
        } else if p <= 0.25 {
            2.0 - 8.0 * p
        } else {
            8.0 * p - 2.0
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    /// Tolerance for closed-form agreement.
    pub tol: f64,
    pub measures: MeasureOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            tol: 1e-9,
            measures: MeasureOptions::default(),
        }
    }
}

/// One line of the verification report. For bounds, `expected` is the bound
/// and `deviation` the amount by which it is violated (0 when satisfied).
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub computed: f64,
    pub expected: f64,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl Check {
    fn new(
        name: impl Into<String>,
        computed: f64,
        expected: f64,
        deviation: f64,
        tolerance: f64,
    ) -> Self {
        Self {
            name: name.into(),
            computed,
            expected,
            deviation,
            tolerance,
            passed: deviation <= tolerance,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<66} computed={:<22.15e} expected={:<22.15e} deviation={:.3e} tol={:.0e}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.computed,
            self.expected,
            self.deviation,
            self.tolerance
        )
    }
}

/// Worst-case agreement of `(computed, expected)` pairs.
fn worst_agreement(name: String, pairs: impl IntoIterator<Item = (f64, f64)>, tol: f64) -> Check {
    let mut worst = (f64::NAN, f64::NAN, -1.0);
    for (c, e) in pairs {
        let d = if c.is_finite() {
            (c - e).abs()
        } else {
            f64::INFINITY
        };
        if d > worst.2 {
            worst = (c, e, d);
        }
    }
    Check::new(name, worst.0, worst.1, worst.2, tol)
}

/// Worst violation of `computed <= bound`.
fn worst_upper_bound(name: String, pairs: impl IntoIterator<Item = (f64, f64)>, tol: f64) -> Check {
    let mut worst = (f64::NAN, f64::NAN, f64::NEG_INFINITY);
    for (c, bound) in pairs {
        let excess = c - bound;
        if excess > worst.2 {
            worst = (c, bound, excess);
        }
    }
    Check::new(name, worst.0, worst.1, worst.2.max(0.0), tol)
}

fn all_measures(rho: &DensityMatrix, opts: &MeasureOptions) -> Result<[f64; 5]> {
    Ok([
        measure_d(rho, &opts.search)?.value,
        measure_g(rho, opts.partition_cap)?.value,
        measure_dg(rho)?.value,
        measure_k(rho)?.value,
        negativity(rho)?.value,
    ])
}

fn family_sweep(family: Family, steps: usize, opts: &MeasureOptions) -> SweepSpec {
    let (lo, hi) = family.domain();
    SweepSpec {
        family,
        param_start: lo,
        param_end: hi,
        steps,
        measures: MeasureId::ALL.to_vec(),
        options: opts.clone(),
    }
}

fn column(rows: &[crate::sweep::SweepRow], id: MeasureId) -> Vec<(f64, f64)> {
    rows.iter()
        .map(|r| (r.param, r.get(id).unwrap_or(f64::NAN)))
        .collect()
}

pub fn check_pseudo_entangled(opts: &VerifyOptions) -> Result<Vec<Check>> {
    use closed_form::*;
    let tol = opts.tol;
    let rows = run_sweep(&family_sweep(Family::PseudoEntangled, 101, &opts.measures))?;
    let agree = |name: &str, id, f: fn(f64) -> f64| {
        worst_agreement(
            format!("ps: {name} [101 pts]"),
            column(&rows, id).into_iter().map(|(p, v)| (v, f(p))),
            tol,
        )
    };
    let mut checks = vec![
        agree("G = 1-H((1+p)/2)", MeasureId::G, ps_g),
        agree(
            "DG = 2s((1+p)/4)-s((1-p)/4)-s((1+3p)/4)",
            MeasureId::DG,
            ps_dg,
        ),
        agree("K = 2p", MeasureId::K, ps_k),
        agree("N = |min(0,(1-3p)/4)|", MeasureId::N, ps_n),
        agree("D = DG closed form", MeasureId::D, ps_dg),
    ];
    let last = rows.last().expect("non-empty grid");
    for (id, want) in [
        (MeasureId::D, 1.0),
        (MeasureId::DG, 1.0),
        (MeasureId::G, 1.0),
        (MeasureId::K, 2.0),
        (MeasureId::N, 0.5),
    ] {
        checks.push(worst_agreement(
            format!("ps: {id} at p=1"),
            [(last.get(id).unwrap(), want)],
            tol,
        ));
    }
    let first = &rows[0];
    checks.push(worst_agreement(
        "ps: all five at p=0".into(),
        MeasureId::ALL
            .iter()
            .map(|&id| (first.get(id).unwrap(), 0.0)),
        tol,
    ));
    Ok(checks)
}

pub fn check_sigma(opts: &VerifyOptions) -> Result<Vec<Check>> {
    use closed_form::*;
    let tol = opts.tol;
    let rows = run_sweep(&family_sweep(Family::Sigma, 101, &opts.measures))?;
    let agree = |name: &str, id, f: fn(f64) -> f64| {
        worst_agreement(
            format!("sigma: {name} [101 pts]"),
            column(&rows, id).into_iter().map(|(p, v)| (v, f(p))),
            tol,
        )
    };
    let mut checks = vec![
        agree("G = min{1-H(p+1/2), 1-H(2p)}", MeasureId::G, sigma_g),
        agree("DG = 2s(p)-s(2p)", MeasureId::DG, sigma_dg),
        agree("N = |min(0,1/2-2p)|", MeasureId::N, sigma_n),
        agree("K piecewise 4p / 2-8p / 8p-2", MeasureId::K, sigma_k),
    ];
    checks.push(worst_upper_bound(
        "sigma: D <= DG + 1e-9".into(),
        rows.iter()
            .map(|r| (r.get(MeasureId::D).unwrap(), r.get(MeasureId::DG).unwrap())),
        1e-9,
    ));
    checks.push(worst_upper_bound(
        "sigma: D >= 0".into(),
        rows.iter().map(|r| (-r.get(MeasureId::D).unwrap(), 0.0)),
        1e-9,
    ));
    // N > 0 exactly when p > 1/4: count grid points on the wrong side.
    let misplaced = rows
        .iter()
        .filter(|r| (r.get(MeasureId::N).unwrap() > 1e-9) != (r.param > 0.25))
        .count();
    checks.push(Check::new(
        "sigma: N nonzero iff p > 1/4 (misplaced points)",
        misplaced as f64,
        0.0,
        misplaced as f64,
        0.0,
    ));
    Ok(checks)
}

pub fn check_horodecki(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let rows = run_sweep(&family_sweep(Family::Horodecki, 51, &opts.measures))?;
    let mut checks = vec![
        worst_upper_bound(
            "horodecki: K <= 1e-9 [51 pts]".into(),
            column(&rows, MeasureId::K)
                .into_iter()
                .map(|(_, v)| (v, 0.0)),
            1e-9,
        ),
        worst_upper_bound(
            "horodecki: N <= 1e-9 [51 pts]".into(),
            column(&rows, MeasureId::N)
                .into_iter()
                .map(|(_, v)| (v, 0.0)),
            1e-9,
        ),
    ];
    let invalid = grid(0.0, 1.0, 51)
        .into_iter()
        .filter(|&b| {
            !Family::Horodecki
                .state(b)
                .map(|r| r.validate().passed())
                .unwrap_or(false)
        })
        .count();
    checks.push(Check::new(
        "horodecki: states failing validation",
        invalid as f64,
        0.0,
        invalid as f64,
        0.0,
    ));
    checks.push(worst_upper_bound(
        "horodecki: all five <= 1e-6 at b=0".into(),
        MeasureId::ALL
            .iter()
            .map(|&id| (rows[0].get(id).unwrap(), 0.0)),
        1e-6,
    ));
    checks.push(worst_upper_bound(
        "horodecki: D, G, DG >= 0".into(),
        rows.iter().flat_map(|r| {
            [MeasureId::D, MeasureId::G, MeasureId::DG].map(|id| (-r.get(id).unwrap(), 0.0))
        }),
        1e-9,
    ));
    checks.push(worst_upper_bound(
        "horodecki: D <= DG + 1e-9".into(),
        rows.iter()
            .map(|r| (r.get(MeasureId::D).unwrap(), r.get(MeasureId::DG).unwrap())),
        1e-9,
    ));
    Ok(checks)
}

/// Seeded generic probability vector (entries bounded away from zero, distinct with probability 1).
pub fn generic_probs(len: usize, seed: u64) -> Vec<f64> {
    let mut rng = seeded_rng(seed);
    let raw: Vec<f64> = (0..len).map(|_| rng.random_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

pub fn check_classical(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut worst = Vec::new();
    for i in 0..100u64 {
        let dims: &[usize] = if i < 50 { &[2, 2] } else { &[2, 3] };
        let basis = ProductBasis::haar_random(dims, 1_000 + i);
        let probs = generic_probs(dims.iter().product(), 2_000 + i);
        let rho = make_classically_correlated(&basis, &probs)?;
        for v in all_measures(&rho, &opts.measures)? {
            worst.push((v.abs(), 0.0));
        }
    }
    Ok(vec![worst_upper_bound(
        "classical: |all five| <= 1e-8 [100 states]".into(),
        worst,
        1e-8,
    )])
}

/// Smallest gap among the single-subsystem spectra.
pub fn marginal_gap(rho: &DensityMatrix) -> Result<f64> {
    let mut gap = f64::INFINITY;
    for k in 0..rho.parties() {
        gap = gap.min(rho.marginal(k)?.spectrum()?.min_gap());
    }
    Ok(gap)
}

pub fn check_local_unitary(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut g = Vec::new();
    let mut k = Vec::new();
    let mut n = Vec::new();
    let mut dg = Vec::new();
    for i in 0..50u64 {
        let rank = 1 + (i as usize % 4);
        let rho = random_density_matrix(&[2, 2], rank, 3_000 + i)?;
        let u = ProductBasis::haar_random(&[2, 2], 4_000 + i);
        let moved = rho.apply_local_unitary(&u)?;
        let cap = opts.measures.partition_cap;
        g.push((measure_g(&moved, cap)?.value, measure_g(&rho, cap)?.value));
        k.push((measure_k(&moved)?.value, measure_k(&rho)?.value));
        n.push((negativity(&moved)?.value, negativity(&rho)?.value));
        if marginal_gap(&rho)? > 1e-6 {
            dg.push((measure_dg(&moved)?.value, measure_dg(&rho)?.value));
        }
    }
    Ok(vec![
        worst_agreement("local unitary: G invariant [50 pairs]".into(), g, 1e-8),
        worst_agreement("local unitary: K invariant [50 pairs]".into(), k, 1e-8),
        worst_agreement("local unitary: N invariant [50 pairs]".into(), n, 1e-8),
        worst_agreement(
            format!("local unitary: DG invariant [{} nondegenerate]", dg.len()),
            dg,
            1e-8,
        ),
    ])
}

pub fn check_additivity(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut add = Vec::new();
    let mut seed = 5_000u64;
    while add.len() < 20 {
        let a = random_density_matrix(&[2, 2], 4, seed)?;
        let b = random_density_matrix(&[2, 2], 3, seed + 1)?;
        seed += 2;
        if marginal_gap(&a)? <= 1e-6 || marginal_gap(&b)? <= 1e-6 {
            continue;
        }
        let joint = measure_dg(&a.tensor(&b))?.value;
        add.push((joint, measure_dg(&a)?.value + measure_dg(&b)?.value));
    }
    let cap = opts.measures.partition_cap;
    let mut sub = Vec::new();
    for p in grid(0.0, 1.0, 5) {
        for q in grid(0.0, 0.5, 5) {
            let a = make_pseudo_entangled(p)?;
            let b = make_sigma(q)?;
            sub.push((
                measure_g(&a.tensor(&b), cap)?.value,
                measure_g(&a, cap)?.value + measure_g(&b, cap)?.value,
            ));
        }
    }
    Ok(vec![
        worst_agreement(
            "additivity: DG(a x b) = DG(a) + DG(b) [20 pairs]".into(),
            add,
            1e-8,
        ),
        worst_upper_bound(
            "subadditivity: G(ps x sigma) <= G(ps) + G(sigma) [5x5]".into(),
            sub,
            1e-9,
        ),
    ])
}

/// Naive F_k: walk every assignment of the total spectrum to `d` bins with a
/// base-`d` counter and keep the balanced ones.
fn brute_force_g(rho: &DensityMatrix) -> Result<f64> {
    let total = rho.spectrum()?.into_values();
    let n = total.len();
    let mut g = f64::NEG_INFINITY;
    for (k, &d) in rho.dims().iter().enumerate() {
        let reduced: f64 = rho
            .marginal(k)?
            .spectrum()?
            .values()
            .iter()
            .map(|&x| entropy_term(x))
            .sum();
        let mut best = f64::INFINITY;
        for code in 0..d.pow(n as u32) {
            let mut digits = vec![0; n];
            let mut c = code;
            for slot in digits.iter_mut().rev() {
                *slot = c % d;
                c /= d;
            }
            if (0..d).any(|j| digits.iter().filter(|&&x| x == j).count() != n / d) {
                continue;
            }
            let mut sums = vec![0.0; d];
            for (i, &j) in digits.iter().enumerate() {
                sums[j] += total[i];
            }
            let mimic: f64 = sums.iter().map(|&x| entropy_term(x)).sum();
            best = best.min((mimic - reduced).abs());
        }
        g = g.max(best);
    }
    Ok(g)
}

pub fn check_g_oracle(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let mut pairs = Vec::new();
    for i in 0..20u64 {
        let rho = random_density_matrix(&[2, 2], 1 + (i as usize % 4), 6_000 + i)?;
        pairs.push((
            measure_g(&rho, opts.measures.partition_cap)?.value,
            brute_force_g(&rho)?,
        ));
    }
    Ok(vec![worst_agreement(
        "oracle: G vs brute-force enumeration [20 states]".into(),
        pairs,
        0.0,
    )])
}

pub fn check_determinism(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let spec = family_sweep(Family::PseudoEntangled, 101, &opts.measures);
    let reference = to_csv(&run_sweep(&spec)?);
    let repeat = to_csv(&run_sweep(&spec)?);
    let pooled = |threads| -> Result<String> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .expect("thread pool");
        Ok(to_csv(&pool.install(|| run_sweep(&spec))?))
    };
    let (single, four) = (pooled(1)?, pooled(4)?);
    let differing = |a: &str, b: &str| {
        (a.len().abs_diff(b.len()) + a.bytes().zip(b.bytes()).filter(|(x, y)| x != y).count())
            as f64
    };
    let d1 = differing(&reference, &repeat);
    let d2 = differing(&single, &four).max(differing(&reference, &single));
    Ok(vec![
        Check::new(
            "determinism: repeated ps sweep CSV (differing bytes)",
            d1,
            0.0,
            d1,
            0.0,
        ),
        Check::new(
            "determinism: 1 vs 4 threads ps sweep CSV (differing bytes)",
            d2,
            0.0,
            d2,
            0.0,
        ),
    ])
}

type CheckGroup = fn(&VerifyOptions) -> Result<Vec<Check>>;

/// Runs every check group in order.
pub fn run_all(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let groups: [CheckGroup; 8] = [
        check_pseudo_entangled,
        check_sigma,
        check_horodecki,
        check_classical,
        check_local_unitary,
        check_additivity,
        check_g_oracle,
        check_determinism,
    ];
    let mut out = Vec::new();
    for group in groups {
        out.extend(group(opts)?);
    }
    Ok(out)
}
