//! Command-line front end: argument definitions and the four subcommands.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::measures::{evaluate, MeasureId, MeasureOptions, DEFAULT_PARTITION_CAP};
use crate::search::SearchConfig;
use crate::states::{load_state, random_density_matrix, store_state, to_json_string};
use crate::sweep::{run_sweep, to_csv, Family, SweepSpec};
use crate::verify::{run_all, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ncorr",
    version,
    about = "Measures of nonclassical correlation for finite-dimensional states"
)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate measures over a one-parameter family and write CSV.
    Sweep(SweepArgs),
    /// Evaluate measures on a state stored as JSON and print a JSON report.
    Measure(MeasureArgs),
    /// Run the built-in regression checks.
    Verify(VerifyArgs),
    /// Write a family member or a random state as JSON.
    GenState(GenStateArgs),
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// Haar-random product bases sampled for D.
    #[arg(long, default_value_t = 40_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Hill-climbing steps after sampling (0 disables).
    #[arg(long, default_value_t = 200)]
    pub refine_steps: usize,
    /// Largest allowed d_k^d_tot for G.
    #[arg(long, default_value_t = DEFAULT_PARTITION_CAP)]
    pub partition_cap: u64,
}

impl SearchArgs {
    pub fn options(&self) -> MeasureOptions {
        MeasureOptions {
            search: SearchConfig {
                n_samples: self.samples,
                seed: self.seed,
                refine_steps: self.refine_steps,
                ..SearchConfig::default()
            },
            partition_cap: self.partition_cap,
        }
    }
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// ps, sigma or horodecki.
    #[arg(long)]
    pub family: Family,
    /// First parameter value (default: start of the family's domain).
    #[arg(long)]
    pub from: Option<f64>,
    /// Last parameter value (default: end of the family's domain).
    #[arg(long)]
    pub to: Option<f64>,
    #[arg(long, default_value_t = 101)]
    pub steps: usize,
    /// Comma-separated subset of D,G,DG,K,N.
    #[arg(long, value_delimiter = ',', default_value = "D,G,DG,K,N")]
    pub measures: Vec<MeasureId>,
    #[command(flatten)]
    pub search: SearchArgs,
    /// Output file (default: stdout).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    /// State file written by `gen-state` (or by hand in the same layout).
    pub state: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "D,G,DG,K,N")]
    pub measures: Vec<MeasureId>,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Tolerance for agreement with the closed forms.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Debug, Args)]
pub struct GenStateArgs {
    #[arg(
        long,
        conflicts_with = "random",
        required_unless_present = "random",
        requires = "param"
    )]
    pub family: Option<Family>,
    #[arg(long)]
    pub param: Option<f64>,
    /// Random state from a seeded Ginibre matrix instead of a family.
    #[arg(long, requires = "dims")]
    pub random: bool,
    /// Subsystem dimensions for --random, e.g. 2,3.
    #[arg(long, value_delimiter = ',')]
    pub dims: Vec<usize>,
    /// Rank for --random (default: full rank).
    #[arg(long)]
    pub rank: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output file (default: stdout).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    let (lo, hi) = args.family.domain();
    let spec = SweepSpec {
        family: args.family,
        param_start: args.from.unwrap_or(lo),
        param_end: args.to.unwrap_or(hi),
        steps: args.steps,
        measures: args.measures.clone(),
        options: args.search.options(),
    };
    emit(&args.out, &to_csv(&run_sweep(&spec)?))
}

/// JSON object keyed by measure name, each holding value, witness and diagnostics.
pub fn measure_report_json(
    state: &crate::states::DensityMatrix,
    measures: &[MeasureId],
    opts: &MeasureOptions,
) -> Result<serde_json::Value> {
    let mut map = serde_json::Map::new();
    for &id in measures {
        let r = evaluate(id, state, opts)?;
        map.insert(
            id.to_string(),
            serde_json::json!({ "value": r.value, "witness": r.witness, "diagnostics": r.diagnostics }),
        );
    }
    Ok(serde_json::Value::Object(map))
}

pub fn cmd_measure(args: &MeasureArgs) -> Result<()> {
    let state = load_state(&args.state)?;
    let report = measure_report_json(&state, &args.measures, &args.search.options())?;
    let text =
        serde_json::to_string_pretty(&report).map_err(|e| Error::ParseError(e.to_string()))?;
    emit(&None, &(text + "\n"))
}

/// Prints one line per check; returns whether all passed.
pub fn cmd_verify(args: &VerifyArgs) -> Result<bool> {
    let opts = VerifyOptions {
        tol: args.tol,
        measures: args.search.options(),
    };
    let checks = run_all(&opts)?;
    let mut stdout = std::io::stdout().lock();
    for c in &checks {
        writeln!(stdout, "{c}")?;
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    writeln!(stdout, "{} checks, {} failed", checks.len(), failed)?;
    Ok(failed == 0)
}

pub fn cmd_gen_state(args: &GenStateArgs) -> Result<()> {
    let state = if args.random {
        let full: usize = args.dims.iter().product();
        random_density_matrix(&args.dims, args.rank.unwrap_or(full), args.seed)?
    } else {
        let family = args.family.expect("clap enforces --family or --random");
        family.state(args.param.expect("clap enforces --param"))?
    };
    match &args.out {
        Some(path) => store_state(path, &state),
        None => emit(&None, &to_json_string(&state)),
    }
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    let outcome = || -> Result<i32> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads.unwrap_or(0))
            .build()
            .map_err(|e| Error::ParamOutOfRange(format!("thread pool: {e}")))?;
        pool.install(|| match &cli.command {
            Command::Sweep(a) => cmd_sweep(a).map(|_| EXIT_OK),
            Command::Measure(a) => cmd_measure(a).map(|_| EXIT_OK),
            Command::Verify(a) => {
                cmd_verify(a).map(|ok| if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
            }
            Command::GenState(a) => cmd_gen_state(a).map(|_| EXIT_OK),
        })
    };
    match outcome() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_numeric() {
        EXIT_NUMERIC
    } else {
        EXIT_BAD_INPUT
    }
}
