//! Experiment orchestration: repeated seeded runs, movement-weight sweeps
//! and the six-algorithm comparison, plus CSV/SVG output.
//!
//! Runs within an experiment execute in parallel. Each run owns a
//! [`RngStream`] derived from `(master_seed, run_index)` and results are
//! ordered by run index, so output never depends on scheduling.

mod config_file;
mod output;
mod stats;
mod svg;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

pub use config_file::{load_config, parse_config};
pub use output::{
    format_float, read_trace_csv, write_summary_csv, write_sweep_csv, write_trace_csv, SummaryRow,
    TraceRow, SUMMARY_HEADER, SWEEP_HEADER, TRACE_HEADER,
};
pub use stats::{median, summarize, Summary};
pub use svg::{convergence_svg, render_convergence_svg, ConvergenceSeries, LOG_FLOOR};

use crate::afsa::{self, SwarmParams};
use crate::benchmarks::{Function, Objective};
use crate::pso;
use crate::record::RunRecord;
use crate::rng::RngStream;
use crate::schedules::{MwPolicy, MwSchedule};
use crate::{Error, Result};

pub const DEFAULT_POPULATION: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    /// AFSA with a constant weight of 1: visual and step never change.
    StdAfsa,
    Cwafa,
    Rwafa,
    Ldwafsa,
    Liwafsa,
    Gpso,
}

impl Algorithm {
    pub const ALL: [Algorithm; 6] = [
        Algorithm::StdAfsa,
        Algorithm::Gpso,
        Algorithm::Cwafa,
        Algorithm::Rwafa,
        Algorithm::Ldwafsa,
        Algorithm::Liwafsa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::StdAfsa => "std_afsa",
            Algorithm::Cwafa => "cwafa",
            Algorithm::Rwafa => "rwafa",
            Algorithm::Ldwafsa => "ldwafsa",
            Algorithm::Liwafsa => "liwafsa",
            Algorithm::Gpso => "gpso",
        }
    }

    /// Label used in charts.
    pub fn label(self) -> &'static str {
        match self {
            Algorithm::StdAfsa => "StdAFSA",
            Algorithm::Cwafa => "CWAFA",
            Algorithm::Rwafa => "RWAFA",
            Algorithm::Ldwafsa => "LDWAFSA",
            Algorithm::Liwafsa => "LIWAFSA",
            Algorithm::Gpso => "GPSO",
        }
    }

    fn uses_range(self) -> bool {
        matches!(
            self,
            Algorithm::Rwafa | Algorithm::Ldwafsa | Algorithm::Liwafsa
        )
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "std_afsa" | "stdafsa" => Algorithm::StdAfsa,
            "cwafa" | "cwafsa" => Algorithm::Cwafa,
            "rwafa" | "rwafsa" => Algorithm::Rwafa,
            "ldwafsa" | "ldwafa" => Algorithm::Ldwafsa,
            "liwafsa" | "liwafa" => Algorithm::Liwafsa,
            "gpso" | "pso" => Algorithm::Gpso,
            _ => {
                return Err(Error::UnknownAlgorithm {
                    name: s.to_string(),
                    valid: Algorithm::ALL.map(Algorithm::name).join(", "),
                })
            }
        })
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Best constant weight and acceptable weight range per function at 1000
/// iterations.
pub fn tuned_weights(function: Function) -> (f64, (f64, f64)) {
    match function {
        Function::Sphere => (0.96, (0.95, 0.99)),
        Function::Rosenbrock => (0.96, (0.93, 0.99)),
        Function::Ackley => (0.96, (0.95, 0.99)),
        Function::Griewank => (0.98, (0.94, 0.99)),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub function: Function,
    pub dimension: usize,
    pub algorithm: Algorithm,
    pub mw: Option<f64>,
    pub mw_min: Option<f64>,
    pub mw_max: Option<f64>,
    pub iterations: usize,
    /// AFSA population; GPSO always uses `5 * dimension`.
    pub population: usize,
    pub runs: usize,
    pub master_seed: u64,
}

impl ExperimentConfig {
    /// 1000 iterations, population 30, 50 runs, seed 0, no weights set.
    pub fn new(function: Function, dimension: usize, algorithm: Algorithm) -> Self {
        ExperimentConfig {
            function,
            dimension,
            algorithm,
            mw: None,
            mw_min: None,
            mw_max: None,
            iterations: 1000,
            population: DEFAULT_POPULATION,
            runs: 50,
            master_seed: 0,
        }
    }

    /// Fills unset weights from [`tuned_weights`].
    pub fn with_tuned_weights(mut self) -> Self {
        let (mw, (lo, hi)) = tuned_weights(self.function);
        match self.algorithm {
            Algorithm::Cwafa => {
                self.mw.get_or_insert(mw);
            }
            a if a.uses_range() => {
                self.mw_min.get_or_insert(lo);
                self.mw_max.get_or_insert(hi);
            }
            _ => {}
        }
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if self.runs == 0 {
            return bad("runs must be at least 1".into());
        }
        if self.iterations == 0 {
            return bad("iterations must be at least 1".into());
        }
        if self.population == 0 {
            return bad("population must be at least 1".into());
        }
        Objective::new(self.function, self.dimension).map_err(|e| Error::Config(e.to_string()))?;
        self.policy().map(|_| ())
    }

    /// Movement-weight policy implied by the algorithm; `None` for GPSO.
    pub fn policy(&self) -> Result<Option<MwPolicy>> {
        let policy = match self.algorithm {
            Algorithm::Gpso => return Ok(None),
            Algorithm::StdAfsa => MwPolicy::Constant(1.0),
            Algorithm::Cwafa => MwPolicy::Constant(
                self.mw
                    .ok_or_else(|| Error::Config("cwafa requires --mw".into()))?,
            ),
            a => {
                let (Some(min), Some(max)) = (self.mw_min, self.mw_max) else {
                    return Err(Error::Config(format!("{a} requires --mw-min and --mw-max")));
                };
                match a {
                    Algorithm::Rwafa => MwPolicy::Random { min, max },
                    Algorithm::Ldwafsa => MwPolicy::LinearDecreasing { min, max },
                    _ => MwPolicy::LinearIncreasing { min, max },
                }
            }
        };
        policy
            .validate()
            .map_err(|e| Error::Config(e.to_string()))?;
        Ok(Some(policy))
    }

    pub fn objective(&self) -> Result<Objective> {
        Objective::new(self.function, self.dimension)
    }

    /// AFSA parameters: population from the config, the rest from
    /// [`SwarmParams::defaults_for`].
    pub fn swarm_params(&self) -> Result<SwarmParams> {
        let obj = self.objective()?;
        Ok(SwarmParams {
            population: self.population,
            ..SwarmParams::defaults_for(&obj, self.iterations)
        })
    }
}

/// Executes the run with the given index of an experiment.
pub fn run_single(cfg: &ExperimentConfig, run_index: u64) -> Result<RunRecord> {
    cfg.validate()?;
    let obj = cfg.objective()?;
    let mut rng = RngStream::new(cfg.master_seed, run_index);
    match cfg.policy()? {
        None => pso::run(&obj, cfg.iterations, &mut rng, run_index),
        Some(policy) => {
            let schedule = MwSchedule::new(policy, cfg.iterations)?;
            afsa::run(&obj, &cfg.swarm_params()?, &schedule, &mut rng, run_index)
        }
    }
}

/// Executes `cfg.runs` independent runs and summarizes their final best
/// values. Records are ordered by run index.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<(Vec<RunRecord>, Summary)> {
    cfg.validate()?;
    let records = (0..cfg.runs as u64)
        .into_par_iter()
        .map(|i| run_single(cfg, i))
        .collect::<Result<Vec<_>>>()?;
    let finals: Vec<f64> = records.iter().map(|r| r.final_best).collect();
    let summary = summarize(&finals, cfg.function.acceptance())?;
    Ok((records, summary))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub mw: f64,
    pub summary: Summary,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepResult {
    /// Sorted by `mw`.
    pub rows: Vec<SweepRow>,
    /// Weight with the lowest mean final fitness (smallest weight on ties).
    pub best_mw: f64,
}

/// `0.72, 0.73, ..., 1.02`.
pub fn default_grid() -> Vec<f64> {
    parse_grid("0.72:1.02:0.01").expect("static grid")
}

/// Parses `start:stop:step` into an inclusive grid. Values are rounded to
/// 10 decimals so `0.90:1.00:0.01` yields exactly 0.9, 0.91, ..., 1.0.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(Error::Config(format!(
            "grid `{text}` must be start:stop:step"
        )));
    };
    let num = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| Error::Config(format!("grid `{text}`: `{s}` is not a number")))
    };
    let (start, stop, step) = (num(a)?, num(b)?, num(c)?);
    let ordered = step > 0.0 && stop >= start && start.is_finite() && stop.is_finite();
    if !ordered {
        return Err(Error::Config(format!(
            "grid `{text}` needs step > 0 and stop >= start"
        )));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=n)
        .map(|k| ((start + k as f64 * step) * 1e10).round() / 1e10)
        .collect())
}

/// Runs one constant-weight experiment per grid value.
pub fn mw_sweep(base: &ExperimentConfig, grid: &[f64]) -> Result<SweepResult> {
    if base.algorithm != Algorithm::Cwafa {
        return Err(Error::Config(format!(
            "mw sweep needs algorithm cwafa, got {}",
            base.algorithm
        )));
    }
    if grid.is_empty() {
        return Err(Error::Config("mw sweep needs a non-empty grid".into()));
    }
    let mut grid = grid.to_vec();
    grid.sort_by(f64::total_cmp);
    let configs: Vec<ExperimentConfig> = grid
        .iter()
        .map(|&mw| ExperimentConfig {
            mw: Some(mw),
            ..base.clone()
        })
        .collect();
    for c in &configs {
        c.validate()?;
    }
    let mut rows = Vec::with_capacity(grid.len());
    for c in &configs {
        let (_, summary) = run_experiment(c)?;
        rows.push(SweepRow {
            mw: c.mw.unwrap_or_default(),
            summary,
        });
    }
    let mut best = &rows[0];
    for r in &rows[1..] {
        if r.summary.mean < best.summary.mean {
            best = r;
        }
    }
    Ok(SweepResult {
        best_mw: best.mw,
        rows,
    })
}

/// One (function, dimension, algorithm) cell of a comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonCell {
    pub config: ExperimentConfig,
    pub summary: Summary,
    /// Per-iteration mean of best-so-far fitness over the runs.
    pub mean_trace: ConvergenceSeries,
}

impl ComparisonCell {
    pub fn summary_row(&self) -> SummaryRow {
        SummaryRow {
            function: self.config.function.name().to_string(),
            dimension: self.config.dimension,
            algorithm: self.config.algorithm.name().to_string(),
            summary: self.summary,
        }
    }
}

/// Configurations compared for one (function, dimension) pair: all six
/// algorithms with tuned weights.
pub fn comparison_configs(
    functions: &[Function],
    dimensions: &[usize],
    iterations: usize,
    runs: usize,
    master_seed: u64,
) -> Result<Vec<ExperimentConfig>> {
    if functions.is_empty() || dimensions.is_empty() {
        return Err(Error::Config(
            "compare needs at least one function and one dimension".into(),
        ));
    }
    let mut configs = Vec::new();
    for &function in functions {
        for &dimension in dimensions {
            for algorithm in Algorithm::ALL {
                let cfg = ExperimentConfig {
                    iterations,
                    runs,
                    master_seed,
                    ..ExperimentConfig::new(function, dimension, algorithm)
                }
                .with_tuned_weights();
                cfg.validate()?;
                configs.push(cfg);
            }
        }
    }
    Ok(configs)
}

/// Runs every algorithm on every (function, dimension) pair. All
/// configurations are validated before anything runs.
pub fn compare(
    functions: &[Function],
    dimensions: &[usize],
    iterations: usize,
    runs: usize,
    master_seed: u64,
) -> Result<Vec<ComparisonCell>> {
    compare_configs(&comparison_configs(
        functions,
        dimensions,
        iterations,
        runs,
        master_seed,
    )?)
}

pub fn compare_configs(configs: &[ExperimentConfig]) -> Result<Vec<ComparisonCell>> {
    for c in configs {
        c.validate()?;
    }
    configs
        .iter()
        .map(|config| {
            let (records, summary) = run_experiment(config)?;
            Ok(ComparisonCell {
                mean_trace: ConvergenceSeries::mean_of(config.algorithm.label(), &records),
                summary,
                config: config.clone(),
            })
        })
        .collect()
}
