//! `fishswarm` command-line runner.
//!
//! Every flag may also come from a `key = value` file given with
//! `--config`; keys are the long flag names, e.g. `mw-min = 0.95`. Flags on the
//! command line win over the file.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use fishswarm::benchmarks::Function;
use fishswarm::harness::{
    self, compare_configs, comparison_configs, load_config, mw_sweep, parse_grid, run_experiment,
    write_summary_csv, write_sweep_csv, write_trace_csv, Algorithm, ConvergenceSeries,
    ExperimentConfig, SummaryRow,
};
use fishswarm::{Error, Result};

#[derive(Parser, Debug)]
#[command(
    name = "fishswarm",
    version,
    about = "Fish swarm optimization experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Repeated runs of one algorithm on one function.
    Run(RunArgs),
    /// Constant movement weight sweep (cwafa).
    Sweep(SweepArgs),
    /// All six algorithms on each function and dimension.
    Compare(CompareArgs),
}

#[derive(Args, Debug)]
struct Common {
    /// key = value file with defaults for any flag.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    iters: Option<String>,
    #[arg(long)]
    runs: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// AFSA population.
    #[arg(long)]
    pop: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
struct RunArgs {
    #[arg(long)]
    function: Option<String>,
    #[arg(long)]
    dim: Option<String>,
    #[arg(long)]
    algo: Option<String>,
    #[arg(long)]
    mw: Option<String>,
    #[arg(long = "mw-min")]
    mw_min: Option<String>,
    #[arg(long = "mw-max")]
    mw_max: Option<String>,
    /// Also write every run's trace.
    #[arg(long)]
    trace: bool,
    /// Also write a convergence chart.
    #[arg(long)]
    svg: bool,
    /// Linear y axis on charts.
    #[arg(long)]
    linear: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long)]
    function: Option<String>,
    #[arg(long)]
    dim: Option<String>,
    /// start:stop:step, inclusive.
    #[arg(long)]
    grid: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CompareArgs {
    /// Comma-separated function names.
    #[arg(long)]
    functions: Option<String>,
    /// Comma-separated dimensions.
    #[arg(long)]
    dims: Option<String>,
    #[arg(long)]
    linear: bool,
    #[command(flatten)]
    common: Common,
}

/// Flag values merged from the config file and the command line.
struct Settings {
    values: BTreeMap<String, String>,
}

impl Settings {
    fn load(
        common: &Common,
        cli: &[(&str, Option<&String>)],
        switches: &[(&str, bool)],
    ) -> Result<Self> {
        let mut values = match &common.config {
            Some(path) => load_config(path)?,
            None => BTreeMap::new(),
        };
        let allowed: Vec<&str> = cli
            .iter()
            .map(|(k, _)| *k)
            .chain(switches.iter().map(|(k, _)| *k))
            .chain(["iters", "runs", "seed", "pop", "out"])
            .collect();
        if let Some(k) = values.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::Config(format!("unknown key `{k}` in config file")));
        }
        let shared = [
            ("iters", common.iters.as_ref()),
            ("runs", common.runs.as_ref()),
            ("seed", common.seed.as_ref()),
            ("pop", common.pop.as_ref()),
            ("out", common.out.as_ref()),
        ];
        for (k, v) in cli.iter().chain(&shared) {
            if let Some(v) = v {
                values.insert(k.to_string(), v.to_string());
            }
        }
        for (k, on) in switches {
            if *on {
                values.insert(k.to_string(), "true".into());
            }
        }
        Ok(Settings { values })
    }

    fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.values
            .get(key)
            .map(|v| {
                v.parse()
                    .map_err(|_| Error::Config(format!("invalid value `{v}` for {key}")))
            })
            .transpose()
    }

    fn or<T: FromStr>(&self, key: &str, default: T) -> Result<T> {
        Ok(self.get(key)?.unwrap_or(default))
    }

    fn required<T: FromStr>(&self, key: &str) -> Result<T> {
        self.get(key)?
            .ok_or_else(|| Error::Config(format!("missing required --{key}")))
    }

    fn function(&self) -> Result<Function> {
        let name: String = self.required("function")?;
        name.parse()
    }

    fn flag(&self, key: &str) -> Result<bool> {
        self.or(key, false)
    }

    fn out(&self) -> Result<PathBuf> {
        Ok(PathBuf::from(self.or("out", String::from("out"))?))
    }

    /// Experiment settings shared by every subcommand.
    fn base(
        &self,
        function: Function,
        dimension: usize,
        algorithm: Algorithm,
    ) -> Result<ExperimentConfig> {
        Ok(ExperimentConfig {
            iterations: self.or("iters", 1000)?,
            population: self.or("pop", harness::DEFAULT_POPULATION)?,
            runs: self.or("runs", 50)?,
            master_seed: self.or("seed", 1)?,
            ..ExperimentConfig::new(function, dimension, algorithm)
        })
    }
}

fn list<T: FromStr>(text: &str, what: &str) -> Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|e| Error::Config(format!("invalid {what} `{s}`: {e}")))
        })
        .collect()
}

fn prefix(cfg: &ExperimentConfig) -> String {
    format!("{}_d{}", cfg.function.name(), cfg.dimension)
}

fn print_summary(cfg: &ExperimentConfig, s: &harness::Summary) {
    println!(
        "{:<10} d={:<3} {:<8} best {:.4e}  mean {:.4e}  std {:.4e}  solved {:.2}",
        cfg.function.name(),
        cfg.dimension,
        cfg.algorithm.name(),
        s.best,
        s.mean,
        s.std_dev,
        s.solved_fraction
    );
}

fn cmd_run(args: &RunArgs) -> Result<()> {
    let st = Settings::load(
        &args.common,
        &[
            ("function", args.function.as_ref()),
            ("dim", args.dim.as_ref()),
            ("algo", args.algo.as_ref()),
            ("mw", args.mw.as_ref()),
            ("mw-min", args.mw_min.as_ref()),
            ("mw-max", args.mw_max.as_ref()),
        ],
        &[
            ("trace", args.trace),
            ("svg", args.svg),
            ("linear", args.linear),
        ],
    )?;
    let algorithm: Algorithm = st.required::<String>("algo")?.parse()?;
    let cfg = ExperimentConfig {
        mw: st.get("mw")?,
        mw_min: st.get("mw-min")?,
        mw_max: st.get("mw-max")?,
        ..st.base(st.function()?, st.or("dim", 30)?, algorithm)?
    }
    .with_tuned_weights();
    cfg.validate()?;
    let out = st.out()?;

    let (records, summary) = run_experiment(&cfg)?;
    let stem = format!("{}_{}", prefix(&cfg), cfg.algorithm.name());
    let row = SummaryRow {
        function: cfg.function.name().into(),
        dimension: cfg.dimension,
        algorithm: cfg.algorithm.name().into(),
        summary,
    };
    write_summary_csv(&[row], &out.join(format!("{stem}_summary.csv")))?;
    if st.flag("trace")? {
        write_trace_csv(&records, &out.join(format!("{stem}_trace.csv")))?;
    }
    if st.flag("svg")? {
        let by_final = |a: &&fishswarm::RunRecord, b: &&fishswarm::RunRecord| {
            a.final_best.total_cmp(&b.final_best)
        };
        let best = records.iter().min_by(by_final).expect("runs >= 1");
        let worst = records.iter().max_by(by_final).expect("runs >= 1");
        let series = [
            ConvergenceSeries::mean_of("mean", &records),
            ConvergenceSeries::from_record(format!("best run ({})", best.run_index), best),
            ConvergenceSeries::from_record(format!("worst run ({})", worst.run_index), worst),
        ];
        harness::render_convergence_svg(
            &series,
            &out.join(format!("{stem}_convergence.svg")),
            !st.flag("linear")?,
        )?;
    }
    print_summary(&cfg, &summary);
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    let st = Settings::load(
        &args.common,
        &[
            ("function", args.function.as_ref()),
            ("dim", args.dim.as_ref()),
            ("grid", args.grid.as_ref()),
        ],
        &[],
    )?;
    let base = st.base(st.function()?, st.or("dim", 30)?, Algorithm::Cwafa)?;
    let grid = match st.get::<String>("grid")? {
        Some(g) => parse_grid(&g)?,
        None => harness::default_grid(),
    };
    let out = st.out()?;
    let result = mw_sweep(&base, &grid)?;
    write_sweep_csv(
        &result.rows,
        &out.join(format!("{}_sweep.csv", prefix(&base))),
    )?;
    for r in &result.rows {
        println!(
            "mw {:.4}  mean {:.4e}  best {:.4e}  solved {:.2}",
            r.mw, r.summary.mean, r.summary.best, r.summary.solved_fraction
        );
    }
    println!("best mw {}", result.best_mw);
    Ok(())
}

fn cmd_compare(args: &CompareArgs) -> Result<()> {
    let st = Settings::load(
        &args.common,
        &[
            ("functions", args.functions.as_ref()),
            ("dims", args.dims.as_ref()),
        ],
        &[("linear", args.linear)],
    )?;
    let functions: Vec<Function> = match st.get::<String>("functions")? {
        Some(s) => list(&s, "function")?,
        None => Function::ALL.to_vec(),
    };
    let dims: Vec<usize> = match st.get::<String>("dims")? {
        Some(s) => list(&s, "dimension")?,
        None => vec![10, 20, 30],
    };
    let template = st.base(Function::Sphere, 10, Algorithm::Cwafa)?;
    let configs: Vec<ExperimentConfig> = comparison_configs(
        &functions,
        &dims,
        template.iterations,
        template.runs,
        template.master_seed,
    )?
    .into_iter()
    .map(|c| ExperimentConfig {
        population: template.population,
        ..c
    })
    .collect();
    let out = st.out()?;
    let cells = compare_configs(&configs)?;

    let rows: Vec<SummaryRow> = cells.iter().map(|c| c.summary_row()).collect();
    write_summary_csv(&rows, &out.join("compare_summary.csv"))?;
    for group in cells.chunks(Algorithm::ALL.len()) {
        let series: Vec<ConvergenceSeries> = group.iter().map(|c| c.mean_trace.clone()).collect();
        let path = out.join(format!("compare_{}.svg", prefix(&group[0].config)));
        harness::render_convergence_svg(&series, &path, !st.flag("linear")?)?;
    }
    for c in &cells {
        print_summary(&c.config, &c.summary);
    }
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    if e.is_io() {
        2
    } else {
        1
    }
}

fn execute(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Compare(a) => cmd_compare(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
