//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fail.

use std::process::ExitCode;
use std::time::Instant;

use fishswarm::afsa::{SwarmParams, SwarmState};
use fishswarm::benchmarks::{ackley, griewank, rosenbrock, sphere, Function, Objective};
use fishswarm::harness::{
    median, mw_sweep, parse_grid, run_experiment, run_single, summarize, write_trace_csv,
    Algorithm, ExperimentConfig,
};
use fishswarm::schedules::{apply_update, MwPolicy, MwSchedule};
use fishswarm::{EvalCounter, RngStream};

const SEED: u64 = 2024;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn cfg(function: Function, dim: usize, algorithm: Algorithm, runs: usize) -> ExperimentConfig {
    ExperimentConfig {
        iterations: 1000,
        runs,
        master_seed: SEED,
        ..ExperimentConfig::new(function, dim, algorithm)
    }
    .with_tuned_weights()
}

fn finals(c: &ExperimentConfig) -> Vec<f64> {
    let (records, _) = run_experiment(c).expect("experiment");
    records.iter().map(|r| r.final_best).collect()
}

fn solved(v: &[f64], acc: f64) -> usize {
    v.iter().filter(|&&x| x < acc).count()
}

fn ensure(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

fn sphere_threshold() -> Check {
    let c = ExperimentConfig {
        mw: Some(0.96),
        ..cfg(Function::Sphere, 30, Algorithm::Cwafa, 20)
    };
    let v = finals(&c);
    let n = solved(&v, 0.01);
    let m = median(&v).unwrap();
    ensure(
        n >= 18 && m <= 1e-8,
        format!("solved {n}/20, median {m:.3e}"),
    )
}

fn griewank_threshold() -> Check {
    let c = ExperimentConfig {
        mw: Some(0.98),
        ..cfg(Function::Griewank, 10, Algorithm::Cwafa, 20)
    };
    let v = finals(&c);
    let n = solved(&v, 0.01);
    ensure(
        n >= 18,
        format!("solved {n}/20, median {:.3e}", median(&v).unwrap()),
    )
}

fn rosenbrock_threshold() -> Check {
    let c = ExperimentConfig {
        mw: Some(0.96),
        ..cfg(Function::Rosenbrock, 30, Algorithm::Cwafa, 20)
    };
    let m = median(&finals(&c)).unwrap();
    ensure(m < 100.0, format!("median {m:.3}"))
}

fn gpso_threshold() -> Check {
    let v = finals(&cfg(Function::Sphere, 30, Algorithm::Gpso, 20));
    let n = solved(&v, 0.01);
    ensure(
        n >= 15,
        format!("solved {n}/20, median {:.3e}", median(&v).unwrap()),
    )
}

fn ordering() -> Check {
    let med = |a| median(&finals(&cfg(Function::Sphere, 30, a, 20))).unwrap();
    let std = med(Algorithm::StdAfsa);
    let cw = med(Algorithm::Cwafa);
    let rw = med(Algorithm::Rwafa);
    let ld = med(Algorithm::Ldwafsa);
    let li = med(Algorithm::Liwafsa);
    let gap = std.log10() - cw.max(f64::MIN_POSITIVE).log10();
    let ok = gap >= 6.0 && rw < 0.01 && ld < 0.01 && li < 0.01 && std > 1.0;
    ensure(
        ok,
        format!(
            "std_afsa {std:.3e}, cwafa {cw:.3e} ({gap:.1} orders), rwafa {rw:.3e}, ldwafsa {ld:.3e}, liwafsa {li:.3e}"
        ),
    )
}

fn sweep_band() -> Check {
    let base = cfg(Function::Sphere, 30, Algorithm::Cwafa, 10);
    let r = mw_sweep(&base, &parse_grid("0.90:1.00:0.01").unwrap()).unwrap();
    let best = r.best_mw;
    ensure(
        (0.94 - 1e-9..=0.99 + 1e-9).contains(&best),
        format!("argmin mw {best:.2}"),
    )
}

fn schedule_exactness() -> Check {
    let mut rng = RngStream::new(SEED, 0);
    let (lo, hi, n) = (0.95, 0.99, 1000);
    let mut bad = Vec::new();
    let mut check = |name: &str, got: f64, want: f64| {
        if (got - want).abs() > 1e-12 {
            bad.push(format!("{name}: {got} vs {want}"));
        }
    };
    let ld = MwSchedule::new(MwPolicy::LinearDecreasing { min: lo, max: hi }, n).unwrap();
    let li = MwSchedule::new(MwPolicy::LinearIncreasing { min: lo, max: hi }, n).unwrap();
    check("ld start", ld.mw_at(0, &mut rng).unwrap(), hi);
    check("ld end", ld.mw_at(n, &mut rng).unwrap(), lo);
    check("ld mid", ld.mw_at(n / 2, &mut rng).unwrap(), 0.97);
    check("li start", li.mw_at(0, &mut rng).unwrap(), lo);
    check("li end", li.mw_at(n, &mut rng).unwrap(), hi);
    check("li mid", li.mw_at(n / 2, &mut rng).unwrap(), 0.97);
    for k in (0..=n).step_by(37) {
        let sum = ld.mw_at(k, &mut rng).unwrap() + li.mw_at(k, &mut rng).unwrap();
        check("reflection", sum, lo + hi);
    }
    let rw = MwSchedule::new(MwPolicy::Random { min: lo, max: hi }, n).unwrap();
    for k in 0..=n {
        let w = rw.mw_at(k, &mut rng).unwrap();
        if !(lo..=hi).contains(&w) {
            bad.push(format!("random weight {w} outside range"));
        }
    }
    let (mut visual, mut step) = (400.0, 250.0);
    for _ in 0..1000 {
        (visual, step) = apply_update(visual, step, 0.96).unwrap();
    }
    let want = 400.0 * 0.96f64.powi(1000);
    let rel = (visual - want).abs() / want;
    if rel > 1e-10 {
        bad.push(format!("compounded visual rel error {rel:.2e}"));
    }
    ensure(
        bad.is_empty(),
        if bad.is_empty() {
            format!("visual after 1000 steps {visual:.6e} (rel err {rel:.1e}), step {step:.6e}")
        } else {
            bad.join("; ")
        },
    )
}

fn benchmark_exactness() -> Check {
    let z = vec![0.0; 30];
    let ones = vec![1.0; 30];
    let at_opt = [
        sphere(&z),
        rosenbrock(&ones).unwrap(),
        ackley(&z),
        griewank(&z),
    ];
    let a1 = ackley(&[1.0]);
    let ok = at_opt.iter().all(|v| v.abs() <= 1e-9) && (a1 - 3.6253849).abs() <= 1e-6;
    ensure(
        ok,
        format!("values at optima {at_opt:?}, ackley(1) = {a1:.10}"),
    )
}

fn property_suite() -> Check {
    let mut bad = Vec::new();

    // Monotone bulletin, feasibility and budget on every function and schedule.
    let policies = [
        MwPolicy::Constant(0.96),
        MwPolicy::Random {
            min: 0.95,
            max: 0.99,
        },
        MwPolicy::LinearDecreasing {
            min: 0.95,
            max: 0.99,
        },
        MwPolicy::LinearIncreasing {
            min: 0.95,
            max: 0.99,
        },
    ];
    for function in Function::ALL {
        for (p, policy) in policies.iter().enumerate() {
            let obj = Objective::new(function, 10).unwrap();
            let params = SwarmParams::defaults_for(&obj, 60);
            let schedule = MwSchedule::new(*policy, 60).unwrap();
            let mut rng = RngStream::new(SEED, p as u64);
            let mut counter = EvalCounter::new();
            let mut s = SwarmState::init(&obj, params.clone(), &mut rng, &mut counter).unwrap();
            let mut best = s.bulletin_fitness;
            for _ in 0..60 {
                let before = counter.count();
                s.step_iteration(&obj, &schedule, &mut rng, &mut counter)
                    .unwrap();
                let spent = counter.count() - before;
                if spent > params.max_evals_per_iteration() || spent < params.population as u64 {
                    bad.push(format!("{function}: {spent} evaluations in one iteration"));
                }
                if s.bulletin_fitness > best {
                    bad.push(format!("{function}: bulletin increased"));
                }
                best = s.bulletin_fitness;
                if !s.fish.iter().all(|f| obj.bounds().contains(&f.position)) {
                    bad.push(format!("{function}: fish out of bounds"));
                }
            }
        }
    }

    // Determinism down to the bytes of the trace file.
    let dir = std::env::temp_dir().join(format!("fishswarm-acceptance-{}", std::process::id()));
    for algo in Algorithm::ALL {
        let c = ExperimentConfig {
            iterations: 50,
            runs: 3,
            ..cfg(Function::Ackley, 10, algo, 3)
        };
        let a = dir.join(format!("{algo}-a.csv"));
        let b = dir.join(format!("{algo}-b.csv"));
        write_trace_csv(&run_experiment(&c).unwrap().0, &a).unwrap();
        write_trace_csv(&run_experiment(&c).unwrap().0, &b).unwrap();
        if std::fs::read(&a).unwrap() != std::fs::read(&b).unwrap() {
            bad.push(format!("{algo}: trace files differ for the same seed"));
        }
        for i in 0..3 {
            let single = run_single(&c, i).unwrap();
            let batch = &run_experiment(&c).unwrap().0[i as usize];
            if &single != batch {
                bad.push(format!("{algo}: run {i} differs between batch and single"));
            }
        }
    }
    let _ = std::fs::remove_dir_all(&dir);

    // Standard AFSA is the constant schedule at weight one.
    for function in Function::ALL {
        let s = ExperimentConfig {
            iterations: 50,
            ..cfg(function, 10, Algorithm::StdAfsa, 3)
        };
        let c = ExperimentConfig {
            algorithm: Algorithm::Cwafa,
            mw: Some(1.0),
            ..s.clone()
        };
        let (rs, _) = run_experiment(&s).unwrap();
        if rs != run_experiment(&c).unwrap().0 {
            bad.push(format!("{function}: std_afsa differs from cwafa at 1.0"));
        }
        let p = s.swarm_params().unwrap();
        if !rs
            .iter()
            .flat_map(|r| &r.trace)
            .all(|t| t.visual == p.visual0 && t.step == p.step0)
        {
            bad.push(format!("{function}: std_afsa visual or step changed"));
        }
    }

    // Summaries: order-free and equal to a two-pass oracle.
    let mut rng = RngStream::new(SEED, 99);
    let mut v: Vec<f64> = (0..10_000).map(|_| (rng.uniform() - 0.3) * 1e3).collect();
    let s = summarize(&v, 0.01).unwrap();
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    if !close(s.mean, mean, 1e-12) || !close(s.std_dev, var.sqrt(), 1e-12) {
        bad.push("summary disagrees with two-pass oracle".into());
    }
    v.reverse();
    v.rotate_left(1234);
    if summarize(&v, 0.01).unwrap() != s {
        bad.push("summary depends on order".into());
    }

    ensure(
        bad.is_empty(),
        if bad.is_empty() {
            "monotone, feasible, within budget, deterministic, std_afsa equivalent, summaries exact"
                .into()
        } else {
            bad.join("; ")
        },
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("cwafa sphere-30 threshold", sphere_threshold),
        ("cwafa griewank-10 threshold", griewank_threshold),
        ("cwafa rosenbrock-30 median", rosenbrock_threshold),
        ("gpso sphere-30 threshold", gpso_threshold),
        ("sphere-30 ordering", ordering),
        ("mw sweep band", sweep_band),
        ("schedule exactness", schedule_exactness),
        ("benchmark exactness", benchmark_exactness),
        ("property suite", property_suite),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(d) => println!("criterion {}: PASS  {name}: {d} [{secs:.1}s]", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {d} [{secs:.1}s]", i + 1)
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
