use std::path::Path;
use std::process::{Command, Output};

fn fishswarm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fishswarm"))
        .args(args)
        .output()
        .expect("spawn fishswarm")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn lines(path: &Path) -> Vec<String> {
    std::fs::read_to_string(path)
        .unwrap_or_else(|e| panic!("{}: {e}", path.display()))
        .lines()
        .map(String::from)
        .collect()
}

#[test]
fn run_writes_summary_trace_and_chart() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let o = fishswarm(&[
        "run",
        "--function",
        "sphere",
        "--dim",
        "5",
        "--algo",
        "cwafa",
        "--mw",
        "0.9",
        "--iters",
        "30",
        "--runs",
        "3",
        "--seed",
        "4",
        "--out",
        out,
        "--trace",
        "--svg",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));

    let summary = lines(&dir.path().join("sphere_d5_cwafa_summary.csv"));
    assert_eq!(
        summary[0],
        "function,dimension,algorithm,runs,best,mean,std_dev,solved_fraction"
    );
    assert_eq!(summary.len(), 2);
    assert!(summary[1].starts_with("sphere,5,cwafa,3,"));

    let trace = lines(&dir.path().join("sphere_d5_cwafa_trace.csv"));
    assert_eq!(trace[0], "run,iteration,best_fitness,visual,step,mw");
    assert_eq!(trace.len(), 1 + 3 * 31);

    let svg = std::fs::read_to_string(dir.path().join("sphere_d5_cwafa_convergence.svg")).unwrap();
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches("<polyline").count(), 3);
}

#[test]
fn identical_invocations_give_identical_files() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let o = fishswarm(&[
            "run",
            "--function",
            "griewank",
            "--dim",
            "4",
            "--algo",
            "rwafa",
            "--iters",
            "20",
            "--runs",
            "2",
            "--out",
            d.path().to_str().unwrap(),
            "--trace",
        ]);
        assert_eq!(code(&o), 0);
    }
    for f in [
        "griewank_d4_rwafa_trace.csv",
        "griewank_d4_rwafa_summary.csv",
    ] {
        assert_eq!(
            std::fs::read(a.path().join(f)).unwrap(),
            std::fs::read(b.path().join(f)).unwrap()
        );
    }
}

#[test]
fn config_file_supplies_flags_and_cli_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("exp.conf");
    std::fs::write(
        &cfg,
        format!(
            "# small test\nfunction = ackley\ndim = 3\nalgo = ldwafsa\nmw-min = 0.95\nmw-max = 0.99\niters = 10\nruns = 2\nout = {}\n",
            dir.path().join("from_file").display()
        ),
    )
    .unwrap();
    let o = fishswarm(&["run", "--config", cfg.to_str().unwrap(), "--runs", "4"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let summary = lines(&dir.path().join("from_file/ackley_d3_ldwafsa_summary.csv"));
    assert!(
        summary[1].starts_with("ackley,3,ldwafsa,4,"),
        "{}",
        summary[1]
    );
}

#[test]
fn sweep_writes_one_row_per_weight() {
    let dir = tempfile::tempdir().unwrap();
    let o = fishswarm(&[
        "sweep",
        "--function",
        "sphere",
        "--dim",
        "4",
        "--grid",
        "0.90:0.95:0.01",
        "--iters",
        "20",
        "--runs",
        "2",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = lines(&dir.path().join("sphere_d4_sweep.csv"));
    assert_eq!(rows[0], "mw,runs,best,mean,std_dev,solved_fraction");
    assert_eq!(rows.len(), 7);
    assert!(String::from_utf8_lossy(&o.stdout).contains("best mw"));
}

#[test]
fn compare_writes_table_and_charts() {
    let dir = tempfile::tempdir().unwrap();
    let o = fishswarm(&[
        "compare",
        "--functions",
        "sphere,griewank",
        "--dims",
        "3",
        "--iters",
        "10",
        "--runs",
        "2",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let rows = lines(&dir.path().join("compare_summary.csv"));
    assert_eq!(rows.len(), 1 + 2 * 6);
    for f in ["compare_sphere_d3.svg", "compare_griewank_d3.svg"] {
        let svg = std::fs::read_to_string(dir.path().join(f)).unwrap();
        assert_eq!(svg.matches("<polyline").count(), 6);
        for label in ["StdAFSA", "GPSO", "CWAFA", "RWAFA", "LDWAFSA", "LIWAFSA"] {
            assert!(svg.contains(label), "{f} lacks {label}");
        }
    }
}

#[test]
fn config_errors_exit_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let cases: [&[&str]; 7] = [
        &[
            "run",
            "--function",
            "booth",
            "--algo",
            "cwafa",
            "--out",
            out,
        ],
        &[
            "run",
            "--function",
            "sphere",
            "--algo",
            "nope",
            "--out",
            out,
        ],
        &[
            "run",
            "--function",
            "sphere",
            "--algo",
            "cwafa",
            "--runs",
            "0",
            "--out",
            out,
        ],
        &[
            "run",
            "--function",
            "sphere",
            "--algo",
            "ldwafsa",
            "--mw-min",
            "0.99",
            "--mw-max",
            "0.9",
            "--out",
            out,
        ],
        &[
            "sweep",
            "--function",
            "sphere",
            "--grid",
            "1:0:0.1",
            "--out",
            out,
        ],
        &["compare", "--functions", "sphere,foo", "--out", out],
        &["run", "--bogus-flag"],
    ];
    for args in cases {
        let o = fishswarm(args);
        assert_eq!(
            code(&o),
            1,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        assert!(!o.stderr.is_empty());
    }
    let rest: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert!(
        rest.is_empty(),
        "nothing should be written on config errors"
    );
}

#[test]
fn unknown_config_key_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    std::fs::write(&cfg, "function = sphere\ncolour = blue\n").unwrap();
    let o = fishswarm(&["run", "--config", cfg.to_str().unwrap(), "--algo", "gpso"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("colour"));
}

#[test]
fn io_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.conf");
    let o = fishswarm(&["run", "--config", missing.to_str().unwrap()]);
    assert_eq!(code(&o), 2);

    let blocker = dir.path().join("file");
    std::fs::write(&blocker, "").unwrap();
    let o = fishswarm(&[
        "run",
        "--function",
        "sphere",
        "--dim",
        "2",
        "--algo",
        "gpso",
        "--iters",
        "2",
        "--runs",
        "1",
        "--out",
        blocker.join("sub").to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2, "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn help_exits_zero() {
    let o = fishswarm(&["--help"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8_lossy(&o.stdout);
    for sub in ["run", "sweep", "compare"] {
        assert!(text.contains(sub));
    }
    assert_eq!(code(&fishswarm(&["run", "--help"])), 0);
}
