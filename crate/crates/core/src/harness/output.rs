//! CSV writers for traces and summaries.
//!
//! Floats are written in scientific notation with 17 significant digits,
//! which round-trips every finite `f64` exactly.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::stats::Summary;
use super::SweepRow;
use crate::record::RunRecord;
use crate::{Error, Result};

pub const TRACE_HEADER: &str = "run,iteration,best_fitness,visual,step,mw";
pub const SUMMARY_HEADER: &str =
    "function,dimension,algorithm,runs,best,mean,std_dev,solved_fraction";
pub const SWEEP_HEADER: &str = "mw,runs,best,mean,std_dev,solved_fraction";

pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// One parsed line of a trace CSV.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TraceRow {
    pub run: u64,
    pub iteration: usize,
    pub best_fitness: f64,
    pub visual: f64,
    pub step: f64,
    pub mw: f64,
}

/// A labelled summary, one line of the summary CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub function: String,
    pub dimension: usize,
    pub algorithm: String,
    pub summary: Summary,
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn write_lines(path: &Path, header: &str, lines: impl Iterator<Item = String>) -> Result<()> {
    let mut w = create(path)?;
    let io = |e| Error::io(path, e);
    writeln!(w, "{header}").map_err(io)?;
    for line in lines {
        writeln!(w, "{line}").map_err(io)?;
    }
    w.flush().map_err(io)
}

pub fn write_trace_csv(records: &[RunRecord], path: &Path) -> Result<()> {
    let mut sorted: Vec<&RunRecord> = records.iter().collect();
    sorted.sort_by_key(|r| r.run_index);
    let lines = sorted.into_iter().flat_map(|r| {
        let mut trace = r.trace.clone();
        trace.sort_by_key(|t| t.iteration);
        trace.into_iter().map(move |t| {
            format!(
                "{},{},{},{},{},{}",
                r.run_index,
                t.iteration,
                format_float(t.best_fitness),
                format_float(t.visual),
                format_float(t.step),
                format_float(t.mw)
            )
        })
    });
    write_lines(path, TRACE_HEADER, lines)
}

pub fn read_trace_csv(path: &Path) -> Result<Vec<TraceRow>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let bad = |n: usize, msg: &str| Error::Config(format!("{}:{n}: {msg}", path.display()));
    let mut rows = Vec::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if n == 0 {
            if line != TRACE_HEADER {
                return Err(bad(1, "unexpected header"));
            }
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 6 {
            return Err(bad(n + 1, "expected 6 fields"));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad(n + 1, "bad number"));
        rows.push(TraceRow {
            run: f[0].parse().map_err(|_| bad(n + 1, "bad run"))?,
            iteration: f[1].parse().map_err(|_| bad(n + 1, "bad iteration"))?,
            best_fitness: num(f[2])?,
            visual: num(f[3])?,
            step: num(f[4])?,
            mw: num(f[5])?,
        });
    }
    Ok(rows)
}

pub fn write_summary_csv(rows: &[SummaryRow], path: &Path) -> Result<()> {
    let lines = rows.iter().map(|r| {
        let s = &r.summary;
        format!(
            "{},{},{},{},{},{},{},{}",
            r.function,
            r.dimension,
            r.algorithm,
            s.runs,
            format_float(s.best),
            format_float(s.mean),
            format_float(s.std_dev),
            format_float(s.solved_fraction)
        )
    });
    write_lines(path, SUMMARY_HEADER, lines)
}

pub fn write_sweep_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    let lines = rows.iter().map(|r| {
        let s = &r.summary;
        format!(
            "{},{},{},{},{},{}",
            r.mw,
            s.runs,
            format_float(s.best),
            format_float(s.mean),
            format_float(s.std_dev),
            format_float(s.solved_fraction)
        )
    });
    write_lines(path, SWEEP_HEADER, lines)
}
