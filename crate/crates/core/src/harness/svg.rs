//! Standalone SVG convergence charts.

use std::fmt::Write as _;
use std::path::Path;

use crate::record::RunRecord;
use crate::{Error, Result};

/// Non-positive values are drawn at this level on log-scaled charts.
pub const LOG_FLOOR: f64 = 1e-320;

const WIDTH: f64 = 860.0;
const HEIGHT: f64 = 520.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 220.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 60.0;

const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

/// A named line: `(iteration, best fitness)` pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceSeries {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

impl ConvergenceSeries {
    pub fn from_record(name: impl Into<String>, record: &RunRecord) -> Self {
        ConvergenceSeries {
            name: name.into(),
            points: record
                .trace
                .iter()
                .map(|t| (t.iteration as f64, t.best_fitness))
                .collect(),
        }
    }

    /// Per-iteration mean of best fitness over several runs of equal length.
    pub fn mean_of(name: impl Into<String>, records: &[RunRecord]) -> Self {
        let len = records.iter().map(|r| r.trace.len()).min().unwrap_or(0);
        let n = records.len().max(1) as f64;
        let points = (0..len)
            .map(|k| {
                let sum: f64 = records.iter().map(|r| r.trace[k].best_fitness).sum();
                (records[0].trace[k].iteration as f64, sum / n)
            })
            .collect();
        ConvergenceSeries {
            name: name.into(),
            points,
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders the chart as an SVG document.
pub fn convergence_svg(series: &[ConvergenceSeries], log_scale: bool) -> Result<String> {
    if series.is_empty() || series.iter().all(|s| s.points.is_empty()) {
        return Err(Error::InvalidParameter("nothing to plot".into()));
    }
    let mut floored = false;
    let ty = |y: f64, floored: &mut bool| -> f64 {
        if log_scale {
            if y <= 0.0 {
                *floored = true;
                LOG_FLOOR.log10()
            } else {
                y.log10()
            }
        } else {
            y
        }
    };

    let mut x_min = f64::INFINITY;
    let mut x_max = f64::NEG_INFINITY;
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    let transformed: Vec<Vec<(f64, f64)>> = series
        .iter()
        .map(|s| {
            s.points
                .iter()
                .filter(|(x, y)| x.is_finite() && !y.is_nan())
                .map(|&(x, y)| {
                    let yt = ty(y, &mut floored).clamp(-f64::MAX, f64::MAX);
                    x_min = x_min.min(x);
                    x_max = x_max.max(x);
                    y_min = y_min.min(yt);
                    y_max = y_max.max(yt);
                    (x, yt)
                })
                .collect()
        })
        .collect();
    if x_max <= x_min {
        x_min -= 0.5;
        x_max += 0.5;
    }
    if y_max <= y_min {
        let pad = if y_min == 0.0 { 1.0 } else { y_min.abs() * 0.1 };
        y_min -= pad;
        y_max += pad;
    }

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let px = |x: f64| LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let py = |y: f64| TOP + (y_max - y) / (y_max - y_min) * plot_h;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<rect class="frame" x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );

    for k in 0..=5 {
        let f = k as f64 / 5.0;
        let xv = x_min + f * (x_max - x_min);
        let yv = y_min + f * (y_max - y_min);
        let ylabel = if log_scale {
            format!("1e{yv:.1}")
        } else {
            format!("{yv:.3e}")
        };
        let _ = writeln!(
            out,
            r#"<text class="tick" x="{:.2}" y="{:.2}" text-anchor="middle">{:.0}</text>"#,
            px(xv),
            HEIGHT - BOTTOM + 18.0,
            xv
        );
        let _ = writeln!(
            out,
            r#"<text class="tick" x="{:.2}" y="{:.2}" text-anchor="end">{ylabel}</text>"#,
            LEFT - 6.0,
            py(yv) + 4.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">iteration</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    let ytitle = if log_scale {
        "best fitness (log10)"
    } else {
        "best fitness"
    };
    let _ = writeln!(
        out,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{ytitle}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );

    for (i, (s, pts)) in series.iter().zip(&transformed).enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let coords: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline class="series" data-name="{}" fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            escape(&s.name),
            coords.join(" ")
        );
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let lx = WIDTH - RIGHT + 15.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"/>"#,
            lx + 20.0
        );
        let _ = writeln!(
            out,
            r#"<text class="legend-label" x="{}" y="{}">{}</text>"#,
            lx + 26.0,
            ly + 4.0,
            escape(&s.name)
        );
    }
    if floored {
        let _ = writeln!(
            out,
            r#"<text class="legend-note" x="{}" y="{}">values &lt;= 0 drawn at {LOG_FLOOR:e}</text>"#,
            WIDTH - RIGHT + 15.0,
            TOP + 10.0 + 18.0 * series.len() as f64 + 8.0
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn render_convergence_svg(
    series: &[ConvergenceSeries],
    path: &Path,
    log_scale: bool,
) -> Result<()> {
    let svg = convergence_svg(series, log_scale)?;
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    std::fs::write(path, svg).map_err(|e| Error::io(path, e))
}
