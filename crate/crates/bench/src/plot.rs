//! Minimal self-contained SVG line charts.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::run::{mean_by, BenchRow};
use crate::BenchError;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

const PALETTE: [&str; 4] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd"];

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub label: String,
    pub color: String,
    pub dashed: bool,
    pub points: Vec<(f64, f64)>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Smallest of 1, 2, 2.5, 5 times a power of ten that is `>= v`.
fn nice_ceil(v: f64) -> f64 {
    if v <= 0.0 || !v.is_finite() {
        return 1.0;
    }
    let exp = 10f64.powf(v.log10().floor());
    for f in [1.0, 2.0, 2.5, 5.0, 10.0] {
        if f * exp >= v * (1.0 - 1e-12) {
            return f * exp;
        }
    }
    10.0 * exp
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else if v.abs() >= 1e6 {
        let s = format!("{:.2}", v / 1e6);
        format!("{}M", s.trim_end_matches('0').trim_end_matches('.'))
    } else if v.abs() >= 100.0 {
        format!("{v:.0}")
    } else {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let xs: Vec<f64> = series.iter().flat_map(|s| s.points.iter().map(|p| p.0)).collect();
    let ys = series.iter().flat_map(|s| s.points.iter().map(|p| p.1));
    let x_min = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let x_max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let y_max = nice_ceil(ys.fold(0.0, f64::max));

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| {
        if x_max > x_min {
            LEFT + (x - x_min) / (x_max - x_min) * plot_w
        } else {
            LEFT + plot_w / 2.0
        }
    };
    let sy = |y: f64| TOP + plot_h - y / y_max * plot_h;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );

    // Axes and grid.
    let _ = writeln!(
        out,
        r##"<path d="M{LEFT:.2},{TOP:.2} V{:.2} H{:.2}" fill="none" stroke="#333"/>"##,
        TOP + plot_h,
        LEFT + plot_w
    );
    for i in 0..=4 {
        let v = y_max * i as f64 / 4.0;
        let y = sy(v);
        let _ = writeln!(
            out,
            r##"<line x1="{LEFT:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"##,
            LEFT + plot_w,
            LEFT - 6.0,
            y + 4.0,
            fmt_tick(v)
        );
    }
    let mut ticks: Vec<f64> = xs.clone();
    ticks.sort_by(f64::total_cmp);
    ticks.dedup();
    for x in ticks {
        let px = sx(x);
        let _ = writeln!(
            out,
            r##"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="#333"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"##,
            TOP + plot_h,
            TOP + plot_h + 5.0,
            TOP + plot_h + 18.0,
            fmt_tick(x)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 10.0,
        escape(x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{:.2}" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0,
        escape(y_label)
    );

    for (i, s) in series.iter().enumerate() {
        let pts: Vec<String> = s.points.iter().map(|&(x, y)| format!("{:.2},{:.2}", sx(x), sy(y))).collect();
        let dash = if s.dashed { r#" stroke-dasharray="6 4""# } else { "" };
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{}" stroke-width="2"{dash} points="{}"/>"#,
            s.color,
            pts.join(" ")
        );
        for &(x, y) in &s.points {
            let _ = writeln!(out, r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{}"/>"#, sx(x), sy(y), s.color);
        }
        let ly = TOP + 14.0 + 16.0 * i as f64;
        let lx = LEFT + 12.0;
        let _ = writeln!(
            out,
            r#"<line x1="{lx:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-width="2"{dash}/><text x="{:.2}" y="{:.2}">{}</text>"#,
            ly - 4.0,
            lx + 24.0,
            ly - 4.0,
            s.color,
            lx + 30.0,
            ly,
            escape(&s.label)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn methods_in_order(rows: &[&BenchRow]) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for r in rows {
        if !out.contains(&r.method) {
            out.push(r.method.clone());
        }
    }
    out
}

fn mean_series(rows: &[BenchRow], method: &str, f: impl Fn(&BenchRow) -> f64 + Copy) -> Vec<(f64, f64)> {
    let mut sizes: Vec<usize> = rows.iter().filter(|r| r.method == method).map(|r| r.size).collect();
    sizes.sort_unstable();
    sizes.dedup();
    sizes
        .into_iter()
        .filter_map(|s| mean_by(rows, s, method, f).map(|v| (s as f64, v)))
        .collect()
}

/// Mean total and `find_vis_viol` time against size, one pair of lines per
/// method. `rows` must all come from one domain.
pub fn time_chart(domain: &str, rows: &[BenchRow]) -> String {
    let refs: Vec<&BenchRow> = rows.iter().collect();
    let mut series = Vec::new();
    for (i, m) in methods_in_order(&refs).iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()].to_string();
        series.push(Series {
            label: format!("{m} total"),
            color: color.clone(),
            dashed: false,
            points: mean_series(rows, m, |r| r.total_ms),
        });
        series.push(Series {
            label: format!("{m} find_vis_viol"),
            color,
            dashed: true,
            points: mean_series(rows, m, |r| r.find_vis_viol_ms),
        });
    }
    line_chart(&format!("{domain}: runtime"), "size", "mean time (ms)", &series)
}

pub fn memory_chart(domain: &str, rows: &[BenchRow]) -> String {
    let refs: Vec<&BenchRow> = rows.iter().collect();
    let series: Vec<Series> = methods_in_order(&refs)
        .iter()
        .enumerate()
        .map(|(i, m)| Series {
            label: m.clone(),
            color: PALETTE[i % PALETTE.len()].to_string(),
            dashed: false,
            points: mean_series(rows, m, |r| r.logical_memory as f64),
        })
        .collect();
    line_chart(&format!("{domain}: logical memory"), "size", "logical memory (units)", &series)
}

/// Writes `<domain>_time.svg` and `<domain>_memory.svg` for every domain in
/// `rows` and returns the paths written.
pub fn emit_plots(rows: &[BenchRow], dir: &Path) -> Result<Vec<PathBuf>, BenchError> {
    if rows.is_empty() {
        return Err(BenchError::Config("no rows to plot".into()));
    }
    let mut domains: Vec<&str> = Vec::new();
    for r in rows {
        if !domains.contains(&r.domain.as_str()) {
            domains.push(&r.domain);
        }
    }
    let mut written = Vec::new();
    for domain in domains {
        let subset: Vec<BenchRow> = rows.iter().filter(|r| r.domain == domain).cloned().collect();
        for (suffix, svg) in [("time", time_chart(domain, &subset)), ("memory", memory_chart(domain, &subset))] {
            let path = dir.join(format!("{domain}_{suffix}.svg"));
            std::fs::write(&path, svg).map_err(|e| BenchError::io(&path, e))?;
            written.push(path);
        }
    }
    Ok(written)
}
