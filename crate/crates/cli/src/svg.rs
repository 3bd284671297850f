//! Minimal SVG 1.1 line charts.

use std::fmt::Write as _;

use thiserror::Error;
use tripartite_core::{Axis, Trajectory};

use crate::format::fmt_num;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 130.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const TICKS: usize = 5;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChartSpec {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
}

#[derive(Debug, Error, PartialEq)]
pub enum ChartError {
    #[error("chart has no series")]
    NoSeries,
    #[error("series `{0}` is empty")]
    EmptySeries(String),
    #[error("series `{0}` contains a non-finite value")]
    NonFinite(String),
}

impl ChartSpec {
    /// The x, y and z coordinates of a trajectory against time.
    pub fn from_trajectory(title: &str, traj: &Trajectory) -> Self {
        ChartSpec {
            title: title.to_string(),
            x_label: "t".to_string(),
            y_label: "probability".to_string(),
            series: Axis::ALL
                .iter()
                .map(|&a| Series {
                    name: a.letter().to_string(),
                    points: traj.series(a),
                })
                .collect(),
        }
    }

    pub fn validate(&self) -> Result<(), ChartError> {
        if self.series.is_empty() {
            return Err(ChartError::NoSeries);
        }
        for s in &self.series {
            if s.points.is_empty() {
                return Err(ChartError::EmptySeries(s.name.clone()));
            }
            if s.points
                .iter()
                .any(|(x, y)| !x.is_finite() || !y.is_finite())
            {
                return Err(ChartError::NonFinite(s.name.clone()));
            }
        }
        Ok(())
    }
}

fn escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

/// Pixel coordinates are printed with two decimals.
fn px(v: f64) -> String {
    format!("{:.2}", v + 0.0)
}

struct Scale {
    lo: f64,
    hi: f64,
    from: f64,
    to: f64,
}

impl Scale {
    fn new((lo, hi): (f64, f64), from: f64, to: f64) -> Self {
        let (lo, hi) = if hi > lo {
            (lo, hi)
        } else {
            (lo - 0.5, hi + 0.5)
        };
        Scale { lo, hi, from, to }
    }

    fn map(&self, v: f64) -> f64 {
        self.from + (v - self.lo) / (self.hi - self.lo) * (self.to - self.from)
    }

    fn ticks(&self) -> impl Iterator<Item = f64> + '_ {
        (0..TICKS).map(move |i| self.lo + (self.hi - self.lo) * i as f64 / (TICKS - 1) as f64)
    }
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), v| {
        (l.min(v), h.max(v))
    })
}

pub fn render_chart_svg(spec: &ChartSpec) -> Result<String, ChartError> {
    spec.validate()?;
    let all = || spec.series.iter().flat_map(|s| s.points.iter());
    let xs = Scale::new(range(all().map(|p| p.0)), LEFT, WIDTH - RIGHT);
    let ys = Scale::new(range(all().map(|p| p.1)), HEIGHT - BOTTOM, TOP);

    let mut out = String::new();
    let w = &mut out;
    writeln!(
        w,
        r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#
    )
    .unwrap();
    writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(
        w,
        r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    )
    .unwrap();
    writeln!(
        w,
        r#"<text x="{}" y="{}" text-anchor="middle" font-size="15">{}</text>"#,
        px((LEFT + WIDTH - RIGHT) / 2.0),
        px(TOP / 2.0 + 5.0),
        escape(&spec.title)
    )
    .unwrap();

    let (x0, x1, y0, y1) = (LEFT, WIDTH - RIGHT, HEIGHT - BOTTOM, TOP);
    writeln!(w, r#"<g stroke="black" stroke-width="1" fill="none">"#).unwrap();
    writeln!(
        w,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
        px(x0),
        px(y0),
        px(x1),
        px(y0)
    )
    .unwrap();
    writeln!(
        w,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
        px(x0),
        px(y0),
        px(x0),
        px(y1)
    )
    .unwrap();
    for t in xs.ticks() {
        let x = px(xs.map(t));
        writeln!(
            w,
            r#"<line x1="{x}" y1="{}" x2="{x}" y2="{}"/>"#,
            px(y0),
            px(y0 + 5.0)
        )
        .unwrap();
    }
    for t in ys.ticks() {
        let y = px(ys.map(t));
        writeln!(
            w,
            r#"<line x1="{}" y1="{y}" x2="{}" y2="{y}"/>"#,
            px(x0 - 5.0),
            px(x0)
        )
        .unwrap();
    }
    writeln!(w, "</g>").unwrap();

    writeln!(w, r#"<g fill="black">"#).unwrap();
    for t in xs.ticks() {
        writeln!(
            w,
            r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
            px(xs.map(t)),
            px(y0 + 20.0),
            fmt_num((t * 1e6).round() / 1e6)
        )
        .unwrap();
    }
    for t in ys.ticks() {
        writeln!(
            w,
            r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#,
            px(x0 - 8.0),
            px(ys.map(t) + 4.0),
            fmt_num((t * 1e6).round() / 1e6)
        )
        .unwrap();
    }
    writeln!(
        w,
        r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#,
        px((x0 + x1) / 2.0),
        px(HEIGHT - 15.0),
        escape(&spec.x_label)
    )
    .unwrap();
    let (lx, ly) = (px(18.0), px((y0 + y1) / 2.0));
    writeln!(
        w,
        r#"<text x="{lx}" y="{ly}" text-anchor="middle" transform="rotate(-90 {lx} {ly})">{}</text>"#,
        escape(&spec.y_label)
    )
    .unwrap();
    writeln!(w, "</g>").unwrap();

    for (i, s) in spec.series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let mut pts: Vec<String> = Vec::with_capacity(s.points.len());
        for &(x, y) in &s.points {
            let p = format!("{},{}", px(xs.map(x)), px(ys.map(y)));
            if pts.last() != Some(&p) {
                pts.push(p);
            }
        }
        writeln!(
            w,
            r#"<polyline fill="none" stroke="{colour}" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        )
        .unwrap();
    }

    writeln!(w, r#"<g class="legend">"#).unwrap();
    for (i, s) in spec.series.iter().enumerate() {
        let colour = PALETTE[i % PALETTE.len()];
        let y = TOP + 10.0 + 20.0 * i as f64;
        let lx = WIDTH - RIGHT + 15.0;
        writeln!(
            w,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{colour}" stroke-width="2"/>"#,
            px(lx),
            px(y),
            px(lx + 20.0),
            px(y)
        )
        .unwrap();
        writeln!(
            w,
            r#"<text x="{}" y="{}">{}</text>"#,
            px(lx + 26.0),
            px(y + 4.0),
            escape(&s.name)
        )
        .unwrap();
    }
    writeln!(w, "</g>").unwrap();
    writeln!(w, "</svg>").unwrap();
    Ok(out)
}
