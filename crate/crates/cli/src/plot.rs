//! Minimal SVG line plots on a fixed 800×500 canvas.

use std::fmt::Write as _;

pub const WIDTH: f64 = 800.0;
pub const HEIGHT: f64 = 500.0;

const MARGIN_LEFT: f64 = 60.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 50.0;
const MARGIN_BOTTOM: f64 = 50.0;
const PANEL_GAP: f64 = 70.0;

const PALETTE: [&str; 4] = ["#1f4e9c", "#b8312f", "#2b8a3e", "#7b4397"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stroke {
    Solid,
    Dashed,
    Dotted,
}

impl Stroke {
    fn dasharray(self) -> Option<&'static str> {
        match self {
            Stroke::Solid => None,
            Stroke::Dashed => Some("8 4"),
            Stroke::Dotted => Some("2 3"),
        }
    }
}

/// One curve. `None` points break the polyline.
#[derive(Debug, Clone)]
pub struct Series {
    pub label: Option<String>,
    pub stroke: Stroke,
    pub color: usize,
    pub points: Vec<Option<(f64, f64)>>,
}

impl Series {
    pub fn new(
        label: Option<&str>,
        stroke: Stroke,
        color: usize,
        points: Vec<Option<(f64, f64)>>,
    ) -> Self {
        Self {
            label: label.map(str::to_owned),
            stroke,
            color,
            points,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Panel {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    /// Horizontal extent; the data range when `None`.
    pub x_range: Option<(f64, f64)>,
    pub series: Vec<Series>,
}

struct Frame {
    left: f64,
    top: f64,
    width: f64,
    height: f64,
    x: (f64, f64),
    y: (f64, f64),
}

impl Frame {
    fn map(&self, (x, y): (f64, f64)) -> (f64, f64) {
        let px = self.left + (x - self.x.0) / (self.x.1 - self.x.0) * self.width;
        let py = self.top + self.height - (y - self.y.0) / (self.y.1 - self.y.0) * self.height;
        (px, py)
    }
}

/// Renders panels side by side under a common title.
pub fn render(title: &str, panels: &[Panel]) -> String {
    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    )
    .unwrap();
    writeln!(
        svg,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="{:.2}" y="22" text-anchor="middle" font-size="15">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    )
    .unwrap();

    let n = panels.len().max(1) as f64;
    let width = (WIDTH - MARGIN_LEFT - MARGIN_RIGHT - PANEL_GAP * (n - 1.0)) / n;
    for (k, panel) in panels.iter().enumerate() {
        let left = MARGIN_LEFT + k as f64 * (width + PANEL_GAP);
        draw_panel(&mut svg, panel, left, width);
    }
    svg.push_str("</svg>\n");
    svg
}

fn draw_panel(svg: &mut String, panel: &Panel, left: f64, width: f64) {
    let (xr, yr) = ranges(panel);
    let frame = Frame {
        left,
        top: MARGIN_TOP,
        width,
        height: HEIGHT - MARGIN_TOP - MARGIN_BOTTOM,
        x: xr,
        y: yr,
    };
    let bottom = frame.top + frame.height;
    writeln!(
        svg,
        r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        frame.left, frame.top, frame.width, frame.height
    )
    .unwrap();
    writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        frame.left + frame.width / 2.0,
        frame.top - 8.0,
        escape(&panel.title)
    )
    .unwrap();

    for v in ticks(xr.0, xr.1) {
        let (px, _) = frame.map((v, yr.0));
        writeln!(
            svg,
            r#"<line x1="{px:.2}" y1="{bottom:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            bottom + 5.0,
            bottom + 18.0,
            tick_label(v, xr)
        )
        .unwrap();
    }
    for v in ticks(yr.0, yr.1) {
        let (_, py) = frame.map((xr.0, v));
        writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{:.2}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            frame.left - 5.0,
            frame.left,
            frame.left - 8.0,
            py + 4.0,
            tick_label(v, yr)
        )
        .unwrap();
    }
    writeln!(
        svg,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        frame.left + frame.width / 2.0,
        bottom + 38.0,
        escape(&panel.x_label)
    )
    .unwrap();
    let (lx, ly) = (frame.left - 45.0, frame.top + frame.height / 2.0);
    writeln!(
        svg,
        r#"<text x="{lx:.2}" y="{ly:.2}" text-anchor="middle" transform="rotate(-90 {lx:.2} {ly:.2})">{}</text>"#,
        escape(&panel.y_label)
    )
    .unwrap();

    for series in &panel.series {
        draw_series(svg, &frame, series);
    }
    draw_legend(svg, &frame, panel);
}

fn draw_series(svg: &mut String, frame: &Frame, series: &Series) {
    let color = PALETTE[series.color % PALETTE.len()];
    let dash = series
        .stroke
        .dasharray()
        .map(|d| format!(r#" stroke-dasharray="{d}""#))
        .unwrap_or_default();
    for run in series.points.split(|p| p.is_none()) {
        if run.len() < 2 {
            continue;
        }
        let coords: Vec<String> = run
            .iter()
            .flatten()
            .map(|p| {
                let (x, y) = frame.map(*p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        writeln!(
            svg,
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.2"{dash} points="{}"/>"#,
            coords.join(" ")
        )
        .unwrap();
    }
}

fn draw_legend(svg: &mut String, frame: &Frame, panel: &Panel) {
    let labelled: Vec<&Series> = panel.series.iter().filter(|s| s.label.is_some()).collect();
    if labelled.is_empty() {
        return;
    }
    let x0 = frame.left + frame.width - 130.0;
    let y0 = frame.top + 8.0;
    writeln!(
        svg,
        r#"<rect x="{x0:.2}" y="{y0:.2}" width="122" height="{:.2}" fill="white" fill-opacity="0.85" stroke="gray"/>"#,
        8.0 + 16.0 * labelled.len() as f64
    )
    .unwrap();
    for (k, s) in labelled.iter().enumerate() {
        let y = y0 + 14.0 + 16.0 * k as f64;
        let dash = s
            .stroke
            .dasharray()
            .map(|d| format!(r#" stroke-dasharray="{d}""#))
            .unwrap_or_default();
        writeln!(
            svg,
            r#"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{}" stroke-width="1.5"{dash}/><text x="{:.2}" y="{:.2}">{}</text>"#,
            x0 + 6.0,
            x0 + 34.0,
            PALETTE[s.color % PALETTE.len()],
            x0 + 40.0,
            y + 4.0,
            escape(s.label.as_deref().unwrap_or(""))
        )
        .unwrap();
    }
}

fn ranges(panel: &Panel) -> ((f64, f64), (f64, f64)) {
    let mut x = (f64::INFINITY, f64::NEG_INFINITY);
    let mut y = (f64::INFINITY, f64::NEG_INFINITY);
    for (px, py) in panel.series.iter().flat_map(|s| s.points.iter().flatten()) {
        if px.is_finite() && py.is_finite() {
            x = (x.0.min(*px), x.1.max(*px));
            y = (y.0.min(*py), y.1.max(*py));
        }
    }
    (panel.x_range.unwrap_or_else(|| pad(x, 0.0)), pad(y, 0.05))
}

fn pad((lo, hi): (f64, f64), fraction: f64) -> (f64, f64) {
    if !(lo.is_finite() && hi.is_finite()) {
        return (0.0, 1.0);
    }
    if hi - lo <= f64::EPSILON * (lo.abs() + hi.abs()).max(1.0) {
        let half = 0.5 * lo.abs().max(1.0);
        return (lo - half, hi + half);
    }
    let margin = (hi - lo) * fraction;
    (lo - margin, hi + margin)
}

fn tick_step(lo: f64, hi: f64) -> f64 {
    let raw = (hi - lo) / 5.0;
    let magnitude = 10f64.powf(raw.log10().floor());
    let unit = raw / magnitude;
    let nice = if unit < 1.5 {
        1.0
    } else if unit < 3.5 {
        2.0
    } else if unit < 7.5 {
        5.0
    } else {
        10.0
    };
    nice * magnitude
}

fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let step = tick_step(lo, hi);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|k| k as f64 * step).collect()
}

fn tick_label(v: f64, (lo, hi): (f64, f64)) -> String {
    let step = tick_step(lo, hi);
    let decimals = (-step.log10().floor()).max(0.0) as usize;
    let v = if v.abs() < step * 1e-9 { 0.0 } else { v };
    format!("{v:.decimals$}")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}
