//! SVG plots and CSV breakpoint tables.
//!
//! Piecewise-affine functions are drawn through their exact knots, so on a
//! linear axis the path is the graph. On a logarithmic x-axis straight
//! segments bend, and each one is subdivided before drawing.

use std::fmt::Write as _;

use num_traits::ToPrimitive;
use tropika_core::{PaFunction, Rational};

use crate::error::Result;

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 36.0;
const MARGIN_BOTTOM: f64 = 52.0;
const LOG_SUBDIVISIONS: usize = 24;
const PALETTE: [&str; 8] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"];

#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    /// True when consecutive points are joined by affine pieces in `x`.
    pub affine: bool,
}

impl Polyline {
    pub fn from_knots(label: impl Into<String>, knots: &[(Rational, Rational)]) -> Self {
        Polyline { label: label.into(), points: knots.iter().map(|(x, y)| (to_f64(x), to_f64(y))).collect(), affine: true }
    }

    pub fn from_function(label: impl Into<String>, f: &PaFunction) -> Self {
        Self::from_knots(label, &f.knots())
    }

    /// Sampled data; segments are drawn straight on any axis.
    pub fn sampled(label: impl Into<String>, points: Vec<(f64, f64)>) -> Self {
        Polyline { label: label.into(), points, affine: false }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlotDocument {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    pub series: Vec<Polyline>,
    /// Vertical dashed guides, e.g. at zeros.
    pub markers: Vec<f64>,
}

impl PlotDocument {
    pub fn new(title: impl Into<String>, x_label: impl Into<String>, y_label: impl Into<String>) -> Self {
        PlotDocument {
            title: title.into(),
            x_label: x_label.into(),
            y_label: y_label.into(),
            log_x: false,
            series: Vec::new(),
            markers: Vec::new(),
        }
    }

    pub fn log_x(mut self, on: bool) -> Self {
        self.log_x = on;
        self
    }

    pub fn push(&mut self, line: Polyline) {
        self.series.push(line);
    }

    fn tx(&self, x: f64) -> f64 {
        if self.log_x {
            x.ln()
        } else {
            x
        }
    }

    fn bounds(&self) -> (f64, f64, f64, f64) {
        let mut xs = (f64::INFINITY, f64::NEG_INFINITY);
        let mut ys = (f64::INFINITY, f64::NEG_INFINITY);
        for s in &self.series {
            for &(x, y) in &s.points {
                if !x.is_finite() || !y.is_finite() {
                    continue;
                }
                let x = self.tx(x);
                xs = (xs.0.min(x), xs.1.max(x));
                ys = (ys.0.min(y), ys.1.max(y));
            }
        }
        if !xs.0.is_finite() {
            xs = (0.0, 1.0);
            ys = (0.0, 1.0);
        }
        if xs.1 - xs.0 < 1e-12 {
            xs = (xs.0 - 0.5, xs.1 + 0.5);
        }
        if ys.1 - ys.0 < 1e-12 {
            ys = (ys.0 - 0.5, ys.1 + 0.5);
        }
        let pad = 0.05 * (ys.1 - ys.0);
        (xs.0, xs.1, ys.0 - pad, ys.1 + pad)
    }

    // Points to draw, in axis coordinates (after the log transform).
    fn path_points(&self, s: &Polyline) -> Vec<(f64, f64)> {
        if !self.log_x || !s.affine {
            return s.points.iter().map(|&(x, y)| (self.tx(x), y)).collect();
        }
        let mut out = Vec::new();
        for w in s.points.windows(2) {
            let ((x0, y0), (x1, y1)) = (w[0], w[1]);
            for i in 0..LOG_SUBDIVISIONS {
                // even steps in log x, values from the affine piece
                let t = i as f64 / LOG_SUBDIVISIONS as f64;
                let lx = x0.ln() + t * (x1.ln() - x0.ln());
                let x = lx.exp();
                out.push((lx, y0 + (y1 - y0) * (x - x0) / (x1 - x0)));
            }
        }
        if let Some(&(x, y)) = s.points.last() {
            out.push((x.ln(), y));
        }
        out
    }

    pub fn to_svg(&self) -> String {
        let (x0, x1, y0, y1) = self.bounds();
        let pw = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
        let ph = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
        let sx = |x: f64| MARGIN_LEFT + (x - x0) / (x1 - x0) * pw;
        let sy = |y: f64| MARGIN_TOP + (y1 - y) / (y1 - y0) * ph;

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(s, r#"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"#, WIDTH / 2.0, escape(&self.title));
        let _ = writeln!(
            s,
            r#"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
        );
        for i in 0..=5 {
            let t = i as f64 / 5.0;
            let xv = x0 + t * (x1 - x0);
            let label = if self.log_x { xv.exp() } else { xv };
            let _ = writeln!(
                s,
                r#"<line x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}" stroke="black"/><text x="{0:.2}" y="{3:.2}" text-anchor="middle">{4}</text>"#,
                sx(xv),
                MARGIN_TOP + ph,
                MARGIN_TOP + ph + 5.0,
                MARGIN_TOP + ph + 18.0,
                tick(label)
            );
            let yv = y0 + t * (y1 - y0);
            let _ = writeln!(
                s,
                r#"<line x1="{0:.2}" y1="{1:.2}" x2="{2:.2}" y2="{1:.2}" stroke="black"/><text x="{3:.2}" y="{4:.2}" text-anchor="end">{5}</text>"#,
                MARGIN_LEFT - 5.0,
                sy(yv),
                MARGIN_LEFT,
                MARGIN_LEFT - 8.0,
                sy(yv) + 4.0,
                tick(yv)
            );
        }
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="middle">{}{}</text>"#,
            MARGIN_LEFT + pw / 2.0,
            HEIGHT - 12.0,
            escape(&self.x_label),
            if self.log_x { " (log scale)" } else { "" }
        );
        let _ = writeln!(
            s,
            r#"<text x="16" y="{0}" text-anchor="middle" transform="rotate(-90 16 {0})">{1}</text>"#,
            MARGIN_TOP + ph / 2.0,
            escape(&self.y_label)
        );
        for &m in &self.markers {
            let mx = self.tx(m);
            if mx.is_finite() && mx >= x0 && mx <= x1 {
                let _ = writeln!(
                    s,
                    r#"<line x1="{0:.2}" y1="{1}" x2="{0:.2}" y2="{2}" stroke="gray" stroke-dasharray="4 3"/>"#,
                    sx(mx),
                    MARGIN_TOP,
                    MARGIN_TOP + ph
                );
            }
        }
        for (i, line) in self.series.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            let mut d = String::new();
            for (j, (x, y)) in self.path_points(line).into_iter().enumerate() {
                let _ = write!(d, "{}{:.3},{:.3} ", if j == 0 { "M" } else { "L" }, sx(x), sy(y));
            }
            let _ = writeln!(s, r#"<path d="{}" fill="none" stroke="{color}" stroke-width="1.6"/>"#, d.trim_end());
            if !line.label.is_empty() {
                let ly = MARGIN_TOP + 16.0 + 16.0 * i as f64;
                let _ = writeln!(
                    s,
                    r#"<line x1="{0}" y1="{1}" x2="{2}" y2="{1}" stroke="{color}" stroke-width="2"/><text x="{3}" y="{4}">{5}</text>"#,
                    WIDTH - MARGIN_RIGHT - 120.0,
                    ly,
                    WIDTH - MARGIN_RIGHT - 100.0,
                    WIDTH - MARGIN_RIGHT - 95.0,
                    ly + 4.0,
                    escape(&line.label)
                );
            }
        }
        s.push_str("</svg>\n");
        s
    }
}

fn tick(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e4 || v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// A CSV table with a header row.
pub fn csv_table<I, R>(header: &[&str], rows: I) -> Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| crate::error::Error::Format(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv of UTF-8 fields"))
}

/// `x, value, slope_right` at every knot; the last row has no slope.
pub fn function_csv(f: &PaFunction) -> Result<String> {
    let knots = f.knots();
    let slopes = f.slopes();
    let rows = knots.iter().enumerate().map(|(i, (x, y))| {
        let slope = slopes.get(i).map(ToString::to_string).unwrap_or_default();
        vec![x.to_string(), y.to_string(), slope]
    });
    csv_table(&["x", "value", "slope_right"], rows)
}
