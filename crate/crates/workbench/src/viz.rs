//! SVG scatter plots: marker shape encodes the gold group, fill color the
//! cluster label.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use homonym_core::cluster::NOISE;

pub const DEFAULT_WIDTH: u32 = 640;
pub const DEFAULT_HEIGHT: u32 = 480;

/// Cluster colors, indexed by label modulo the length.
pub const PALETTE: [&str; 8] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf",
];
pub const NOISE_COLOR: &str = "#7f7f7f";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Circle,
    Cross,
    Triangle,
    Square,
}

impl Shape {
    /// Shape for the `i`-th gold group by first appearance.
    pub fn nth(i: usize) -> Shape {
        [Shape::Circle, Shape::Cross, Shape::Triangle, Shape::Square][i % 4]
    }

    pub fn name(self) -> &'static str {
        match self {
            Shape::Circle => "circle",
            Shape::Cross => "cross",
            Shape::Triangle => "triangle",
            Shape::Square => "square",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum VizError {
    #[error("nothing to plot")]
    EmptyInput,
    #[error("{coords} coordinates, {groups} gold groups and {labels} labels do not line up")]
    LengthMismatch {
        coords: usize,
        groups: usize,
        labels: usize,
    },
    #[error("plot coordinates must be finite 2-D points")]
    BadCoordinates,
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub coords: Vec<Vec<f64>>,
    pub gold_groups: Vec<u32>,
    pub labels: Vec<i32>,
    pub title: String,
    pub width: u32,
    pub height: u32,
    /// Written into the SVG description when set.
    pub seed: Option<u64>,
}

impl PlotSpec {
    pub fn new(
        coords: Vec<Vec<f64>>,
        gold_groups: Vec<u32>,
        labels: Vec<i32>,
        title: impl Into<String>,
    ) -> Self {
        PlotSpec {
            coords,
            gold_groups,
            labels,
            title: title.into(),
            width: DEFAULT_WIDTH,
            height: DEFAULT_HEIGHT,
            seed: None,
        }
    }

    fn check(&self) -> Result<(), VizError> {
        let (c, g, l) = (self.coords.len(), self.gold_groups.len(), self.labels.len());
        if c != g || c != l {
            return Err(VizError::LengthMismatch {
                coords: c,
                groups: g,
                labels: l,
            });
        }
        if c == 0 {
            return Err(VizError::EmptyInput);
        }
        if self
            .coords
            .iter()
            .any(|p| p.len() != 2 || !p.iter().all(|x| x.is_finite()))
        {
            return Err(VizError::BadCoordinates);
        }
        Ok(())
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}

/// Paint for a cluster label: (fill, stroke).
fn paint(label: i32) -> (&'static str, &'static str) {
    if label == NOISE {
        ("none", NOISE_COLOR)
    } else {
        let c = PALETTE[label.rem_euclid(PALETTE.len() as i32) as usize];
        (c, c)
    }
}

/// One marker element centered on (x, y) with half-size r.
fn marker(out: &mut String, class: &str, shape: Shape, x: f64, y: f64, r: f64, label: i32) {
    let (fill, stroke) = paint(label);
    let _ = match shape {
        Shape::Circle => writeln!(
            out,
            r#"<circle class="{class}" cx="{x:.2}" cy="{y:.2}" r="{r:.2}" fill="{fill}" stroke="{stroke}" stroke-width="1.5"/>"#
        ),
        Shape::Cross => writeln!(
            out,
            r#"<path class="{class}" d="M{:.2},{:.2}L{:.2},{:.2}M{:.2},{:.2}L{:.2},{:.2}" fill="none" stroke="{stroke}" stroke-width="2.5"/>"#,
            x - r,
            y - r,
            x + r,
            y + r,
            x - r,
            y + r,
            x + r,
            y - r
        ),
        Shape::Triangle => writeln!(
            out,
            r#"<polygon class="{class}" points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="{fill}" stroke="{stroke}" stroke-width="1.5"/>"#,
            x,
            y - r,
            x + r,
            y + r,
            x - r,
            y + r
        ),
        Shape::Square => writeln!(
            out,
            r#"<rect class="{class}" x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="{fill}" stroke="{stroke}" stroke-width="1.5"/>"#,
            x - r,
            y - r,
            2.0 * r,
            2.0 * r
        ),
    };
}

/// Data range padded by 5% on each side.
fn padded_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
        (lo.min(v), hi.max(v))
    });
    let span = hi - lo;
    if span > 0.0 {
        (lo - 0.05 * span, hi + 0.05 * span)
    } else {
        (lo - 1.0, hi + 1.0)
    }
}

fn first_appearance<T: PartialEq + Copy>(values: &[T]) -> Vec<T> {
    let mut seen = Vec::new();
    for &v in values {
        if !seen.contains(&v) {
            seen.push(v);
        }
    }
    seen
}

const LEGEND_WIDTH: f64 = 150.0;
const MARKER_RADIUS: f64 = 5.0;

pub fn render_svg(spec: &PlotSpec) -> Result<String, VizError> {
    spec.check()?;
    let (w, h) = (spec.width as f64, spec.height as f64);
    let (left, top) = (50.0, 40.0);
    let right = (w - LEGEND_WIDTH - 10.0).max(left + 10.0);
    let bottom = (h - 40.0).max(top + 10.0);
    let (x0, x1) = padded_range(spec.coords.iter().map(|p| p[0]));
    let (y0, y1) = padded_range(spec.coords.iter().map(|p| p[1]));
    let sx = |x: f64| left + (x - x0) / (x1 - x0) * (right - left);
    let sy = |y: f64| bottom - (y - y0) / (y1 - y0) * (bottom - top);

    let groups = first_appearance(&spec.gold_groups);
    let shape_of = |g: u32| Shape::nth(groups.iter().position(|&x| x == g).unwrap_or(0));

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        spec.width, spec.height, spec.width, spec.height
    );
    let _ = writeln!(out, "<title>{}</title>", escape(&spec.title));
    if let Some(seed) = spec.seed {
        let _ = writeln!(out, "<desc>seed {seed}</desc>");
    }
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        (left + right) / 2.0,
        escape(&spec.title)
    );
    let _ = writeln!(
        out,
        r#"<rect class="frame" x="{left:.2}" y="{top:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        right - left,
        bottom - top
    );
    for (value, x, y, anchor) in [
        (x0, left, bottom + 16.0, "start"),
        (x1, right, bottom + 16.0, "end"),
        (y0, left - 4.0, bottom, "end"),
        (y1, left - 4.0, top + 10.0, "end"),
    ] {
        let _ = writeln!(
            out,
            r#"<text class="tick" x="{x:.2}" y="{y:.2}" font-family="sans-serif" font-size="10" text-anchor="{anchor}">{value:.2}</text>"#
        );
    }

    let _ = writeln!(out, r#"<g class="points">"#);
    for ((p, &g), &l) in spec.coords.iter().zip(&spec.gold_groups).zip(&spec.labels) {
        marker(
            &mut out,
            "marker",
            shape_of(g),
            sx(p[0]),
            sy(p[1]),
            MARKER_RADIUS,
            l,
        );
    }
    let _ = writeln!(out, "</g>");

    let lx = w - LEGEND_WIDTH;
    let mut ly = top + 10.0;
    let heading = |out: &mut String, ly: &mut f64, text: &str| {
        let _ = writeln!(
            out,
            r#"<text x="{lx:.2}" y="{:.2}" font-family="sans-serif" font-size="12" font-weight="bold">{text}</text>"#,
            *ly
        );
        *ly += 18.0;
    };
    let _ = writeln!(out, r#"<g class="legend">"#);
    heading(&mut out, &mut ly, "gold group");
    for &g in &groups {
        marker(
            &mut out,
            "legend-key",
            shape_of(g),
            lx + 8.0,
            ly - 4.0,
            MARKER_RADIUS,
            NOISE,
        );
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{ly:.2}" font-family="sans-serif" font-size="12">{g}</text>"#,
            lx + 20.0
        );
        ly += 18.0;
    }
    ly += 8.0;
    heading(&mut out, &mut ly, "cluster");
    let mut labels = first_appearance(&spec.labels);
    labels.sort_by_key(|&l| (l == NOISE, l));
    for l in labels {
        let (fill, stroke) = paint(l);
        let _ = writeln!(
            out,
            r#"<rect class="legend-key" x="{:.2}" y="{:.2}" width="10" height="10" fill="{fill}" stroke="{stroke}"/>"#,
            lx + 3.0,
            ly - 9.0
        );
        let name = if l == NOISE {
            "noise".to_string()
        } else {
            l.to_string()
        };
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{ly:.2}" font-family="sans-serif" font-size="12">{name}</text>"#,
            lx + 20.0
        );
        ly += 18.0;
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, "</svg>");
    Ok(out)
}

/// Renders `spec` and writes it to `path`.
pub fn scatter_svg(spec: &PlotSpec, path: &Path) -> Result<(), VizError> {
    let svg = render_svg(spec)?;
    std::fs::write(path, svg).map_err(|source| VizError::Io {
        path: path.to_path_buf(),
        source,
    })
}
