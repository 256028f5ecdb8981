//! SVG figures. Geometry is classified exactly; floats appear only in the
//! emitted coordinates.

use std::fmt::Write;
use std::path::Path;

use ehrhart_core::geometry::RationalPoint;
use ehrhart_core::json::{parse_point, LineJson, RegionJson, SegmentJson, TraceJson};
use ehrhart_core::rational::{ceil, floor, parse_rational};
use ehrhart_core::regions::SemiOpenRegion;
use num_traits::ToPrimitive;
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::figure::HeptagonFigure;
use crate::read_input;

const PANEL_SIZE: f64 = 360.0;
const MARGIN: f64 = 24.0;
const TITLE: f64 = 22.0;

type Pt = (f64, f64);

fn to_f(p: &RationalPoint) -> Pt {
    (p.x.to_f64().unwrap_or(f64::NAN), p.y.to_f64().unwrap_or(f64::NAN))
}

#[derive(Debug, Default)]
struct Panel {
    title: String,
    /// The region whose lattice points are marked.
    region: Option<SemiOpenRegion>,
    fills: Vec<Vec<Pt>>,
    outlines: Vec<Vec<Pt>>,
    removed: Vec<(Pt, Pt)>,
    highlights: Vec<(Pt, Pt)>,
    /// `(a, b, c)` of `a x + b y = c`.
    lines: Vec<(f64, f64, f64)>,
    extent: Vec<RationalPoint>,
}

impl Panel {
    fn with_region(title: impl Into<String>, region: SemiOpenRegion) -> Self {
        let mut p = Panel {
            title: title.into(),
            ..Default::default()
        };
        p.fills.push(region.polygon().vertices().iter().map(to_f).collect());
        p.removed = region
            .removed()
            .iter()
            .map(|s| (to_f(&s.open_end), to_f(&s.closed_end)))
            .collect();
        p.extent.extend(region.polygon().vertices().iter().cloned());
        p.region = Some(region);
        p
    }
}

fn bad_input(path: &Path, e: impl ToString) -> CliError {
    CliError::Input {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

fn line_coeffs(l: &LineJson) -> ehrhart_core::Result<(f64, f64, f64)> {
    let f = |s: &str| parse_rational(s).map(|q| q.to_f64().unwrap_or(f64::NAN));
    Ok((f(&l.a)?, f(&l.b)?, f(&l.c)?))
}

fn segment(s: &SegmentJson) -> ehrhart_core::Result<(Pt, Pt)> {
    Ok((to_f(&parse_point(&s.open, "open")?), to_f(&parse_point(&s.closed, "closed")?)))
}

fn panels(value: Value, path: &Path) -> CliResult<Vec<Panel>> {
    let obj = value.as_object().ok_or_else(|| bad_input(path, "expected a JSON object"))?;
    if obj.contains_key("steps") {
        let trace: TraceJson = serde_json::from_value(value).map_err(|e| bad_input(path, e))?;
        let milestones: Vec<_> = trace.steps.iter().filter(|s| s.milestone).collect();
        let chosen = if milestones.is_empty() { trace.steps.iter().collect() } else { milestones };
        chosen
            .into_iter()
            .map(|step| {
                let mut p = Panel::with_region(step.label.clone(), step.region.region()?);
                p.lines = step.fixed_lines.iter().map(line_coeffs).collect::<ehrhart_core::Result<_>>()?;
                Ok(p)
            })
            .collect::<ehrhart_core::Result<_>>()
            .map_err(|e| bad_input(path, e))
    } else if obj.contains_key("pieces") {
        let fig: HeptagonFigure = serde_json::from_value(value).map_err(|e| bad_input(path, e))?;
        heptagon_panels(&fig).map_err(|e| bad_input(path, e))
    } else {
        let r: RegionJson = serde_json::from_value(value).map_err(|e| bad_input(path, e))?;
        let region = r.region().map_err(|e| bad_input(path, e))?;
        Ok(vec![Panel::with_region("", region)])
    }
}

fn heptagon_panels(fig: &HeptagonFigure) -> ehrhart_core::Result<Vec<Panel>> {
    let mut left = Panel::with_region(format!("H, s = {}", fig.s), fig.polygon.region()?);
    for piece in &fig.pieces {
        let poly = piece.polygon()?;
        left.outlines.push(poly.vertices().iter().map(to_f).collect());
    }
    left.lines = fig.fixed_lines.iter().map(line_coeffs).collect::<ehrhart_core::Result<_>>()?;

    let mut right = Panel::with_region("H'", fig.image.region()?);
    right.lines = left.lines.clone();
    right.highlights = fig.doubled.iter().map(segment).collect::<ehrhart_core::Result<_>>()?;
    right.removed.push(segment(&fig.h)?);
    right.extent.extend(left.extent.iter().cloned());
    left.extent.extend(right.extent.iter().cloned());
    Ok(vec![left, right])
}

struct Frame {
    x0: i64,
    y1: i64,
    unit: f64,
    cols: i64,
    rows: i64,
}

impl Frame {
    fn new(points: &[RationalPoint]) -> Frame {
        let min_max = |f: fn(&RationalPoint) -> &ehrhart_core::rational::Rational| {
            let lo = points.iter().map(|p| floor(f(p))).min().unwrap_or_default();
            let hi = points.iter().map(|p| ceil(f(p))).max().unwrap_or_default();
            (lo.to_i64().unwrap_or(0) - 1, hi.to_i64().unwrap_or(0) + 1)
        };
        let (x0, x1) = min_max(|p| &p.x);
        let (y0, y1) = min_max(|p| &p.y);
        let (cols, rows) = (x1 - x0, y1 - y0);
        let unit = (PANEL_SIZE / cols.max(rows) as f64).min(60.0);
        Frame { x0, y1, unit, cols, rows }
    }

    fn width(&self) -> f64 {
        self.cols as f64 * self.unit
    }

    fn height(&self) -> f64 {
        self.rows as f64 * self.unit
    }

    fn map(&self, (x, y): Pt) -> Pt {
        ((x - self.x0 as f64) * self.unit, (self.y1 as f64 - y) * self.unit)
    }
}

fn points_attr(frame: &Frame, pts: &[Pt]) -> String {
    pts.iter()
        .map(|&p| {
            let (x, y) = frame.map(p);
            format!("{x:.2},{y:.2}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn draw_panel(out: &mut String, id: usize, panel: &Panel, frame: &Frame, dx: f64) {
    let (w, h) = (frame.width(), frame.height());
    let _ = writeln!(out, r#"  <g transform="translate({dx:.2},{:.2})">"#, MARGIN + TITLE);
    let _ = writeln!(
        out,
        r#"    <clipPath id="clip{id}"><rect x="0" y="0" width="{w:.2}" height="{h:.2}"/></clipPath>"#
    );
    if !panel.title.is_empty() {
        let _ = writeln!(
            out,
            r#"    <text x="{:.2}" y="-8" text-anchor="middle" font-family="serif" font-size="16">{}</text>"#,
            w / 2.0,
            panel.title
        );
    }
    let _ = writeln!(out, r#"    <g clip-path="url(#clip{id})">"#);
    for k in 0..=frame.cols {
        let x = k as f64 * frame.unit;
        let axis = frame.x0 + k == 0;
        let _ = writeln!(
            out,
            r##"      <line x1="{x:.2}" y1="0" x2="{x:.2}" y2="{h:.2}" stroke="{}" stroke-width="{}"/>"##,
            if axis { "#999" } else { "#e4e4e4" },
            if axis { 1.0 } else { 0.6 }
        );
    }
    for k in 0..=frame.rows {
        let y = k as f64 * frame.unit;
        let axis = frame.y1 - k == 0;
        let _ = writeln!(
            out,
            r##"      <line x1="0" y1="{y:.2}" x2="{w:.2}" y2="{y:.2}" stroke="{}" stroke-width="{}"/>"##,
            if axis { "#999" } else { "#e4e4e4" },
            if axis { 1.0 } else { 0.6 }
        );
    }
    for fill in &panel.fills {
        let _ = writeln!(
            out,
            r##"      <polygon points="{}" fill="#9ecae1" fill-opacity="0.55" stroke="#08519c" stroke-width="1.5"/>"##,
            points_attr(frame, fill)
        );
    }
    for outline in &panel.outlines {
        let _ = writeln!(
            out,
            r##"      <polygon points="{}" fill="none" stroke="#08519c" stroke-width="0.8"/>"##,
            points_attr(frame, outline)
        );
    }
    let reach = (frame.cols + frame.rows) as f64 * 2.0;
    for &(a, b, c) in &panel.lines {
        let norm = a * a + b * b;
        let base = (a * c / norm, b * c / norm);
        let dir = (-b / norm.sqrt(), a / norm.sqrt());
        let p = frame.map((base.0 - reach * dir.0, base.1 - reach * dir.1));
        let q = frame.map((base.0 + reach * dir.0, base.1 + reach * dir.1));
        let _ = writeln!(
            out,
            r##"      <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888" stroke-width="1.2"/>"##,
            p.0, p.1, q.0, q.1
        );
    }
    for &(a, b) in &panel.highlights {
        let (p, q) = (frame.map(a), frame.map(b));
        let _ = writeln!(
            out,
            r##"      <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#d95f02" stroke-width="3.5"/>"##,
            p.0, p.1, q.0, q.1
        );
    }
    for &(a, b) in &panel.removed {
        let (p, q) = (frame.map(a), frame.map(b));
        let _ = writeln!(
            out,
            r##"      <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="white" stroke-width="2.5"/>"##,
            p.0, p.1, q.0, q.1
        );
        let _ = writeln!(
            out,
            r##"      <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#08519c" stroke-width="1.5" stroke-dasharray="5,4"/>"##,
            p.0, p.1, q.0, q.1
        );
    }
    if let Some(region) = &panel.region {
        draw_lattice_points(out, region, frame);
    }
    let _ = writeln!(out, "    </g>");
    let _ = writeln!(out, "  </g>");
}

fn draw_lattice_points(out: &mut String, region: &SemiOpenRegion, frame: &Frame) {
    let poly = region.polygon();
    let r = (frame.unit * 0.12).clamp(1.5, 4.5);
    for i in 0..=frame.cols {
        for j in 0..=frame.rows {
            let p = RationalPoint::from_ints(frame.x0 + i, frame.y1 - j);
            if !poly.contains(&p) {
                continue;
            }
            let (x, y) = frame.map(to_f(&p));
            let style = if !region.contains(&p) {
                r##"fill="white" stroke="#08519c" stroke-width="1.2""##
            } else if poly.contains_strictly(&p) {
                r##"fill="black""##
            } else {
                r##"fill="#e31a1c" stroke="black" stroke-width="0.6""##
            };
            let _ = writeln!(out, r#"      <circle cx="{x:.2}" cy="{y:.2}" r="{r:.2}" {style}/>"#);
        }
    }
}

fn svg(panels: &[Panel]) -> String {
    let extent: Vec<RationalPoint> = panels.iter().flat_map(|p| p.extent.iter().cloned()).collect();
    let frame = Frame::new(&extent);
    let n = panels.len().max(1) as f64;
    let width = MARGIN + n * (frame.width() + MARGIN);
    let height = 2.0 * MARGIN + TITLE + frame.height();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.2} {height:.2}">"#
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    for (k, panel) in panels.iter().enumerate() {
        let dx = MARGIN + k as f64 * (frame.width() + MARGIN);
        draw_panel(&mut out, k, panel, &frame, dx);
    }
    out.push_str("</svg>\n");
    out
}

pub fn run(input: &Path, output: &Path) -> CliResult<()> {
    let text = read_input(input)?;
    let value: Value = serde_json::from_str(&text).map_err(|e| bad_input(input, e))?;
    let panels = panels(value, input)?;
    std::fs::write(output, svg(&panels)).map_err(|source| CliError::Io {
        path: output.to_path_buf(),
        source,
    })
}
