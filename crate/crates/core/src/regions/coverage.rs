//! Exact coverage analysis of a face set over the arrangement of its lines.
//!
//! The multiplicity function of a finite union of open cells, open segments and
//! points is constant on every face of the arrangement formed by all supporting
//! lines (plus the hull's edge lines). Sampling one point per arrangement face
//! is therefore an exact test for gaps and overlaps.

use std::fmt;

use num_traits::{Signed, Zero};

use super::{FaceSet, HalfOpenSegment, SemiOpenRegion};
use crate::error::{Error, Result};
use crate::geometry::{hull_of, on_closed_segment, Hull, Line, RationalPoint, RationalPolygon, RationalVector};
use crate::rational::Rational;

/// A connected piece of a line: `[start, end]` with each end open or closed.
/// A single point has `start == end` and both ends closed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Run {
    pub start: RationalPoint,
    pub end: RationalPoint,
    pub start_closed: bool,
    pub end_closed: bool,
}

impl Run {
    pub fn is_point(&self) -> bool {
        self.start == self.end
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        on_closed_segment(&self.start, &self.end, p)
            && (p != &self.start || self.start_closed)
            && (p != &self.end || self.end_closed)
    }

    /// As `(open_end, closed_end]` when exactly one end is closed.
    pub fn as_half_open(&self) -> Option<HalfOpenSegment> {
        match (self.start_closed, self.end_closed) {
            (false, true) => HalfOpenSegment::new(self.start.clone(), self.end.clone()).ok(),
            (true, false) => HalfOpenSegment::new(self.end.clone(), self.start.clone()).ok(),
            _ => None,
        }
    }
}

impl fmt::Display for Run {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.start);
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.start_closed { "[" } else { "(" },
            self.start,
            self.end,
            if self.end_closed { "]" } else { ")" }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coverage {
    pub hull: Hull,
    /// Sum of the areas of the open cells.
    pub cell_area: Rational,
    /// Lower-dimensional pieces of the hull covered by no face.
    pub uncovered: Vec<Run>,
    /// Lower-dimensional pieces covered by two or more faces.
    pub overlapping: Vec<Run>,
    pub max_multiplicity: usize,
    /// A two-dimensional part of the hull is uncovered or multiply covered.
    pub area_defect: bool,
}

enum Element {
    Vertex(RationalPoint),
    Edge(RationalPoint, RationalPoint),
}

impl Coverage {
    pub fn analyze(faces: &FaceSet) -> Coverage {
        let pts = faces.points();
        let hull = hull_of(&pts);
        let cell_area = faces.cells().map(RationalPolygon::area).sum();
        let hp = match &hull {
            Hull::Polygon(p) => p.clone(),
            _ => {
                return Coverage {
                    hull,
                    cell_area,
                    uncovered: vec![],
                    overlapping: vec![],
                    max_multiplicity: 0,
                    area_defect: true,
                }
            }
        };

        let mut lines = hp.edge_lines();
        for f in faces.faces() {
            match f {
                super::Face::Cell(p) => lines.extend(p.edge_lines()),
                super::Face::Edge(a, b) => lines.push(Line::through(a, b).expect("open segments are nondegenerate")),
                super::Face::Vertex(_) => {}
            }
        }
        lines.sort();
        lines.dedup();

        let mut uncovered = Vec::new();
        let mut overlapping = Vec::new();
        let mut max_multiplicity = 0;
        let mut area_defect = false;

        for (i, line) in lines.iter().enumerate() {
            let mut stops: Vec<RationalPoint> = lines
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .filter_map(|(_, other)| line.intersect(other))
                .filter(|p| hp.contains(p))
                .collect();
            stops.extend(pts.iter().filter(|p| line.contains(p)).cloned());
            stops.sort_by_key(|p| line.parameter(p));
            stops.dedup();

            let mut elements = Vec::with_capacity(2 * stops.len());
            for (k, v) in stops.iter().enumerate() {
                elements.push(Element::Vertex(v.clone()));
                if k + 1 < stops.len() {
                    elements.push(Element::Edge(v.clone(), stops[k + 1].clone()));
                }
            }
            let mults: Vec<usize> = elements
                .iter()
                .map(|e| match e {
                    Element::Vertex(v) => faces.multiplicity(v),
                    Element::Edge(a, b) => faces.multiplicity(&a.midpoint(b)),
                })
                .collect();
            max_multiplicity = max_multiplicity.max(mults.iter().copied().max().unwrap_or(0));
            uncovered.extend(runs(&elements, &mults, |m| m == 0));
            overlapping.extend(runs(&elements, &mults, |m| m >= 2));

            for e in &elements {
                if let Element::Edge(a, b) = e {
                    let m = a.midpoint(b);
                    let eps = clearance(&lines, i, &m);
                    let normal = RationalVector::new(
                        Rational::from_integer(line.a.clone()),
                        Rational::from_integer(line.b.clone()),
                    )
                    .scale(&eps);
                    for q in [&m + &normal, &m - &normal] {
                        if hp.contains_strictly(&q) {
                            let k = faces.multiplicity(&q);
                            max_multiplicity = max_multiplicity.max(k);
                            if k != 1 {
                                area_defect = true;
                            }
                        }
                    }
                }
            }
        }

        // points off every line can only be vertex faces sitting inside cells
        for p in pts.iter().filter(|p| !lines.iter().any(|l| l.contains(p))) {
            let k = faces.multiplicity(p);
            max_multiplicity = max_multiplicity.max(k);
            if k >= 2 {
                overlapping.push(point_run(p));
            }
        }

        Coverage {
            hull,
            cell_area,
            uncovered: simplify(uncovered),
            overlapping: simplify(overlapping),
            max_multiplicity,
            area_defect,
        }
    }

    /// The cells tile the convex hull.
    pub fn is_convex_union(&self) -> bool {
        match &self.hull {
            Hull::Polygon(p) => !self.area_defect && self.cell_area == p.area(),
            _ => false,
        }
    }

    pub fn is_disjoint(&self) -> bool {
        !self.area_defect && self.overlapping.is_empty()
    }

    /// Reassembles the covered set as a semi-open region.
    pub fn to_region(&self) -> Result<SemiOpenRegion> {
        let hull = match &self.hull {
            Hull::Polygon(p) => p.clone(),
            _ => return Err(Error::InvalidRegion("union is not two-dimensional".into())),
        };
        if !self.is_convex_union() {
            return Err(Error::InvalidRegion("union is not a convex polygon".into()));
        }
        if let Some(run) = self.overlapping.first() {
            return Err(Error::InvalidRegion(format!("pieces overlap on {run}")));
        }
        let removed = self
            .uncovered
            .iter()
            .map(|r| {
                r.as_half_open()
                    .ok_or_else(|| Error::InvalidRegion(format!("missing set {r} is not a half-open segment")))
            })
            .collect::<Result<Vec<_>>>()?;
        SemiOpenRegion::new(hull, removed)
    }
}

fn point_run(p: &RationalPoint) -> Run {
    Run {
        start: p.clone(),
        end: p.clone(),
        start_closed: true,
        end_closed: true,
    }
}

fn runs(elements: &[Element], mults: &[usize], bad: impl Fn(usize) -> bool) -> Vec<Run> {
    let mut out = Vec::new();
    let mut k = 0;
    while k < elements.len() {
        if !bad(mults[k]) {
            k += 1;
            continue;
        }
        let first = k;
        while k + 1 < elements.len() && bad(mults[k + 1]) {
            k += 1;
        }
        let (start, start_closed) = match &elements[first] {
            Element::Vertex(v) => (v.clone(), true),
            Element::Edge(a, _) => (a.clone(), false),
        };
        let (end, end_closed) = match &elements[k] {
            Element::Vertex(v) => (v.clone(), true),
            Element::Edge(_, b) => (b.clone(), false),
        };
        out.push(Run {
            start,
            end,
            start_closed,
            end_closed,
        });
        k += 1;
    }
    out
}

/// Drops duplicates and points already inside a longer run.
fn simplify(mut runs: Vec<Run>) -> Vec<Run> {
    runs.sort();
    runs.dedup();
    let segments: Vec<Run> = runs.iter().filter(|r| !r.is_point()).cloned().collect();
    runs.retain(|r| !r.is_point() || !segments.iter().any(|s| s.contains(&r.start)));
    runs
}

/// Half the largest step along the normal of `lines[own]` from `m` that
/// crosses no other line.
fn clearance(lines: &[Line], own: usize, m: &RationalPoint) -> Rational {
    let (a, b) = (&lines[own].a, &lines[own].b);
    let mut best: Option<Rational> = None;
    for (j, other) in lines.iter().enumerate() {
        if j == own {
            continue;
        }
        let f = other.eval(m);
        let g = Rational::from_integer(&other.a * a + &other.b * b);
        if f.is_zero() || g.is_zero() {
            continue;
        }
        let bound = f.abs() / g.abs();
        if best.as_ref().is_none_or(|cur| &bound < cur) {
            best = Some(bound);
        }
    }
    best.unwrap_or_else(|| Rational::from_integer(1.into())) / Rational::from_integer(2.into())
}
