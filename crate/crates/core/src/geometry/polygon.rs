use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{count, det, on_closed_segment, orient, Line, LinearForm, RationalPoint};
use crate::error::{Error, Result};
use crate::rational::{denominator_lcm, Rational};

/// A strictly convex polygon with counterclockwise vertices, starting at the
/// lexicographically smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalPolygon {
    vertices: Vec<RationalPoint>,
}

/// Convex hull of a finite point set, including the lower-dimensional cases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Hull {
    Empty,
    Point(RationalPoint),
    Segment(RationalPoint, RationalPoint),
    Polygon(RationalPolygon),
}

impl Hull {
    pub fn polygon(self) -> Option<RationalPolygon> {
        match self {
            Hull::Polygon(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_two_dimensional(&self) -> bool {
        matches!(self, Hull::Polygon(_))
    }

    pub fn points(&self) -> Vec<RationalPoint> {
        match self {
            Hull::Empty => vec![],
            Hull::Point(p) => vec![p.clone()],
            Hull::Segment(a, b) => vec![a.clone(), b.clone()],
            Hull::Polygon(p) => p.vertices().to_vec(),
        }
    }
}

/// Andrew's monotone chain; collinear boundary points are dropped.
pub fn hull_of(points: &[RationalPoint]) -> Hull {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    match pts.len() {
        0 => return Hull::Empty,
        1 => return Hull::Point(pts.pop().unwrap()),
        _ => {}
    }
    let mut lower: Vec<RationalPoint> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<RationalPoint> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Hull::Segment(pts[0].clone(), pts[pts.len() - 1].clone());
    }
    Hull::Polygon(RationalPolygon { vertices: lower })
}

pub fn convex_hull(points: &[RationalPoint]) -> Result<RationalPolygon> {
    match hull_of(points) {
        Hull::Polygon(p) => Ok(p),
        other => Err(Error::DegenerateInput(format!(
            "hull of {} points is {}-dimensional",
            points.len(),
            match other {
                Hull::Segment(..) => 1,
                _ => 0,
            }
        ))),
    }
}

impl RationalPolygon {
    /// Builds a polygon from an explicit counterclockwise, strictly convex
    /// vertex list. The rotation is canonicalized.
    pub fn new(vertices: Vec<RationalPoint>) -> Result<RationalPolygon> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::DegenerateInput(format!("{n} vertices")));
        }
        for i in 0..n {
            let o = orient(&vertices[i], &vertices[(i + 1) % n], &vertices[(i + 2) % n]);
            if !o.is_positive() {
                return Err(Error::DegenerateInput(format!(
                    "vertices not strictly convex counterclockwise at {}",
                    vertices[(i + 1) % n]
                )));
            }
        }
        // left turns everywhere still admits multiply wound stars
        match hull_of(&vertices) {
            Hull::Polygon(p) if p.len() == n => Ok(p),
            _ => Err(Error::DegenerateInput("vertex list is not a simple convex polygon".into())),
        }
    }

    pub fn from_ints(vertices: &[(i64, i64)]) -> Result<RationalPolygon> {
        convex_hull(&vertices.iter().map(|&(x, y)| RationalPoint::from_ints(x, y)).collect::<Vec<_>>())
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Directed edges `(v_i, v_{i+1})`, interior on the left.
    pub fn edges(&self) -> impl Iterator<Item = (&RationalPoint, &RationalPoint)> {
        let n = self.vertices.len();
        (0..n).map(move |i| (&self.vertices[i], &self.vertices[(i + 1) % n]))
    }

    pub fn edge_lines(&self) -> Vec<Line> {
        self.edges()
            .map(|(p, q)| Line::through(p, q).expect("polygon edges are nondegenerate"))
            .collect()
    }

    /// Exact shoelace area.
    pub fn area(&self) -> Rational {
        let mut twice = Rational::zero();
        for (p, q) in self.edges() {
            twice += &p.x * &q.y - &q.x * &p.y;
        }
        twice / Rational::from_integer(2.into())
    }

    pub fn dilate(&self, n: &Rational) -> RationalPolygon {
        assert!(n.is_positive(), "dilation factor must be positive");
        RationalPolygon {
            vertices: self.vertices.iter().map(|v| v.scale(n)).collect(),
        }
    }

    pub fn translate(&self, by: &super::RationalVector) -> RationalPolygon {
        RationalPolygon {
            vertices: self.vertices.iter().map(|v| v + by).collect(),
        }
    }

    /// Lcm of all vertex coordinate denominators (the 0-index).
    pub fn denominator(&self) -> BigInt {
        denominator_lcm(self.vertices.iter().flat_map(|v| [&v.x, &v.y]))
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(RationalPoint::is_lattice)
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        self.edges().all(|(a, b)| !orient(a, b, p).is_negative())
    }

    pub fn contains_strictly(&self, p: &RationalPoint) -> bool {
        self.edges().all(|(a, b)| orient(a, b, p).is_positive())
    }

    pub fn on_boundary(&self, p: &RationalPoint) -> bool {
        self.edges().any(|(a, b)| on_closed_segment(a, b, p))
    }

    /// The edge containing the closed segment `[p, q]`, if any.
    pub fn edge_containing(&self, p: &RationalPoint, q: &RationalPoint) -> Option<usize> {
        self.edges()
            .position(|(a, b)| on_closed_segment(a, b, p) && on_closed_segment(a, b, q))
    }

    /// Part of the polygon where `form >= 0`.
    pub fn clip(&self, form: &LinearForm) -> Hull {
        let mut out = Vec::new();
        for (p, q) in self.edges() {
            let fp = form.eval(p);
            let fq = form.eval(q);
            if !fp.is_negative() {
                out.push(p.clone());
            }
            if (fp.is_positive() && fq.is_negative()) || (fp.is_negative() && fq.is_positive()) {
                out.push(form.crossing(p, q));
            }
        }
        hull_of(&out)
    }

    /// Intersection with another convex polygon.
    pub fn intersection(&self, other: &RationalPolygon) -> Hull {
        let mut current = Hull::Polygon(self.clone());
        for (a, b) in other.edges() {
            let form = LinearForm::left_of(a, &(b - a));
            current = match current {
                Hull::Polygon(p) => p.clip(&form),
                Hull::Segment(p, q) => clip_segment(&p, &q, &form),
                Hull::Point(p) => {
                    if form.eval(&p).is_negative() {
                        Hull::Empty
                    } else {
                        Hull::Point(p)
                    }
                }
                Hull::Empty => Hull::Empty,
            };
        }
        current
    }

    pub fn lattice_count(&self, n: u64) -> BigInt {
        count::lattice_count(self, n)
    }

    pub fn boundary_count(&self, n: u64) -> BigInt {
        count::boundary_count(self, n)
    }

    pub fn interior_count(&self, n: u64) -> BigInt {
        self.lattice_count(n) - self.boundary_count(n)
    }

    /// Convex hull of the lattice points inside the polygon.
    pub fn integral_hull(&self) -> Hull {
        hull_of(&lattice_points(self))
    }

    /// Bounding box `(min, max)` of the vertices.
    pub fn bounds(&self) -> (RationalPoint, RationalPoint) {
        let xs = self.vertices.iter().map(|v| &v.x);
        let ys = self.vertices.iter().map(|v| &v.y);
        let min = RationalPoint::new(xs.clone().min().unwrap().clone(), ys.clone().min().unwrap().clone());
        let max = RationalPoint::new(xs.max().unwrap().clone(), ys.max().unwrap().clone());
        (min, max)
    }

    /// Positive if the orientation of consecutive vertices is counterclockwise.
    pub fn turns(&self) -> Vec<Rational> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let a = &self.vertices[i];
                let b = &self.vertices[(i + 1) % n];
                let c = &self.vertices[(i + 2) % n];
                det(&(b - a), &(c - b))
            })
            .collect()
    }
}

fn lattice_points(p: &RationalPolygon) -> Vec<RationalPoint> {
    count::lattice_points(p, 1)
}

fn clip_segment(p: &RationalPoint, q: &RationalPoint, form: &LinearForm) -> Hull {
    let fp = form.eval(p);
    let fq = form.eval(q);
    match (fp.is_negative(), fq.is_negative()) {
        (true, true) => Hull::Empty,
        (false, false) => hull_of(&[p.clone(), q.clone()]),
        _ => {
            let x = form.crossing(p, q);
            let keep = if fp.is_negative() { q } else { p };
            hull_of(&[keep.clone(), x])
        }
    }
}

impl fmt::Display for RationalPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "conv{{")?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}
