//! Disjoint decompositions into relatively open faces.
//!
//! A `FaceSet` is a finite disjoint union of open convex cells, open segments
//! and points. Piecewise maps act on it face by face; `Coverage` turns it back
//! into a `SemiOpenRegion` when the union has that shape.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Coverage, SemiOpenRegion};
use crate::geometry::{
    closed_segment_count, hull_of, on_open_segment, point_is_lattice, Hull, LinearForm,
    RationalPoint, RationalPolygon,
};
use crate::rational::{denominator_lcm, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Face {
    /// Interior of a convex polygon.
    Cell(RationalPolygon),
    /// Open segment between two distinct points.
    Edge(RationalPoint, RationalPoint),
    Vertex(RationalPoint),
}

/// Position of a face relative to a splitting line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Positive,
    Negative,
    /// Contained in the line.
    On,
}

impl Face {
    pub fn contains(&self, p: &RationalPoint) -> bool {
        match self {
            Face::Cell(poly) => poly.contains_strictly(p),
            Face::Edge(a, b) => on_open_segment(a, b, p),
            Face::Vertex(v) => v == p,
        }
    }

    pub fn points(&self) -> Vec<RationalPoint> {
        match self {
            Face::Cell(poly) => poly.vertices().to_vec(),
            Face::Edge(a, b) => vec![a.clone(), b.clone()],
            Face::Vertex(v) => vec![v.clone()],
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Face::Cell(_) => 2,
            Face::Edge(..) => 1,
            Face::Vertex(_) => 0,
        }
    }

    /// Lattice points of the dilated face.
    pub fn lattice_count(&self, n: u64) -> BigInt {
        match self {
            Face::Cell(poly) => poly.interior_count(n),
            Face::Edge(a, b) => {
                let nr = Rational::from_integer(n.into());
                let mut c = closed_segment_count(&a.scale(&nr), &b.scale(&nr));
                for end in [a, b] {
                    if point_is_lattice(end, n) {
                        c -= BigInt::one();
                    }
                }
                c
            }
            Face::Vertex(v) => {
                if point_is_lattice(v, n) {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }
        }
    }

    /// Which closed side of `form` the face lies on; faces crossing the line
    /// must be split first.
    pub fn side(&self, form: &LinearForm) -> Option<Side> {
        let values: Vec<Rational> = self.points().iter().map(|p| form.eval(p)).collect();
        let pos = values.iter().any(|v| v.is_positive());
        let neg = values.iter().any(|v| v.is_negative());
        match (pos, neg) {
            (true, true) => None,
            (true, false) => Some(Side::Positive),
            (false, true) => Some(Side::Negative),
            (false, false) => Some(Side::On),
        }
    }

    /// Splits the face along the zero set of `form` into faces that each lie
    /// on one closed side.
    pub fn split(&self, form: &LinearForm) -> Vec<(Face, Side)> {
        if let Some(side) = self.side(form) {
            return vec![(self.clone(), side)];
        }
        match self {
            Face::Cell(poly) => {
                let pos = poly.clip(form).polygon().expect("line crosses the open cell");
                let neg = poly.clip(&negate(form)).polygon().expect("line crosses the open cell");
                let chord: Vec<RationalPoint> = pos
                    .vertices()
                    .iter()
                    .filter(|v| form.eval(v).is_zero())
                    .cloned()
                    .collect();
                debug_assert_eq!(chord.len(), 2);
                vec![
                    (Face::Cell(pos), Side::Positive),
                    (Face::Cell(neg), Side::Negative),
                    (Face::Edge(chord[0].clone(), chord[1].clone()), Side::On),
                ]
            }
            Face::Edge(a, b) => {
                let x = form.crossing(a, b);
                let side_a = if form.eval(a).is_positive() { Side::Positive } else { Side::Negative };
                let side_b = if side_a == Side::Positive { Side::Negative } else { Side::Positive };
                vec![
                    (Face::Edge(a.clone(), x.clone()), side_a),
                    (Face::Vertex(x.clone()), Side::On),
                    (Face::Edge(x, b.clone()), side_b),
                ]
            }
            Face::Vertex(_) => unreachable!("a point always lies on one side"),
        }
    }

    /// Image under an injective affine map.
    pub fn map(&self, f: impl Fn(&RationalPoint) -> RationalPoint) -> Face {
        match self {
            Face::Cell(poly) => {
                let image: Vec<RationalPoint> = poly.vertices().iter().map(&f).collect();
                match hull_of(&image) {
                    Hull::Polygon(p) => Face::Cell(p),
                    _ => panic!("affine image of a cell must be two-dimensional"),
                }
            }
            Face::Edge(a, b) => Face::Edge(f(a), f(b)),
            Face::Vertex(v) => Face::Vertex(f(v)),
        }
    }
}

fn negate(form: &LinearForm) -> LinearForm {
    LinearForm {
        a: -&form.a,
        b: -&form.b,
        c: -&form.c,
    }
}

/// A finite union of faces, disjoint when built from a region and mapped by
/// injective piecewise maps.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FaceSet {
    faces: Vec<Face>,
}

impl FaceSet {
    pub fn new(faces: Vec<Face>) -> FaceSet {
        FaceSet { faces }
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn into_faces(self) -> Vec<Face> {
        self.faces
    }

    /// Disjoint decomposition of a semi-open region: the open interior, the
    /// surviving open boundary pieces and the surviving boundary points.
    pub fn from_region(region: &SemiOpenRegion) -> FaceSet {
        let poly = region.polygon();
        let removed = region.removed();
        let is_removed = |p: &RationalPoint| removed.iter().any(|s| s.contains(p));
        let mut faces = vec![Face::Cell(poly.clone())];
        for v in poly.vertices() {
            if !is_removed(v) {
                faces.push(Face::Vertex(v.clone()));
            }
        }
        for (p, q) in poly.edges() {
            let dir = q - p;
            let mut breaks: Vec<RationalPoint> = vec![p.clone(), q.clone()];
            for s in removed {
                for e in [&s.open_end, &s.closed_end] {
                    if on_open_segment(p, q, e) {
                        breaks.push(e.clone());
                    }
                }
            }
            breaks.sort_by_key(|b| dir.dot(&(b - p)));
            breaks.dedup();
            for w in breaks.windows(2) {
                if !is_removed(&w[0].midpoint(&w[1])) {
                    faces.push(Face::Edge(w[0].clone(), w[1].clone()));
                }
            }
            for b in &breaks[1..breaks.len() - 1] {
                if !is_removed(b) {
                    faces.push(Face::Vertex(b.clone()));
                }
            }
        }
        FaceSet { faces }
    }

    /// The closed segment `[a, b]`.
    pub fn closed_segment(a: RationalPoint, b: RationalPoint) -> FaceSet {
        FaceSet {
            faces: vec![Face::Edge(a.clone(), b.clone()), Face::Vertex(a), Face::Vertex(b)],
        }
    }

    pub fn lattice_count(&self, n: u64) -> BigInt {
        self.faces.iter().map(|f| f.lattice_count(n)).sum()
    }

    /// Number of faces containing `p`.
    pub fn multiplicity(&self, p: &RationalPoint) -> usize {
        self.faces.iter().filter(|f| f.contains(p)).count()
    }

    pub fn points(&self) -> Vec<RationalPoint> {
        self.faces.iter().flat_map(Face::points).collect()
    }

    pub fn denominator(&self) -> BigInt {
        let pts = self.points();
        denominator_lcm(pts.iter().flat_map(|p| [&p.x, &p.y]))
    }

    pub fn cells(&self) -> impl Iterator<Item = &RationalPolygon> {
        self.faces.iter().filter_map(|f| match f {
            Face::Cell(p) => Some(p),
            _ => None,
        })
    }

    pub fn coverage(&self) -> Coverage {
        Coverage::analyze(self)
    }

    pub fn extend(&mut self, other: FaceSet) {
        self.faces.extend(other.faces);
    }

    pub fn push(&mut self, face: Face) {
        self.faces.push(face);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::RationalVector;
    use crate::rational::{rat, rat_int};
    use crate::regions::HalfOpenSegment;

    #[test]
    fn closed_triangle_decomposes_into_seven_faces() {
        let tri = RationalPolygon::from_ints(&[(0, 0), (3, 0), (0, 3)]).unwrap();
        let fs = FaceSet::from_region(&SemiOpenRegion::closed(tri.clone()));
        assert_eq!(fs.faces().len(), 7);
        for n in 1..=5 {
            assert_eq!(fs.lattice_count(n), tri.lattice_count(n));
        }
    }

    #[test]
    fn removed_subsegment_splits_edge() {
        let sq = RationalPolygon::from_ints(&[(0, 0), (4, 0), (4, 4), (0, 4)]).unwrap();
        let seg = HalfOpenSegment::new(RationalPoint::from_ints(1, 0), RationalPoint::from_ints(3, 0)).unwrap();
        let r = SemiOpenRegion::new(sq, vec![seg]).unwrap();
        let fs = r.faces();
        assert_eq!(fs.multiplicity(&RationalPoint::from_ints(1, 0)), 1);
        assert_eq!(fs.multiplicity(&RationalPoint::from_ints(2, 0)), 0);
        assert_eq!(fs.multiplicity(&RationalPoint::from_ints(3, 0)), 0);
        assert_eq!(fs.multiplicity(&RationalPoint::new(rat(7, 2), rat_int(0))), 1);
        for n in 1..=4 {
            assert_eq!(fs.lattice_count(n), r.lattice_count(n));
        }
    }

    #[test]
    fn splitting_preserves_counts() {
        let tri = RationalPolygon::from_ints(&[(-2, 0), (3, 0), (0, 3)]).unwrap();
        let fs = FaceSet::from_region(&SemiOpenRegion::closed(tri.clone()));
        let form = LinearForm::left_of(&RationalPoint::origin(), &RationalVector::from_ints(0, 1));
        let split = FaceSet::new(fs.faces().iter().flat_map(|f| f.split(&form)).map(|(f, _)| f).collect());
        for n in 1..=6 {
            assert_eq!(split.lattice_count(n), tri.lattice_count(n));
        }
    }
}
