//! Semi-open polygonal regions: a closed convex polygon minus half-open
//! segments of its boundary, and their dilated lattice counts.

mod coverage;
mod faces;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::{
    closed_segment_count, on_closed_segment, point_is_lattice, Line, RationalPoint, RationalPolygon,
};
use crate::rational::{denominator_lcm, Rational};

pub use coverage::{Coverage, Run};
pub use faces::{Face, FaceSet, Side};

/// The segment `(open_end, closed_end]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfOpenSegment {
    pub open_end: RationalPoint,
    pub closed_end: RationalPoint,
}

impl HalfOpenSegment {
    pub fn new(open_end: RationalPoint, closed_end: RationalPoint) -> Result<Self> {
        if open_end == closed_end {
            return Err(Error::InvalidRegion(format!("empty half-open segment at {open_end}")));
        }
        Ok(HalfOpenSegment { open_end, closed_end })
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        p != &self.open_end && on_closed_segment(&self.open_end, &self.closed_end, p)
    }

    pub fn scale(&self, n: &Rational) -> HalfOpenSegment {
        HalfOpenSegment {
            open_end: self.open_end.scale(n),
            closed_end: self.closed_end.scale(n),
        }
    }

    pub fn line(&self) -> Line {
        Line::through(&self.open_end, &self.closed_end).expect("endpoints are distinct")
    }

    /// Lattice points of `n * (open_end, closed_end]`.
    pub fn lattice_count(&self, n: u64) -> BigInt {
        let nr = Rational::from_integer(n.into());
        let closed = closed_segment_count(&self.open_end.scale(&nr), &self.closed_end.scale(&nr));
        if point_is_lattice(&self.open_end, n) {
            closed - BigInt::one()
        } else {
            closed
        }
    }

    pub fn denominator(&self) -> BigInt {
        denominator_lcm([&self.open_end.x, &self.open_end.y, &self.closed_end.x, &self.closed_end.y])
    }

    fn interval(&self, line: &Line) -> ParamInterval {
        let o = line.parameter(&self.open_end);
        let c = line.parameter(&self.closed_end);
        if o < c {
            ParamInterval { lo: o, lo_closed: false, hi: c, hi_closed: true }
        } else {
            ParamInterval { lo: c, lo_closed: true, hi: o, hi_closed: false }
        }
    }

    fn intersects(&self, other: &HalfOpenSegment) -> bool {
        let l1 = self.line();
        let l2 = other.line();
        if l1 == l2 {
            return self.interval(&l1).intersects(&other.interval(&l1));
        }
        match l1.intersect(&l2) {
            Some(p) => self.contains(&p) && other.contains(&p),
            None => false,
        }
    }
}

impl fmt::Display for HalfOpenSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}]", self.open_end, self.closed_end)
    }
}

/// An interval of line parameters with independent closedness at each end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct ParamInterval {
    pub lo: Rational,
    pub lo_closed: bool,
    pub hi: Rational,
    pub hi_closed: bool,
}

impl ParamInterval {
    fn intersects(&self, other: &ParamInterval) -> bool {
        let (lo, lo_closed) = if self.lo > other.lo {
            (&self.lo, self.lo_closed)
        } else if other.lo > self.lo {
            (&other.lo, other.lo_closed)
        } else {
            (&self.lo, self.lo_closed && other.lo_closed)
        };
        let (hi, hi_closed) = if self.hi < other.hi {
            (&self.hi, self.hi_closed)
        } else if other.hi < self.hi {
            (&other.hi, other.hi_closed)
        } else {
            (&self.hi, self.hi_closed && other.hi_closed)
        };
        lo < hi || (lo == hi && lo_closed && hi_closed)
    }
}

/// A closed convex polygon minus pairwise disjoint half-open segments lying on
/// its boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SemiOpenRegion {
    closed: RationalPolygon,
    removed: Vec<HalfOpenSegment>,
}

impl SemiOpenRegion {
    pub fn new(closed: RationalPolygon, mut removed: Vec<HalfOpenSegment>) -> Result<Self> {
        for seg in &removed {
            if closed.edge_containing(&seg.open_end, &seg.closed_end).is_none() {
                return Err(Error::InvalidRegion(format!("removed segment {seg} is not on the boundary of {closed}")));
            }
        }
        for (i, a) in removed.iter().enumerate() {
            for b in &removed[i + 1..] {
                if a.intersects(b) {
                    return Err(Error::InvalidRegion(format!("removed segments {a} and {b} overlap")));
                }
            }
        }
        removed.sort();
        Ok(SemiOpenRegion { closed, removed })
    }

    pub fn closed(polygon: RationalPolygon) -> Self {
        SemiOpenRegion { closed: polygon, removed: Vec::new() }
    }

    /// Hull of `points` minus `removed`; fails with `InvalidRegion` when the
    /// points do not span the plane.
    pub fn from_points(points: &[RationalPoint], removed: Vec<HalfOpenSegment>) -> Result<Self> {
        let closed = crate::geometry::convex_hull(points)
            .map_err(|e| Error::InvalidRegion(format!("region must be two-dimensional ({e})")))?;
        SemiOpenRegion::new(closed, removed)
    }

    pub fn polygon(&self) -> &RationalPolygon {
        &self.closed
    }

    pub fn removed(&self) -> &[HalfOpenSegment] {
        &self.removed
    }

    pub fn is_closed(&self) -> bool {
        self.removed.is_empty()
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        self.closed.contains(p) && !self.removed.iter().any(|s| s.contains(p))
    }

    pub fn dilate(&self, n: u64) -> SemiOpenRegion {
        assert!(n >= 1, "dilation factor must be positive");
        let nr = Rational::from_integer(n.into());
        SemiOpenRegion {
            closed: self.closed.dilate(&nr),
            removed: self.removed.iter().map(|s| s.scale(&nr)).collect(),
        }
    }

    /// `|nR ∩ Z²|`: the closed count minus the removed segments' counts.
    pub fn lattice_count(&self, n: u64) -> BigInt {
        let removed: BigInt = self.removed.iter().map(|s| s.lattice_count(n)).sum();
        self.closed.lattice_count(n) - removed
    }

    pub fn denominator(&self) -> BigInt {
        self.removed
            .iter()
            .fold(self.closed.denominator(), |acc, s| crate::rational::lcm(&acc, &s.denominator()))
    }

    pub fn area(&self) -> Rational {
        self.closed.area()
    }

    pub fn faces(&self) -> FaceSet {
        FaceSet::from_region(self)
    }
}

impl From<RationalPolygon> for SemiOpenRegion {
    fn from(p: RationalPolygon) -> Self {
        SemiOpenRegion::closed(p)
    }
}

impl fmt::Display for SemiOpenRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.closed)?;
        for s in &self.removed {
            write!(f, " \\ {s}")?;
        }
        Ok(())
    }
}

/// Lattice points of `n * (open_end, closed_end]`.
pub fn segment_count(seg: &HalfOpenSegment, n: u64) -> BigInt {
    seg.lattice_count(n)
}

pub fn region_count(region: &SemiOpenRegion, n: u64) -> BigInt {
    let c = region.lattice_count(n);
    debug_assert!(c >= BigInt::zero());
    c
}
