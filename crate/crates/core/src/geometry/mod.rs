//! Exact rational plane geometry: points, vectors, lines and convex polygons.
//!
//! Every quantity is a `BigRational`; there is no floating point anywhere in
//! this module. Determinants use the column convention `det(r, x) = r.dx * x.dy
//! - r.dy * x.dx`.

mod count;
mod polygon;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{denominator_lcm, format_rational, lcm, Rational};

pub use count::{
    closed_segment_count, lattice_count_naive, lattice_points, point_is_lattice,
};
pub use polygon::{convex_hull, hull_of, Hull, RationalPolygon};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: Rational,
    pub y: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector {
    pub dx: Rational,
    pub dy: Rational,
}

impl RationalPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        RationalPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        RationalPoint::new(Rational::from_integer(x.into()), Rational::from_integer(y.into()))
    }

    pub fn origin() -> Self {
        RationalPoint::from_ints(0, 0)
    }

    pub fn is_lattice(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn scale(&self, n: &Rational) -> Self {
        RationalPoint::new(&self.x * n, &self.y * n)
    }

    pub fn to_vector(&self) -> RationalVector {
        RationalVector::new(self.x.clone(), self.y.clone())
    }

    pub fn midpoint(&self, other: &RationalPoint) -> RationalPoint {
        let two = Rational::from_integer(2.into());
        RationalPoint::new((&self.x + &other.x) / &two, (&self.y + &other.y) / &two)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl RationalVector {
    pub fn new(dx: Rational, dy: Rational) -> Self {
        RationalVector { dx, dy }
    }

    pub fn from_ints(dx: i64, dy: i64) -> Self {
        RationalVector::new(Rational::from_integer(dx.into()), Rational::from_integer(dy.into()))
    }

    pub fn is_zero(&self) -> bool {
        self.dx.is_zero() && self.dy.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        RationalVector::new(&self.dx * k, &self.dy * k)
    }

    pub fn dot(&self, other: &RationalVector) -> Rational {
        &self.dx * &other.dx + &self.dy * &other.dy
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}, {}>", self.dx, self.dy)
    }
}

impl Sub for &RationalPoint {
    type Output = RationalVector;
    fn sub(self, rhs: &RationalPoint) -> RationalVector {
        RationalVector::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Add<&RationalVector> for &RationalPoint {
    type Output = RationalPoint;
    fn add(self, rhs: &RationalVector) -> RationalPoint {
        RationalPoint::new(&self.x + &rhs.dx, &self.y + &rhs.dy)
    }
}

impl Sub<&RationalVector> for &RationalPoint {
    type Output = RationalPoint;
    fn sub(self, rhs: &RationalVector) -> RationalPoint {
        RationalPoint::new(&self.x - &rhs.dx, &self.y - &rhs.dy)
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: &RationalVector) -> RationalVector {
        RationalVector::new(&self.dx + &rhs.dx, &self.dy + &rhs.dy)
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector::new(-&self.dx, -&self.dy)
    }
}

impl Mul<&RationalVector> for &Rational {
    type Output = RationalVector;
    fn mul(self, rhs: &RationalVector) -> RationalVector {
        rhs.scale(self)
    }
}

/// Determinant of the 2x2 matrix with columns `r` and `x`, in that order.
pub fn det(r: &RationalVector, x: &RationalVector) -> Rational {
    &r.dx * &x.dy - &r.dy * &x.dx
}

/// Orientation of `c` relative to the directed line `a -> b`; positive when
/// `c` is to the left.
pub fn orient(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint) -> Rational {
    det(&(b - a), &(c - a))
}

/// Lattice length: the positive rational `l` with `l * primitive(r) = r`.
///
/// For `r = (a/b, c/d)` in lowest terms this is `gcd(a, c) / lcm(b, d)`.
pub fn lattice_length(r: &RationalVector) -> Result<Rational> {
    if r.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = r.dx.numer().gcd(r.dy.numer());
    let l = lcm(r.dx.denom(), r.dy.denom());
    Ok(Rational::new(g.abs(), l))
}

/// The generator of the lattice semigroup on the ray through `r`.
pub fn primitive(r: &RationalVector) -> Result<(BigInt, BigInt)> {
    let l = lattice_length(r)?;
    let dx = &r.dx / &l;
    let dy = &r.dy / &l;
    debug_assert!(dx.is_integer() && dy.is_integer());
    Ok((dx.to_integer(), dy.to_integer()))
}

/// An affine functional `a*x + b*y + c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl LinearForm {
    pub fn eval(&self, p: &RationalPoint) -> Rational {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }

    /// `det(direction, x - anchor)`: positive to the left of the directed line.
    pub fn left_of(anchor: &RationalPoint, direction: &RationalVector) -> LinearForm {
        LinearForm {
            a: -&direction.dy,
            b: direction.dx.clone(),
            c: &direction.dy * &anchor.x - &direction.dx * &anchor.y,
        }
    }

    /// Point on segment `p -> q` where the form vanishes, given opposite signs.
    pub fn crossing(&self, p: &RationalPoint, q: &RationalPoint) -> RationalPoint {
        let fp = self.eval(p);
        let fq = self.eval(q);
        let t = &fp / (&fp - &fq);
        p + &(q - p).scale(&t)
    }
}

/// A line `a*x + b*y = c` with coprime integer `a, b`, normalized so that
/// `a > 0`, or `a == 0` and `b > 0`. Equal lines compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    pub a: BigInt,
    pub b: BigInt,
    pub c: Rational,
}

impl Line {
    pub fn through(p: &RationalPoint, q: &RationalPoint) -> Result<Line> {
        let d = q - p;
        if d.is_zero() {
            return Err(Error::CoincidentPoints);
        }
        Ok(Line::with_direction(p, &d))
    }

    /// The line through `p` with nonzero direction `d`.
    pub fn with_direction(p: &RationalPoint, d: &RationalVector) -> Line {
        let m = denominator_lcm([&d.dx, &d.dy]);
        let mut a = (-&d.dy * Rational::from_integer(m.clone())).to_integer();
        let mut b = (&d.dx * Rational::from_integer(m)).to_integer();
        let g = a.gcd(&b);
        a /= &g;
        b /= &g;
        if a.is_negative() || (a.is_zero() && b.is_negative()) {
            a = -a;
            b = -b;
        }
        let c = Rational::from_integer(a.clone()) * &p.x + Rational::from_integer(b.clone()) * &p.y;
        Line { a, b, c }
    }

    pub fn form(&self) -> LinearForm {
        LinearForm {
            a: Rational::from_integer(self.a.clone()),
            b: Rational::from_integer(self.b.clone()),
            c: -&self.c,
        }
    }

    pub fn eval(&self, p: &RationalPoint) -> Rational {
        self.form().eval(p)
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        self.eval(p).is_zero()
    }

    pub fn direction(&self) -> RationalVector {
        RationalVector::new(
            Rational::from_integer(-&self.b),
            Rational::from_integer(self.a.clone()),
        )
    }

    /// Intersection point with another line, if they are not parallel.
    pub fn intersect(&self, other: &Line) -> Option<RationalPoint> {
        let det = &self.a * &other.b - &self.b * &other.a;
        if det.is_zero() {
            return None;
        }
        let det = Rational::from_integer(det);
        let a1 = Rational::from_integer(self.a.clone());
        let b1 = Rational::from_integer(self.b.clone());
        let a2 = Rational::from_integer(other.a.clone());
        let b2 = Rational::from_integer(other.b.clone());
        let x = (&self.c * &b2 - &other.c * &b1) / &det;
        let y = (&a1 * &other.c - &a2 * &self.c) / &det;
        Some(RationalPoint::new(x, y))
    }

    /// Position of `p` along the line, monotone in the line's direction.
    pub fn parameter(&self, p: &RationalPoint) -> Rational {
        self.direction().dot(&p.to_vector())
    }

    /// Whether the dilated line `n * self` passes through a lattice point.
    pub fn dilate_hits_lattice(&self, n: &BigInt) -> bool {
        (&self.c * Rational::from_integer(n.clone())).is_integer()
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x + {}y = {}", self.a, self.b, format_rational(&self.c))
    }
}

/// Whether `p` lies on the closed segment `[a, b]`.
pub fn on_closed_segment(a: &RationalPoint, b: &RationalPoint, p: &RationalPoint) -> bool {
    if !orient(a, b, p).is_zero() {
        return false;
    }
    let ab = b - a;
    let t = ab.dot(&(p - a));
    !t.is_negative() && t <= ab.dot(&ab)
}

/// Whether `p` lies strictly between `a` and `b` on the segment.
pub fn on_open_segment(a: &RationalPoint, b: &RationalPoint, p: &RationalPoint) -> bool {
    on_closed_segment(a, b, p) && p != a && p != b
}
