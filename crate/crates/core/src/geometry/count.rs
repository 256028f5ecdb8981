//! Lattice point counting in dilates of convex polygons.
//!
//! The default counter scans integer rows and intersects each row with the
//! integer half-planes `a*x + b*y >= ceil(n*c)`. The naive counter tests
//! every cell of the bounding box with exact cross products and is kept as an
//! independent oracle. Both run on `i128` when the magnitudes allow it and
//! fall back to `BigInt` otherwise.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Line, RationalPoint, RationalPolygon};
use crate::rational::{ceil, floor, Rational};

trait ScanInt: Clone + Ord + Integer + Signed {
    fn from_big(v: &BigInt) -> Option<Self>;
    fn into_big(self) -> BigInt;
}

impl ScanInt for i128 {
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl ScanInt for BigInt {
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn into_big(self) -> BigInt {
        self
    }
}

const SMALL: u32 = 40;

fn small(v: &BigInt, bits: u32) -> bool {
    v.bits() < bits as u64
}

/// Integer half-planes `a*x + b*y >= k` describing `n * polygon`.
struct RowProblem {
    planes: Vec<(BigInt, BigInt, BigInt)>,
    y_lo: BigInt,
    y_hi: BigInt,
}

impl RowProblem {
    fn new(poly: &RationalPolygon, n: u64) -> RowProblem {
        let n = Rational::from_integer(n.into());
        let planes = poly
            .edges()
            .map(|(p, q)| {
                // interior on the left of p -> q; the normalized line may
                // point either way, so orient it with the opposite vertex test
                let line = Line::through(p, q).expect("nondegenerate edge");
                let inward = inward_sign(poly, &line);
                let (a, b, c) = if inward {
                    (line.a.clone(), line.b.clone(), line.c.clone())
                } else {
                    (-&line.a, -&line.b, -&line.c)
                };
                (a, b, ceil(&(&c * &n)))
            })
            .collect();
        let (min, max) = poly.bounds();
        RowProblem {
            planes,
            y_lo: ceil(&(&min.y * &n)),
            y_hi: floor(&(&max.y * &n)),
        }
    }

    fn fits_i128(&self) -> bool {
        self.planes
            .iter()
            .all(|(a, b, k)| small(a, SMALL) && small(b, SMALL) && small(k, 2 * SMALL))
            && small(&self.y_lo, SMALL)
            && small(&self.y_hi, SMALL)
    }

    fn convert<T: ScanInt>(&self) -> (Vec<(T, T, T)>, T, T) {
        let planes = self
            .planes
            .iter()
            .map(|(a, b, k)| (T::from_big(a).unwrap(), T::from_big(b).unwrap(), T::from_big(k).unwrap()))
            .collect();
        (planes, T::from_big(&self.y_lo).unwrap(), T::from_big(&self.y_hi).unwrap())
    }
}

/// Sign convention: the normalized edge line's `a*x + b*y - c` is nonnegative
/// on the polygon iff this returns true.
fn inward_sign(poly: &RationalPolygon, line: &Line) -> bool {
    poly.vertices()
        .iter()
        .map(|v| line.eval(v))
        .find(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .expect("polygon is not contained in a line")
}

/// Closed integer interval of `x` on row `y`, or `None` if empty.
fn row_range<T: ScanInt>(planes: &[(T, T, T)], y: &T) -> Option<(T, T)> {
    let mut lo: Option<T> = None;
    let mut hi: Option<T> = None;
    for (a, b, k) in planes {
        let m = k.clone() - b.clone() * y.clone();
        if a.is_positive() {
            let bound = -((-m).div_floor(a));
            if lo.as_ref().is_none_or(|l| &bound > l) {
                lo = Some(bound);
            }
        } else if a.is_negative() {
            let bound = m.div_floor(a);
            if hi.as_ref().is_none_or(|h| &bound < h) {
                hi = Some(bound);
            }
        } else if m.is_positive() {
            return None;
        }
    }
    match (lo, hi) {
        (Some(l), Some(h)) if l <= h => Some((l, h)),
        (Some(_), Some(_)) => None,
        _ => unreachable!("bounded polygon rows are bounded on both sides"),
    }
}

fn scan_count<T: ScanInt>(planes: &[(T, T, T)], y_lo: T, y_hi: T) -> BigInt {
    let mut total = T::zero();
    let mut y = y_lo;
    while y <= y_hi {
        if let Some((l, h)) = row_range(planes, &y) {
            total = total + (h - l + T::one());
        }
        y = y + T::one();
    }
    total.into_big()
}

/// `|nP ∩ Z²|` by row scan.
pub(super) fn lattice_count(poly: &RationalPolygon, n: u64) -> BigInt {
    assert!(n >= 1, "dilation factor must be positive");
    let problem = RowProblem::new(poly, n);
    if problem.fits_i128() {
        let (planes, lo, hi) = problem.convert::<i128>();
        scan_count(&planes, lo, hi)
    } else {
        let (planes, lo, hi) = problem.convert::<BigInt>();
        scan_count(&planes, lo, hi)
    }
}

/// Every lattice point of `nP`, row by row.
pub fn lattice_points(poly: &RationalPolygon, n: u64) -> Vec<RationalPoint> {
    let problem = RowProblem::new(poly, n);
    let (planes, lo, hi) = problem.convert::<BigInt>();
    let mut out = Vec::new();
    let mut y = lo;
    while y <= hi {
        if let Some((l, h)) = row_range(&planes, &y) {
            let mut x = l;
            while x <= h {
                out.push(RationalPoint::new(
                    Rational::from_integer(x.clone()),
                    Rational::from_integer(y.clone()),
                ));
                x += 1;
            }
        }
        y += 1;
    }
    out
}

fn naive_count<T: ScanInt>(verts: &[(T, T)], d: &T, n: &T, x: (T, T), y: (T, T)) -> BigInt {
    let m = verts.len();
    let scaled: Vec<(T, T)> = verts.iter().map(|(a, b)| (a.clone() * n.clone(), b.clone() * n.clone())).collect();
    let mut total = T::zero();
    let mut py = y.0.clone();
    while py <= y.1 {
        let mut px = x.0.clone();
        while px <= x.1 {
            let qx = px.clone() * d.clone();
            let qy = py.clone() * d.clone();
            let inside = (0..m).all(|i| {
                let (ax, ay) = &scaled[i];
                let (bx, by) = &scaled[(i + 1) % m];
                let cross = (bx.clone() - ax.clone()) * (qy.clone() - ay.clone())
                    - (by.clone() - ay.clone()) * (qx.clone() - ax.clone());
                !cross.is_negative()
            });
            if inside {
                total = total + T::one();
            }
            px = px + T::one();
        }
        py = py + T::one();
    }
    total.into_big()
}

/// `|nP ∩ Z²|` by testing every bounding-box cell with cross products.
pub fn lattice_count_naive(poly: &RationalPolygon, n: u64) -> BigInt {
    let d = poly.denominator();
    let drat = Rational::from_integer(d.clone());
    let verts: Vec<(BigInt, BigInt)> = poly
        .vertices()
        .iter()
        .map(|v| ((&v.x * &drat).to_integer(), (&v.y * &drat).to_integer()))
        .collect();
    let nr = Rational::from_integer(n.into());
    let (min, max) = poly.bounds();
    let xr = (floor(&(&min.x * &nr)), ceil(&(&max.x * &nr)));
    let yr = (floor(&(&min.y * &nr)), ceil(&(&max.y * &nr)));
    let nb = BigInt::from(n);
    let fits = verts.iter().all(|(a, b)| small(a, 30) && small(b, 30))
        && small(&d, 20)
        && small(&nb, 20)
        && [&xr.0, &xr.1, &yr.0, &yr.1].iter().all(|v| small(v, 30));
    if fits {
        let conv = |v: &BigInt| v.to_i128().unwrap();
        let vs: Vec<(i128, i128)> = verts.iter().map(|(a, b)| (conv(a), conv(b))).collect();
        naive_count(&vs, &conv(&d), &(n as i128), (conv(&xr.0), conv(&xr.1)), (conv(&yr.0), conv(&yr.1)))
    } else {
        naive_count(&verts, &d, &nb, xr, yr)
    }
}

/// Lattice points on the closed segment `[a, b]`.
pub fn closed_segment_count(a: &RationalPoint, b: &RationalPoint) -> BigInt {
    if a == b {
        return if a.is_lattice() { BigInt::one() } else { BigInt::zero() };
    }
    let line = Line::through(a, b).expect("distinct endpoints");
    if !line.c.is_integer() {
        return BigInt::zero();
    }
    // a*x0 + b*y0 = c with gcd(a, b) = 1
    let eg = line.a.extended_gcd(&line.b);
    debug_assert!(eg.gcd.is_one());
    let c = line.c.to_integer();
    let x0 = Rational::from_integer(&eg.x * &c);
    let y0 = Rational::from_integer(&eg.y * &c);
    let dx = Rational::from_integer(-&line.b);
    let dy = Rational::from_integer(line.a.clone());
    let param = |p: &RationalPoint| {
        if !dx.is_zero() {
            (&p.x - &x0) / &dx
        } else {
            (&p.y - &y0) / &dy
        }
    };
    let (ta, tb) = (param(a), param(b));
    let (lo, hi) = if ta <= tb { (ta, tb) } else { (tb, ta) };
    let count = floor(&hi) - ceil(&lo) + BigInt::one();
    if count.is_negative() {
        BigInt::zero()
    } else {
        count
    }
}

pub fn point_is_lattice(p: &RationalPoint, n: u64) -> bool {
    p.scale(&Rational::from_integer(n.into())).is_lattice()
}

/// Lattice points on the boundary of `nP`, edge by edge.
pub(super) fn boundary_count(poly: &RationalPolygon, n: u64) -> BigInt {
    let nr = Rational::from_integer(n.into());
    let scaled = poly.dilate(&nr);
    let edges: BigInt = scaled.edges().map(|(p, q)| closed_segment_count(p, q)).sum();
    let lattice_vertices = scaled.vertices().iter().filter(|v| v.is_lattice()).count();
    edges - BigInt::from(lattice_vertices)
}
