//! Explicit polygon families and the checks built on them.

mod periods;
mod pip;
mod scott;

pub use periods::*;
pub use pip::*;
pub use scott::*;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::geometry::{RationalPoint, RationalPolygon};
use crate::rational::Rational;

pub(crate) fn pt(x: Rational, y: Rational) -> RationalPoint {
    RationalPoint::new(x, y)
}

pub(crate) fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `(I, b)` of the polygon itself.
pub fn interior_and_boundary(p: &RationalPolygon) -> (u64, u64) {
    let b = p.boundary_count(1);
    let i = p.lattice_count(1) - &b;
    (
        i.to_u64().expect("count fits in u64"),
        b.to_u64().expect("count fits in u64"),
    )
}
