//! Reproducible random rational polygons.
//!
//! The generator is the 64-bit linear congruential generator
//! `state ← state·6364136223846793005 + 1442695040888963407 (mod 2^64)`,
//! returning the high 32 bits of the new state. Each trial gets its own
//! stream, seeded by `splitmix64(seed ⊕ splitmix64(trial))`, so results do not
//! depend on the order in which trials run.

use num_bigint::BigInt;

use crate::geometry::{hull_of, Hull, RationalPoint, RationalPolygon};
use crate::rational::Rational;

pub const LCG_MULTIPLIER: u64 = 6364136223846793005;
pub const LCG_INCREMENT: u64 = 1442695040888963407;

pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn for_trial(seed: u64, trial: u64) -> Self {
        Lcg::new(splitmix64(seed ^ splitmix64(trial)))
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(LCG_MULTIPLIER).wrapping_add(LCG_INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform-ish in `0..n` by multiply-shift; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0 && n <= u32::MAX as u64);
        (self.next_u32() as u64 * n) >> 32
    }

    /// In the closed range `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

/// Draws 3 to 7 points `(a/q, b/q)` with one denominator `q ∈ 1..=max_denominator`
/// and `|a/q|, |b/q| ≤ coord_bound`, and returns their hull when it is
/// two-dimensional.
pub fn random_polygon(rng: &mut Lcg, max_denominator: u64, coord_bound: u64) -> Option<RationalPolygon> {
    let q = 1 + rng.below(max_denominator) as i64;
    let k = 3 + rng.below(5);
    let span = coord_bound as i64 * q;
    let points: Vec<RationalPoint> = (0..k)
        .map(|_| {
            let a = rng.range(-span, span);
            let b = rng.range(-span, span);
            RationalPoint::new(
                Rational::new(BigInt::from(a), BigInt::from(q)),
                Rational::new(BigInt::from(b), BigInt::from(q)),
            )
        })
        .collect();
    match hull_of(&points) {
        Hull::Polygon(p) => Some(p),
        _ => None,
    }
}

/// The first `count` non-degenerate polygons over trials `0, 1, 2, …`.
pub fn random_corpus(seed: u64, count: usize, max_denominator: u64, coord_bound: u64) -> Vec<RationalPolygon> {
    (0u64..)
        .filter_map(|trial| random_polygon(&mut Lcg::for_trial(seed, trial), max_denominator, coord_bound))
        .take(count)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn streams_are_reproducible() {
        let a: Vec<u32> = {
            let mut r = Lcg::for_trial(1, 5);
            (0..8).map(|_| r.next_u32()).collect()
        };
        let mut r = Lcg::for_trial(1, 5);
        assert_eq!(a, (0..8).map(|_| r.next_u32()).collect::<Vec<_>>());
        let mut other = Lcg::for_trial(1, 6);
        assert_ne!(a[0], other.next_u32());
    }

    #[test]
    fn lcg_step() {
        let mut r = Lcg::new(0);
        assert_eq!(r.next_u32(), (LCG_INCREMENT >> 32) as u32);
    }

    #[test]
    fn corpus_respects_bounds() {
        let corpus = random_corpus(3, 50, 6, 5);
        assert_eq!(corpus.len(), 50);
        for p in &corpus {
            assert!(p.denominator() <= BigInt::from(6));
            for v in p.vertices() {
                assert!(v.x.abs() <= Rational::from_integer(5.into()));
                assert!(v.y.abs() <= Rational::from_integer(5.into()));
            }
        }
        assert_eq!(corpus, random_corpus(3, 50, 6, 5));
    }

    #[test]
    fn range_stays_inside() {
        let mut r = Lcg::new(42);
        for _ in 0..1000 {
            let x = r.range(-3, 4);
            assert!((-3..=4).contains(&x));
        }
    }
}
