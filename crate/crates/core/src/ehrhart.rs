//! Ehrhart quasi-polynomials by exact interpolation over residue classes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geometry::RationalPolygon;
use crate::rational::{lcm, Rational};
use crate::regions::{FaceSet, HalfOpenSegment, SemiOpenRegion};

/// Anything whose dilates have a computable lattice-point count.
pub trait Countable: Sync {
    /// Lattice points in the `n`-th dilate, `n ≥ 1`.
    fn lattice_count(&self, n: u64) -> BigInt;
    /// A positive integer whose multiples make every coordinate integral.
    fn denominator(&self) -> BigInt;
}

impl Countable for RationalPolygon {
    fn lattice_count(&self, n: u64) -> BigInt {
        RationalPolygon::lattice_count(self, n)
    }
    fn denominator(&self) -> BigInt {
        RationalPolygon::denominator(self)
    }
}

impl Countable for SemiOpenRegion {
    fn lattice_count(&self, n: u64) -> BigInt {
        SemiOpenRegion::lattice_count(self, n)
    }
    fn denominator(&self) -> BigInt {
        SemiOpenRegion::denominator(self)
    }
}

impl Countable for HalfOpenSegment {
    fn lattice_count(&self, n: u64) -> BigInt {
        HalfOpenSegment::lattice_count(self, n)
    }
    fn denominator(&self) -> BigInt {
        HalfOpenSegment::denominator(self)
    }
}

impl Countable for FaceSet {
    fn lattice_count(&self, n: u64) -> BigInt {
        FaceSet::lattice_count(self, n)
    }
    fn denominator(&self) -> BigInt {
        FaceSet::denominator(self)
    }
}

/// `c2(n)·n² + c1(n)·n + c0(n)` with coefficient tables of length `modulus`.
///
/// Entry `k` of each table holds the value for `n ≡ k + 1 (mod modulus)`, so
/// residue 0 sits at the last index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhrhartQuasiPolynomial {
    modulus: u64,
    c2: Vec<Rational>,
    c1: Vec<Rational>,
    c0: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PeriodSequence {
    pub s2: u64,
    pub s1: u64,
    pub s0: u64,
    pub quasi_period: u64,
}

impl PeriodSequence {
    pub fn new(s2: u64, s1: u64, s0: u64) -> Self {
        PeriodSequence {
            s2,
            s1,
            s0,
            quasi_period: s2.lcm(&s1).lcm(&s0),
        }
    }

    pub fn as_tuple(&self) -> (u64, u64, u64) {
        (self.s2, self.s1, self.s0)
    }
}

impl fmt::Display for PeriodSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.s2, self.s1, self.s0)
    }
}

impl EhrhartQuasiPolynomial {
    pub fn new(c2: Vec<Rational>, c1: Vec<Rational>, c0: Vec<Rational>) -> Result<Self> {
        let d = c2.len();
        if d == 0 || c1.len() != d || c0.len() != d {
            return Err(Error::InvalidParameter("coefficient tables must share a positive length".into()));
        }
        Ok(EhrhartQuasiPolynomial {
            modulus: d as u64,
            c2,
            c1,
            c0,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Table of coefficient `i ∈ {0, 1, 2}`.
    pub fn table(&self, i: usize) -> &[Rational] {
        match i {
            0 => &self.c0,
            1 => &self.c1,
            2 => &self.c2,
            _ => panic!("coefficient index {i} out of range"),
        }
    }

    fn index(&self, n: u64) -> usize {
        ((n + self.modulus - 1) % self.modulus) as usize
    }

    pub fn coefficient(&self, i: usize, n: u64) -> &Rational {
        &self.table(i)[self.index(n)]
    }

    pub fn eval(&self, n: u64) -> Rational {
        let k = self.index(n);
        let nr = Rational::from_integer(n.into());
        &self.c2[k] * &nr * &nr + &self.c1[k] * &nr + &self.c0[k]
    }

    pub fn period_sequence(&self) -> PeriodSequence {
        PeriodSequence::new(
            minimal_period(&self.c2),
            minimal_period(&self.c1),
            minimal_period(&self.c0),
        )
    }

    pub fn quasi_period(&self) -> u64 {
        self.period_sequence().quasi_period
    }

    /// The same function over the smallest modulus that represents it.
    pub fn reduced(&self) -> EhrhartQuasiPolynomial {
        let q = self.quasi_period() as usize;
        EhrhartQuasiPolynomial {
            modulus: q as u64,
            c2: self.c2[..q].to_vec(),
            c1: self.c1[..q].to_vec(),
            c0: self.c0[..q].to_vec(),
        }
    }
}

impl fmt::Display for EhrhartQuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_table = |t: &[Rational]| {
            if t.iter().all(|c| c == &t[0]) {
                t[0].to_string()
            } else {
                format!("[{}]", t.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))
            }
        };
        write!(
            f,
            "{}·n² + {}·n + {} (mod {})",
            fmt_table(&self.c2),
            fmt_table(&self.c1),
            fmt_table(&self.c0),
            self.modulus
        )
    }
}

/// Smallest divisor `p` of the table length for which the table is `p`-periodic.
pub fn minimal_period(values: &[Rational]) -> u64 {
    let d = values.len();
    (1..=d)
        .filter(|p| d.is_multiple_of(*p))
        .find(|&p| (p..d).all(|k| values[k] == values[k - p]))
        .unwrap_or(d.max(1)) as u64
}

fn modulus_of(d: &BigInt) -> Result<u64> {
    d.to_u64()
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::InvalidParameter(format!("denominator {d} out of range")))
}

/// Counts for `n = 1..=up_to`, evaluated in parallel.
pub fn counts<C: Countable + ?Sized>(c: &C, up_to: u64) -> Vec<BigInt> {
    (1..=up_to).into_par_iter().map(|n| c.lattice_count(n)).collect()
}

/// Interpolates over modulus `D = denominator` and checks one extra sample per residue.
pub fn ehrhart<C: Countable + ?Sized>(c: &C) -> Result<EhrhartQuasiPolynomial> {
    ehrhart_with_modulus(c, modulus_of(&c.denominator())?)
}

pub fn ehrhart_with_modulus<C: Countable + ?Sized>(c: &C, d: u64) -> Result<EhrhartQuasiPolynomial> {
    if d == 0 {
        return Err(Error::InvalidParameter("modulus must be positive".into()));
    }
    let values = counts(c, 4 * d);
    from_counts(d, &values)
}

/// Builds the quasi-polynomial from counts at `n = 1..=4D`.
pub fn from_counts(d: u64, values: &[BigInt]) -> Result<EhrhartQuasiPolynomial> {
    if values.len() < 4 * d as usize {
        return Err(Error::InvalidParameter(format!("need {} counts, got {}", 4 * d, values.len())));
    }
    let at = |n: u64| Rational::from_integer(values[(n - 1) as usize].clone());
    let dr = Rational::from_integer(d.into());
    let two = Rational::from_integer(2.into());
    let (mut c2, mut c1, mut c0) = (Vec::new(), Vec::new(), Vec::new());
    for r in 1..=d {
        let x0 = Rational::from_integer(r.into());
        let x1 = &x0 + &dr;
        let (y0, y1, y2) = (at(r), at(r + d), at(r + 2 * d));
        let a = (&y2 - &y1 * &two + &y0) / (&two * &dr * &dr);
        let b = (&y1 - &y0) / &dr - &a * (&x0 + &x1);
        let c = &y0 - &a * &x0 * &x0 - &b * &x0;
        let n = r + 3 * d;
        let nr = Rational::from_integer(n.into());
        let predicted = &a * &nr * &nr + &b * &nr + &c;
        if predicted != at(n) {
            return Err(Error::VerificationFailure(format!(
                "residue {r} mod {d}: interpolation predicts {predicted} at n = {n}, count is {}",
                at(n)
            )));
        }
        c2.push(a);
        c1.push(b);
        c0.push(c);
    }
    EhrhartQuasiPolynomial::new(c2, c1, c0)
}

pub fn period_sequence<C: Countable + ?Sized>(c: &C) -> Result<PeriodSequence> {
    Ok(ehrhart(c)?.period_sequence())
}

/// A pseudo-integral polygon: its Ehrhart function is a polynomial.
pub fn is_pip(p: &RationalPolygon) -> Result<bool> {
    Ok(period_sequence(p)?.quasi_period == 1)
}

/// McMullen indices `(p2, p1, p0)`.
///
/// An edge line `a·x + b·y = c` with coprime integers `a, b` meets the lattice
/// after dilation by `p` iff `p·c` is an integer.
pub fn mcmullen_indices(p: &RationalPolygon) -> (BigInt, BigInt, BigInt) {
    let p1 = p
        .edge_lines()
        .iter()
        .fold(BigInt::one(), |acc, line| lcm(&acc, line.c.denom()));
    (BigInt::one(), p1, p.denominator())
}

/// Coefficients of `(1−ζ)^{-2}(1−ζ^t)^{-1}` up to `ζ^{len−1}`, by convolution.
pub fn gf_coefficients(t: u64, len: usize) -> Vec<BigInt> {
    let t = t.max(1) as usize;
    let square: Vec<BigInt> = (0..len).map(|k| BigInt::from(k + 1)).collect();
    (0..len)
        .map(|k| (0..=k).step_by(t).map(|j| &square[k - j]).sum())
        .collect()
}

/// Compares the first `len` coefficients of the series above with
/// `𝔏(0) = 1, 𝔏(1), …`.
pub fn gf_series_check<C: Countable + ?Sized>(c: &C, t: u64, len: usize) -> bool {
    if len == 0 {
        return true;
    }
    let mut values = vec![BigInt::one()];
    values.extend(counts(c, (len - 1) as u64));
    values == gf_coefficients(t, len)
}

/// The coefficient function `⌊n/s⌋ − n/s + 1` of `[0, 1/s]`.
pub fn segment_constant(s: u64, n: u64) -> Rational {
    let sr = Rational::from_integer(s.into());
    let nr = Rational::from_integer(n.into());
    Rational::from_integer((n / s).into()) - nr / sr + Rational::one()
}

/// Whether every leading coefficient equals `area`.
pub fn leading_matches(q: &EhrhartQuasiPolynomial, area: &Rational) -> bool {
    q.table(2).iter().all(|c| c == area)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{RationalPoint, RationalPolygon};
    use crate::rational::{rat, rat_int};
    use num_traits::Zero;

    fn pt(x: Rational, y: Rational) -> RationalPoint {
        RationalPoint::new(x, y)
    }

    fn kite() -> RationalPolygon {
        crate::geometry::convex_hull(&[
            RationalPoint::from_ints(0, 0),
            RationalPoint::from_ints(2, 0),
            pt(rat_int(1), rat(1, 2)),
            pt(rat_int(1), rat(-1, 2)),
        ])
        .unwrap()
    }

    fn constant(d: usize, v: Rational) -> Vec<Rational> {
        vec![v; d]
    }

    #[test]
    fn unit_square() {
        let sq = RationalPolygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        let q = ehrhart(&sq).unwrap();
        assert_eq!(q.table(2), &[rat_int(1)]);
        assert_eq!(q.table(1), &[rat_int(2)]);
        assert_eq!(q.table(0), &[rat_int(1)]);
        assert_eq!(q.period_sequence().as_tuple(), (1, 1, 1));
        assert!(is_pip(&sq).unwrap());
    }

    #[test]
    fn kite_is_a_polynomial_over_modulus_two() {
        let q = ehrhart(&kite()).unwrap();
        assert_eq!(q.modulus(), 2);
        assert_eq!(q.table(2), constant(2, rat_int(1)).as_slice());
        assert_eq!(q.table(1), constant(2, rat_int(1)).as_slice());
        assert_eq!(q.table(0), constant(2, rat_int(1)).as_slice());
        for n in 1..=6 {
            assert_eq!(q.eval(n), Rational::from_integer(kite().lattice_count(n)));
        }
    }

    #[test]
    fn rectangle_over_short_segment() {
        let (s, m) = (2i64, 3i64);
        let rect = crate::geometry::convex_hull(&[
            RationalPoint::origin(),
            pt(rat(1, s), rat_int(0)),
            pt(rat(1, s), rat_int(m)),
            pt(rat_int(0), rat_int(m)),
        ])
        .unwrap();
        let q = ehrhart(&rect).unwrap();
        for n in 1..=12u64 {
            let cl = segment_constant(s as u64, n);
            assert_eq!(q.coefficient(2, n), &rat(m, s));
            assert_eq!(q.coefficient(1, n), &(rat_int(m) * &cl + rat(1, s)));
            assert_eq!(q.coefficient(0, n), &cl);
        }
    }

    #[test]
    fn minimal_period_examples() {
        assert_eq!(minimal_period(&constant(6, rat(1, 3))), 1);
        assert_eq!(minimal_period(&[rat(1, 2), rat_int(1), rat(1, 2), rat_int(1)]), 2);
        let s = 3;
        let table: Vec<Rational> = (1..=s).map(|n| segment_constant(s, n)).collect();
        assert_eq!(minimal_period(&table), 3);
    }

    #[test]
    fn mcmullen_examples() {
        let tri = crate::geometry::convex_hull(&[
            RationalPoint::origin(),
            RationalPoint::from_ints(1, 0),
            pt(rat_int(0), rat(1, 3)),
        ])
        .unwrap();
        // slanted edge: x + 3y = 1
        assert_eq!(mcmullen_indices(&tri), (BigInt::one(), BigInt::one(), BigInt::from(3)));
        let sq = RationalPolygon::from_ints(&[(0, 0), (1, 0), (1, 1), (0, 1)]).unwrap();
        assert_eq!(mcmullen_indices(&sq), (BigInt::one(), BigInt::one(), BigInt::one()));
    }

    /// Brute-force p1: least p with every edge line of pP through a lattice point.
    fn brute_p1(p: &RationalPolygon) -> u64 {
        (1..)
            .find(|&k| {
                let kr = Rational::from_integer(BigInt::from(k));
                p.dilate(&kr).edge_lines().iter().all(|l| {
                    // search a window for a lattice point on the line
                    (-60i64..=60).any(|x| {
                        if l.b.is_zero() {
                            return (Rational::from_integer(&l.a * x) - &l.c).is_zero();
                        }
                        let y = (&l.c - Rational::from_integer(&l.a * x)) / Rational::from_integer(l.b.clone());
                        y.is_integer()
                    })
                })
            })
            .unwrap()
    }

    #[test]
    fn p1_matches_brute_force() {
        let tri = crate::geometry::convex_hull(&[
            pt(rat(1, 2), rat(1, 3)),
            pt(rat(5, 2), rat(0, 1)),
            pt(rat(1, 4), rat(7, 3)),
        ])
        .unwrap();
        for poly in [tri, kite()] {
            let (_, p1, _) = mcmullen_indices(&poly);
            assert_eq!(p1, BigInt::from(brute_p1(&poly)));
        }
    }

    #[test]
    fn series_coefficients() {
        // t = 1: binomial(k + 2, 2)
        let c = gf_coefficients(1, 8);
        for (k, v) in c.iter().enumerate() {
            assert_eq!(*v, BigInt::from((k + 1) * (k + 2) / 2));
        }
        assert_eq!(gf_coefficients(2, 5), [1, 2, 4, 6, 9].map(BigInt::from).to_vec());
        let unit = RationalPolygon::from_ints(&[(0, 0), (1, 0), (0, 1)]).unwrap();
        assert!(gf_series_check(&unit, 1, 12));
        assert!(!gf_series_check(&unit, 2, 12));
    }

    #[test]
    fn segments_have_degree_one() {
        let h = HalfOpenSegment::new(pt(rat(1, 3), rat_int(0)), RationalPoint::from_ints(1, 0)).unwrap();
        let q = ehrhart(&h).unwrap();
        assert!(q.table(2).iter().all(|c| c.is_zero()));
        for n in 1..=12 {
            assert_eq!(q.coefficient(0, n), &(rat_int(1) - segment_constant(3, n)));
        }
    }

    #[test]
    fn verification_failure_on_wrong_modulus() {
        let tri = crate::geometry::convex_hull(&[
            RationalPoint::origin(),
            RationalPoint::from_ints(1, 0),
            pt(rat_int(0), rat(1, 3)),
        ])
        .unwrap();
        assert!(matches!(ehrhart_with_modulus(&tri, 2), Err(Error::VerificationFailure(_))));
        assert_eq!(ehrhart_with_modulus(&tri, 6).unwrap().reduced(), ehrhart(&tri).unwrap());
    }
}
