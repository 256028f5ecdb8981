//! Skew unimodular transformations and the piecewise maps built from them.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{primitive, LinearForm, Line, RationalPoint, RationalVector};
use crate::rational::Rational;
use crate::regions::{FaceSet, SemiOpenRegion, Side};

/// `x ↦ matrix·x + translation` with an integer matrix of determinant ±1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineUnimodular {
    /// Row-major.
    matrix: [[BigInt; 2]; 2],
    translation: [BigInt; 2],
}

impl AffineUnimodular {
    pub fn new(matrix: [[BigInt; 2]; 2], translation: [BigInt; 2]) -> Result<Self> {
        let m = AffineUnimodular { matrix, translation };
        if !m.det().abs().is_one() {
            return Err(Error::InvalidParameter(format!("determinant {} is not ±1", m.det())));
        }
        Ok(m)
    }

    pub fn from_ints(matrix: [[i64; 2]; 2], translation: [i64; 2]) -> Result<Self> {
        Self::new(
            matrix.map(|row| row.map(BigInt::from)),
            translation.map(BigInt::from),
        )
    }

    pub fn identity() -> Self {
        AffineUnimodular {
            matrix: [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]],
            translation: [BigInt::zero(), BigInt::zero()],
        }
    }

    pub fn matrix(&self) -> &[[BigInt; 2]; 2] {
        &self.matrix
    }

    pub fn translation(&self) -> &[BigInt; 2] {
        &self.translation
    }

    pub fn det(&self) -> BigInt {
        let m = &self.matrix;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn apply_vector(&self, v: &RationalVector) -> RationalVector {
        let m = self.matrix.each_ref().map(|row| row.each_ref().map(|e| Rational::from_integer(e.clone())));
        RationalVector::new(
            &m[0][0] * &v.dx + &m[0][1] * &v.dy,
            &m[1][0] * &v.dx + &m[1][1] * &v.dy,
        )
    }

    pub fn apply(&self, p: &RationalPoint) -> RationalPoint {
        let v = self.apply_vector(&p.to_vector());
        RationalPoint::new(
            v.dx + Rational::from_integer(self.translation[0].clone()),
            v.dy + Rational::from_integer(self.translation[1].clone()),
        )
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AffineUnimodular) -> AffineUnimodular {
        let (a, b) = (&self.matrix, &other.matrix);
        let mut matrix: [[BigInt; 2]; 2] = Default::default();
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
            }
        }
        let t = &other.translation;
        let translation = [
            &a[0][0] * &t[0] + &a[0][1] * &t[1] + &self.translation[0],
            &a[1][0] * &t[0] + &a[1][1] * &t[1] + &self.translation[1],
        ];
        AffineUnimodular { matrix, translation }
    }

    pub fn inverse(&self) -> AffineUnimodular {
        let m = &self.matrix;
        let d = self.det();
        // the inverse of a ±1 matrix is its adjugate times the determinant
        let matrix = [
            [&m[1][1] * &d, -&m[0][1] * &d],
            [-&m[1][0] * &d, &m[0][0] * &d],
        ];
        let t = &self.translation;
        let translation = [
            -(&matrix[0][0] * &t[0] + &matrix[0][1] * &t[1]),
            -(&matrix[1][0] * &t[0] + &matrix[1][1] * &t[1]),
        ];
        AffineUnimodular { matrix, translation }
    }

    /// `x ↦ self(x − u) + u` for a lattice point `u`.
    pub fn conjugate_by(&self, u: &RationalPoint) -> Result<AffineUnimodular> {
        if !u.is_lattice() {
            return Err(Error::NonLatticeAnchor(u.to_string()));
        }
        let (ux, uy) = (u.x.to_integer(), u.y.to_integer());
        let m = &self.matrix;
        let translation = [
            &self.translation[0] + &ux - (&m[0][0] * &ux + &m[0][1] * &uy),
            &self.translation[1] + &uy - (&m[1][0] * &ux + &m[1][1] * &uy),
        ];
        Ok(AffineUnimodular {
            matrix: self.matrix.clone(),
            translation,
        })
    }
}

impl fmt::Display for AffineUnimodular {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.matrix;
        let t = &self.translation;
        write!(
            f,
            "[[{}, {}], [{}, {}]] + ({}, {})",
            m[0][0], m[0][1], m[1][0], m[1][1], t[0], t[1]
        )
    }
}

/// The skew transformation `x ↦ x + det(r_p, x)·r_p` fixing the line `ℝr`.
pub fn skew(r: &RationalVector) -> Result<AffineUnimodular> {
    let (p, q) = primitive(r)?;
    let pq = &p * &q;
    let matrix = [
        [BigInt::one() - &pq, &p * &p],
        [-(&q * &q), BigInt::one() + &pq],
    ];
    Ok(AffineUnimodular {
        matrix,
        translation: [BigInt::zero(), BigInt::zero()],
    })
}

/// Two affine unimodular maps glued along a line.
///
/// `positive` acts on the closed half-plane `det(direction, x − anchor) ≥ 0`,
/// `negative` on the other one; they agree on the line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseUnimodularMap {
    anchor: RationalPoint,
    direction: RationalVector,
    positive: AffineUnimodular,
    negative: AffineUnimodular,
}

impl PiecewiseUnimodularMap {
    pub fn new(
        anchor: RationalPoint,
        direction: RationalVector,
        positive: AffineUnimodular,
        negative: AffineUnimodular,
    ) -> Result<Self> {
        if direction.is_zero() {
            return Err(Error::ZeroVector);
        }
        let other = &anchor + &direction;
        for p in [&anchor, &other] {
            if positive.apply(p) != *p || negative.apply(p) != *p {
                return Err(Error::AmbiguousMap(format!("branch maps do not fix the line at {p}")));
            }
        }
        for m in [&positive, &negative] {
            if !m.det().is_positive() {
                return Err(Error::AmbiguousMap("branch map swaps the sides of the line".into()));
            }
        }
        Ok(PiecewiseUnimodularMap {
            anchor,
            direction,
            positive,
            negative,
        })
    }

    pub fn anchor(&self) -> &RationalPoint {
        &self.anchor
    }

    pub fn direction(&self) -> &RationalVector {
        &self.direction
    }

    pub fn positive_map(&self) -> &AffineUnimodular {
        &self.positive
    }

    pub fn negative_map(&self) -> &AffineUnimodular {
        &self.negative
    }

    /// The fixed line.
    pub fn line(&self) -> Line {
        Line::with_direction(&self.anchor, &self.direction)
    }

    pub fn form(&self) -> LinearForm {
        LinearForm::left_of(&self.anchor, &self.direction)
    }

    /// The side whose map is not the identity, when exactly one is.
    pub fn active_side(&self) -> Option<Side> {
        match (self.positive.is_identity(), self.negative.is_identity()) {
            (false, true) => Some(Side::Positive),
            (true, false) => Some(Side::Negative),
            _ => None,
        }
    }

    pub fn branch(&self, side: Side) -> &AffineUnimodular {
        match side {
            Side::Negative => &self.negative,
            // both branches agree on the line
            Side::Positive | Side::On => &self.positive,
        }
    }

    pub fn apply(&self, p: &RationalPoint) -> RationalPoint {
        if self.form().eval(p).is_negative() {
            self.negative.apply(p)
        } else {
            self.positive.apply(p)
        }
    }

    /// Both branches preserve the sides, so inverting them branchwise inverts
    /// the piecewise map.
    pub fn inverse(&self) -> PiecewiseUnimodularMap {
        PiecewiseUnimodularMap {
            anchor: self.anchor.clone(),
            direction: self.direction.clone(),
            positive: self.positive.inverse(),
            negative: self.negative.inverse(),
        }
    }

    /// Image of a disjoint face set; faces crossing the line are split first.
    pub fn apply_faces(&self, faces: &FaceSet) -> FaceSet {
        let form = self.form();
        let mut out = Vec::with_capacity(faces.faces().len());
        for face in faces.faces() {
            for (piece, side) in face.split(&form) {
                let m = self.branch(side);
                out.push(piece.map(|p| m.apply(p)));
            }
        }
        FaceSet::new(out)
    }
}

/// `U^+_r`: the skew on `det(r, x) ≥ 0`, the identity elsewhere.
pub fn skew_plus(r: &RationalVector) -> Result<PiecewiseUnimodularMap> {
    PiecewiseUnimodularMap::new(RationalPoint::origin(), r.clone(), skew(r)?, AffineUnimodular::identity())
}

/// `U^-_r = (U^+_{-r})^{-1}`.
pub fn skew_minus(r: &RationalVector) -> Result<PiecewiseUnimodularMap> {
    Ok(skew_plus(&-r)?.inverse())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkewSign {
    Plus,
    Minus,
}

/// `U^±_{uw}(v) = U^±_{w−u}(v − u) + u`.
pub fn affine_skew(u: &RationalPoint, w: &RationalPoint, sign: SkewSign) -> Result<PiecewiseUnimodularMap> {
    if u == w {
        return Err(Error::CoincidentPoints);
    }
    if !u.is_lattice() {
        return Err(Error::NonLatticeAnchor(u.to_string()));
    }
    let r = w - u;
    let base = match sign {
        SkewSign::Plus => skew_plus(&r)?,
        SkewSign::Minus => skew_minus(&r)?,
    };
    PiecewiseUnimodularMap::new(
        u.clone(),
        base.direction.clone(),
        base.positive.conjugate_by(u)?,
        base.negative.conjugate_by(u)?,
    )
}

/// Image of a region under a piecewise map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionImage {
    /// The image is again a convex polygon minus half-open boundary segments.
    Region(SemiOpenRegion),
    /// Any other finite union, kept as its disjoint face decomposition.
    Union(FaceSet),
}

impl RegionImage {
    pub fn from_faces(faces: FaceSet) -> RegionImage {
        match faces.coverage().to_region() {
            Ok(r) => RegionImage::Region(r),
            Err(_) => RegionImage::Union(faces),
        }
    }

    pub fn region(&self) -> Option<&SemiOpenRegion> {
        match self {
            RegionImage::Region(r) => Some(r),
            RegionImage::Union(_) => None,
        }
    }

    pub fn into_region(self) -> Result<SemiOpenRegion> {
        match self {
            RegionImage::Region(r) => Ok(r),
            RegionImage::Union(f) => {
                let cov = f.coverage();
                Err(cov.to_region().expect_err("unions that form regions are resolved on construction"))
            }
        }
    }

    pub fn faces(&self) -> FaceSet {
        match self {
            RegionImage::Region(r) => r.faces(),
            RegionImage::Union(f) => f.clone(),
        }
    }

    pub fn lattice_count(&self, n: u64) -> BigInt {
        match self {
            RegionImage::Region(r) => r.lattice_count(n),
            RegionImage::Union(f) => f.lattice_count(n),
        }
    }
}

pub fn apply_piecewise(m: &PiecewiseUnimodularMap, region: &SemiOpenRegion) -> RegionImage {
    RegionImage::from_faces(m.apply_faces(&region.faces()))
}

/// `k`-fold application; intermediate images that are regions are re-decomposed.
pub fn iterate(m: &PiecewiseUnimodularMap, k: usize, region: &SemiOpenRegion) -> RegionImage {
    let mut current = RegionImage::Region(region.clone());
    for _ in 0..k {
        current = RegionImage::from_faces(m.apply_faces(&current.faces()));
    }
    current
}

/// Applies several one-sided maps at once, each to the part of the region on
/// its active side. Every piece may be moved by at most one map.
pub fn apply_simultaneous(maps: &[PiecewiseUnimodularMap], region: &SemiOpenRegion) -> Result<RegionImage> {
    let mut pieces = region.faces().into_faces();
    for m in maps {
        let form = m.form();
        pieces = pieces.iter().flat_map(|f| f.split(&form)).map(|(f, _)| f).collect();
    }
    let mut out = Vec::with_capacity(pieces.len());
    for piece in pieces {
        let mut acting = maps.iter().filter(|m| {
            let side = piece.side(&m.form()).expect("pieces were split by every line");
            side != Side::On && m.active_side() == Some(side)
        });
        let image = match (acting.next(), acting.next()) {
            (None, _) => piece,
            (Some(m), None) => {
                let side = m.active_side().expect("filtered on active side");
                piece.map(|p| m.branch(side).apply(p))
            }
            (Some(_), Some(_)) => {
                return Err(Error::AmbiguousMap(format!(
                    "two maps act on the piece through {}",
                    piece.points()[0]
                )))
            }
        };
        out.push(image);
    }
    Ok(RegionImage::from_faces(FaceSet::new(out)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::RationalPolygon;
    use crate::rational::{rat, rat_int};
    use crate::regions::HalfOpenSegment;
    use proptest::prelude::*;

    fn v(x: i64, y: i64) -> RationalVector {
        RationalVector::from_ints(x, y)
    }

    fn p(x: i64, y: i64) -> RationalPoint {
        RationalPoint::from_ints(x, y)
    }

    #[test]
    fn skew_examples() {
        let u = skew(&v(1, 0)).unwrap();
        assert_eq!(u, AffineUnimodular::from_ints([[1, 1], [0, 1]], [0, 0]).unwrap());
        let u = skew(&v(0, -1)).unwrap();
        assert_eq!(u.apply(&p(1, 0)), p(1, -1));
        assert_eq!(u.apply(&p(0, -1)), p(0, -1));
        assert_eq!(u.det(), BigInt::one());
    }

    #[test]
    fn det_sign_convention() {
        // columns (r, x): det((1,0),(0,1)) = 1
        assert_eq!(crate::geometry::det(&v(1, 0), &v(0, 1)), rat_int(1));
        let plus = skew_plus(&v(0, -1)).unwrap();
        assert_ne!(plus.apply(&p(1, 5)), p(1, 5));
        assert_eq!(plus.apply(&p(-1, 5)), p(-1, 5));
        assert_eq!(plus.apply(&p(0, 7)), p(0, 7));
    }

    #[test]
    fn skew_minus_points_on_far_side_fixed() {
        let r = v(2, 1);
        let m = skew_minus(&r).unwrap();
        // det(-r, x) < 0
        let x = p(0, 1);
        assert!(crate::geometry::det(&-&r, &x.to_vector()) < rat_int(0));
        assert_eq!(m.apply(&x), x);
    }

    #[test]
    fn zero_vector_and_anchor_errors() {
        assert!(matches!(skew(&v(0, 0)), Err(Error::ZeroVector)));
        assert!(matches!(affine_skew(&p(1, 1), &p(1, 1), SkewSign::Plus), Err(Error::CoincidentPoints)));
        let half = RationalPoint::new(rat(1, 2), rat_int(0));
        assert!(matches!(
            affine_skew(&half, &p(1, 1), SkewSign::Plus),
            Err(Error::NonLatticeAnchor(_))
        ));
    }

    #[test]
    fn affine_skew_at_origin_reduces_to_linear() {
        let w = RationalPoint::new(rat(3, 2), rat(1, 2));
        assert_eq!(
            affine_skew(&RationalPoint::origin(), &w, SkewSign::Plus).unwrap(),
            skew_plus(&w.to_vector()).unwrap()
        );
        assert_eq!(
            affine_skew(&RationalPoint::origin(), &w, SkewSign::Minus).unwrap(),
            skew_minus(&w.to_vector()).unwrap()
        );
    }

    #[test]
    fn affine_skew_fixes_its_line() {
        let u = p(0, 7);
        let w = RationalPoint::new(rat(7, 3), rat_int(0));
        for sign in [SkewSign::Plus, SkewSign::Minus] {
            let m = affine_skew(&u, &w, sign).unwrap();
            for k in -5..=5 {
                let q = &u + &(&w - &u).scale(&rat(k, 3));
                assert_eq!(m.apply(&q), q);
            }
        }
    }

    #[test]
    fn heptagon_first_triangle_maps_to_lattice_triangle() {
        for s in [2i64, 3] {
            let k = s * (s - 1);
            let u1 = p(0, k + 1);
            let v1 = p(1, k);
            let w = RationalPoint::new(rat(s * s - s + 1, s), rat_int(0));
            let m = affine_skew(&u1, &w, SkewSign::Plus).unwrap();
            assert_eq!(m.apply(&v1), p(s, 0));
            assert_eq!(m.apply(&u1), u1);
            assert_eq!(m.apply(&w), w);
            let t1 = SemiOpenRegion::from_points(&[u1.clone(), v1, w.clone()], vec![]).unwrap();
            let image = apply_piecewise(&m, &t1).into_region().unwrap();
            let expected = crate::geometry::convex_hull(&[u1, p(s, 0), w]).unwrap();
            assert_eq!(image, SemiOpenRegion::closed(expected));
        }
    }

    #[test]
    fn identity_and_far_side_leave_region_unchanged() {
        let sq = SemiOpenRegion::closed(RationalPolygon::from_ints(&[(-3, 0), (-1, 0), (-1, 2), (-3, 2)]).unwrap());
        let id = PiecewiseUnimodularMap::new(
            RationalPoint::origin(),
            v(1, 0),
            AffineUnimodular::identity(),
            AffineUnimodular::identity(),
        )
        .unwrap();
        assert_eq!(apply_piecewise(&id, &sq).region(), Some(&sq));
        // U^+_{(0,-1)} moves only x >= 0
        let m = skew_plus(&v(0, -1)).unwrap();
        assert_eq!(apply_piecewise(&m, &sq).region(), Some(&sq));
    }

    fn t1(i: i64) -> SemiOpenRegion {
        SemiOpenRegion::from_points(
            &[p(0, 0), p(1, 2 * i - 1), p(-1, 0)],
            vec![HalfOpenSegment::new(p(0, 0), p(1, 2 * i - 1)).unwrap()],
        )
        .unwrap()
    }

    #[test]
    fn iterated_shear_gives_t2() {
        let i = 3;
        let m = skew_plus(&v(0, -1)).unwrap();
        let t2 = iterate(&m, (2 * i - 1) as usize, &t1(i)).into_region().unwrap();
        let expected = SemiOpenRegion::from_points(
            &[p(1, 0), RationalPoint::new(rat_int(0), rat(2 * i - 1, 2)), p(-1, 0)],
            vec![HalfOpenSegment::new(p(0, 0), p(1, 0)).unwrap()],
        )
        .unwrap();
        assert_eq!(t2, expected);
        assert_eq!(apply_piecewise(&m, &t1(i)), iterate(&m, 1, &t1(i)));
        for n in 1..=6 {
            assert_eq!(t2.lattice_count(n), t1(i).lattice_count(n));
        }
    }

    #[test]
    fn overlapping_maps_are_rejected() {
        let sq = SemiOpenRegion::closed(RationalPolygon::from_ints(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap());
        let a = skew_plus(&v(0, -1)).unwrap();
        let b = skew_plus(&v(1, 0)).unwrap();
        assert!(matches!(apply_simultaneous(&[a, b], &sq), Err(Error::AmbiguousMap(_))));
    }

    #[test]
    fn simultaneous_folds_t2_into_closed_quadrilateral() {
        let i = 1;
        let m = skew_plus(&v(0, -1)).unwrap();
        let t2 = iterate(&m, 1, &t1(i)).into_region().unwrap();
        let maps = [skew_plus(&v(-1, -1)).unwrap(), skew_minus(&v(1, -1)).unwrap()];
        let t3 = apply_simultaneous(&maps, &t2).unwrap().into_region().unwrap();
        assert!(t3.is_closed());
        let third = rat(1, 3);
        let expected = RationalPolygon::new(vec![
            p(0, -1),
            RationalPoint::new(third.clone(), third.clone()),
            RationalPoint::new(rat_int(0), rat(1, 2)),
            RationalPoint::new(-third.clone(), third),
        ])
        .unwrap();
        assert_eq!(t3.polygon(), &expected);
        for n in 1..=9 {
            assert_eq!(t3.lattice_count(n), t2.lattice_count(n));
        }
    }

    fn small_vec() -> impl Strategy<Value = RationalVector> {
        (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4)
            .prop_filter("nonzero", |(a, _, c, _)| *a != 0 || *c != 0)
            .prop_map(|(a, b, c, d)| RationalVector::new(rat(a, b), rat(c, d)))
    }

    proptest! {
        #[test]
        fn skew_is_unimodular_and_scale_free(r in small_vec(), k in 1i64..=5, d in 1i64..=5) {
            let u = skew(&r).unwrap();
            prop_assert_eq!(u.det(), BigInt::one());
            prop_assert_eq!(u.inverse().compose(&u), AffineUnimodular::identity());
            prop_assert_eq!(skew(&r.scale(&rat(k, d))).unwrap(), u.clone());
            let (px, py) = primitive(&r).unwrap();
            let rp = RationalVector::new(Rational::from_integer(px), Rational::from_integer(py));
            prop_assert_eq!(skew(&rp).unwrap(), u.clone());
            prop_assert_eq!(skew(&-&r).unwrap(), u.clone());
            prop_assert_eq!(u.apply_vector(&r), r);
        }

        #[test]
        fn branches_agree_on_the_line(r in small_vec(), ux in -3i64..=3, uy in -3i64..=3, sign in any::<bool>()) {
            let u = p(ux, uy);
            let w = &u + &r;
            let sign = if sign { SkewSign::Plus } else { SkewSign::Minus };
            let m = affine_skew(&u, &w, sign).unwrap();
            for k in 0..20 {
                let q = &u + &r.scale(&rat(k - 10, 7));
                prop_assert_eq!(m.positive_map().apply(&q), q.clone());
                prop_assert_eq!(m.negative_map().apply(&q), q);
            }
        }

        #[test]
        fn minus_inverts_plus_of_negated(r in small_vec()) {
            let plus = skew_plus(&-&r).unwrap();
            let minus = skew_minus(&r).unwrap();
            for x in -5i64..5 {
                for y in -5i64..5 {
                    let q = RationalPoint::new(rat(x, 3), rat(y, 2));
                    prop_assert_eq!(minus.apply(&plus.apply(&q)), q);
                }
            }
        }
    }
}
