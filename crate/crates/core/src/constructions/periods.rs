//! Polygons with prescribed coefficient periods `(1, s, t)`.

use num_bigint::BigInt;

use super::{pt, q};
use crate::ehrhart::{ehrhart, segment_constant, PeriodSequence};
use crate::error::{Error, Result};
use crate::geometry::{closed_segment_count, convex_hull, hull_of, Hull, RationalPoint, RationalPolygon};
use crate::rational::Rational;
use crate::regions::{FaceSet, HalfOpenSegment, Run, SemiOpenRegion};
use crate::unimodular::{affine_skew, apply_piecewise, apply_simultaneous, AffineUnimodular, SkewSign};

fn check_at_least(name: &str, v: u64, min: u64) -> Result<i64> {
    if v < min || v > 1 << 20 {
        return Err(Error::InvalidParameter(format!("{name} = {v} must be in {min}..=2^20")));
    }
    Ok(v as i64)
}

/// The seven vertices of `H(s)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeptagonVertices {
    pub t1: RationalPoint,
    pub t2: RationalPoint,
    pub u1: RationalPoint,
    pub u2: RationalPoint,
    pub v1: RationalPoint,
    pub v2: RationalPoint,
    pub w: RationalPoint,
}

impl HeptagonVertices {
    pub fn new(s: u64) -> Result<Self> {
        let s = check_at_least("s", s, 2)?;
        let k = s * (s - 1) + 1;
        Ok(HeptagonVertices {
            t1: pt(q(-1, s), q(k, 1)),
            t2: pt(q(-1, s), q(-k, 1)),
            u1: RationalPoint::from_ints(0, k),
            u2: RationalPoint::from_ints(0, -k),
            v1: RationalPoint::from_ints(1, k - 1),
            v2: RationalPoint::from_ints(1, -(k - 1)),
            w: pt(q(s * s - s + 1, s), q(0, 1)),
        })
    }

    pub fn all(&self) -> [RationalPoint; 7] {
        [
            self.t1.clone(),
            self.t2.clone(),
            self.u1.clone(),
            self.u2.clone(),
            self.v1.clone(),
            self.v2.clone(),
            self.w.clone(),
        ]
    }
}

pub fn heptagon(s: u64) -> Result<RationalPolygon> {
    let h = convex_hull(&HeptagonVertices::new(s)?.all())?;
    if h.len() != 7 {
        return Err(Error::DegenerateInput(format!("H({s}) has {} vertices", h.len())));
    }
    Ok(h)
}

/// `[R, T1, T2, T3]`.
pub fn heptagon_pieces(s: u64) -> Result<[RationalPolygon; 4]> {
    let h = HeptagonVertices::new(s)?;
    Ok([
        convex_hull(&[h.t1.clone(), h.t2.clone(), h.u2.clone(), h.u1.clone()])?,
        convex_hull(&[h.u1.clone(), h.v1.clone(), h.w.clone()])?,
        convex_hull(&[h.u2.clone(), h.v2.clone(), h.w.clone()])?,
        convex_hull(&[h.u1.clone(), h.u2.clone(), h.w.clone()])?,
    ])
}

/// `ℓ = [0, 1/s]` on the x-axis.
pub fn short_segment(s: u64) -> Result<FaceSet> {
    let s = check_at_least("s", s, 1)?;
    Ok(FaceSet::closed_segment(RationalPoint::origin(), pt(q(1, s), q(0, 1))))
}

/// `h = (1/s, 1]` on the x-axis.
pub fn h_segment(s: u64) -> Result<HalfOpenSegment> {
    let s = check_at_least("s", s, 2)?;
    HalfOpenSegment::new(pt(q(1, s), q(0, 1)), RationalPoint::from_ints(1, 0))
}

/// `ℓ × [0, m]`.
pub fn segment_rectangle(s: u64, m: u64) -> Result<RationalPolygon> {
    let s = check_at_least("s", s, 1)?;
    let m = check_at_least("m", m, 1)?;
    convex_hull(&[
        RationalPoint::origin(),
        pt(q(1, s), q(0, 1)),
        pt(q(1, s), q(m, 1)),
        RationalPoint::from_ints(0, m),
    ])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeptagonReport {
    pub s: u64,
    /// `R, T1, T2, T3` have disjoint interiors and fill `H`.
    pub subdivision_ok: bool,
    /// `U1(T1) = conv{u1, v, w}`.
    pub u1_image_ok: bool,
    /// `U2(T2) = conv{u2, v, w}`.
    pub u2_image_ok: bool,
    /// Hull of the mapped pieces, when they form a convex polygon.
    pub h_prime: Option<RationalPolygon>,
    /// Pieces of `H'` covered twice.
    pub doubled: Vec<Run>,
    /// The doubled set is exactly `(w, v]`.
    pub doubled_is_wv: bool,
    /// `𝔏_H = 𝔏_{H'} + 𝔏_h` and `𝔏_{(w,v]} = 𝔏_h` for `n ≤ 3s`.
    pub count_identity_ok: bool,
    /// `c_{H,0} ≡ 1`, `c_{H',0} = c_{ℓ,0}` and `c_{H,0} = c_{H',0} + c_{h,0}`.
    pub constant_term_ok: bool,
}

impl HeptagonReport {
    pub fn passed(&self) -> bool {
        self.subdivision_ok
            && self.u1_image_ok
            && self.u2_image_ok
            && self.h_prime.is_some()
            && self.doubled_is_wv
            && self.count_identity_ok
            && self.constant_term_ok
    }
}

pub fn heptagon_decomposition(s: u64) -> Result<HeptagonReport> {
    let hv = HeptagonVertices::new(s)?;
    let h = heptagon(s)?;
    let pieces = heptagon_pieces(s)?;
    let v = RationalPoint::from_ints(s as i64, 0);

    let area_sum: Rational = pieces.iter().map(RationalPolygon::area).sum();
    let interiors_disjoint = pieces.iter().enumerate().all(|(a, pa)| {
        pieces[a + 1..]
            .iter()
            .all(|pb| !pa.intersection(pb).is_two_dimensional())
    });
    let inside = pieces.iter().all(|p| p.vertices().iter().all(|x| h.contains(x)));
    let subdivision_ok = area_sum == h.area() && interiors_disjoint && inside;

    let u1 = affine_skew(&hv.u1, &hv.w, SkewSign::Plus)?;
    let u2 = affine_skew(&hv.u2, &hv.w, SkewSign::Minus)?;
    let image_is = |m, piece: &RationalPolygon, target: [&RationalPoint; 3]| -> Result<bool> {
        let img = apply_piecewise(m, &SemiOpenRegion::closed(piece.clone()));
        let expected = convex_hull(&target.map(Clone::clone))?;
        Ok(img.region() == Some(&SemiOpenRegion::closed(expected)))
    };
    let u1_image_ok = image_is(&u1, &pieces[1], [&hv.u1, &v, &hv.w])?;
    let u2_image_ok = image_is(&u2, &pieces[2], [&hv.u2, &v, &hv.w])?;

    let image = apply_simultaneous(&[u1, u2], &SemiOpenRegion::closed(h.clone()))?.faces();
    let coverage = image.coverage();
    let h_prime = match (&coverage.hull, coverage.is_convex_union() && coverage.uncovered.is_empty()) {
        (Hull::Polygon(p), true) => Some(p.clone()),
        _ => None,
    };
    let wv = HalfOpenSegment::new(hv.w.clone(), v.clone())?;
    let doubled = coverage.overlapping.clone();
    let doubled_is_wv = coverage.max_multiplicity == 2
        && doubled.len() == 1
        && doubled[0].as_half_open().as_ref() == Some(&wv);

    let hs = h_segment(s)?;
    let ns = 3 * s;
    let count_identity_ok = match &h_prime {
        Some(hp) => (1..=ns).all(|n| {
            let lh = h.lattice_count(n);
            lh == image.lattice_count(n)
                && lh == hp.lattice_count(n) + hs.lattice_count(n)
                && wv.lattice_count(n) == hs.lattice_count(n)
        }),
        None => false,
    };

    let constant_term_ok = match &h_prime {
        Some(hp) => {
            let eh = ehrhart(&h)?;
            let ehp = ehrhart(hp)?;
            let eseg = ehrhart(&hs)?;
            (1..=ns).all(|n| {
                let c_h = eh.coefficient(0, n);
                let c_hp = ehp.coefficient(0, n);
                c_h == &Rational::from_integer(1.into())
                    && c_hp == &segment_constant(s, n)
                    && c_h == &(c_hp + eseg.coefficient(0, n))
            })
        }
        None => false,
    };

    Ok(HeptagonReport {
        s,
        subdivision_ok,
        u1_image_ok,
        u2_image_ok,
        h_prime,
        doubled,
        doubled_is_wv,
        count_identity_ok,
        constant_term_ok,
    })
}

pub fn heptagon_decomposition_check(s: u64) -> bool {
    heptagon_decomposition(s).map(|r| r.passed()).unwrap_or(false)
}

/// `anchor + conv{(0,0), (1,−1), (1/t, 0)}`.
pub fn triangle_q(anchor: &RationalPoint, t: u64) -> Result<RationalPolygon> {
    let t = check_at_least("t", t, 1)?;
    if !anchor.is_lattice() {
        return Err(Error::NonLatticeAnchor(anchor.to_string()));
    }
    let corner = |x: Rational, y: i64| pt(&anchor.x + x, &anchor.y + Rational::from_integer(y.into()));
    convex_hull(&[corner(q(0, 1), 0), corner(q(1, 1), -1), corner(q(1, t), 0)])
}

/// The linear part `(x, y) ↦ (−y, x + y)` carrying `Q − anchor` to
/// `conv{(0,0), (1,0), (0,1/t)}`.
pub fn q_standard_map() -> AffineUnimodular {
    AffineUnimodular::from_ints([[0, -1], [1, 1]], [0, 0]).expect("unimodular")
}

/// Checks that `q_standard_map` takes `Q(t)` at the origin to the standard form.
pub fn q_standard_form_holds(t: u64) -> Result<bool> {
    let tq = triangle_q(&RationalPoint::origin(), t)?;
    let image: Vec<RationalPoint> = tq.vertices().iter().map(|p| q_standard_map().apply(p)).collect();
    let standard = convex_hull(&[
        RationalPoint::origin(),
        RationalPoint::from_ints(1, 0),
        pt(q(0, 1), q(1, t as i64)),
    ])?;
    Ok(convex_hull(&image)? == standard)
}

/// `H(s) ∪ Q(u1, t)`, after checking that the two meet in a lattice segment of
/// lattice length 1 and that the union is convex.
pub fn glued(s: u64, t: u64) -> Result<RationalPolygon> {
    check_at_least("s", s, 2)?;
    check_at_least("t", t, 2)?;
    let h = heptagon(s)?;
    let tq = triangle_q(&HeptagonVertices::new(s)?.u1, t)?;
    match h.intersection(&tq) {
        Hull::Segment(a, b) => {
            if !a.is_lattice() || !b.is_lattice() || closed_segment_count(&a, &b) != BigInt::from(2) {
                return Err(Error::GlueFailure(format!(
                    "shared edge [{a}, {b}] is not a primitive lattice segment"
                )));
            }
        }
        other => {
            return Err(Error::GlueFailure(format!("H and Q meet in {other:?}, not a segment")));
        }
    }
    let mut points = h.vertices().to_vec();
    points.extend(tq.vertices().iter().cloned());
    let union = match hull_of(&points) {
        Hull::Polygon(p) => p,
        _ => return Err(Error::GlueFailure("union is degenerate".into())),
    };
    if union.area() != h.area() + tq.area() {
        return Err(Error::GlueFailure("union of H and Q is not convex".into()));
    }
    Ok(union)
}

/// `𝔏_P(n) = 𝔏_H(n) + 𝔏_Q(n) − (n + 1)` for `n ≤ max_n`.
pub fn glue_identity_holds(s: u64, t: u64, max_n: u64) -> Result<bool> {
    let p = glued(s, t)?;
    let h = heptagon(s)?;
    let tq = triangle_q(&HeptagonVertices::new(s)?.u1, t)?;
    Ok((1..=max_n).all(|n| p.lattice_count(n) == h.lattice_count(n) + tq.lattice_count(n) - BigInt::from(n + 1)))
}

pub fn glued_period_sequence(s: u64, t: u64) -> Result<PeriodSequence> {
    Ok(ehrhart(&glued(s, t)?)?.period_sequence())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ehrhart::period_sequence;

    #[test]
    fn heptagon_s2_vertices() {
        let h = heptagon(2).unwrap();
        let mut got = h.vertices().to_vec();
        got.sort();
        let mut expected = vec![
            pt(q(-1, 2), q(3, 1)),
            pt(q(-1, 2), q(-3, 1)),
            RationalPoint::from_ints(0, 3),
            RationalPoint::from_ints(0, -3),
            RationalPoint::from_ints(1, 2),
            RationalPoint::from_ints(1, -2),
            pt(q(3, 2), q(0, 1)),
        ];
        expected.sort();
        assert_eq!(got, expected);
        assert_eq!(HeptagonVertices::new(3).unwrap().w, pt(q(7, 3), q(0, 1)));
        assert_eq!(heptagon(3).unwrap().denominator(), BigInt::from(3));
        assert!(heptagon(1).is_err());
    }

    #[test]
    fn heptagon_periods() {
        assert_eq!(period_sequence(&heptagon(2).unwrap()).unwrap().as_tuple(), (1, 2, 1));
        assert_eq!(period_sequence(&heptagon(3).unwrap()).unwrap().as_tuple(), (1, 3, 1));
    }

    #[test]
    fn decomposition_small_s() {
        for s in [2, 3, 5] {
            let r = heptagon_decomposition(s).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn triangle_q_examples() {
        let tq = triangle_q(&RationalPoint::origin(), 2).unwrap();
        assert_eq!(
            tq,
            convex_hull(&[RationalPoint::origin(), RationalPoint::from_ints(1, -1), pt(q(1, 2), q(0, 1))]).unwrap()
        );
        assert_eq!(period_sequence(&tq).unwrap().as_tuple(), (1, 1, 2));
        let t1 = triangle_q(&RationalPoint::from_ints(3, -2), 1).unwrap();
        assert!(t1.is_integral());
        assert_eq!(period_sequence(&t1).unwrap().as_tuple(), (1, 1, 1));
        assert!(q_standard_form_holds(3).unwrap());
        assert!(triangle_q(&pt(q(1, 2), q(0, 1)), 2).is_err());
    }

    #[test]
    fn glued_examples() {
        assert_eq!(glued_period_sequence(2, 2).unwrap().as_tuple(), (1, 2, 2));
        assert_eq!(glued_period_sequence(2, 3).unwrap().as_tuple(), (1, 2, 3));
        assert!(glue_identity_holds(2, 3, 18).unwrap());
        assert!(glued(1, 2).is_err());
    }

    #[test]
    fn rectangle_constant_term_is_segment_constant() {
        let e = ehrhart(&segment_rectangle(3, 2).unwrap()).unwrap();
        for n in 1..=18 {
            assert_eq!(e.coefficient(0, n), &segment_constant(3, n));
        }
        let l = ehrhart(&short_segment(4).unwrap()).unwrap();
        for n in 1..=16 {
            assert_eq!(l.coefficient(0, n), &segment_constant(4, n));
        }
    }
}
