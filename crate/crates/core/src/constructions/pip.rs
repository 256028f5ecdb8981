//! Pseudo-integral polygons with one or two boundary lattice points.

use num_bigint::BigInt;

use super::{pt, q};
use crate::ehrhart::{ehrhart, EhrhartQuasiPolynomial};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull, Line, RationalPoint, RationalPolygon, RationalVector};
use crate::rational::{lcm, Rational};
use crate::regions::{HalfOpenSegment, SemiOpenRegion};
use crate::unimodular::{apply_piecewise, apply_simultaneous, skew_minus, skew_plus, RegionImage};

fn check_interior(i: u64) -> Result<i64> {
    if i == 0 || i > 1 << 20 {
        return Err(Error::InvalidParameter(format!("I = {i} must be in 1..=2^20")));
    }
    Ok(i as i64)
}

fn ints(x: i64, y: i64) -> RationalPoint {
    RationalPoint::from_ints(x, y)
}

/// `conv{(0,0), (I+1,0), (1, 1 − 1/(I+1))}`.
pub fn pip_b2_half(i: u64) -> Result<RationalPolygon> {
    let i = check_interior(i)?;
    convex_hull(&[ints(0, 0), ints(i + 1, 0), pt(q(1, 1), q(i, i + 1))])
}

/// The kite: the half triangle together with its mirror image in the x-axis.
pub fn pip_b2(i: u64) -> Result<RationalPolygon> {
    let i = check_interior(i)?;
    convex_hull(&[
        ints(0, 0),
        ints(i + 1, 0),
        pt(q(1, 1), q(i, i + 1)),
        pt(q(1, 1), q(-i, i + 1)),
    ])
}

/// `conv{(0,0), (1,2I−1), (−1,0)}` minus `((0,0), (1,2I−1)]`.
pub fn t1(i: u64) -> Result<SemiOpenRegion> {
    let i = check_interior(i)?;
    let apex = ints(1, 2 * i - 1);
    SemiOpenRegion::from_points(
        &[ints(0, 0), apex.clone(), ints(-1, 0)],
        vec![HalfOpenSegment::new(ints(0, 0), apex)?],
    )
}

/// `conv{(1,0), (0, I−1/2), (−1,0)}` minus `((0,0), (1,0)]`.
pub fn t2_display(i: u64) -> Result<SemiOpenRegion> {
    let i = check_interior(i)?;
    SemiOpenRegion::from_points(
        &[ints(1, 0), pt(q(0, 1), q(2 * i - 1, 2)), ints(-1, 0)],
        vec![HalfOpenSegment::new(ints(0, 0), ints(1, 0))?],
    )
}

/// The quadrilateral as printed: side vertices at height `2I(2I−1)/(2I+1)`.
pub fn t3_display_vertices(i: u64) -> Result<Vec<RationalPoint>> {
    let i = check_interior(i)?;
    let p = q(2 * i - 1, 2 * i + 1);
    let h = &p * Rational::from_integer(BigInt::from(2 * i));
    Ok(vec![
        ints(0, -1),
        pt(p.clone(), h.clone()),
        pt(q(0, 1), q(2 * i - 1, 2)),
        pt(-p, h),
    ])
}

/// The image of `T2` under the fold: `conv{(0,−1), (p,p), (0,I−1/2), (−p,p)}`
/// with `p = (2I−1)/(2I+1)`, closed.
pub fn t3_expected(i: u64) -> Result<SemiOpenRegion> {
    let i = check_interior(i)?;
    let p = q(2 * i - 1, 2 * i + 1);
    SemiOpenRegion::from_points(
        &[
            ints(0, -1),
            pt(p.clone(), p.clone()),
            pt(q(0, 1), q(2 * i - 1, 2)),
            pt(-p.clone(), p),
        ],
        vec![],
    )
}

/// `conv{(0,−1), (p,p), (−p, 2I·p)}` with `p = (2I−1)/(2I+1)`.
pub fn p_display(i: u64) -> Result<RationalPolygon> {
    let i = check_interior(i)?;
    let p = q(2 * i - 1, 2 * i + 1);
    let h = &p * Rational::from_integer(BigInt::from(2 * i));
    convex_hull(&[ints(0, -1), pt(p.clone(), p.clone()), pt(-p, h)])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub label: String,
    /// One of the named bodies of the construction rather than an intermediate.
    pub milestone: bool,
    pub region: SemiOpenRegion,
    /// Lines fixed by the maps that produced this step.
    pub fixed_lines: Vec<Line>,
}

impl TraceStep {
    pub fn ehrhart(&self) -> Result<EhrhartQuasiPolynomial> {
        ehrhart(&self.region)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionTrace {
    pub steps: Vec<TraceStep>,
    pub final_polygon: RationalPolygon,
}

impl ConstructionTrace {
    pub fn step(&self, label: &str) -> Option<&TraceStep> {
        self.steps.iter().find(|s| s.label == label)
    }

    pub fn milestones(&self) -> impl Iterator<Item = &TraceStep> {
        self.steps.iter().filter(|s| s.milestone)
    }

    /// Lcm of the denominators of all steps.
    pub fn denominator(&self) -> BigInt {
        self.steps
            .iter()
            .fold(BigInt::from(1), |acc, s| lcm(&acc, &s.region.denominator()))
    }

    /// First step and dilation at which the count differs from the first step.
    pub fn count_mismatch(&self, max_n: u64) -> Option<(String, u64)> {
        let first = &self.steps.first()?.region;
        for n in 1..=max_n {
            let expected = first.lattice_count(n);
            for s in &self.steps[1..] {
                if s.region.lattice_count(n) != expected {
                    return Some((s.label.clone(), n));
                }
            }
        }
        None
    }
}

fn resolve(image: RegionImage, step: &str) -> Result<SemiOpenRegion> {
    match image {
        RegionImage::Region(r) => Ok(r),
        RegionImage::Union(f) => Err(Error::ConstructionMismatch {
            step: step.to_string(),
            expected: "a convex semi-open region".into(),
            found: format!("a union with coverage {:?}", f.coverage().uncovered),
        }),
    }
}

fn expect(found: &SemiOpenRegion, expected: &SemiOpenRegion, step: &str) -> Result<()> {
    if found == expected {
        Ok(())
    } else {
        Err(Error::ConstructionMismatch {
            step: step.to_string(),
            expected: expected.to_string(),
            found: found.to_string(),
        })
    }
}

fn dir(x: i64, y: i64) -> RationalVector {
    RationalVector::from_ints(x, y)
}

/// Builds `T1 → T2 → T3 → P`, checking each named body against its closed form.
///
/// `T2 = (U^+_{(0,−1)})^{2I−1}(T1)`. `T3` folds the two lower corners of `T2`
/// with `U^+_{(−1,−1)}` on `x ≥ y` and `U^−_{(1,−1)}` on `x + y ≤ 0` at once.
/// `P = (U^+_{(0,1)})^{2I−1}(T3)`, which shears the part with `x ≤ 0`.
pub fn pip_b1(i: u64) -> Result<ConstructionTrace> {
    let k = 2 * check_interior(i)? - 1;
    let mut current = t1(i)?;
    let mut steps = vec![TraceStep {
        label: "T1".into(),
        milestone: true,
        region: current.clone(),
        fixed_lines: vec![],
    }];

    let shear = skew_plus(&dir(0, -1))?;
    for j in 1..=k {
        let label = if j == k { "T2".to_string() } else { format!("T1 shear {j}") };
        current = resolve(apply_piecewise(&shear, &current), &label)?;
        steps.push(TraceStep {
            label,
            milestone: j == k,
            region: current.clone(),
            fixed_lines: vec![shear.line()],
        });
    }
    expect(&current, &t2_display(i)?, "T2")?;

    let fold = [skew_plus(&dir(-1, -1))?, skew_minus(&dir(1, -1))?];
    current = resolve(apply_simultaneous(&fold, &current)?, "T3")?;
    expect(&current, &t3_expected(i)?, "T3")?;
    steps.push(TraceStep {
        label: "T3".into(),
        milestone: true,
        region: current.clone(),
        fixed_lines: fold.iter().map(|m| m.line()).collect(),
    });

    let lift = skew_plus(&dir(0, 1))?;
    for j in 1..=k {
        let label = if j == k { "P".to_string() } else { format!("T3 shear {j}") };
        current = resolve(apply_piecewise(&lift, &current), &label)?;
        steps.push(TraceStep {
            label,
            milestone: j == k,
            region: current.clone(),
            fixed_lines: vec![lift.line()],
        });
    }
    expect(&current, &SemiOpenRegion::closed(p_display(i)?), "P")?;

    Ok(ConstructionTrace {
        steps,
        final_polygon: current.polygon().clone(),
    })
}

/// Values `(𝔏_P(n), 2𝔏_T(n) − I − 2, 2𝔏_T(n) − (I+1)n − 1)` for the kite `P` and
/// its upper half `T`. The x-axis segment of `nT` carries `(I+1)n + 1` lattice
/// points, all counted twice.
pub fn kite_doubling(i: u64, n: u64) -> Result<(BigInt, BigInt, BigInt)> {
    let kite = pip_b2(i)?;
    let half = pip_b2_half(i)?;
    let twice = BigInt::from(2) * half.lattice_count(n);
    let (ib, nb) = (BigInt::from(i), BigInt::from(n));
    Ok((
        kite.lattice_count(n),
        &twice - &ib - 2,
        &twice - (&ib + 1) * &nb - 1,
    ))
}
