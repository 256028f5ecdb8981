//! Scott's inequality: admissibility, the integral-hull criterion and a
//! seeded search for pseudo-integral counterexamples.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use rayon::prelude::*;

use super::{interior_and_boundary, pip_b1, pip_b2};
use crate::ehrhart::is_pip;
use crate::error::Result;
use crate::geometry::{Hull, RationalPolygon};
use crate::random::{random_polygon, Lcg};

/// Whether some integral polygon has `I` interior and `b` boundary points.
pub fn scott_admissible(i: u64, b: u64) -> bool {
    b >= 3 && (i == 0 || (i, b) == (1, 9) || b <= 2 * i + 6)
}

/// Has `I ≥ 1` and violates `b ≤ 2I + 6` outside the exceptional pair `(1, 9)`.
pub fn violates_scott(i: u64, b: u64) -> bool {
    i >= 1 && b > 2 * i + 6 && (i, b) != (1, 9)
}

/// Has `I ≥ 1` and violates the weaker `b ≤ 2I + 7`.
pub fn violates_weak_scott(i: u64, b: u64) -> bool {
    i >= 1 && b > 2 * i + 7
}

/// No PIP has these counts.
pub fn impossible_pip_counts(i: u64, b: u64) -> bool {
    b == 0 || (i, b) == (0, 1) || (i, b) == (0, 2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropositionCheck {
    /// The integral hull is two-dimensional with an interior lattice point.
    pub applicable: bool,
    /// When applicable: `b ≤ 2I + 6` or `(I, b) = (1, 9)`.
    pub holds: bool,
}

pub fn integral_hull_proposition_check(p: &RationalPolygon) -> PropositionCheck {
    let applicable = match p.integral_hull() {
        Hull::Polygon(h) => h.interior_count(1) >= 1.into(),
        _ => false,
    };
    let (i, b) = interior_and_boundary(p);
    PropositionCheck {
        applicable,
        holds: !applicable || !violates_scott(i, b),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SearchReport {
    pub seed: u64,
    pub trials: u64,
    pub max_denominator: u64,
    pub coord_bound: u64,
    /// Trials that produced a two-dimensional polygon.
    pub polygons: u64,
    pub pips_found: u64,
    /// Number of PIPs per `(I, b)`.
    pub census: BTreeMap<(u64, u64), u64>,
    /// PIPs with `I ≥ 1` violating `b ≤ 2I + 6` outside `(1, 9)`.
    pub counterexamples: Vec<RationalPolygon>,
    /// PIPs with `I ≥ 1` violating `b ≤ 2I + 7`.
    pub weak_counterexamples: Vec<RationalPolygon>,
    /// PIPs with `b = 0` or `(I, b) ∈ {(0,1), (0,2)}`.
    pub impossible: Vec<RationalPolygon>,
    /// Every PIP found, in trial order.
    pub pips: Vec<RationalPolygon>,
}

impl SearchReport {
    fn record(&mut self, p: RationalPolygon) {
        let (i, b) = interior_and_boundary(&p);
        self.pips_found += 1;
        *self.census.entry((i, b)).or_default() += 1;
        if violates_scott(i, b) {
            self.counterexamples.push(p.clone());
        }
        if violates_weak_scott(i, b) {
            self.weak_counterexamples.push(p.clone());
        }
        if impossible_pip_counts(i, b) {
            self.impossible.push(p.clone());
        }
        self.pips.push(p);
    }
}

/// Draws `trials` random polygons (one independent stream per trial) and
/// collects the PIPs among them.
pub fn scott_pip_search(seed: u64, trials: u64, max_denominator: u64, coord_bound: u64) -> Result<SearchReport> {
    if max_denominator == 0 || coord_bound == 0 {
        return Err(crate::Error::InvalidParameter("bounds must be positive".into()));
    }
    let outcomes: Vec<Option<(RationalPolygon, bool)>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let p = random_polygon(&mut Lcg::for_trial(seed, trial), max_denominator, coord_bound)?;
            let pip = is_pip(&p);
            Some(pip.map(|pip| (p, pip)))
        })
        .map(|o| o.transpose())
        .collect::<Result<_>>()?;
    let mut report = SearchReport {
        seed,
        trials,
        max_denominator,
        coord_bound,
        ..Default::default()
    };
    for (p, pip) in outcomes.into_iter().flatten() {
        report.polygons += 1;
        if pip {
            report.record(p);
        }
    }
    Ok(report)
}

/// Runs the report over the constructed families with `I ≤ max_i`.
pub fn family_search(max_i: u64) -> Result<SearchReport> {
    let mut report = SearchReport::default();
    for i in 1..=max_i {
        for p in [pip_b2(i)?, pip_b1(i)?.final_polygon] {
            report.polygons += 1;
            if is_pip(&p)? {
                report.record(p);
            }
        }
    }
    Ok(report)
}

/// `(I, b)` of every lattice polygon whose vertices are among at most
/// `max_vertices` points of `{0..=bound}²`.
pub fn realized_integral_pairs(bound: i64, max_vertices: usize) -> BTreeSet<(u64, u64)> {
    let grid: Vec<(i64, i64)> = (0..=bound).flat_map(|x| (0..=bound).map(move |y| (x, y))).collect();
    let mut out = BTreeSet::new();
    let mut chosen = Vec::with_capacity(max_vertices);
    subsets(&grid, 0, max_vertices, &mut chosen, &mut out);
    out
}

fn subsets(
    grid: &[(i64, i64)],
    start: usize,
    left: usize,
    chosen: &mut Vec<(i64, i64)>,
    out: &mut BTreeSet<(u64, u64)>,
) {
    if chosen.len() >= 3 {
        if let Some(pair) = integer_counts(chosen) {
            out.insert(pair);
        }
    }
    if left == 0 {
        return;
    }
    for k in start..grid.len() {
        chosen.push(grid[k]);
        subsets(grid, k + 1, left - 1, chosen, out);
        chosen.pop();
    }
}

/// Pick data of the integer hull of `points`, if two-dimensional.
fn integer_counts(points: &[(i64, i64)]) -> Option<(u64, u64)> {
    let mut pts = points.to_vec();
    pts.sort();
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pass in 0..2 {
        let base = hull.len();
        let iter: Box<dyn Iterator<Item = &(i64, i64)>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= base + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.len() < 3 {
        return None;
    }
    let mut area2 = 0i64;
    let mut b = 0i64;
    for k in 0..hull.len() {
        let (p, q) = (hull[k], hull[(k + 1) % hull.len()]);
        area2 += p.0 * q.1 - q.0 * p.1;
        b += (q.0 - p.0).gcd(&(q.1 - p.1));
    }
    let i = (area2 - b + 2) / 2;
    Some((i as u64, b as u64))
}
