//! JSON interchange formats. Coordinates and coefficients are strings so that
//! arbitrary-precision values survive unchanged.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::constructions::{ConstructionTrace, SearchReport, TraceStep};
use crate::ehrhart::EhrhartQuasiPolynomial;
use crate::error::{Error, Result};
use crate::geometry::{convex_hull, Line, RationalPoint, RationalPolygon};
use crate::rational::{format_rational, parse_pair, parse_rational, Rational};
use crate::regions::{HalfOpenSegment, SemiOpenRegion};

/// `[["num","den"], ["num","den"]]`.
pub type PointJson = [[String; 2]; 2];

fn rational_json(q: &Rational) -> [String; 2] {
    [q.numer().to_string(), q.denom().to_string()]
}

pub fn point_json(p: &RationalPoint) -> PointJson {
    [rational_json(&p.x), rational_json(&p.y)]
}

pub fn parse_point(p: &PointJson, field: &str) -> Result<RationalPoint> {
    let coord = |k: usize| {
        parse_pair(&p[k][0], &p[k][1]).map_err(|e| Error::Parse(format!("{field}[{k}]: {e}")))
    };
    Ok(RationalPoint::new(coord(0)?, coord(1)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentJson {
    pub open: PointJson,
    pub closed: PointJson,
}

/// A polygon, optionally with removed half-open boundary segments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionJson {
    pub vertices: Vec<PointJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed: Vec<SegmentJson>,
}

impl RegionJson {
    pub fn from_polygon(p: &RationalPolygon) -> Self {
        RegionJson {
            vertices: p.vertices().iter().map(point_json).collect(),
            removed: vec![],
        }
    }

    pub fn from_region(r: &SemiOpenRegion) -> Self {
        RegionJson {
            vertices: r.polygon().vertices().iter().map(point_json).collect(),
            removed: r
                .removed()
                .iter()
                .map(|s| SegmentJson {
                    open: point_json(&s.open_end),
                    closed: point_json(&s.closed_end),
                })
                .collect(),
        }
    }

    /// The hull of the listed vertices.
    pub fn polygon(&self) -> Result<RationalPolygon> {
        let points = self
            .vertices
            .iter()
            .enumerate()
            .map(|(k, p)| parse_point(p, &format!("vertices[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        convex_hull(&points).map_err(|e| Error::Parse(format!("vertices: {e}")))
    }

    pub fn region(&self) -> Result<SemiOpenRegion> {
        let removed = self
            .removed
            .iter()
            .enumerate()
            .map(|(k, s)| {
                let open = parse_point(&s.open, &format!("removed[{k}].open"))?;
                let closed = parse_point(&s.closed, &format!("removed[{k}].closed"))?;
                HalfOpenSegment::new(open, closed).map_err(|e| Error::Parse(format!("removed[{k}]: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        SemiOpenRegion::new(self.polygon()?, removed).map_err(|e| Error::Parse(format!("removed: {e}")))
    }
}

pub fn polygon_from_str(s: &str) -> Result<RationalPolygon> {
    let r = region_from_str(s)?;
    if !r.is_closed() {
        return Err(Error::Parse("removed: a polygon must not remove segments".into()));
    }
    Ok(r.polygon().clone())
}

pub fn region_from_str(s: &str) -> Result<SemiOpenRegion> {
    let json: RegionJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
    json.region()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiPolynomialJson {
    pub modulus: u64,
    pub c2: Vec<String>,
    pub c1: Vec<String>,
    pub c0: Vec<String>,
    pub period_sequence: [u64; 3],
    pub quasi_period: u64,
}

impl QuasiPolynomialJson {
    pub fn new(q: &EhrhartQuasiPolynomial) -> Self {
        let table = |i| q.table(i).iter().map(format_rational).collect();
        let ps = q.period_sequence();
        QuasiPolynomialJson {
            modulus: q.modulus(),
            c2: table(2),
            c1: table(1),
            c0: table(0),
            period_sequence: [ps.s2, ps.s1, ps.s0],
            quasi_period: ps.quasi_period,
        }
    }

    pub fn quasi_polynomial(&self) -> Result<EhrhartQuasiPolynomial> {
        let parse = |name: &str, t: &[String]| {
            t.iter()
                .enumerate()
                .map(|(k, s)| parse_rational(s).map_err(|e| Error::Parse(format!("{name}[{k}]: {e}"))))
                .collect::<Result<Vec<_>>>()
        };
        let q = EhrhartQuasiPolynomial::new(parse("c2", &self.c2)?, parse("c1", &self.c1)?, parse("c0", &self.c0)?)?;
        if q.modulus() != self.modulus {
            return Err(Error::Parse(format!("modulus: {} does not match table length {}", self.modulus, q.modulus())));
        }
        Ok(q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineJson {
    pub a: String,
    pub b: String,
    pub c: String,
}

impl From<&Line> for LineJson {
    fn from(l: &Line) -> Self {
        LineJson {
            a: l.a.to_string(),
            b: l.b.to_string(),
            c: format_rational(&l.c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStepJson {
    pub label: String,
    pub milestone: bool,
    pub region: RegionJson,
    pub fixed_lines: Vec<LineJson>,
    pub ehrhart: QuasiPolynomialJson,
}

impl TraceStepJson {
    pub fn new(step: &TraceStep) -> Result<Self> {
        Ok(TraceStepJson {
            label: step.label.clone(),
            milestone: step.milestone,
            region: RegionJson::from_region(&step.region),
            fixed_lines: step.fixed_lines.iter().map(LineJson::from).collect(),
            ehrhart: QuasiPolynomialJson::new(&step.ehrhart()?),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub steps: Vec<TraceStepJson>,
    #[serde(rename = "final")]
    pub final_polygon: RegionJson,
}

impl TraceJson {
    pub fn new(trace: &ConstructionTrace) -> Result<Self> {
        Ok(TraceJson {
            steps: trace.steps.iter().map(TraceStepJson::new).collect::<Result<_>>()?,
            final_polygon: RegionJson::from_polygon(&trace.final_polygon),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReportJson {
    pub seed: u64,
    pub trials: u64,
    pub max_denominator: u64,
    pub coord_bound: u64,
    pub polygons: u64,
    pub pips_found: u64,
    pub counterexamples: Vec<RegionJson>,
    /// Against the weaker bound `b ≤ 2I + 7`.
    pub weak_counterexamples: Vec<RegionJson>,
    pub impossible: Vec<RegionJson>,
    /// Keys `"(I,b)"`.
    pub census: BTreeMap<String, u64>,
}

impl SearchReportJson {
    pub fn new(r: &SearchReport) -> Self {
        let polys = |v: &[RationalPolygon]| v.iter().map(RegionJson::from_polygon).collect();
        SearchReportJson {
            seed: r.seed,
            trials: r.trials,
            max_denominator: r.max_denominator,
            coord_bound: r.coord_bound,
            polygons: r.polygons,
            pips_found: r.pips_found,
            counterexamples: polys(&r.counterexamples),
            weak_counterexamples: polys(&r.weak_counterexamples),
            impossible: polys(&r.impossible),
            census: r
                .census
                .iter()
                .map(|(&(i, b), &c)| (format!("({i},{b})"), c))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{heptagon, pip_b1};
    use crate::ehrhart::ehrhart;

    #[test]
    fn polygon_round_trip() {
        let h = heptagon(3).unwrap();
        let s = serde_json::to_string(&RegionJson::from_polygon(&h)).unwrap();
        assert_eq!(polygon_from_str(&s).unwrap(), h);
        assert!(s.contains(r#"["-1","3"]"#));
    }

    #[test]
    fn region_round_trip() {
        let t = crate::constructions::t1(2).unwrap();
        let s = serde_json::to_string(&RegionJson::from_region(&t)).unwrap();
        assert_eq!(region_from_str(&s).unwrap(), t);
        assert!(polygon_from_str(&s).is_err());
    }

    #[test]
    fn parse_errors_name_the_field() {
        let bad = r#"{"vertices": [[["0","1"],["0","1"]], [["1","0"],["0","1"]], [["0","1"],["1","1"]]]}"#;
        let e = polygon_from_str(bad).unwrap_err().to_string();
        assert!(e.contains("vertices[1][0]"), "{e}");
        assert!(polygon_from_str("{").is_err());
        let collinear = r#"{"vertices": [[["0","1"],["0","1"]], [["1","1"],["0","1"]], [["2","1"],["0","1"]]]}"#;
        assert!(polygon_from_str(collinear).is_err());
    }

    #[test]
    fn quasi_polynomial_round_trip() {
        let q = ehrhart(&heptagon(2).unwrap()).unwrap();
        let j = QuasiPolynomialJson::new(&q);
        assert_eq!(j.period_sequence, [1, 2, 1]);
        let back: QuasiPolynomialJson = serde_json::from_str(&serde_json::to_string(&j).unwrap()).unwrap();
        assert_eq!(back.quasi_polynomial().unwrap(), q);
    }

    #[test]
    fn trace_serializes() {
        let t = TraceJson::new(&pip_b1(1).unwrap()).unwrap();
        assert_eq!(t.steps.first().unwrap().label, "T1");
        assert_eq!(t.steps.last().unwrap().label, "P");
        assert_eq!(t.steps[0].region.removed.len(), 1);
    }
}
