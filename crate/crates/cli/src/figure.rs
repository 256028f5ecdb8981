//! The heptagon decomposition as a renderable JSON document.

use ehrhart_core::constructions::{h_segment, heptagon, heptagon_decomposition, heptagon_pieces, HeptagonVertices};
use ehrhart_core::geometry::{Line, RationalPoint};
use ehrhart_core::json::{point_json, LineJson, RegionJson, SegmentJson};
use ehrhart_core::regions::HalfOpenSegment;
use serde::{Deserialize, Serialize};

use crate::error::CliResult;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HeptagonFigure {
    pub s: u64,
    pub polygon: RegionJson,
    /// `R, T1, T2, T3`.
    pub pieces: Vec<RegionJson>,
    /// Lines through `u1, w` and `u2, w`, fixed by the two skew maps.
    pub fixed_lines: Vec<LineJson>,
    /// `H'`, the image of `H` under the two maps.
    pub image: RegionJson,
    /// Part of the image covered twice.
    pub doubled: Vec<SegmentJson>,
    /// `h = (1/s, 1]`.
    pub h: SegmentJson,
}

fn segment_json(s: &HalfOpenSegment) -> SegmentJson {
    SegmentJson {
        open: point_json(&s.open_end),
        closed: point_json(&s.closed_end),
    }
}

pub fn heptagon_figure(s: u64) -> CliResult<HeptagonFigure> {
    let hv = HeptagonVertices::new(s)?;
    let report = heptagon_decomposition(s)?;
    let image = report.h_prime.as_ref().ok_or_else(|| {
        ehrhart_core::Error::VerificationFailure(format!("the image of H({s}) is not a convex polygon"))
    })?;
    let through = |a: &RationalPoint| Line::through(a, &hv.w).map(|l| LineJson::from(&l));
    Ok(HeptagonFigure {
        s,
        polygon: RegionJson::from_polygon(&heptagon(s)?),
        pieces: heptagon_pieces(s)?.iter().map(RegionJson::from_polygon).collect(),
        fixed_lines: vec![through(&hv.u1)?, through(&hv.u2)?],
        image: RegionJson::from_polygon(image),
        doubled: report
            .doubled
            .iter()
            .filter_map(|r| r.as_half_open())
            .map(|s| segment_json(&s))
            .collect(),
        h: segment_json(&h_segment(s)?),
    })
}
