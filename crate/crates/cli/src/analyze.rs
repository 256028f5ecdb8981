use std::path::Path;

use ehrhart_core::constructions::{interior_and_boundary, scott_admissible, violates_scott, violates_weak_scott};
use ehrhart_core::ehrhart::{ehrhart, mcmullen_indices};
use ehrhart_core::json::{polygon_from_str, QuasiPolynomialJson, RegionJson};
use ehrhart_core::rational::{format_rational, Rational};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::{emit, read_input};

#[derive(Debug, Serialize)]
struct Analysis {
    polygon: RegionJson,
    area: String,
    denominator: String,
    ehrhart: QuasiPolynomialJson,
    is_pip: bool,
    /// `[p2, p1, p0]`.
    mcmullen_indices: [String; 3],
    pick: Pick,
    scott: Scott,
}

#[derive(Debug, Serialize)]
struct Pick {
    interior: u64,
    boundary: u64,
    /// `area = I + b/2 - 1`.
    holds: bool,
}

#[derive(Debug, Serialize)]
struct Scott {
    /// Some integral polygon has the same `(I, b)`.
    admissible: bool,
    violates_2i_plus_6: bool,
    violates_2i_plus_7: bool,
}

pub fn run(path: &Path) -> CliResult<()> {
    let text = read_input(path)?;
    let p = polygon_from_str(&text).map_err(|e| CliError::Input {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let q = ehrhart(&p)?;
    let (i, b) = interior_and_boundary(&p);
    let as_q = |v: u64| Rational::from_integer(v.into());
    let (p2, p1, p0) = mcmullen_indices(&p);
    let pip = q.quasi_period() == 1;
    emit(&Analysis {
        polygon: RegionJson::from_polygon(&p),
        area: format_rational(&p.area()),
        denominator: p.denominator().to_string(),
        ehrhart: QuasiPolynomialJson::new(&q),
        is_pip: pip,
        mcmullen_indices: [p2.to_string(), p1.to_string(), p0.to_string()],
        pick: Pick {
            interior: i,
            boundary: b,
            holds: p.area() == as_q(i) + as_q(b) / as_q(2) - as_q(1),
        },
        scott: Scott {
            admissible: scott_admissible(i, b),
            violates_2i_plus_6: violates_scott(i, b),
            violates_2i_plus_7: violates_weak_scott(i, b),
        },
    })
}
