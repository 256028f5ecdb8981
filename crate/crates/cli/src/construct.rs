use clap::{Args, ValueEnum};
use ehrhart_core::constructions::{glued, heptagon, pip_b1, pip_b2, triangle_q};
use ehrhart_core::geometry::RationalPoint;
use ehrhart_core::json::{RegionJson, TraceJson};
use ehrhart_core::rational::parse_rational;

use crate::emit;
use crate::error::{CliError, CliResult};
use crate::figure::heptagon_figure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Pseudo-integral triangle with one boundary point (`--I`).
    PipB1,
    /// Pseudo-integral kite with two boundary points (`--I`).
    PipB2,
    /// Heptagon with period sequence (1, s, 1) (`--s`).
    Heptagon,
    /// Triangle with period sequence (1, 1, t) (`--t`, optional `--anchor`).
    TriangleQ,
    /// Heptagon and triangle glued, period sequence (1, s, t) (`--s`, `--t`).
    Glued,
}

#[derive(Debug, Clone, Args)]
pub struct ConstructArgs {
    /// Number of interior lattice points.
    #[arg(long = "I", visible_alias = "i", value_name = "I")]
    pub interior: Option<u64>,
    #[arg(long)]
    pub s: Option<u64>,
    #[arg(long)]
    pub t: Option<u64>,
    /// Lattice point `x,y` for the triangle's corner; defaults to the origin.
    #[arg(long, allow_hyphen_values = true)]
    pub anchor: Option<String>,
    /// For pip-b1: emit every step of the construction.
    #[arg(long)]
    pub trace: bool,
    /// For heptagon: emit the pieces, fixed lines and image as well.
    #[arg(long)]
    pub decomposition: bool,
}

fn required(v: Option<u64>, flag: &str, family: &str) -> CliResult<u64> {
    v.ok_or_else(|| CliError::Usage(format!("{family} requires {flag}")))
}

fn parse_anchor(s: &str) -> CliResult<RationalPoint> {
    let bad = || CliError::Usage(format!("--anchor expects x,y, got {s:?}"));
    let (x, y) = s.split_once(',').ok_or_else(bad)?;
    let coord = |c: &str| parse_rational(c.trim()).map_err(|e| CliError::Usage(format!("--anchor: {e}")));
    Ok(RationalPoint::new(coord(x)?, coord(y)?))
}

fn reject(cond: bool, flag: &str, family: &str) -> CliResult<()> {
    if cond {
        return Err(CliError::Usage(format!("{flag} does not apply to {family}")));
    }
    Ok(())
}

pub fn run(family: Family, a: &ConstructArgs) -> CliResult<()> {
    let name = family.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    reject(a.trace && family != Family::PipB1, "--trace", &name)?;
    reject(a.decomposition && family != Family::Heptagon, "--decomposition", &name)?;
    reject(a.anchor.is_some() && family != Family::TriangleQ, "--anchor", &name)?;
    let uses_i = matches!(family, Family::PipB1 | Family::PipB2);
    reject(a.interior.is_some() && !uses_i, "--I", &name)?;
    reject(a.s.is_some() && !matches!(family, Family::Heptagon | Family::Glued), "--s", &name)?;
    reject(a.t.is_some() && !matches!(family, Family::TriangleQ | Family::Glued), "--t", &name)?;

    let usage = |e: ehrhart_core::Error| match e {
        ehrhart_core::Error::InvalidParameter(_) | ehrhart_core::Error::NonLatticeAnchor(_) => {
            CliError::Usage(e.to_string())
        }
        e => CliError::Core(e),
    };
    match family {
        Family::PipB1 => {
            let trace = pip_b1(required(a.interior, "--I", &name)?).map_err(usage)?;
            if a.trace {
                emit(&TraceJson::new(&trace)?)
            } else {
                emit(&RegionJson::from_polygon(&trace.final_polygon))
            }
        }
        Family::PipB2 => emit(&RegionJson::from_polygon(
            &pip_b2(required(a.interior, "--I", &name)?).map_err(usage)?,
        )),
        Family::Heptagon => {
            let s = required(a.s, "--s", &name)?;
            if a.decomposition {
                heptagon(s).map_err(usage)?;
                emit(&heptagon_figure(s)?)
            } else {
                emit(&RegionJson::from_polygon(&heptagon(s).map_err(usage)?))
            }
        }
        Family::TriangleQ => {
            let t = required(a.t, "--t", &name)?;
            let anchor = match &a.anchor {
                Some(s) => parse_anchor(s)?,
                None => RationalPoint::origin(),
            };
            emit(&RegionJson::from_polygon(&triangle_q(&anchor, t).map_err(usage)?))
        }
        Family::Glued => {
            let (s, t) = (required(a.s, "--s", &name)?, required(a.t, "--t", &name)?);
            emit(&RegionJson::from_polygon(&glued(s, t).map_err(usage)?))
        }
    }
}
