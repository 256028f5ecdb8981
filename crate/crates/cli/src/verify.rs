//! Invariant suites run from the command line.

use std::collections::BTreeMap;

use clap::{Args, ValueEnum};
use ehrhart_core::constructions::{
    glue_identity_holds, glued, heptagon, heptagon_decomposition, interior_and_boundary, pip_b1, pip_b2,
    q_standard_form_holds, triangle_q,
};
use ehrhart_core::ehrhart::{ehrhart, mcmullen_indices};
use ehrhart_core::geometry::{lattice_count_naive, RationalPoint, RationalPolygon};
use ehrhart_core::json::RegionJson;
use ehrhart_core::random::{random_corpus, random_polygon, Lcg};
use ehrhart_core::rational::Rational;
use ehrhart_core::regions::SemiOpenRegion;
use ehrhart_core::unimodular::{affine_skew, apply_piecewise, SkewSign};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::emit;
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Both pseudo-integral families for `I ≤ --max-I`.
    Pip,
    /// Heptagon decomposition and periods for `s ≤ --max-s`.
    Heptagon,
    /// Triangle and glued polygon periods for `s ≤ --max-s`, `t ≤ --max-t`.
    Glue,
    /// Period divisibility and PIP laws on `--trials` random polygons.
    Mcmullen,
    /// Count preservation of skew maps on the b = 1 chain and random polygons.
    Transforms,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long = "max-I", visible_alias = "max-i", value_name = "I")]
    pub max_interior: Option<u64>,
    #[arg(long)]
    pub max_s: Option<u64>,
    #[arg(long)]
    pub max_t: Option<u64>,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
struct CheckResult {
    name: String,
    passed: bool,
}

#[derive(Debug, Clone, Serialize)]
struct Counterexample {
    check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    polygon: Option<RegionJson>,
}

#[derive(Debug, Serialize)]
struct Report {
    suite: String,
    parameters: BTreeMap<String, u64>,
    passed: bool,
    checks: usize,
    failures: usize,
    results: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    first_counterexample: Option<Counterexample>,
}

/// Checks for one subject (a parameter value or a polygon).
#[derive(Debug, Default)]
struct Group {
    results: Vec<CheckResult>,
    counterexample: Option<Counterexample>,
}

impl Group {
    fn subject(polygon: Option<&RationalPolygon>) -> Self {
        Group {
            results: vec![],
            counterexample: polygon.map(|p| Counterexample {
                check: String::new(),
                detail: None,
                polygon: Some(RegionJson::from_polygon(p)),
            }),
        }
    }

    fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.check_with(name, passed, None);
    }

    fn check_with(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        let name = name.into();
        if !passed && self.results.iter().all(|r| r.passed) {
            let polygon = self.counterexample.take().and_then(|c| c.polygon);
            self.counterexample = Some(Counterexample { check: name.clone(), detail, polygon });
        }
        self.results.push(CheckResult { name, passed });
    }

    fn fail(&mut self, name: impl Into<String>, e: impl ToString) {
        self.check_with(name, false, Some(e.to_string()));
    }

    fn first_failure(self) -> Option<Counterexample> {
        if self.results.iter().all(|r| r.passed) {
            None
        } else {
            self.counterexample
        }
    }
}

fn q(v: u64) -> Rational {
    Rational::from_integer(v.into())
}

fn divides(s: u64, p: &num_bigint::BigInt) -> bool {
    (p % num_bigint::BigInt::from(s)).is_zero()
}

/// First `n ≤ max_n` where the brute-force count differs from `f(n)`.
fn count_mismatch(p: &RationalPolygon, max_n: u64, f: impl Fn(u64) -> Rational) -> Option<String> {
    (1..=max_n).find_map(|n| {
        let got = Rational::from_integer(lattice_count_naive(p, n));
        let want = f(n);
        (got != want).then(|| format!("n = {n}: count {got}, expected {want}"))
    })
}

fn pick_checks(g: &mut Group, label: &str, p: &RationalPolygon, i: u64, b: u64, max_n: u64) {
    let pick = q(i) + q(b) / q(2) - q(1);
    g.check(format!("{label}: area = I + b/2 - 1"), p.area() == pick);
    let bad = count_mismatch(p, max_n, |n| &pick * q(n * n) + q(b) / q(2) * q(n) + q(1));
    g.check_with(
        format!("{label}: L(n) = (I + b/2 - 1)n^2 + (b/2)n + 1 for n <= {max_n}"),
        bad.is_none(),
        bad,
    );
}

fn pip_group(i: u64) -> Group {
    let mut g = Group::default();
    match pip_b2(i) {
        Ok(k) => {
            let (ii, b) = interior_and_boundary(&k);
            let label = format!("pip-b2 I={i}");
            g.check_with(format!("{label}: (I,b) = ({i},2)"), (ii, b) == (i, 2), Some(format!("({ii},{b})")));
            pick_checks(&mut g, &label, &k, i, 2, 12);
            g.check(format!("{label}: quasi-period 1"), ehrhart(&k).is_ok_and(|e| e.quasi_period() == 1));
        }
        Err(e) => g.fail(format!("pip-b2 I={i}: construction"), e),
    }
    match pip_b1(i) {
        Ok(trace) => {
            let label = format!("pip-b1 I={i}");
            let p = &trace.final_polygon;
            let (ii, b) = interior_and_boundary(p);
            g.check_with(format!("{label}: (I,b) = ({i},1)"), (ii, b) == (i, 1), Some(format!("({ii},{b})")));
            pick_checks(&mut g, &label, p, i, 1, 3 * (2 * i + 1));
            g.check(format!("{label}: quasi-period 1"), ehrhart(p).is_ok_and(|e| e.quasi_period() == 1));
            let top = 3 * trace.denominator().to_u64().unwrap_or(1);
            let bad = trace.count_mismatch(top);
            g.check_with(
                format!("{label}: every step preserves the count for n <= {top}"),
                bad.is_none(),
                bad.map(|(s, n)| format!("step {s}, n = {n}")),
            );
        }
        Err(e) => g.fail(format!("pip-b1 I={i}: construction"), e),
    }
    g
}

fn heptagon_group(s: u64) -> Group {
    let mut g = Group::default();
    let label = format!("H({s})");
    match heptagon(s).and_then(|h| ehrhart(&h)) {
        Ok(e) => {
            let ps = e.period_sequence();
            g.check_with(format!("{label}: period sequence (1,{s},1)"), ps.as_tuple() == (1, s, 1), Some(ps.to_string()));
        }
        Err(e) => g.fail(format!("{label}: construction"), e),
    }
    match heptagon_decomposition(s) {
        Ok(r) => {
            g.check(format!("{label}: R, T1, T2, T3 subdivide H"), r.subdivision_ok);
            g.check(format!("{label}: U1(T1) = conv{{u1, v, w}}"), r.u1_image_ok);
            g.check(format!("{label}: U2(T2) = conv{{u2, v, w}}"), r.u2_image_ok);
            g.check(format!("{label}: image H' is convex"), r.h_prime.is_some());
            let doubled = r.doubled.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ");
            g.check_with(format!("{label}: doubled set is (w, v]"), r.doubled_is_wv, Some(doubled));
            g.check(format!("{label}: L_H = L_H' + L_h"), r.count_identity_ok);
            g.check(format!("{label}: c_H0 = 1 and c_H'0 = c_l0"), r.constant_term_ok);
        }
        Err(e) => g.fail(format!("{label}: decomposition"), e),
    }
    g
}

fn triangle_group(t: u64) -> Group {
    let mut g = Group::default();
    let label = format!("Q({t})");
    match triangle_q(&RationalPoint::origin(), t).and_then(|p| ehrhart(&p)) {
        Ok(e) => {
            let ps = e.period_sequence();
            g.check_with(format!("{label}: period sequence (1,1,{t})"), ps.as_tuple() == (1, 1, t), Some(ps.to_string()));
        }
        Err(e) => g.fail(format!("{label}: construction"), e),
    }
    g.check(
        format!("{label}: unimodular image is conv{{(0,0),(1,0),(0,1/t)}}"),
        q_standard_form_holds(t).unwrap_or(false),
    );
    g
}

fn glue_group(s: u64, t: u64) -> Group {
    let mut g = Group::default();
    let label = format!("glued({s},{t})");
    match glued(s, t).and_then(|p| ehrhart(&p).map(|e| (p, e))) {
        Ok((p, e)) => {
            g = Group::subject(Some(&p));
            let ps = e.period_sequence();
            g.check_with(format!("{label}: period sequence (1,{s},{t})"), ps.as_tuple() == (1, s, t), Some(ps.to_string()));
            let top = 2 * e.modulus();
            g.check(
                format!("{label}: L = L_H + L_Q - (n+1) for n <= {top}"),
                glue_identity_holds(s, t, top).unwrap_or(false),
            );
        }
        Err(e) => g.fail(format!("{label}: construction"), e),
    }
    g
}

fn mcmullen_group(k: usize, p: &RationalPolygon) -> Group {
    let mut g = Group::subject(Some(p));
    let label = format!("polygon {k}");
    let e = match ehrhart(p) {
        Ok(e) => e,
        Err(err) => {
            g.fail(format!("{label}: ehrhart"), err);
            return g;
        }
    };
    let ps = e.period_sequence();
    let (p2, p1, p0) = mcmullen_indices(p);
    g.check_with(
        format!("{label}: s_i | p_i"),
        divides(ps.s2, &p2) && divides(ps.s1, &p1) && divides(ps.s0, &p0),
        Some(format!("periods {ps}, indices ({p2}, {p1}, {p0})")),
    );
    g.check(format!("{label}: p2 | p1 | p0"), (&p1 % &p2).is_zero() && (&p0 % &p1).is_zero());
    g.check(format!("{label}: c2 = area"), e.table(2).iter().all(|c| c == &p.area()));
    if ps.quasi_period == 1 {
        let (i, b) = interior_and_boundary(p);
        let pick = q(i) + q(b) / q(2) - q(1);
        g.check(format!("{label}: PIP satisfies Pick"), p.area() == pick);
        g.check(
            format!("{label}: PIP boundary scales as n b for n <= 12"),
            (1..=12u64).all(|n| p.boundary_count(n) == (n * b).into()),
        );
    }
    g
}

fn transform_group(seed: u64, trial: u64) -> Group {
    let mut rng = Lcg::for_trial(seed, trial);
    let Some(p) = random_polygon(&mut rng, 4, 4) else {
        return Group::default();
    };
    let (dx, dy) = loop {
        let (a, b) = (rng.range(-3, 3), rng.range(-3, 3));
        if a.gcd(&b) == 1 {
            break (a, b);
        }
    };
    let (ux, uy) = (rng.range(-2, 2), rng.range(-2, 2));
    let u = RationalPoint::from_ints(ux, uy);
    let w = RationalPoint::from_ints(ux + dx, uy + dy);
    let sign = if rng.below(2) == 0 { SkewSign::Plus } else { SkewSign::Minus };
    let mut g = Group::subject(Some(&p));
    let label = format!("trial {trial}: U{}_({dx},{dy}) at {u}", if sign == SkewSign::Plus { "+" } else { "-" });
    match affine_skew(&u, &w, sign) {
        Ok(m) => {
            let image = apply_piecewise(&m, &SemiOpenRegion::closed(p.clone()));
            let top = 2 * p.denominator().to_u64().unwrap_or(1);
            let bad = (1..=top).find(|&n| image.lattice_count(n) != lattice_count_naive(&p, n));
            g.check_with(
                format!("{label}: counts preserved for n <= {top}"),
                bad.is_none(),
                bad.map(|n| format!("n = {n}")),
            );
        }
        Err(e) => g.fail(format!("{label}: map"), e),
    }
    g
}

fn chain_group(i: u64) -> Group {
    let mut g = Group::default();
    match pip_b1(i) {
        Ok(trace) => {
            let top = 3 * trace.denominator().to_u64().unwrap_or(1);
            let bad = trace.count_mismatch(top);
            g.check_with(
                format!("pip-b1 I={i}: {} steps preserve the count for n <= {top}", trace.steps.len()),
                bad.is_none(),
                bad.map(|(s, n)| format!("step {s}, n = {n}")),
            );
        }
        Err(e) => g.fail(format!("pip-b1 I={i}: construction"), e),
    }
    g
}

struct Params<'a> {
    args: &'a VerifyArgs,
    used: BTreeMap<String, u64>,
}

impl Params<'_> {
    fn get(&mut self, name: &str, v: Option<u64>, default: u64, min: u64) -> CliResult<u64> {
        let v = v.unwrap_or(default);
        if v < min {
            return Err(CliError::Usage(format!("--{name} must be at least {min}")));
        }
        self.used.insert(name.to_string(), v);
        Ok(v)
    }

    fn reject_unused(&self, suite: &str) -> CliResult<()> {
        let given = [
            ("max-I", self.args.max_interior),
            ("max-s", self.args.max_s),
            ("max-t", self.args.max_t),
            ("trials", self.args.trials),
            ("seed", self.args.seed),
        ];
        for (name, v) in given {
            if v.is_some() && !self.used.contains_key(name) {
                return Err(CliError::Usage(format!("--{name} does not apply to verify {suite}")));
            }
        }
        Ok(())
    }
}

fn collect<T: Sync>(items: &[T], f: impl Fn(&T) -> Group + Sync + Send) -> Vec<Group> {
    items.par_iter().map(f).collect()
}

pub fn run(suite: Suite, args: &VerifyArgs) -> CliResult<()> {
    let name = suite.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let mut params = Params { args, used: BTreeMap::new() };
    let groups = match suite {
        Suite::Pip => {
            let max_i = params.get("max-I", args.max_interior, 10, 1)?;
            params.reject_unused(&name)?;
            collect(&(1..=max_i).collect::<Vec<_>>(), |&i| pip_group(i))
        }
        Suite::Heptagon => {
            let max_s = params.get("max-s", args.max_s, 6, 2)?;
            params.reject_unused(&name)?;
            collect(&(2..=max_s).collect::<Vec<_>>(), |&s| heptagon_group(s))
        }
        Suite::Glue => {
            let max_s = params.get("max-s", args.max_s, 5, 2)?;
            let max_t = params.get("max-t", args.max_t, 5, 2)?;
            params.reject_unused(&name)?;
            let mut groups = collect(&(2..=max_t).collect::<Vec<_>>(), |&t| triangle_group(t));
            let pairs: Vec<(u64, u64)> = (2..=max_s).flat_map(|s| (2..=max_t).map(move |t| (s, t))).collect();
            groups.extend(collect(&pairs, |&(s, t)| glue_group(s, t)));
            groups
        }
        Suite::Mcmullen => {
            let trials = params.get("trials", args.trials, 200, 1)?;
            let seed = params.get("seed", args.seed, 2008, 0)?;
            params.reject_unused(&name)?;
            let corpus: Vec<(usize, RationalPolygon)> =
                random_corpus(seed, trials as usize, 6, 5).into_iter().enumerate().collect();
            collect(&corpus, |(k, p)| mcmullen_group(*k, p))
        }
        Suite::Transforms => {
            let max_i = params.get("max-I", args.max_interior, 6, 1)?;
            let trials = params.get("trials", args.trials, 100, 0)?;
            let seed = params.get("seed", args.seed, 7, 0)?;
            params.reject_unused(&name)?;
            let mut groups = collect(&(1..=max_i).collect::<Vec<_>>(), |&i| chain_group(i));
            groups.extend(collect(&(0..trials).collect::<Vec<_>>(), |&k| transform_group(seed, k)));
            groups
        }
    };

    let mut results = Vec::new();
    let mut first = None;
    for g in groups {
        results.extend(g.results.iter().cloned());
        if first.is_none() {
            first = g.first_failure();
        }
    }
    let failures = results.iter().filter(|r| !r.passed).count();
    emit(&Report {
        suite: name,
        parameters: params.used,
        passed: failures == 0,
        checks: results.len(),
        failures,
        results,
        first_counterexample: first,
    })?;
    if failures == 0 {
        Ok(())
    } else {
        Err(CliError::Failed)
    }
}
