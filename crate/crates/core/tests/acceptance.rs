//! Acceptance suite: one PASS/FAIL line per criterion, with the individual
//! checks listed underneath. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use ehrhart_core::constructions::{
    family_search, glued, heptagon, heptagon_decomposition, integral_hull_proposition_check,
    interior_and_boundary, kite_doubling, p_display, pip_b1, pip_b2, scott_pip_search, segment_rectangle,
    short_segment, t2_display, t3_display_vertices, t3_expected, triangle_q, h_segment, HeptagonVertices,
    SearchReport,
};
use ehrhart_core::ehrhart::{ehrhart, gf_series_check, is_pip, mcmullen_indices, segment_constant};
use ehrhart_core::geometry::{convex_hull, lattice_count_naive, lattice_points, RationalPoint, RationalPolygon};
use ehrhart_core::random::random_corpus;
use ehrhart_core::rational::Rational;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

const CORPUS_SEED: u64 = 2008;
const SEARCH_SEED: u64 = 1;

struct Criterion {
    id: u32,
    title: &'static str,
    checks: Vec<(String, bool)>,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Criterion { id, title, checks: Vec::new() }
    }

    fn check(&mut self, label: impl Into<String>, ok: bool) {
        self.checks.push((label.into(), ok));
    }

    fn passed(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

fn r(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}

fn p(x: Rational, y: Rational) -> RationalPoint {
    RationalPoint::new(x, y)
}

fn ri(v: u64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Boundary points of `nP` by enumerating all lattice points and testing each.
fn brute_boundary(poly: &RationalPolygon, n: u64) -> BigInt {
    let np = poly.dilate(&ri(n));
    BigInt::from(lattice_points(poly, n).iter().filter(|q| np.on_boundary(q)).count())
}

fn fits(label: &str, poly: &RationalPolygon, n_max: u64, f: impl Fn(u64) -> Rational) -> (String, bool) {
    let bad = (1..=n_max).find(|&n| Rational::from_integer(lattice_count_naive(poly, n)) != f(n));
    match bad {
        None => (format!("{label}: counts match for n = 1..{n_max}"), true),
        Some(n) => (format!("{label}: count differs at n = {n}"), false),
    }
}

fn corpus() -> Vec<RationalPolygon> {
    random_corpus(CORPUS_SEED, 200, 6, 5)
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::new(1, "b = 2 family: (I, 2), PIP, L(n) = I n^2 + n + 1");
    for i in 1..=10u64 {
        let k = pip_b2(i).expect("kite");
        let (ii, b) = interior_and_boundary(&k);
        let pip = is_pip(&k).expect("ehrhart");
        let (label, counts) = fits(&format!("I={i}"), &k, 12, |n| ri(i * n * n + n + 1));
        c.check(format!("{label}; (I,b) = ({ii},{b}); pip = {pip}"), counts && (ii, b) == (i, 2) && pip);
    }
    c
}

fn sorted(mut v: Vec<RationalPoint>) -> Vec<RationalPoint> {
    v.sort();
    v
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::new(2, "b = 1 family: T2, T3, P match the closed forms; (I, 1), PIP, counts");
    for i in 1..=10u64 {
        let trace = match pip_b1(i) {
            Ok(t) => t,
            Err(e) => {
                c.check(format!("I={i}: construction failed: {e}"), false);
                continue;
            }
        };
        let t2 = &trace.step("T2").expect("T2").region;
        c.check(format!("I={i}: T2 equals the displayed semi-open triangle"), t2 == &t2_display(i).unwrap());

        let t3 = &trace.step("T3").expect("T3").region;
        let printed = sorted(t3_display_vertices(i).unwrap());
        let computed = sorted(t3.polygon().vertices().to_vec());
        c.check(
            format!(
                "I={i}: T3 vertices equal the printed display {}",
                printed.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
            ),
            printed == computed && t3.is_closed(),
        );
        c.check(
            format!("I={i}: T3 equals conv{{(0,-1),(p,p),(0,I-1/2),(-p,p)}}, p=(2I-1)/(2I+1) [corrected form]"),
            t3 == &t3_expected(i).unwrap(),
        );

        let fin = &trace.final_polygon;
        let (ii, b) = interior_and_boundary(fin);
        let pip = is_pip(fin).expect("ehrhart");
        c.check(
            format!("I={i}: P equals the displayed triangle; (I,b) = ({ii},{b}); pip = {pip}"),
            fin == &p_display(i).unwrap() && (ii, b) == (i, 1) && pip,
        );
        let top = 3 * (2 * i + 1);
        let i2 = r(2 * i as i64 - 1, 2);
        c.checks.push(fits(&format!("I={i}: L(n) = (I-1/2)n^2 + n/2 + 1"), fin, top, |n| {
            let nr = ri(n);
            &i2 * &nr * &nr + &nr / ri(2) + ri(1)
        }));
    }
    c
}

fn criterion_3() -> Criterion {
    let mut c = Criterion::new(3, "transform invariance of the b = 1 chain; 2L_T - I - 2 identity for b = 2");
    for i in 1..=10u64 {
        let trace = pip_b1(i).expect("trace");
        let top = 3 * trace.denominator().to_u64().expect("small");
        let mismatch = trace.count_mismatch(top);
        c.check(
            format!(
                "I={i}: {} steps preserve region_count for n = 1..{top}{}",
                trace.steps.len(),
                mismatch.as_ref().map(|(s, n)| format!(" (breaks at {s}, n = {n})")).unwrap_or_default()
            ),
            mismatch.is_none(),
        );
    }
    let mut literal_fail = Vec::new();
    let mut corrected_ok = true;
    for i in 1..=5u64 {
        for n in 1..=10u64 {
            let (lhs, literal, corrected) = kite_doubling(i, n).expect("kite");
            if lhs != literal {
                literal_fail.push((i, n, lhs.clone(), literal));
            }
            corrected_ok &= lhs == corrected;
        }
    }
    let detail = literal_fail
        .first()
        .map(|(i, n, l, r)| format!(" (first failure I={i}, n={n}: L_P = {l}, 2L_T - I - 2 = {r}; {} failures)", literal_fail.len()))
        .unwrap_or_default();
    c.check(format!("L_P(n) = 2L_T(n) - I - 2 for I <= 5, n <= 10{detail}"), literal_fail.is_empty());
    c.check(
        "L_P(n) = 2L_T(n) - (I+1)n - 1 for I <= 5, n <= 10 [corrected form]".to_string(),
        corrected_ok,
    );
    c
}

fn criterion_4() -> Criterion {
    let mut c = Criterion::new(4, "period sequences (1,s,1), (1,1,t), (1,s,t)");
    for s in 2..=6u64 {
        let ps = ehrhart(&heptagon(s).unwrap()).unwrap().period_sequence();
        c.check(format!("H({s}): {ps}"), ps.as_tuple() == (1, s, 1));
    }
    for t in 2..=6u64 {
        let anchor = HeptagonVertices::new(2).unwrap().u1;
        let ps = ehrhart(&triangle_q(&anchor, t).unwrap()).unwrap().period_sequence();
        c.check(format!("Q({t}): {ps}"), ps.as_tuple() == (1, 1, t));
    }
    for s in 2..=5u64 {
        for t in 2..=5u64 {
            match glued(s, t).and_then(|g| ehrhart(&g)) {
                Ok(q) => {
                    let ps = q.period_sequence();
                    c.check(format!("glued({s},{t}): {ps}"), ps.as_tuple() == (1, s, t));
                }
                Err(e) => c.check(format!("glued({s},{t}): {e}"), false),
            }
        }
    }
    c
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::new(5, "heptagon decomposition: U1(T1), U2(T2), L_H = L_H' + L_h, c_H0 = 1");
    for s in 2..=6u64 {
        match heptagon_decomposition(s) {
            Ok(rep) => {
                let doubled = rep.doubled.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", ");
                c.check(
                    format!(
                        "s={s}: subdivision {} U1 {} U2 {} H' convex {} doubled {{{doubled}}} = (w,v] {} counts {} c0 {}",
                        rep.subdivision_ok,
                        rep.u1_image_ok,
                        rep.u2_image_ok,
                        rep.h_prime.is_some(),
                        rep.doubled_is_wv,
                        rep.count_identity_ok,
                        rep.constant_term_ok
                    ),
                    rep.passed(),
                );
            }
            Err(e) => c.check(format!("s={s}: {e}"), false),
        }
    }
    c
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::new(6, "segment formulas: c_l0 on rectangles, c_l0 + c_h0 = 1");
    for s in 2..=6u64 {
        for m in 1..=3u64 {
            let q = ehrhart(&segment_rectangle(s, m).unwrap()).unwrap();
            let ok = (1..=6 * s).all(|n| {
                let cl = segment_constant(s, n);
                q.coefficient(0, n) == &cl
                    && q.coefficient(1, n) == &(ri(m) * &cl + r(1, s as i64))
                    && q.coefficient(2, n) == &r(m as i64, s as i64)
            });
            c.check(format!("s={s}, m={m}: rectangle coefficients for n <= {}", 6 * s), ok);
        }
    }
    for s in 2..=8u64 {
        let l = ehrhart(&short_segment(s).unwrap()).unwrap();
        let h = ehrhart(&h_segment(s).unwrap()).unwrap();
        let seg = short_segment(s).unwrap();
        let hs = h_segment(s).unwrap();
        let ok = (1..=50u64).all(|n| {
            l.coefficient(0, n) + h.coefficient(0, n) == ri(1)
                && l.coefficient(0, n) == &segment_constant(s, n)
                && seg.lattice_count(n) + hs.lattice_count(n) == BigInt::from(n + 1)
        });
        c.check(format!("s={s}: c_l0 + c_h0 = 1 and L_l + L_h = n + 1 for n <= 50"), ok);
    }
    c
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::new(7, "generating function of Q and its quasi-period");
    for t in 2..=6u64 {
        let tq = triangle_q(&RationalPoint::origin(), t).unwrap();
        let gf = gf_series_check(&tq, t, 40);
        let qp = ehrhart(&tq).unwrap().quasi_period();
        c.check(format!("t={t}: series matches for N = 40: {gf}; quasi-period {qp}"), gf && qp == t);
    }
    c
}

fn criterion_8(corpus: &[RationalPolygon]) -> Criterion {
    let mut c = Criterion::new(8, "McMullen: s_i | p_i and p2 | p1 | p0 on the random corpus");
    let mut div = 0;
    let mut chain = 0;
    let mut first_bad = None;
    for (k, poly) in corpus.iter().enumerate() {
        let ps = ehrhart(poly).expect("ehrhart").period_sequence();
        let (p2, p1, p0) = mcmullen_indices(poly);
        let s_ok = [(ps.s2, &p2), (ps.s1, &p1), (ps.s0, &p0)]
            .iter()
            .all(|(s, pi)| (*pi % BigInt::from(*s)).is_zero());
        let c_ok = (&p1 % &p2).is_zero() && (&p0 % &p1).is_zero();
        div += s_ok as usize;
        chain += c_ok as usize;
        if (!s_ok || !c_ok) && first_bad.is_none() {
            first_bad = Some(k);
        }
    }
    c.check(format!("s_i | p_i on {div}/{} polygons", corpus.len()), div == corpus.len());
    c.check(format!("p2 | p1 | p0 on {chain}/{} polygons", corpus.len()), chain == corpus.len());
    if let Some(k) = first_bad {
        c.check(format!("first failure: {}", corpus[k]), false);
    }
    c
}

fn pip_laws(label: &str, pips: &[RationalPolygon]) -> (String, bool) {
    let mut bad = None;
    for poly in pips {
        let (i, b) = interior_and_boundary(poly);
        let pick = poly.area() == ri(i) + ri(b) / ri(2) - ri(1);
        let scaling = (1..=12u64).all(|n| brute_boundary(poly, n) == BigInt::from(n * b));
        let possible = !(b == 0 || (i, b) == (0, 1) || (i, b) == (0, 2));
        if !(pick && scaling && possible) && bad.is_none() {
            bad = Some(format!(" (fails on {poly}: pick {pick}, scaling {scaling}, possible {possible})"));
        }
    }
    (
        format!("{label}: {} PIPs satisfy Pick, b_nP = n b_P for n <= 12, b >= 1, (I,b) not (0,1)/(0,2){}", pips.len(), bad.clone().unwrap_or_default()),
        bad.is_none(),
    )
}

fn criterion_9(search: &SearchReport) -> Criterion {
    let mut c = Criterion::new(9, "PIP laws on constructed and searched PIPs");
    let families = family_search(10).expect("families");
    c.checks.push(pip_laws("constructed families I <= 10", &families.pips));
    c.checks.push(pip_laws(
        &format!("search seed {SEARCH_SEED}, {} trials", search.trials),
        &search.pips,
    ));
    c.check(
        format!(
            "search found {} PIPs among {} polygons; census {:?}; {} PIPs with I >= 1 and b > 2I+6 (not (1,9)), {} with I >= 1 and b > 2I+7",
            search.pips_found,
            search.polygons,
            search.census,
            search.counterexamples.len(),
            search.weak_counterexamples.len()
        ),
        search.impossible.is_empty() && families.impossible.is_empty(),
    );
    c
}

fn near_degenerate_cases() -> Vec<RationalPolygon> {
    let hull = |pts: &[(i64, i64, i64, i64)]| {
        convex_hull(&pts.iter().map(|&(a, b, c, d)| p(r(a, b), r(c, d))).collect::<Vec<_>>()).unwrap()
    };
    vec![
        hull(&[(-1, 3, -1, 3), (10, 3, -1, 3), (10, 3, 10, 3), (-1, 3, 10, 3)]),
        hull(&[(0, 1, 0, 1), (3, 1, 0, 1), (0, 1, 3, 1)]),
        hull(&[(-1, 100, -1, 100), (301, 100, 0, 1), (0, 1, 301, 100)]),
        hull(&[(0, 1, 0, 1), (2, 1, 0, 1), (2, 1, 2, 1), (0, 1, 2, 1)]),
        hull(&[(-1, 2, 0, 1), (5, 2, 0, 1), (1, 1, 5, 2)]),
        hull(&[(0, 1, -1, 2), (3, 1, 0, 1), (0, 1, 7, 2)]),
        hull(&[(-1, 5, -1, 5), (11, 5, -1, 5), (-1, 5, 11, 5)]),
        hull(&[(0, 1, 0, 1), (4, 1, 0, 1), (0, 1, 4, 1)]),
        hull(&[(1, 2, 1, 2), (7, 2, 1, 2), (7, 2, 7, 2), (1, 2, 7, 2)]),
        hull(&[(-1, 1, 0, 1), (1, 1, 0, 1), (0, 1, 2, 1), (0, 1, -2, 1)]),
        hull(&[(-1, 1, -1, 1), (1, 1, -1, 1), (1, 1, 1, 1), (-1, 1, 1, 1)]),
        hull(&[(-3, 2, -3, 2), (3, 2, -3, 2), (3, 2, 3, 2), (-3, 2, 3, 2)]),
        hull(&[(0, 1, 0, 1), (6, 1, 0, 1), (0, 1, 3, 1)]),
        hull(&[(-1, 3, 0, 1), (3, 1, -1, 3), (3, 1, 10, 3), (0, 1, 10, 3)]),
        hull(&[(-2, 1, 0, 1), (2, 1, 0, 1), (0, 1, 1, 1)]),
        hull(&[(-1, 1, 0, 1), (2, 1, -1, 1), (1, 1, 2, 1)]),
        hull(&[(0, 1, 0, 1), (3, 1, 1, 1), (1, 1, 3, 1)]),
        hull(&[(-1, 7, -1, 7), (22, 7, -1, 7), (-1, 7, 22, 7)]),
        hull(&[(-5, 4, 0, 1), (5, 4, 0, 1), (0, 1, 9, 4), (0, 1, -9, 4)]),
        hull(&[(0, 1, 0, 1), (2, 1, 1, 2), (3, 1, 3, 1), (1, 2, 2, 1)]),
    ]
}

fn criterion_10(corpus: &[RationalPolygon]) -> Criterion {
    let mut c = Criterion::new(10, "integral-hull criterion holds whenever applicable");
    for (label, set) in [("random corpus", corpus.to_vec()), ("hand-picked cases", near_degenerate_cases())] {
        let mut applicable = 0;
        let mut holds = 0;
        for poly in &set {
            let res = integral_hull_proposition_check(poly);
            applicable += res.applicable as usize;
            holds += (res.applicable && res.holds) as usize;
        }
        c.check(
            format!("{label}: holds on {holds}/{applicable} applicable of {}", set.len()),
            holds == applicable,
        );
    }
    c
}

fn criterion_11(corpus: &[RationalPolygon], search: &SearchReport) -> Criterion {
    let mut c = Criterion::new(11, "row-scan counter agrees with naive enumeration for n <= 3D");
    let mut all: Vec<RationalPolygon> = corpus.to_vec();
    all.extend(search.pips.iter().cloned());
    all.extend((1..=5).map(|i| pip_b2(i).unwrap()));
    all.extend((1..=5).map(|i| pip_b1(i).unwrap().final_polygon));
    all.extend((2..=4).map(|s| heptagon(s).unwrap()));
    let mut samples = 0usize;
    let mut bad = None;
    for poly in &all {
        let d = poly.denominator().to_u64().expect("small");
        for n in 1..=3 * d {
            samples += 1;
            if poly.lattice_count(n) != lattice_count_naive(poly, n) && bad.is_none() {
                bad = Some(format!(" (differs on {poly} at n = {n})"));
            }
        }
    }
    c.check(
        format!("{} polygons, {samples} dilations{}", all.len(), bad.clone().unwrap_or_default()),
        bad.is_none(),
    );
    c
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = corpus();
    let search = scott_pip_search(SEARCH_SEED, 1000, 4, 4).expect("search");
    let runners: Vec<Box<dyn Fn() -> Criterion>> = vec![
        Box::new(criterion_1),
        Box::new(criterion_2),
        Box::new(criterion_3),
        Box::new(criterion_4),
        Box::new(criterion_5),
        Box::new(criterion_6),
        Box::new(criterion_7),
        Box::new(|| criterion_8(&corpus)),
        Box::new(|| criterion_9(&search)),
        Box::new(|| criterion_10(&corpus)),
        Box::new(|| criterion_11(&corpus, &search)),
    ];
    let mut failed = Vec::new();
    for run in runners {
        let t = Instant::now();
        let c = run();
        let status = if c.passed() { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {:>2}: {} ({:.1?})", c.id, c.title, t.elapsed());
        for (label, ok) in &c.checks {
            println!("         {} {label}", if *ok { "ok  " } else { "FAIL" });
        }
        if !c.passed() {
            failed.push(c.id);
        }
    }
    println!(
        "acceptance: {} of 11 criteria passed in {:.1?}{}",
        11 - failed.len(),
        start.elapsed(),
        if failed.is_empty() { String::new() } else { format!("; failing: {failed:?}") }
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
