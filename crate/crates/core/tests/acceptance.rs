//! Acceptance gate: one line per criterion.
//!
//! Runs without the libtest harness so the lines always show. Exits nonzero
//! when a criterion fails other than the known persistence counterexample,
//! which is reported as FAIL and checked to be exactly that counterexample.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::Rational64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use detfacet::formats::{
    parse_complex, parse_graph, parse_interval_rep, render_complex, render_graph, render_interval_rep,
};
use detfacet::groebner::{is_groebner, is_reduced};
use detfacet::harness::{random_complex, random_graph, Finding, Source, TheoremId, TheoremJob, VerificationReport};
use detfacet::polyring::{parse_polynomial, Field, MatrixContext, Monomial, Polynomial, Rational, Variable};
use detfacet::scomplex::{bsv_fixture, is_closed_lab, is_poor_closed_lab, is_unit_interval_lab, IntervalRep};

const SEED: u64 = 2024;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn from_reports(reports: &[VerificationReport]) -> Outcome {
        let pass = reports.iter().all(|r| r.passed() && r.inconclusive.is_empty());
        let detail = reports.iter().map(|r| r.summary()).collect::<Vec<_>>().join("; ");
        Outcome { pass, detail }
    }
}

fn run(theorem: TheoremId, source: Source) -> VerificationReport {
    TheoremJob::new(theorem).with_source(source).run().expect("job runs")
}

fn exhaustive(n_max: usize, d: std::ops::RangeInclusive<usize>) -> Source {
    Source::Exhaustive { n_max, d }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    if took > limit {
        out.pass = false;
        out.detail.push_str(&format!("; took {took:?}, limit {limit:?}"));
    }
    out
}

fn criterion_5() -> Outcome {
    let c = bsv_fixture();
    let poor = is_poor_closed_lab(&c);
    let closed = is_closed_lab(&c);
    let unit = is_unit_interval_lab(&c);
    let basis = c.determinantal_facet_ideal(Field::Rationals).expect("fixture ideal");
    let gb = is_groebner(&basis).expect("check runs");
    let reduced = is_reduced(&basis);
    let consistent = !gb.is_gb || poor;
    Outcome {
        pass: poor && !closed && !unit && consistent,
        detail: format!(
            "poor_closed={poor} closed={closed} unit={unit}; measured GB={} reduced={reduced}; GB => poor closed holds: {consistent}",
            gb.is_gb
        ),
    }
}

/// The known counterexample: the paw under its identity labels, where
/// `{1,2,4}` spans `[1,4]` at `d = 2` but `{1,3,4}` is not connected.
const PAW: &str = "4; 1 2; 2 3; 2 4; 3 4";

fn criterion_7() -> (Outcome, bool) {
    let r = run(TheoremId::ThmMonotone, exhaustive(5, 1..=3));
    let paw_found = r.failures.iter().any(|f| f.instance == PAW && f.witness == "unit at d=1 but not at d=2");
    let only_known_kind = r.failures.iter().all(|f| {
        f.witness.ends_with("at d=1 but not at d=2")
            && (f.witness.starts_with("unit") || f.witness.starts_with("proper"))
    });
    let detail = format!(
        "{}; expected failures present: paw counterexample {paw_found}, all failures are unit/proper at d=1->2: {only_known_kind}",
        r.summary()
    );
    (
        Outcome { pass: r.passed() && r.inconclusive.is_empty(), detail },
        paw_found && only_known_kind && r.inconclusive.is_empty(),
    )
}

fn random_polynomial(rng: &mut ChaCha8Rng, ctx: MatrixContext) -> Polynomial {
    let field = ctx.field();
    let terms: Vec<_> = (0..rng.gen_range(0..=5))
        .map(|_| {
            let q = rng.gen_range(1i64..=5);
            let c =
                field.from_rational(&Rational::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(q))).unwrap();
            let factors: Vec<(Variable, u32)> = (0..rng.gen_range(0..=3))
                .map(|_| {
                    let v = Variable::new(rng.gen_range(1..=ctx.rows()), rng.gen_range(1..=ctx.cols()));
                    (v, rng.gen_range(1..=3))
                })
                .collect();
            (c, Monomial::from_factors(factors))
        })
        .collect();
    Polynomial::from_terms(ctx, terms).unwrap()
}

fn random_rep(rng: &mut ChaCha8Rng) -> IntervalRep {
    let n = rng.gen_range(1..=7);
    let intervals = (0..n)
        .map(|_| {
            let a = Rational64::new(rng.gen_range(-20..=20), rng.gen_range(1..=6));
            (a, a + Rational64::new(rng.gen_range(0..=20), rng.gen_range(1..=6)))
        })
        .collect();
    IntervalRep::new(intervals).unwrap()
}

fn random_report(rng: &mut ChaCha8Rng) -> VerificationReport {
    let theorem = TheoremId::ALL[rng.gen_range(0..TheoremId::ALL.len())];
    let source = Source::Random { seed: rng.gen(), count: rng.gen_range(1..100), n_max: 6, d: 1..=2 };
    let mut r = VerificationReport::new(theorem, &source);
    r.checked = rng.gen_range(0..10_000);
    r.millis = rng.gen_range(0..100_000);
    for _ in 0..rng.gen_range(0..3) {
        let n = rng.gen_range(1..=5);
        let g = random_graph(rng, n);
        let labelling = rng.gen_bool(0.5).then(|| "[2, 1, 3]".to_string());
        r.failures.push(Finding {
            instance: render_graph(&g).trim_end().replace('\n', "; "),
            labelling,
            witness: "d=1 \"quoted\"".into(),
        });
    }
    if rng.gen_bool(0.3) {
        r.notes.push("a note".into());
    }
    r
}

/// 1,000 seeded objects: 200 each of graphs, complexes, polynomials,
/// interval representations and reports.
fn criterion_13() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut bad = Vec::new();
    for k in 0..200 {
        let n = rng.gen_range(0..=8);
        let g = random_graph(&mut rng, n);
        if parse_graph(&render_graph(&g)).ok() != Some(g) {
            bad.push(format!("graph {k}"));
        }
        let c = random_complex(&mut rng, 8, 0..=3, 10);
        if parse_complex(&render_complex(&c)).ok() != Some(c) {
            bad.push(format!("complex {k}"));
        }
        let ctx = MatrixContext::new(rng.gen_range(1..=4), rng.gen_range(1..=6)).unwrap();
        let p = random_polynomial(&mut rng, ctx);
        if parse_polynomial(&p.to_string(), ctx).ok() != Some(p) {
            bad.push(format!("polynomial {k}"));
        }
        let rep = random_rep(&mut rng);
        if parse_interval_rep(&render_interval_rep(&rep)).ok() != Some(rep) {
            bad.push(format!("representation {k}"));
        }
        let r = random_report(&mut rng);
        if VerificationReport::from_json(&r.to_json()).ok() != Some(r) {
            bad.push(format!("report {k}"));
        }
    }
    Outcome { pass: bad.is_empty(), detail: format!("1000 objects, {} mismatches {:?}", bad.len(), bad) }
}

/// Prints the criterion line; returns 1 on failure.
fn line(k: usize, name: &str, out: Outcome) -> usize {
    println!("criterion {k:>2} {name}: {} ({})", if out.pass { "PASS" } else { "FAIL" }, out.detail);
    usize::from(!out.pass)
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut unexpected = 0;

    unexpected += line(
        1,
        "LEM-DET",
        timed(Duration::from_secs(30), || Outcome::from_reports(&[run(TheoremId::LemDet, exhaustive(6, 1..=4))])),
    );
    unexpected += line(
        2,
        "THM-GB-1",
        timed(Duration::from_secs(300), || {
            Outcome::from_reports(&[run(TheoremId::ThmGb1, TheoremId::ThmGb1.default_source())])
        }),
    );
    unexpected += line(
        3,
        "THM-GB-2/3/4",
        timed(Duration::from_secs(600), || {
            let ids = [TheoremId::ThmGb2, TheoremId::ThmGb3, TheoremId::ThmGb4];
            Outcome::from_reports(&ids.map(|t| run(t, exhaustive(5, 1..=2))))
        }),
    );
    unexpected += line(4, "THM-GB-5", Outcome::from_reports(&[run(TheoremId::ThmGb5, exhaustive(5, 1..=1))]));
    unexpected += line(5, "fixture flags", criterion_5());
    unexpected += line(
        6,
        "THM-PROPER-UNIT",
        Outcome::from_reports(&[
            run(TheoremId::ThmProperUnit, exhaustive(5, 1..=2)),
            run(TheoremId::ThmProperUnit, Source::Random { seed: SEED, count: 500, n_max: 7, d: 1..=2 }),
        ]),
    );

    let (out7, known) = criterion_7();
    println!("criterion  7 THM-MONOTONE: {} ({})", if out7.pass { "PASS" } else { "FAIL" }, out7.detail);
    if !out7.pass && known {
        println!("             known counterexample, left failing: same-label persistence breaks at d=1 -> 2");
    } else if !out7.pass {
        unexpected += 1;
    }

    unexpected += line(
        8,
        "COR-SORT",
        Outcome::from_reports(&[
            run(TheoremId::CorSort, exhaustive(5, 1..=2)),
            run(TheoremId::CorSort, Source::Random { seed: SEED, count: 200, n_max: 6, d: 1..=2 }),
        ]),
    );
    unexpected += line(9, "THM-INTERVAL", Outcome::from_reports(&[run(TheoremId::ThmInterval, exhaustive(6, 1..=1))]));
    unexpected += line(
        10,
        "PROP-CYCLE/PROP-CLAWPAW",
        Outcome::from_reports(&[
            run(TheoremId::PropCycle, exhaustive(6, 1..=2)),
            run(TheoremId::PropClawpaw, exhaustive(6, 1..=2)),
        ]),
    );
    unexpected +=
        line(11, "COR-CYCLEFOREST", Outcome::from_reports(&[run(TheoremId::CorCycleForest, Source::Fixtures)]));
    unexpected += line(12, "COR-CORONA", Outcome::from_reports(&[run(TheoremId::CorCorona, Source::Fixtures)]));
    let elapsed = start.elapsed();
    let mut out13 = criterion_13();
    out13.detail.push_str(&format!("; gate ran in {:.1} s", elapsed.as_secs_f64()));
    if elapsed > Duration::from_secs(20 * 60) {
        out13.pass = false;
    }
    unexpected += line(13, "round trips and runtime", out13);

    if unexpected == 0 {
        println!("acceptance: 12 of 13 criteria pass; criterion 7 fails on its known counterexample");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
