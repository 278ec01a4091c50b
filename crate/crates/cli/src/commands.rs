//! The `run`, `paper-examples` and `theorems` commands.

use rayon::prelude::*;

use ndds_core::oracle::{sweep_theorem, CorpusSpec, SweepReport, Theorem};
use ndds_core::spaces::{rat, ArcSet, OpenSet};
use ndds_core::systems::fixtures;
use ndds_core::transitivity::{
    default_battery, enriched_battery, hitting_set, is_family_infty_transitive, is_family_transitive,
    is_multi_transitive, is_strongly_mixing, is_strongly_multi_transitive, is_totally_transitive, is_transitive,
    is_vector_transitive, is_weakly_mixing, mild_mixing_battery, weakly_disjoint,
};
use ndds_core::{composed, ComposedForm, EPSet, Region, Result, Vector, Verdict};

use crate::config::{Bounds, Expectation, ExperimentConfig, Query, QueryKind};
use crate::report::{Record, Report, Status};

/// Largest rotation order of the enriched battery.
const BATTERY_ORDER: usize = 12;

enum Outcome {
    Verdict(Verdict),
    Set(EPSet),
    Sweep(SweepReport),
}

fn members(set: &EPSet, horizon: usize) -> String {
    let shown: Vec<String> = (1..=horizon as u64)
        .filter(|&n| set.contains(n))
        .map(|n| n.to_string())
        .collect();
    format!("{set} members<={horizon}=[{}]", shown.join(","))
}

/// Corpus used by sweeps: exhaustive on at most three points, sampled up
/// to `N` points.
pub fn corpus_spec(b: &Bounds) -> CorpusSpec {
    let points = b.points.unwrap_or(4);
    CorpusSpec {
        exhaustive_n: points.min(3),
        exhaustive_q: 1,
        samples: b.samples.unwrap_or(2000),
        sample_n: points,
        sample_q: 2,
        seed: b.seed.unwrap_or(1),
        fixtures: true,
        n_max: b.n_max(),
        p_max: b.p_max(),
        a_max: b.a_max(),
        k_max: 4,
        battery_order: BATTERY_ORDER,
    }
}

fn sweep_scope(spec: &CorpusSpec) -> String {
    format!(
        "N={} samples={} seed={} p_max={} a_max={} n_max={}",
        spec.sample_n, spec.samples, spec.seed, spec.p_max, spec.a_max, spec.n_max
    )
}

fn scope(kind: &QueryKind, b: &Bounds) -> String {
    let r = b.resolution();
    match kind {
        QueryKind::Hitting { .. } => format!("horizon={}", b.horizon()),
        QueryKind::Multi { .. } | QueryKind::FamilyInfty { .. } => format!("res={r} p_max={}", b.p_max()),
        QueryKind::StrongMulti { .. } => format!("res={r} p_max={} a_max={}", b.p_max(), b.a_max()),
        QueryKind::Totally { .. } => format!("res={r} n_max={}", b.n_max()),
        QueryKind::Battery { enriched, .. } => {
            format!("res={r} battery={}", if *enriched { "enriched" } else { "default" })
        }
        QueryKind::Sweep { .. } => sweep_scope(&corpus_spec(b)),
        _ => format!("res={r}"),
    }
}

fn evaluate(kind: &QueryKind, b: &Bounds) -> Result<(Outcome, Option<String>)> {
    let r = b.resolution();
    let v = |verdict: Result<Verdict>| verdict.map(|v| (Outcome::Verdict(v), None));
    match kind {
        QueryKind::Hitting { sys, a, b: target } => Ok((Outcome::Set(hitting_set(sys, a, target)?), None)),
        QueryKind::Transitive { sys } => v(is_transitive(sys, r)),
        QueryKind::VectorTransitive { sys, a } => v(is_vector_transitive(sys, a, r)),
        QueryKind::Multi { sys } => v(is_multi_transitive(sys, b.p_max(), r)),
        QueryKind::StrongMulti { sys } => v(is_strongly_multi_transitive(sys, b.p_max(), b.a_max(), r)),
        QueryKind::Totally { sys } => v(is_totally_transitive(sys, b.n_max(), r)),
        QueryKind::WeaklyMixing { sys, order } => v(is_weakly_mixing(sys, *order, r)),
        QueryKind::StronglyMixing { sys } => v(is_strongly_mixing(sys, r)),
        QueryKind::Family { sys, a } => v(is_family_transitive(sys, a, r)),
        QueryKind::FamilyInfty { sys } => v(is_family_infty_transitive(sys, b.p_max(), r)),
        QueryKind::Disjoint { first, second } => v(weakly_disjoint(first, second, r)),
        QueryKind::Battery { sys, enriched } => {
            let battery = if *enriched {
                enriched_battery(BATTERY_ORDER)
            } else {
                default_battery()
            };
            let report = mild_mixing_battery(sys, &battery, r)?;
            let note = (!report.skipped.is_empty()).then(|| {
                let names: Vec<String> = report.skipped.iter().map(|s| s.to_string()).collect();
                format!("skipped non-transitive members: {}", names.join("; "))
            });
            Ok((Outcome::Verdict(report.verdict), note))
        }
        QueryKind::Sweep { theorem } => Ok((Outcome::Sweep(sweep_theorem(&corpus_spec(b), *theorem)?), None)),
    }
}

fn satisfied(outcome: &Outcome, expect: &Expectation) -> bool {
    match (outcome, expect) {
        (Outcome::Verdict(v), Expectation::Proven) => v.is_proven(),
        (Outcome::Verdict(v), Expectation::Refuted) => v.is_refuted(),
        (Outcome::Verdict(v), Expectation::Unknown) => v.is_unknown(),
        (Outcome::Verdict(v), Expectation::Pass) => !v.is_refuted(),
        (Outcome::Set(s), Expectation::Equals(e)) => s == e,
        (Outcome::Set(s), Expectation::Excludes(e)) => s.intersect(e).is_empty(),
        (Outcome::Set(s), Expectation::Empty) => s.is_empty(),
        (Outcome::Set(s), Expectation::Nonempty) => !s.is_empty(),
        (Outcome::Set(s), Expectation::Cofinite) => s.is_cofinite(),
        (Outcome::Sweep(r), Expectation::Clean) => r.counterexamples.is_empty(),
        (Outcome::Sweep(r), Expectation::Counterexample) => !r.counterexamples.is_empty(),
        _ => false,
    }
}

fn execute(q: &Query, b: &Bounds) -> (Record, Vec<String>) {
    let mut record = Record {
        id: ("line".into(), q.line.to_string()),
        kind: q.kind.name().into(),
        subject: q.text.clone(),
        scope: scope(&q.kind, b),
        result: String::new(),
        expect: q.expect.as_ref().map(|(_, text)| text.clone()),
        note: None,
        status: Status::Unchecked,
    };
    let mut details = Vec::new();
    match evaluate(&q.kind, b) {
        Err(e) => {
            record.result = format!("internal error: {e}");
            record.status = Status::Error;
        }
        Ok((outcome, note)) => {
            record.result = match &outcome {
                Outcome::Verdict(v) => v.to_string(),
                Outcome::Set(s) => members(s, b.horizon()),
                Outcome::Sweep(r) => {
                    details.extend(r.counterexamples.iter().map(|c| c.to_string()));
                    format!("checked={} counterexamples={}", r.checked, r.counterexamples.len())
                }
            };
            record.note = note;
            if let Some((e, _)) = &q.expect {
                record.status = if satisfied(&outcome, e) {
                    Status::Ok
                } else {
                    Status::Mismatch
                };
            }
        }
    }
    (record, details)
}

/// Runs every query of `cfg`; records come out in config order.
pub fn run(cfg: &ExperimentConfig, flags: &Bounds) -> Report {
    let base = flags.over(&cfg.settings).over(&Bounds::defaults());
    let done: Vec<(Record, Vec<String>)> = cfg
        .queries
        .par_iter()
        .map(|q| execute(q, &q.bounds.over(&base)))
        .collect();
    let mut report = Report::default();
    for (record, details) in done {
        report.records.push(record);
        report.details.extend(details);
    }
    report
}

struct Check {
    name: &'static str,
    kind: &'static str,
    subject: String,
    scope: String,
    expect: &'static str,
    note: Option<&'static str>,
    /// Result text and whether it meets the expectation.
    eval: Box<dyn Fn() -> Result<(String, bool)> + Send + Sync>,
}

fn verdict_check(
    name: &'static str,
    kind: &'static str,
    subject: String,
    scope: String,
    expect: &'static str,
    eval: impl Fn() -> Result<Verdict> + Send + Sync + 'static,
) -> Check {
    Check {
        name,
        kind,
        subject,
        scope,
        expect,
        note: None,
        eval: Box::new(move || {
            let v = eval()?;
            let ok = match expect {
                "proven" => v.is_proven(),
                "refuted" => v.is_refuted(),
                "unknown" => v.is_unknown(),
                _ => !v.is_refuted(),
            };
            Ok((v.to_string(), ok))
        }),
    }
}

fn arc(lo: (i64, i64), hi: (i64, i64)) -> Region {
    Region::Set(OpenSet::Arcs(
        ArcSet::arc(rat(lo.0, lo.1), rat(hi.0, hi.1)).expect("valid arc"),
    ))
}

fn paper_checks() -> Vec<Check> {
    let swing = fixtures::swing_shift(4);
    let circle = fixtures::pair_growing_circle(2);
    let (a, b) = (arc((0, 1), (1, 4)), arc((1, 2), (3, 4)));
    let v12 = Vector::new(vec![1, 2]).expect("valid vector");
    let mut checks = Vec::new();

    let s = swing.clone();
    checks.push(Check {
        name: "swing-collapse",
        kind: "composed",
        subject: format!("{swing} at n=3m"),
        scope: "m<=50".into(),
        expect: "shift^m",
        note: None,
        eval: Box::new(move || {
            let bad = (0..=50u64).find(|&m| composed(&s, 3 * m) != ComposedForm::Exponent(m as i64));
            Ok(match bad {
                None => ("shift^m for every m".into(), true),
                Some(m) => (format!("differs at m={m}"), false),
            })
        }),
    });
    let s = swing.clone();
    checks.push(verdict_check(
        "swing-strong-multi",
        "strong-multi",
        swing.to_string(),
        "res=1 p_max=2 a_max=3".into(),
        "unknown",
        move || is_strongly_multi_transitive(&s, 2, 3, 1),
    ));
    let s = swing.clone();
    checks.push(verdict_check(
        "swing-totally",
        "totally",
        swing.to_string(),
        "res=1 n_max=4".into(),
        "unknown",
        move || is_totally_transitive(&s, 4, 1),
    ));
    let s = swing.clone();
    checks.push(verdict_check(
        "swing-weakly-mixing",
        "weakly-mixing",
        format!("{swing} order 2"),
        "res=1".into(),
        "proven",
        move || is_weakly_mixing(&s, 2, 1),
    ));

    let c = circle.clone();
    checks.push(Check {
        name: "circle-even-identity",
        kind: "composed",
        subject: format!("{circle} at n=2m"),
        scope: "m<=50".into(),
        expect: "identity",
        note: None,
        eval: Box::new(move || {
            let bad = (0..=50u64).find(|&m| composed(&c, 2 * m) != ComposedForm::Exponent(0));
            Ok(match bad {
                None => ("identity for every m".into(), true),
                Some(m) => (format!("differs at m={m}"), false),
            })
        }),
    });
    let (c, x, y) = (circle.clone(), a.clone(), b.clone());
    checks.push(Check {
        name: "circle-hitting",
        kind: "hitting",
        subject: format!("{circle} {a} {b}"),
        scope: "horizon=20".into(),
        expect: "ep{t=1; trans=; q=2; R={1}}",
        note: None,
        eval: Box::new(move || {
            let set = hitting_set(&c, &x, &y)?;
            let want: EPSet = "ep{t=1; trans=; q=2; R={1}}".parse()?;
            Ok((members(&set, 20), set == want))
        }),
    });
    let (c, x, y) = (circle.clone(), a.clone(), b.clone());
    checks.push(Check {
        name: "circle-even-exclusion",
        kind: "hitting",
        subject: format!("{circle} {a} {b}"),
        scope: "exact".into(),
        expect: "no even member",
        note: None,
        eval: Box::new(move || {
            let set = hitting_set(&c, &x, &y)?;
            let evens = EPSet::residue_class(2, 0);
            let clash = set.intersect(&evens);
            Ok(match clash.first_member() {
                None => ("no even member".into(), true),
                Some(n) => (format!("contains {n}"), false),
            })
        }),
    });
    let c = circle.clone();
    checks.push(verdict_check(
        "circle-multi",
        "multi",
        circle.to_string(),
        "res=4 p_max=3".into(),
        "refuted",
        move || is_multi_transitive(&c, 3, 4),
    ));
    let (c, v) = (circle.clone(), v12.clone());
    checks.push(verdict_check(
        "circle-family",
        "family",
        format!("{circle} {v12}"),
        "res=4".into(),
        "refuted",
        move || is_family_transitive(&c, &v, 4),
    ));
    let (c, v) = (circle.clone(), v12.clone());
    let mut product = verdict_check(
        "circle-iterate-product",
        "vector-transitive",
        format!("{circle} {v12}"),
        "res=4".into(),
        "refuted",
        move || is_vector_transitive(&c, &v, 4),
    );
    product.note = Some(
        "the second iterate composes to the identity, so the product with it is not transitive \
         (a weak-mixing claim for this product does not hold)",
    );
    checks.push(product);
    let c = circle.clone();
    checks.push(verdict_check(
        "circle-battery",
        "battery",
        circle.to_string(),
        "res=4 battery=default".into(),
        "refuted",
        move || Ok(mild_mixing_battery(&c, &default_battery(), 4)?.verdict),
    ));

    let (first, second) = (fixtures::swing_shift(2), fixtures::swing_shift(3));
    let (f, g) = (first.clone(), second.clone());
    checks.push(verdict_check(
        "swing-pair-disjoint",
        "disjoint",
        format!("{first} | {second}"),
        "res=1".into(),
        "proven",
        move || weakly_disjoint(&f, &g, 1),
    ));
    let f = first.clone();
    checks.push(verdict_check(
        "swing2-weakly-mixing",
        "weakly-mixing",
        format!("{first} order 2"),
        "res=1".into(),
        "proven",
        move || is_weakly_mixing(&f, 2, 1),
    ));
    checks
}

/// The built-in fixtures with pinned expectations.
pub fn paper_examples() -> Report {
    let checks = paper_checks();
    let records: Vec<Record> = checks
        .par_iter()
        .map(|c| {
            let (result, status) = match (c.eval)() {
                Ok((text, true)) => (text, Status::Ok),
                Ok((text, false)) => (text, Status::Mismatch),
                Err(e) => (format!("internal error: {e}"), Status::Error),
            };
            Record {
                id: ("check".into(), c.name.into()),
                kind: c.kind.into(),
                subject: c.subject.clone(),
                scope: c.scope.clone(),
                result,
                expect: Some(c.expect.into()),
                note: c.note.map(str::to_string),
                status,
            }
        })
        .collect();
    Report {
        records,
        details: Vec::new(),
    }
}

/// Runs the selected sweeps (all by default); any counterexample is a
/// mismatch.
pub fn theorems(flags: &Bounds, only: Option<Theorem>) -> Report {
    let bounds = flags.over(&Bounds::defaults());
    let spec = corpus_spec(&bounds);
    let mut report = Report::default();
    for theorem in Theorem::ALL.into_iter().filter(|t| only.is_none_or(|o| o == *t)) {
        let mut record = Record {
            id: ("theorem".into(), theorem.label().into()),
            kind: "sweep".into(),
            subject: theorem.label().into(),
            scope: sweep_scope(&spec),
            result: String::new(),
            expect: Some("clean".into()),
            note: None,
            status: Status::Ok,
        };
        match sweep_theorem(&spec, theorem) {
            Ok(r) => {
                record.result = format!("checked={} counterexamples={}", r.checked, r.counterexamples.len());
                if !r.counterexamples.is_empty() {
                    record.status = Status::Mismatch;
                }
                report.details.extend(r.counterexamples.iter().map(|c| c.to_string()));
            }
            Err(e) => {
                record.result = format!("internal error: {e}");
                record.status = Status::Error;
            }
        }
        report.records.push(record);
    }
    report
}
