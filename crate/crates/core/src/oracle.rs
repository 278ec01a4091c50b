//! Brute-force ground truth for small finite systems and bounded integer
//! sets, and the corpus sweeps that cross-check the deciders against the
//! implications and equivalences they are expected to satisfy.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::epsets::EPSet;
use crate::error::{Error, Result};
use crate::spaces::{OpenSet, Point, Region, Space};
use crate::systems::{fixtures, Schedule, SystemDescriptor, Vector};
use crate::transitivity::{
    enriched_battery, is_family_infty_transitive, is_family_transitive, is_multi_transitive, is_strongly_mixing,
    is_strongly_multi_transitive, is_totally_transitive, is_vector_transitive, is_weakly_mixing, mild_mixing_battery,
};
use crate::verdict::Verdict;

/// The `m`-th map (`m ≥ 1`) of a finite system applied to one point,
/// computed step by step from the schedule.
fn step(sys: &SystemDescriptor, m: u64, x: &Point) -> Result<Point> {
    match (sys, x) {
        (
            SystemDescriptor::Base {
                schedule: Schedule::PeriodicTables(ts),
                ..
            },
            Point::Element(y),
        ) => Ok(Point::Element(ts[((m - 1) % ts.len() as u64) as usize][*y])),
        (SystemDescriptor::Iterate { inner, n }, _) => block(inner, *n, m, x),
        (SystemDescriptor::Product(fs), Point::Tuple(ps)) => Ok(Point::Tuple(
            fs.iter().zip(ps).map(|(f, p)| step(f, m, p)).collect::<Result<_>>()?,
        )),
        (SystemDescriptor::VectorProduct { inner, a }, Point::Tuple(ps)) => Ok(Point::Tuple(
            a.components()
                .iter()
                .zip(ps)
                .map(|(&aj, p)| block(inner, aj, m, p))
                .collect::<Result<_>>()?,
        )),
        (SystemDescriptor::Tower { inner, k }, Point::Tuple(ps)) if ps.len() == 2 => {
            let Point::Element(floor) = ps[1] else {
                return Err(Error::NonRepresentablePoint(x.to_string()));
            };
            if (floor as u64) + 1 < *k {
                Ok(Point::Tuple(vec![ps[0].clone(), Point::Element(floor + 1)]))
            } else {
                Ok(Point::Tuple(vec![
                    step(inner, m.div_ceil(*k), &ps[0])?,
                    Point::Element(0),
                ]))
            }
        }
        _ => Err(Error::Unsupported(format!("brute simulation of {sys}"))),
    }
}

/// Maps `n(m-1)+1 ..= nm` of `sys`, in order.
fn block(sys: &SystemDescriptor, n: u64, m: u64, x: &Point) -> Result<Point> {
    let mut y = x.clone();
    for i in 1..=n {
        y = step(sys, n * (m - 1) + i, &y)?;
    }
    Ok(y)
}

fn points(region: &Region) -> Result<Vec<Point>> {
    match region {
        Region::Set(OpenSet::Finite(s)) => Ok(s.points().map(Point::Element).collect()),
        Region::Box(rs) => {
            let mut out = vec![Vec::new()];
            for r in rs {
                let opts = points(r)?;
                out = out
                    .into_iter()
                    .flat_map(|prefix: Vec<Point>| {
                        opts.iter().map(move |p| {
                            let mut v = prefix.clone();
                            v.push(p.clone());
                            v
                        })
                    })
                    .collect();
            }
            Ok(out.into_iter().map(Point::Tuple).collect())
        }
        other => Err(Error::Unsupported(format!("point enumeration of {other}"))),
    }
}

/// Bit `n-1` is set when some orbit from `a` is in `b` after `n` steps,
/// `n = 1..=horizon`.
pub fn brute_hitting(sys: &SystemDescriptor, a: &Region, b: &Region, horizon: usize) -> Result<Vec<bool>> {
    if !sys.is_finite() {
        return Err(Error::Unsupported("brute force needs a finite space".into()));
    }
    let mut current = points(a)?;
    let mut out = Vec::with_capacity(horizon);
    for m in 1..=horizon as u64 {
        current = current.iter().map(|x| step(sys, m, x)).collect::<Result<_>>()?;
        let mut hit = false;
        for x in &current {
            if b.contains_point(x)? {
                hit = true;
                break;
            }
        }
        out.push(hit);
    }
    Ok(out)
}

/// Searches every offset `n ∈ {0..=n_bound}^p` for some `m ∈ 1..=m_bound`
/// with `m·a_j + n_j ∈ F` for all `j`. Bit `i` of `f` is the membership of
/// `i + 1`; indices past the end count as absent.
pub fn brute_family_membership(f: &[bool], a: &Vector, n_bound: u64, m_bound: u64) -> bool {
    let member = |x: u64| x >= 1 && (x as usize) <= f.len() && f[x as usize - 1];
    let p = a.len();
    let mut n = vec![0u64; p];
    loop {
        let ok = (1..=m_bound).any(|m| a.components().iter().zip(&n).all(|(&aj, &nj)| member(m * aj + nj)));
        if !ok {
            return false;
        }
        let mut j = 0;
        loop {
            if j == p {
                return true;
            }
            n[j] += 1;
            if n[j] <= n_bound {
                break;
            }
            n[j] = 0;
            j += 1;
        }
    }
}

/// Uniformly random presentation with preperiod `≤ t_max` and period in
/// `1..=q_max`.
pub fn random_epset(rng: &mut impl Rng, t_max: usize, q_max: usize) -> EPSet {
    let t = rng.gen_range(0..=t_max);
    let q = rng.gen_range(1..=q_max);
    let transient: Vec<u64> = (1..=t as u64).filter(|_| rng.gen_bool(0.5)).collect();
    let density = rng.gen_range(0.2..0.9);
    let residues: Vec<u64> = (0..q as u64).filter(|_| rng.gen_bool(density)).collect();
    EPSet::new(t, &transient, q, &residues).expect("valid random presentation")
}

/// Claims checked by [`sweep_theorem`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// Multi-transitivity is shared by a system and its iterates.
    IterateMulti,
    /// Strong multi-transitivity is shared by a system and its iterates.
    IterateStrongMulti,
    /// `a`-transitivity coincides with `F[a]`-transitivity.
    FamilyVector,
    /// Multi-transitivity coincides with `F[∞]`-transitivity.
    FamilyInfty,
    /// Strong mixing implies weak mixing of every order.
    MixingChain,
    /// Multi-transitivity implies total transitivity.
    MultiTotal,
    /// Failing strong multi-transitivity implies failing mild mixing.
    MildMixing,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [
        Theorem::IterateMulti,
        Theorem::IterateStrongMulti,
        Theorem::FamilyVector,
        Theorem::FamilyInfty,
        Theorem::MixingChain,
        Theorem::MultiTotal,
        Theorem::MildMixing,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Theorem::IterateMulti => "T3.1",
            Theorem::IterateStrongMulti => "T3.2",
            Theorem::FamilyVector => "T4.1",
            Theorem::FamilyInfty => "T4.2",
            Theorem::MixingChain => "R2.1",
            Theorem::MultiTotal => "R2.2",
            Theorem::MildMixing => "T3.4",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.label().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown theorem {s:?}")))
    }
}

/// Corpus shape and the bounds every check runs under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    /// Every table schedule with exactly this many points and period
    /// `1..=exhaustive_q` (0 disables the exhaustive part).
    pub exhaustive_n: usize,
    pub exhaustive_q: usize,
    /// Seeded random table schedules with `1..=sample_n` points and period
    /// `1..=sample_q`.
    pub samples: usize,
    pub sample_n: usize,
    pub sample_q: usize,
    pub seed: u64,
    /// Include the shift and circle example systems.
    pub fixtures: bool,
    pub n_max: u64,
    pub p_max: usize,
    pub a_max: u64,
    /// Mixing orders checked by the strong-mixing chain.
    pub k_max: usize,
    /// Largest rotation order in the mild-mixing battery.
    pub battery_order: usize,
}

impl CorpusSpec {
    pub const EXHAUSTIVE_LIMIT_N: usize = 5;
    pub const EXHAUSTIVE_LIMIT_Q: usize = 3;

    pub fn validate(&self) -> Result<()> {
        if self.exhaustive_n > Self::EXHAUSTIVE_LIMIT_N || self.exhaustive_q > Self::EXHAUSTIVE_LIMIT_Q {
            return Err(Error::InvalidArgument(format!(
                "exhaustive corpus limited to N <= {}, q <= {}",
                Self::EXHAUSTIVE_LIMIT_N,
                Self::EXHAUSTIVE_LIMIT_Q
            )));
        }
        if self.sample_n == 0 || self.sample_q == 0 || self.sample_n > crate::spaces::MAX_POINTS {
            return Err(Error::InvalidArgument("sample bounds out of range".into()));
        }
        if self.p_max == 0 || self.a_max == 0 || self.n_max == 0 {
            return Err(Error::InvalidArgument("bounds must be positive".into()));
        }
        Ok(())
    }
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            exhaustive_n: 3,
            exhaustive_q: 1,
            samples: 2000,
            sample_n: 4,
            sample_q: 2,
            seed: 1,
            fixtures: true,
            n_max: 3,
            p_max: 3,
            a_max: 3,
            k_max: 4,
            battery_order: 12,
        }
    }
}

/// A corpus system with the resolution its checks run at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub system: SystemDescriptor,
    pub resolution: u32,
}

fn all_tables(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..n).map(move |y| {
                    let mut t = t.clone();
                    t.push(y);
                    t
                })
            })
            .collect();
    }
    out
}

/// Exhaustive, sampled and fixture systems, deduplicated and sorted by
/// their textual encoding.
pub fn corpus(spec: &CorpusSpec) -> Result<Vec<CorpusEntry>> {
    spec.validate()?;
    let mut systems: Vec<(String, CorpusEntry)> = Vec::new();
    let mut push = |sys: SystemDescriptor, resolution: u32| {
        systems.push((
            sys.to_string(),
            CorpusEntry {
                system: sys,
                resolution,
            },
        ));
    };
    if spec.exhaustive_n > 0 {
        let pool = all_tables(spec.exhaustive_n);
        let mut schedules: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        for _ in 0..spec.exhaustive_q {
            schedules = schedules
                .into_iter()
                .flat_map(|s| {
                    pool.iter().map(move |t| {
                        let mut s = s.clone();
                        s.push(t.clone());
                        s
                    })
                })
                .collect();
            for s in &schedules {
                push(fixtures::finite_tables(spec.exhaustive_n, s.clone()), 1);
            }
        }
    }
    // distinct draws; bounded so tiny sample spaces terminate
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut sampled = std::collections::HashSet::new();
    let mut attempts = 0usize;
    while sampled.len() < spec.samples && attempts < 100 * spec.samples {
        attempts += 1;
        let n = rng.gen_range(1..=spec.sample_n);
        let q = rng.gen_range(1..=spec.sample_q);
        let tables: Vec<Vec<usize>> = (0..q).map(|_| (0..n).map(|_| rng.gen_range(0..n)).collect()).collect();
        if sampled.insert((n, tables.clone())) {
            push(fixtures::finite_tables(n, tables), 1);
        }
    }
    if spec.fixtures {
        for sys in [
            fixtures::swing_shift(4),
            fixtures::swing_shift(2),
            fixtures::swing_shift(3),
            fixtures::constant_shift(),
        ] {
            push(sys, 1);
        }
        push(fixtures::pair_growing_circle(2), 4);
    }
    systems.sort_by(|a, b| a.0.cmp(&b.0));
    systems.dedup_by(|a, b| a.0 == b.0);
    Ok(systems.into_iter().map(|(_, e)| e).collect())
}

/// First `p ≤ p_max` at which `(1..p)`-transitivity fails.
fn first_multi_failure(v: &Verdict) -> Option<usize> {
    let at = &v.witness()?.at;
    at.strip_prefix("p=")?.split(' ').next()?.parse().ok()
}

/// Description of a violation of `theorem` by `entry`, if any.
pub fn check_theorem(theorem: Theorem, entry: &CorpusEntry, spec: &CorpusSpec) -> Result<Option<String>> {
    let sys = &entry.system;
    let res = entry.resolution;
    match theorem {
        Theorem::IterateMulti => {
            let own = is_multi_transitive(sys, spec.p_max, res)?;
            for n in 2..=spec.n_max {
                let it = SystemDescriptor::iterate(sys.clone(), n)?;
                let iterated = is_multi_transitive(&it, spec.p_max, res)?;
                // (n, 2n, .., pn)-transitivity implies (1, .., p)-transitivity
                if let Some(p) = first_multi_failure(&own) {
                    if first_multi_failure(&iterated).is_none_or(|q| q > p) {
                        return Ok(Some(format!("n={n} sys {own} iterate {iterated}")));
                    }
                }
                if let Some(p) = first_multi_failure(&iterated) {
                    let direct = is_vector_transitive(sys, &Vector::ascending(p).scaled(n), res)?;
                    if !direct.is_refuted() {
                        return Ok(Some(format!("n={n} iterate {iterated} sys {direct}")));
                    }
                }
            }
            Ok(None)
        }
        Theorem::IterateStrongMulti => {
            let own = is_strongly_multi_transitive(sys, spec.p_max, spec.a_max, res)?;
            for n in 2..=spec.n_max {
                let it = SystemDescriptor::iterate(sys.clone(), n)?;
                let iterated = is_strongly_multi_transitive(&it, spec.p_max, spec.a_max, res)?;
                if own.is_refuted() != iterated.is_refuted() {
                    // a failing a for the system also fails n·a; the converse needs n·a
                    let confirmed = match (&own, &iterated) {
                        (_, Verdict::Refuted { witness }) => {
                            let a = parse_vector_at(&witness.at)?;
                            is_vector_transitive(sys, &a.scaled(n), res)?.is_refuted()
                        }
                        _ => false,
                    };
                    if !confirmed {
                        return Ok(Some(format!("n={n} sys {own} iterate {iterated}")));
                    }
                }
            }
            Ok(None)
        }
        Theorem::FamilyVector => {
            for a in Vector::enumerate(spec.p_max, spec.a_max) {
                let vt = is_vector_transitive(sys, &a, res)?;
                let ft = is_family_transitive(sys, &a, res)?;
                if vt.is_proven() != ft.is_proven() {
                    return Ok(Some(format!("a={a} vector {vt} family {ft}")));
                }
            }
            Ok(None)
        }
        Theorem::FamilyInfty => {
            let mt = is_multi_transitive(sys, spec.p_max, res)?;
            let ft = is_family_infty_transitive(sys, spec.p_max, res)?;
            if first_multi_failure(&mt) != first_multi_failure(&ft) {
                return Ok(Some(format!("multi {mt} family {ft}")));
            }
            Ok(None)
        }
        Theorem::MixingChain => {
            if is_strongly_mixing(sys, res)?.is_proven() {
                for k in 2..=spec.k_max {
                    let wm = is_weakly_mixing(sys, k, res)?;
                    if wm.is_refuted() {
                        return Ok(Some(format!("strongly mixing but k={k} {wm}")));
                    }
                }
            }
            Ok(None)
        }
        Theorem::MultiTotal => {
            if !is_multi_transitive(sys, spec.p_max, res)?.is_refuted() {
                let tt = is_totally_transitive(sys, spec.p_max as u64, res)?;
                if tt.is_refuted() {
                    return Ok(Some(format!("multi passes but {tt}")));
                }
            }
            Ok(None)
        }
        Theorem::MildMixing => {
            let sm = is_strongly_multi_transitive(sys, spec.p_max, spec.a_max, res)?;
            if sm.is_refuted() {
                let battery = enriched_battery(spec.battery_order);
                let report = mild_mixing_battery(sys, &battery, res)?;
                if !report.verdict.is_refuted() {
                    return Ok(Some(format!("{sm} but battery {}", report.verdict)));
                }
            }
            Ok(None)
        }
    }
}

fn parse_vector_at(at: &str) -> Result<Vector> {
    let inner = at
        .strip_prefix("a=(")
        .and_then(|s| s.split(')').next())
        .ok_or_else(|| Error::InvalidArgument(format!("no vector in {at:?}")))?;
    Vector::new(
        inner
            .split(',')
            .map(|c| {
                c.parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad component {c:?}")))
            })
            .collect::<Result<_>>()?,
    )
}

/// Violation found by a sweep, shrunk to a minimal reproducer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub theorem: Theorem,
    pub original: String,
    pub system: SystemDescriptor,
    pub resolution: u32,
    pub detail: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "counterexample theorem={} res={} system={} original={} detail={}",
            self.theorem, self.resolution, self.system, self.original, self.detail
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepReport {
    pub theorem: Theorem,
    pub checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "sweep theorem={} checked={} counterexamples={}",
            self.theorem,
            self.checked,
            self.counterexamples.len()
        )
    }
}

/// Smaller table systems derived from `sys`: one point removed (when the
/// rest is invariant), then one schedule entry removed.
fn shrink_candidates(sys: &SystemDescriptor) -> Vec<SystemDescriptor> {
    let SystemDescriptor::Base {
        space: Space::Finite { n },
        schedule: Schedule::PeriodicTables(ts),
    } = sys
    else {
        return Vec::new();
    };
    let mut out = Vec::new();
    if *n > 1 {
        for x in 0..*n {
            let invariant = ts.iter().all(|t| (0..*n).all(|y| y == x || t[y] != x));
            if invariant {
                let relabel = |y: usize| if y > x { y - 1 } else { y };
                let smaller = ts
                    .iter()
                    .map(|t| (0..*n).filter(|&y| y != x).map(|y| relabel(t[y])).collect())
                    .collect();
                out.push(fixtures::finite_tables(n - 1, smaller));
            }
        }
    }
    if ts.len() > 1 {
        for i in 0..ts.len() {
            let mut fewer = ts.clone();
            fewer.remove(i);
            out.push(fixtures::finite_tables(*n, fewer));
        }
    }
    out
}

/// Greedy deterministic shrinking: fewer points first, then a shorter
/// schedule. Witness opens are already minimal test opens.
pub fn minimize(theorem: Theorem, entry: &CorpusEntry, spec: &CorpusSpec) -> Result<Counterexample> {
    let mut current = entry.clone();
    let mut detail = check_theorem(theorem, &current, spec)?
        .ok_or_else(|| Error::InvalidArgument(format!("{} satisfies {theorem}", entry.system)))?;
    'outer: loop {
        for candidate in shrink_candidates(&current.system) {
            let next = CorpusEntry {
                system: candidate,
                resolution: current.resolution,
            };
            if let Some(d) = check_theorem(theorem, &next, spec)? {
                current = next;
                detail = d;
                continue 'outer;
            }
        }
        break;
    }
    Ok(Counterexample {
        theorem,
        original: entry.system.to_string(),
        system: current.system,
        resolution: current.resolution,
        detail,
    })
}

/// Runs `theorem` over the corpus in parallel; results are reported in
/// corpus order.
pub fn sweep_theorem(spec: &CorpusSpec, theorem: Theorem) -> Result<SweepReport> {
    let entries = corpus(spec)?;
    sweep_entries(&entries, spec, theorem)
}

pub fn sweep_entries(entries: &[CorpusEntry], spec: &CorpusSpec, theorem: Theorem) -> Result<SweepReport> {
    let found: Vec<Option<Counterexample>> = entries
        .par_iter()
        .map(|e| match check_theorem(theorem, e, spec)? {
            Some(_) => minimize(theorem, e, spec).map(Some),
            None => Ok(None),
        })
        .collect::<Result<_>>()?;
    Ok(SweepReport {
        theorem,
        checked: entries.len(),
        counterexamples: found.into_iter().flatten().collect(),
    })
}
