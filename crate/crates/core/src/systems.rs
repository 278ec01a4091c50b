//! Finitely presented non-autonomous systems, the composition engine for
//! `f_1^n = f_n ∘ … ∘ f_1`, and the iterate / product / tower combinators.

use std::collections::HashMap;
use std::fmt;

use num::integer::{gcd, lcm};

use crate::error::{mismatch, Error, Result};
use crate::spaces::{meets, validate_table, FiniteSubset, MapDescriptor, OpenSet, Point, Region, Space};

/// Positive integer vector `a = (a_1, …, a_p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(Vec<u64>);

impl Vector {
    pub fn new(components: Vec<u64>) -> Result<Vector> {
        if components.is_empty() {
            return Err(Error::InvalidArgument("vector needs at least one component".into()));
        }
        if components.contains(&0) {
            return Err(Error::InvalidArgument("vector components must be positive".into()));
        }
        Ok(Vector(components))
    }

    /// `(1, 2, …, p)`.
    pub fn ascending(p: usize) -> Vector {
        Vector((1..=p as u64).collect())
    }

    /// `(1, …, 1)` of length `k`.
    pub fn ones(k: usize) -> Vector {
        Vector(vec![1; k.max(1)])
    }

    pub fn components(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, n: u64) -> Vector {
        Vector(self.0.iter().map(|a| a * n).collect())
    }

    /// Every vector of length `1..=p_max` with components in `1..=a_max`,
    /// shorter vectors first, lexicographic within a length.
    pub fn enumerate(p_max: usize, a_max: u64) -> Vec<Vector> {
        let mut out = Vec::new();
        let mut layer: Vec<Vec<u64>> = vec![Vec::new()];
        for _ in 0..p_max {
            layer = layer
                .into_iter()
                .flat_map(|v| {
                    (1..=a_max).map(move |a| {
                        let mut v = v.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
            out.extend(layer.iter().cloned().map(Vector));
        }
        out
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Generator schedule of a base system.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Schedule {
    /// `f_n = base^{exps[(n-1) mod q]}`.
    PeriodicExponents(Vec<i64>),
    /// `f_n = tables[(n-1) mod q]` on a finite space.
    PeriodicTables(Vec<Vec<usize>>),
    /// `f_{2m-1} = base^m`, `f_{2m} = base^{-m}`.
    PairGrowing,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SystemDescriptor {
    Base { space: Space, schedule: Schedule },
    Iterate { inner: Box<SystemDescriptor>, n: u64 },
    Product(Vec<SystemDescriptor>),
    VectorProduct { inner: Box<SystemDescriptor>, a: Vector },
    Tower { inner: Box<SystemDescriptor>, k: u64 },
}

impl SystemDescriptor {
    pub fn base(space: Space, schedule: Schedule) -> Result<Self> {
        space.validate()?;
        match (&space, &schedule) {
            (Space::Shift { .. } | Space::Circle { .. }, Schedule::PeriodicExponents(e)) if !e.is_empty() => {}
            (Space::Shift { .. } | Space::Circle { .. }, Schedule::PairGrowing) => {}
            (Space::Finite { n }, Schedule::PeriodicTables(ts)) if !ts.is_empty() => {
                ts.iter().try_for_each(|t| validate_table(t, *n))?;
            }
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "schedule {schedule:?} cannot drive {space}"
                )))
            }
        }
        Ok(SystemDescriptor::Base { space, schedule })
    }

    pub fn iterate(inner: SystemDescriptor, n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("iterate needs n >= 1".into()));
        }
        Ok(SystemDescriptor::Iterate {
            inner: Box::new(inner),
            n,
        })
    }

    pub fn product(factors: Vec<SystemDescriptor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("product needs at least one factor".into()));
        }
        Ok(SystemDescriptor::Product(factors))
    }

    pub fn vector_product(inner: SystemDescriptor, a: Vector) -> Self {
        SystemDescriptor::VectorProduct {
            inner: Box::new(inner),
            a,
        }
    }

    pub fn space(&self) -> Space {
        match self {
            SystemDescriptor::Base { space, .. } => space.clone(),
            SystemDescriptor::Iterate { inner, .. } => inner.space(),
            SystemDescriptor::Product(fs) => Space::Product(fs.iter().map(Self::space).collect()),
            SystemDescriptor::VectorProduct { inner, a } => Space::Product(vec![inner.space(); a.len()]),
            SystemDescriptor::Tower { inner, k } => {
                Space::Product(vec![inner.space(), Space::Finite { n: *k as usize }])
            }
        }
    }

    /// Phase space is finite (every factor finite).
    pub fn is_finite(&self) -> bool {
        fn finite(s: &Space) -> bool {
            match s {
                Space::Finite { .. } => true,
                Space::Product(fs) => fs.iter().all(finite),
                _ => false,
            }
        }
        finite(&self.space())
    }
}

/// Height-`k` tower over `sys`: the phase space `Y × {0..k-1}` with step maps
/// advancing the floor counter and applying the base map on leaving the top
/// floor.
///
/// The `m`-th step applies `g_{⌈m/k⌉}` at the top floor, so every point
/// receives `g_1, g_2, …` in order whatever floor it starts on. For an
/// autonomous base this is the plain counter-and-apply construction.
pub fn tower(sys: SystemDescriptor, k: u64) -> Result<SystemDescriptor> {
    if k == 0 {
        return Err(Error::InvalidArgument("tower height must be >= 1".into()));
    }
    if k as usize > crate::spaces::MAX_POINTS {
        return Err(Error::InvalidArgument("tower height too large".into()));
    }
    Ok(SystemDescriptor::Tower {
        inner: Box::new(sys),
        k,
    })
}

/// Exact description of a composed map `f_1^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ComposedForm {
    /// `base^E` for shift or circle systems.
    Exponent(i64),
    Table(Vec<usize>),
    Tuple(Vec<ComposedForm>),
    /// Tower map after `n` steps: floor `i` moves to `(i + phase) mod k`;
    /// the base coordinate receives `low` (`f_1^{⌊n/k⌋}`) when the floor
    /// does not wrap and `high` (`f_1^{⌊n/k⌋+1}`) when it does.
    Tower {
        k: u64,
        phase: u64,
        low: Box<ComposedForm>,
        high: Box<ComposedForm>,
    },
}

impl ComposedForm {
    fn base_map(&self, space: &Space) -> Result<MapDescriptor> {
        match (self, space) {
            (ComposedForm::Exponent(e), Space::Shift { .. }) => Ok(MapDescriptor::ShiftPower(*e)),
            (ComposedForm::Exponent(e), Space::Circle { p }) => Ok(MapDescriptor::CirclePower { e: *e, p: *p }),
            (ComposedForm::Table(t), Space::Finite { n }) if t.len() == *n => Ok(MapDescriptor::FiniteFunc(t.clone())),
            _ => Err(mismatch(space, format!("{self:?}"))),
        }
    }

    /// `form(a) ∩ b ≠ ∅`.
    pub fn hits(&self, space: &Space, a: &Region, b: &Region) -> Result<bool> {
        match (self, space, a, b) {
            (ComposedForm::Tuple(fs), Space::Product(sp), Region::Box(xs), Region::Box(ys))
                if fs.len() == sp.len() && xs.len() == sp.len() && ys.len() == sp.len() =>
            {
                for i in 0..fs.len() {
                    if !fs[i].hits(&sp[i], &xs[i], &ys[i])? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (ComposedForm::Tower { k, phase, low, high }, Space::Product(sp), Region::Box(xs), Region::Box(ys))
                if sp.len() == 2 && xs.len() == 2 && ys.len() == 2 =>
            {
                let (from, to) = floors(&xs[1], &ys[1], *k)?;
                for i in from.points() {
                    let j = i as u64 + phase;
                    if !to.contains((j % k) as usize) {
                        continue;
                    }
                    let form = if j >= *k { high } else { low };
                    if form.hits(&sp[0], &xs[0], &ys[0])? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            (_, _, Region::Set(x), Region::Set(y)) => {
                let map = self.base_map(space)?;
                meets(&crate::spaces::image(&map, x)?, y)
            }
            _ => Err(mismatch(space, format!("{a} -> {b}"))),
        }
    }

    pub fn apply(&self, space: &Space, x: &Point) -> Result<Point> {
        match (self, space, x) {
            (ComposedForm::Tuple(fs), Space::Product(sp), Point::Tuple(ps))
                if fs.len() == sp.len() && ps.len() == sp.len() =>
            {
                Ok(Point::Tuple(
                    (0..fs.len())
                        .map(|i| fs[i].apply(&sp[i], &ps[i]))
                        .collect::<Result<_>>()?,
                ))
            }
            (ComposedForm::Tower { k, phase, low, high }, Space::Product(sp), Point::Tuple(ps))
                if sp.len() == 2 && ps.len() == 2 =>
            {
                let Point::Element(i) = ps[1] else {
                    return Err(Error::NonRepresentablePoint(x.to_string()));
                };
                let j = i as u64 + phase;
                let form = if j >= *k { high } else { low };
                Ok(Point::Tuple(vec![
                    form.apply(&sp[0], &ps[0])?,
                    Point::Element((j % k) as usize),
                ]))
            }
            (_, _, p) => self.base_map(space)?.apply(p),
        }
    }

    /// `self` followed by `next`, for the shapes closed under composition.
    pub fn then(&self, next: &ComposedForm) -> Result<ComposedForm> {
        match (self, next) {
            (ComposedForm::Exponent(a), ComposedForm::Exponent(b)) => Ok(ComposedForm::Exponent(a + b)),
            (ComposedForm::Table(f), ComposedForm::Table(g)) if f.len() == g.len() => {
                Ok(ComposedForm::Table(f.iter().map(|&x| g[x]).collect()))
            }
            (ComposedForm::Tuple(a), ComposedForm::Tuple(b)) if a.len() == b.len() => Ok(ComposedForm::Tuple(
                a.iter().zip(b).map(|(x, y)| x.then(y)).collect::<Result<_>>()?,
            )),
            _ => Err(Error::Unsupported("composition of tower forms".into())),
        }
    }

    /// Per-period change from `earlier` to `self`, when the sequence is
    /// affine in the exponent coordinates and constant elsewhere.
    fn delta(&self, earlier: &ComposedForm) -> Option<ComposedForm> {
        match (self, earlier) {
            (ComposedForm::Exponent(a), ComposedForm::Exponent(b)) => Some(ComposedForm::Exponent(a - b)),
            (ComposedForm::Table(a), ComposedForm::Table(b)) => (a == b).then(|| ComposedForm::Table(a.clone())),
            (ComposedForm::Tuple(a), ComposedForm::Tuple(b)) if a.len() == b.len() => Some(ComposedForm::Tuple(
                a.iter().zip(b).map(|(x, y)| x.delta(y)).collect::<Option<_>>()?,
            )),
            (
                ComposedForm::Tower { k, phase, low, high },
                ComposedForm::Tower {
                    k: k2,
                    phase: p2,
                    low: l2,
                    high: h2,
                },
            ) if k == k2 && phase == p2 => Some(ComposedForm::Tower {
                k: *k,
                phase: *phase,
                low: Box::new(low.delta(l2)?),
                high: Box::new(high.delta(h2)?),
            }),
            _ => None,
        }
    }

    fn advanced(&self, drift: &ComposedForm, times: u64) -> ComposedForm {
        match (self, drift) {
            (ComposedForm::Exponent(a), ComposedForm::Exponent(d)) => ComposedForm::Exponent(a + d * times as i64),
            (ComposedForm::Tuple(a), ComposedForm::Tuple(d)) => {
                ComposedForm::Tuple(a.iter().zip(d).map(|(x, y)| x.advanced(y, times)).collect())
            }
            (ComposedForm::Tower { k, phase, low, high }, ComposedForm::Tower { low: dl, high: dh, .. }) => {
                ComposedForm::Tower {
                    k: *k,
                    phase: *phase,
                    low: Box::new(low.advanced(dl, times)),
                    high: Box::new(high.advanced(dh, times)),
                }
            }
            _ => self.clone(),
        }
    }
}

fn floors(a: &Region, b: &Region, k: u64) -> Result<(FiniteSubset, FiniteSubset)> {
    match (a, b) {
        (Region::Set(OpenSet::Finite(x)), Region::Set(OpenSet::Finite(y)))
            if x.size() == k as usize && y.size() == k as usize =>
        {
            Ok((*x, *y))
        }
        _ => Err(mismatch(format!("finite{{n={k}}}"), format!("{a}, {b}"))),
    }
}

/// Exponent sequence `E(n)` that is affine on each residue class mod
/// `period`: `E(r + 1 + j·period) = start[r] + slope[r]·j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentSequence {
    pub period: usize,
    pub start: Vec<i64>,
    pub slope: Vec<i64>,
}

impl ExponentSequence {
    pub fn at(&self, n: u64) -> i64 {
        if n == 0 {
            return 0;
        }
        let r = ((n - 1) % self.period as u64) as usize;
        let j = ((n - 1) / self.period as u64) as i64;
        self.start[r] + self.slope[r] * j
    }
}

/// The exponent sequence of a shift or circle base system.
pub fn exponent_sequence(schedule: &Schedule) -> Option<ExponentSequence> {
    match schedule {
        Schedule::PeriodicExponents(exps) => {
            let drift: i64 = exps.iter().sum();
            let start = exps
                .iter()
                .scan(0i64, |acc, e| {
                    *acc += e;
                    Some(*acc)
                })
                .collect();
            Some(ExponentSequence {
                period: exps.len(),
                start,
                slope: vec![drift; exps.len()],
            })
        }
        Schedule::PairGrowing => Some(ExponentSequence {
            period: 2,
            start: vec![1, 0],
            slope: vec![1, 0],
        }),
        Schedule::PeriodicTables(_) => None,
    }
}

fn compose_tables(tables: &[Vec<usize>], n: u64, size: usize) -> Vec<usize> {
    let mut cur: Vec<usize> = (0..size).collect();
    for step in 0..n {
        let f = &tables[(step % tables.len() as u64) as usize];
        cur = cur.iter().map(|&x| f[x]).collect();
    }
    cur
}

/// Exact `f_1^n`; `n = 0` gives the identity.
pub fn composed(sys: &SystemDescriptor, n: u64) -> ComposedForm {
    match sys {
        SystemDescriptor::Base { space, schedule } => match schedule {
            Schedule::PeriodicTables(tables) => {
                let Space::Finite { n: size } = space else {
                    unreachable!("validated")
                };
                ComposedForm::Table(compose_tables(tables, n, *size))
            }
            other => ComposedForm::Exponent(exponent_sequence(other).expect("exponent schedule").at(n)),
        },
        SystemDescriptor::Iterate { inner, n: k } => composed(inner, k * n),
        SystemDescriptor::Product(fs) => ComposedForm::Tuple(fs.iter().map(|f| composed(f, n)).collect()),
        SystemDescriptor::VectorProduct { inner, a } => {
            ComposedForm::Tuple(a.components().iter().map(|aj| composed(inner, aj * n)).collect())
        }
        SystemDescriptor::Tower { inner, k } => ComposedForm::Tower {
            k: *k,
            phase: n % k,
            low: Box::new(composed(inner, n / k)),
            high: Box::new(composed(inner, n / k + 1)),
        },
    }
}

/// The single map `f_m` (`m ≥ 1`) of a base system, or the block
/// `f_{k(m-1)+1}^{k}` of an iterate.
pub fn step_form(sys: &SystemDescriptor, m: u64) -> Result<ComposedForm> {
    if m == 0 {
        return Err(Error::InvalidArgument("steps are indexed from 1".into()));
    }
    match sys {
        SystemDescriptor::Base { schedule, .. } => Ok(match schedule {
            Schedule::PeriodicExponents(e) => ComposedForm::Exponent(e[((m - 1) % e.len() as u64) as usize]),
            Schedule::PeriodicTables(t) => ComposedForm::Table(t[((m - 1) % t.len() as u64) as usize].clone()),
            Schedule::PairGrowing => {
                let half = m.div_ceil(2) as i64;
                ComposedForm::Exponent(if m % 2 == 1 { half } else { -half })
            }
        }),
        SystemDescriptor::Iterate { inner, n } => {
            let mut acc = step_form(inner, n * (m - 1) + 1)?;
            for i in 2..=*n {
                acc = acc.then(&step_form(inner, n * (m - 1) + i)?)?;
            }
            Ok(acc)
        }
        SystemDescriptor::Product(fs) => Ok(ComposedForm::Tuple(
            fs.iter().map(|f| step_form(f, m)).collect::<Result<_>>()?,
        )),
        _ => Err(Error::Unsupported("step maps of vector products and towers".into())),
    }
}

/// Finite presentation of `n ↦ f_1^n`: forms for `n = 1..=t+q`, and for
/// each residue class beyond `t` the change accumulated over one period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EPCompose {
    pub preperiod: usize,
    pub period: usize,
    pub forms: Vec<ComposedForm>,
    pub drift: Vec<ComposedForm>,
}

impl EPCompose {
    fn build(preperiod: usize, period: usize, value: &impl Fn(u64) -> ComposedForm) -> Option<EPCompose> {
        let t = preperiod as u64;
        let q = period as u64;
        let forms: Vec<ComposedForm> = (1..=t + q).map(value).collect();
        let drift = (0..q)
            .map(|r| value(t + 1 + r + q).delta(&forms[(t + r) as usize]))
            .collect::<Option<Vec<_>>>()?;
        Some(EPCompose {
            preperiod,
            period,
            forms,
            drift,
        })
    }

    /// Predicted `f_1^n` for `n ≥ 1`.
    pub fn form_at(&self, n: u64) -> ComposedForm {
        assert!(n >= 1, "forms are indexed from 1");
        let t = self.preperiod as u64;
        let q = self.period as u64;
        if n <= t + q {
            return self.forms[(n - 1) as usize].clone();
        }
        let r = (n - t - 1) % q;
        let j = (n - t - 1) / q;
        self.forms[(t + r) as usize].advanced(&self.drift[r as usize], j)
    }

    pub fn drift_is_zero(&self) -> bool {
        fn zero(f: &ComposedForm) -> bool {
            match f {
                ComposedForm::Exponent(d) => *d == 0,
                ComposedForm::Table(_) => true,
                ComposedForm::Tuple(fs) => fs.iter().all(zero),
                ComposedForm::Tower { low, high, .. } => zero(low) && zero(high),
            }
        }
        self.drift.iter().all(zero)
    }
}

/// Preperiod and period of the first repeated `(f_1^n, n mod q)` state of a
/// table schedule.
fn table_cycle(tables: &[Vec<usize>], size: usize) -> (usize, usize) {
    let q = tables.len();
    let mut seen: HashMap<(Vec<usize>, usize), usize> = HashMap::new();
    let mut cur: Vec<usize> = (0..size).collect();
    let mut n = 0usize;
    loop {
        if let Some(&first) = seen.get(&(cur.clone(), n % q)) {
            return (first.saturating_sub(1), n - first);
        }
        seen.insert((cur.clone(), n % q), n);
        let f = &tables[n % q];
        cur = cur.iter().map(|&x| f[x]).collect();
        n += 1;
    }
}

/// A valid (not necessarily minimal) `(preperiod, period)` for `sys`.
fn presentation_bounds(sys: &SystemDescriptor) -> (usize, usize) {
    match sys {
        SystemDescriptor::Base { space, schedule } => match schedule {
            Schedule::PeriodicTables(t) => {
                let Space::Finite { n } = space else {
                    unreachable!("validated")
                };
                table_cycle(t, *n)
            }
            Schedule::PeriodicExponents(e) => (0, e.len()),
            Schedule::PairGrowing => (0, 2),
        },
        SystemDescriptor::Iterate { inner, n } => {
            let (t, q) = presentation_bounds(inner);
            (t / *n as usize, q / gcd(q, *n as usize))
        }
        SystemDescriptor::Product(fs) => fs
            .iter()
            .map(presentation_bounds)
            .fold((0, 1), |(t, q), (t2, q2)| (t.max(t2), lcm(q, q2))),
        SystemDescriptor::VectorProduct { inner, a } => {
            let (t, q) = presentation_bounds(inner);
            a.components().iter().fold((0, 1), |(t2, q2), &aj| {
                let aj = aj as usize;
                (t2.max(t / aj), lcm(q2, q / gcd(q, aj)))
            })
        }
        SystemDescriptor::Tower { inner, k } => {
            let (t, q) = presentation_bounds(inner);
            let k = *k as usize;
            (k * (t + 1) - 1, k * q)
        }
    }
}

/// Minimal eventually periodic presentation of `n ↦ f_1^n`.
pub fn ep_compose(sys: &SystemDescriptor) -> Result<EPCompose> {
    let (t, q) = presentation_bounds(sys);
    let horizon = (t + 3 * q) as u64;
    let values: Vec<ComposedForm> = (1..=horizon + q as u64).map(|n| composed(sys, n)).collect();
    let value = |n: u64| values[(n - 1) as usize].clone();
    for q2 in (1..=q).filter(|d| q % d == 0) {
        for t2 in 0..=t {
            let Some(candidate) = EPCompose::build(t2, q2, &value) else {
                continue;
            };
            if (1..=horizon).all(|n| candidate.form_at(n) == values[(n - 1) as usize]) {
                return Ok(candidate);
            }
        }
    }
    Err(Error::Unsupported(format!(
        "no eventually periodic presentation found for {sys}"
    )))
}

/// `[y, f_1(y), …, f_1^steps(y)]`, each term computed from the composed map.
pub fn orbit(sys: &SystemDescriptor, y: &Point, steps: u64) -> Result<Vec<Point>> {
    let space = sys.space();
    if !y.belongs_to(&space) {
        return Err(Error::NonRepresentablePoint(format!("{y} in {space}")));
    }
    let mut out = vec![y.clone()];
    for n in 1..=steps {
        out.push(composed(sys, n).apply(&space, y)?);
    }
    Ok(out)
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Schedule::PeriodicExponents(e) => {
                let parts: Vec<String> = e.iter().map(i64::to_string).collect();
                write!(f, "exps=({})", parts.join(","))
            }
            Schedule::PeriodicTables(ts) => {
                let parts: Vec<String> = ts
                    .iter()
                    .map(|t| format!("({})", t.iter().map(usize::to_string).collect::<Vec<_>>().join(",")))
                    .collect();
                write!(f, "tables=[{}]", parts.join(","))
            }
            Schedule::PairGrowing => write!(f, "pairgrowing"),
        }
    }
}

impl fmt::Display for SystemDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SystemDescriptor::Base { space, schedule } => write!(f, "{space} {schedule}"),
            SystemDescriptor::Iterate { inner, n } => write!(f, "iterate({inner},{n})"),
            SystemDescriptor::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|s| s.to_string()).collect();
                write!(f, "product({})", parts.join(", "))
            }
            SystemDescriptor::VectorProduct { inner, a } => {
                let parts: Vec<String> = a.components().iter().map(u64::to_string).collect();
                write!(f, "vprod({inner};{})", parts.join(","))
            }
            SystemDescriptor::Tower { inner, k } => write!(f, "tower({inner},{k})"),
        }
    }
}

/// Reference systems: the growing-exponent shifts, the pair-growing circle
/// map, autonomous maps and finite rotations.
pub mod fixtures {
    use super::*;

    pub fn shift_exps(exps: &[i64]) -> SystemDescriptor {
        SystemDescriptor::base(Space::Shift { symbols: 2 }, Schedule::PeriodicExponents(exps.to_vec()))
            .expect("valid shift system")
    }

    /// `σ, σ^{-k}, σ^k, σ, …` on the 2-shift; one net shift per period.
    pub fn swing_shift(k: i64) -> SystemDescriptor {
        shift_exps(&[1, -k, k])
    }

    /// `pθ, θ/p, p²θ, θ/p², …` on the circle.
    pub fn pair_growing_circle(p: u32) -> SystemDescriptor {
        SystemDescriptor::base(Space::Circle { p }, Schedule::PairGrowing).expect("valid circle system")
    }

    /// The autonomous shift.
    pub fn constant_shift() -> SystemDescriptor {
        shift_exps(&[1])
    }

    pub fn constant_circle(p: u32) -> SystemDescriptor {
        SystemDescriptor::base(Space::Circle { p }, Schedule::PeriodicExponents(vec![1])).expect("valid circle system")
    }

    pub fn finite_tables(n: usize, tables: Vec<Vec<usize>>) -> SystemDescriptor {
        SystemDescriptor::base(Space::Finite { n }, Schedule::PeriodicTables(tables)).expect("valid table system")
    }

    /// `x ↦ x + 1 mod n`.
    pub fn rotation(n: usize) -> SystemDescriptor {
        finite_tables(n, vec![(0..n).map(|x| (x + 1) % n).collect()])
    }

    pub fn identity(n: usize) -> SystemDescriptor {
        finite_tables(n, vec![(0..n).collect()])
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::spaces::rat;

    /// Independent prefix-sum oracle over the raw exponent list.
    fn prefix_oracle(steps: &[i64], n: usize) -> i64 {
        steps.iter().cycle().take(n).sum()
    }

    /// Exponents of the pair-growing schedule, generated directly.
    fn pair_growing_steps(n: usize) -> Vec<i64> {
        (1..=n as i64)
            .map(|m| if m % 2 == 1 { (m + 1) / 2 } else { -(m / 2) })
            .collect()
    }

    #[test]
    fn swing_shift_every_third_step_is_a_single_shift() {
        let sys = swing_shift(4);
        for m in 0..=50u64 {
            assert_eq!(composed(&sys, 3 * m), ComposedForm::Exponent(m as i64));
        }
        assert_eq!(composed(&sys, 6), ComposedForm::Exponent(2));
    }

    #[test]
    fn pair_growing_even_steps_are_identity() {
        let sys = pair_growing_circle(2);
        for m in 0..=50u64 {
            assert_eq!(composed(&sys, 2 * m), ComposedForm::Exponent(0));
        }
        let steps = pair_growing_steps(5);
        assert_eq!(steps, vec![1, -1, 2, -2, 3]);
        assert_eq!(composed(&sys, 5), ComposedForm::Exponent(steps.iter().sum()));
        assert_eq!(composed(&sys, 5), ComposedForm::Exponent(3));
    }

    #[test]
    fn exponent_sequences_match_prefix_oracle() {
        for exps in [vec![1, -4, 4], vec![1, -2, 2], vec![2, -1], vec![0], vec![-3, 1, 1, 0]] {
            let sys = shift_exps(&exps);
            for n in 0..60 {
                assert_eq!(
                    composed(&sys, n as u64),
                    ComposedForm::Exponent(prefix_oracle(&exps, n))
                );
            }
        }
        let pg = pair_growing_circle(3);
        let steps = pair_growing_steps(40);
        for n in 0..40 {
            assert_eq!(composed(&pg, n as u64), ComposedForm::Exponent(steps[..n].iter().sum()));
        }
    }

    #[test]
    fn zero_steps_is_identity() {
        assert_eq!(composed(&rotation(3), 0), ComposedForm::Table(vec![0, 1, 2]));
        assert_eq!(composed(&swing_shift(4), 0), ComposedForm::Exponent(0));
    }

    #[test]
    fn ep_compose_examples() {
        let e = ep_compose(&swing_shift(4)).unwrap();
        assert_eq!((e.preperiod, e.period), (0, 3));
        assert_eq!(
            e.forms,
            vec![
                ComposedForm::Exponent(1),
                ComposedForm::Exponent(-3),
                ComposedForm::Exponent(1)
            ]
        );
        assert_eq!(e.drift, vec![ComposedForm::Exponent(1); 3]);

        let swap = ep_compose(&finite_tables(2, vec![vec![1, 0]])).unwrap();
        assert_eq!((swap.preperiod, swap.period), (0, 2));
        assert_eq!(
            swap.forms,
            vec![ComposedForm::Table(vec![1, 0]), ComposedForm::Table(vec![0, 1])]
        );

        let id = ep_compose(&identity(3)).unwrap();
        assert_eq!((id.preperiod, id.period), (0, 1));
        assert_eq!(id.forms, vec![ComposedForm::Table(vec![0, 1, 2])]);

        let pg = ep_compose(&pair_growing_circle(2)).unwrap();
        assert_eq!((pg.preperiod, pg.period), (0, 2));
        assert_eq!(pg.drift, vec![ComposedForm::Exponent(1), ComposedForm::Exponent(0)]);
    }

    #[test]
    fn ep_compose_finds_preperiod() {
        // f1 = const 0, then the swap forever (period 2 schedule: const, swap)
        let sys = finite_tables(2, vec![vec![0, 0], vec![1, 0]]);
        let e = ep_compose(&sys).unwrap();
        for n in 1..40 {
            assert_eq!(e.form_at(n), composed(&sys, n));
        }
    }

    #[test]
    fn tower_orbit_climbs_then_applies_base() {
        let base = rotation(3);
        let tw = tower(base, 3).unwrap();
        let start = Point::Tuple(vec![Point::Element(0), Point::Element(0)]);
        let orbit = orbit(&tw, &start, 6).unwrap();
        let expect: Vec<Point> = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2), (2, 0)]
            .iter()
            .map(|&(y, i)| Point::Tuple(vec![Point::Element(y), Point::Element(i)]))
            .collect();
        assert_eq!(orbit, expect);
    }

    #[test]
    fn height_one_tower_is_the_base() {
        let sys = swing_shift(4);
        let tw = tower(sys.clone(), 1).unwrap();
        for n in 0..=50 {
            let ComposedForm::Tower { phase, low, .. } = composed(&tw, n) else {
                panic!()
            };
            assert_eq!(phase, 0);
            assert_eq!(*low, composed(&sys, n));
        }
    }

    #[test]
    fn orbit_examples() {
        let id = identity(2);
        assert_eq!(orbit(&id, &Point::Element(1), 3).unwrap(), vec![Point::Element(1); 4]);
        let rot = orbit(&rotation(3), &Point::Element(0), 3).unwrap();
        assert_eq!(
            rot,
            vec![
                Point::Element(0),
                Point::Element(1),
                Point::Element(2),
                Point::Element(0)
            ]
        );
        let circ = orbit(&pair_growing_circle(2), &Point::Angle(rat(1, 3)), 4).unwrap();
        let want: Vec<Point> = [(1, 3), (2, 3), (1, 3), (1, 3), (1, 3)]
            .iter()
            .map(|&(a, b)| Point::Angle(rat(a, b)))
            .collect();
        assert_eq!(circ, want);
        assert!(orbit(&rotation(3), &Point::Element(5), 1).is_err());
    }

    #[test]
    fn block_maps_of_iterates() {
        let sys = swing_shift(4);
        let it = SystemDescriptor::iterate(sys.clone(), 3).unwrap();
        for m in 1..10 {
            assert_eq!(step_form(&it, m).unwrap(), ComposedForm::Exponent(1));
        }
        assert_eq!(
            step_form(&pair_growing_circle(2), 4).unwrap(),
            ComposedForm::Exponent(-2)
        );
    }

    #[test]
    fn vector_enumeration() {
        let all = Vector::enumerate(2, 3);
        assert_eq!(all.len(), 3 + 9);
        assert_eq!(all[0].to_string(), "(1)");
        assert_eq!(all[3].to_string(), "(1,1)");
        assert!(Vector::new(vec![]).is_err());
        assert!(Vector::new(vec![1, 0]).is_err());
    }

    #[test]
    fn invalid_systems_are_rejected() {
        assert!(SystemDescriptor::base(Space::Finite { n: 2 }, Schedule::PairGrowing).is_err());
        assert!(SystemDescriptor::base(Space::Shift { symbols: 2 }, Schedule::PeriodicExponents(vec![])).is_err());
        assert!(SystemDescriptor::base(Space::Finite { n: 2 }, Schedule::PeriodicTables(vec![vec![0, 2]])).is_err());
        assert!(SystemDescriptor::iterate(rotation(2), 0).is_err());
        assert!(tower(rotation(2), 0).is_err());
    }
}
