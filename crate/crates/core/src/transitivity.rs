//! Exact hitting-time sets `N(A, B)` and the transitivity / mixing deciders
//! built on them.
//!
//! Deciders quantify over the minimal test opens at a resolution. Every
//! property checked here is monotone in the open sets, so passing on the
//! minimal ones is the same as passing on the whole sub-basis.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use num::integer::lcm;
use num::One;

use crate::epsets::EPSet;
use crate::error::{mismatch, Error, Result};
use crate::game::{find_empty_choice, Bits, Coordinate};
use crate::spaces::{minimal_basis, OpenSet, Rational, Region, Space};
use crate::systems::{
    ep_compose, exponent_sequence, fixtures, tower, ComposedForm, EPCompose, ExponentSequence, SystemDescriptor, Vector,
};
use crate::verdict::Verdict;

/// Largest time universe the product game will scan.
const MAX_UNIVERSE: usize = 1 << 22;
/// Largest number of box combinations enumerated by the family decider.
const MAX_COMBINATIONS: usize = 1 << 20;

/// Inputs of one `N(A, B)` computation, validated against the system's space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingQuery {
    pub sys: SystemDescriptor,
    pub a: Region,
    pub b: Region,
}

impl HittingQuery {
    pub fn new(sys: SystemDescriptor, a: Region, b: Region) -> Result<Self> {
        let space = sys.space();
        for r in [&a, &b] {
            if !r.belongs_to(&space) {
                return Err(mismatch(&space, r));
            }
            if r.is_empty() {
                return Err(Error::InvalidArgument(format!("empty open {r}")));
            }
        }
        Ok(HittingQuery { sys, a, b })
    }

    /// Always exact: every supported family has a finite presentation.
    pub fn solve(&self) -> Result<EPSet> {
        Engine::new(&self.sys)?.hitting(&self.a, &self.b)
    }
}

/// `N(A, B) = {n ≥ 1 : f_1^n(A) ∩ B ≠ ∅}`.
pub fn hitting_set(sys: &SystemDescriptor, a: &Region, b: &Region) -> Result<EPSet> {
    HittingQuery::new(sys.clone(), a.clone(), b.clone())?.solve()
}

/// Hitting predicate `E ↦ base^E(A) ∩ B ≠ ∅`, tabulated on the window where
/// it is not constant.
struct ExponentPredicate {
    lo: i64,
    table: Vec<bool>,
    below: bool,
    above: bool,
}

impl ExponentPredicate {
    fn new(space: &Space, a: &OpenSet, b: &OpenSet) -> Result<Self> {
        let (lo, hi, below, above) = match (space, a, b) {
            (Space::Shift { .. }, OpenSet::Cylinders(x), OpenSet::Cylinders(y)) => {
                let ((la, ra), (lb, rb)) = (span(x.span())?, span(y.span())?);
                // disjoint windows always meet on the full shift
                (la - rb, ra - lb, true, true)
            }
            (Space::Circle { p }, OpenSet::Arcs(x), OpenSet::Arcs(y)) => {
                let p = Rational::from_integer((*p).into());
                let mut up = 0i64;
                let mut scale = x.max_arc_length();
                while scale < Rational::one() {
                    scale *= &p;
                    up += 1;
                }
                let (edge, starts_at_zero) = y
                    .near_zero()
                    .ok_or_else(|| Error::InvalidArgument("empty target arc set".into()))?;
                let mut down = 1i64;
                let mut reach = edge * &p;
                while reach < Rational::one() {
                    reach *= &p;
                    down += 1;
                }
                // E >= up saturates to the circle; E <= -down lands inside (0, edge]
                (1 - down, up - 1, starts_at_zero, true)
            }
            _ => return Err(mismatch(space, format!("{a}, {b}"))),
        };
        let region_a = Region::Set(a.clone());
        let region_b = Region::Set(b.clone());
        let table = (lo..=hi.max(lo - 1))
            .map(|e| ComposedForm::Exponent(e).hits(space, &region_a, &region_b))
            .collect::<Result<_>>()?;
        Ok(ExponentPredicate {
            lo,
            table,
            below,
            above,
        })
    }

    fn eval(&self, e: i64) -> bool {
        if e < self.lo {
            self.below
        } else if e >= self.lo + self.table.len() as i64 {
            self.above
        } else {
            self.table[(e - self.lo) as usize]
        }
    }

    fn hi(&self) -> i64 {
        self.lo + self.table.len() as i64 - 1
    }

    /// Members of `{n : pred(E(n))}` as an eventually periodic set.
    fn over(&self, seq: &ExponentSequence) -> EPSet {
        let q = seq.period;
        let mut t = 0u64;
        for r in 0..q {
            let (start, slope) = (seq.start[r], seq.slope[r]);
            let settled = match slope.signum() {
                1 => (self.hi() - start).div_euclid(slope) + 1,
                -1 => (start - self.lo).div_euclid(-slope) + 1,
                _ => 0,
            }
            .max(0) as u64;
            t = t.max(r as u64 + 1 + settled * q as u64);
        }
        EPSet::from_fn(t.saturating_sub(1) as usize, q, |n| self.eval(seq.at(n)))
    }
}

fn span(s: Option<(i64, i64)>) -> Result<(i64, i64)> {
    s.ok_or_else(|| Error::InvalidArgument("empty cylinder set".into()))
}

enum Kind {
    Table(EPCompose),
    Exponent(ExponentSequence),
    Iterate(Box<Engine>, u64),
    Product(Vec<Engine>),
    VectorProduct(Box<Engine>, Vec<u64>),
    Tower(Box<Engine>, u64),
}

/// Prepared hitting-set evaluator mirroring a descriptor tree.
struct Engine {
    space: Space,
    kind: Kind,
}

impl Engine {
    fn new(sys: &SystemDescriptor) -> Result<Engine> {
        let kind = match sys {
            SystemDescriptor::Base { schedule, .. } => match exponent_sequence(schedule) {
                Some(seq) => Kind::Exponent(seq),
                None => Kind::Table(ep_compose(sys)?),
            },
            SystemDescriptor::Iterate { inner, n } => Kind::Iterate(Box::new(Engine::new(inner)?), *n),
            SystemDescriptor::Product(fs) => Kind::Product(fs.iter().map(Engine::new).collect::<Result<_>>()?),
            SystemDescriptor::VectorProduct { inner, a } => {
                Kind::VectorProduct(Box::new(Engine::new(inner)?), a.components().to_vec())
            }
            SystemDescriptor::Tower { inner, k } => Kind::Tower(Box::new(Engine::new(inner)?), *k),
        };
        Ok(Engine {
            space: sys.space(),
            kind,
        })
    }

    fn hitting(&self, a: &Region, b: &Region) -> Result<EPSet> {
        match &self.kind {
            Kind::Table(ep) => {
                let (Region::Set(OpenSet::Finite(x)), Region::Set(OpenSet::Finite(y))) = (a, b) else {
                    return Err(mismatch(&self.space, format!("{a}, {b}")));
                };
                let images: Vec<bool> = (1..=(ep.preperiod + ep.period) as u64)
                    .map(|n| match ep.form_at(n) {
                        ComposedForm::Table(t) => !x.image(&t).intersect(y).is_empty(),
                        _ => unreachable!("table systems compose to tables"),
                    })
                    .collect();
                let t = ep.preperiod as u64;
                let q = ep.period as u64;
                Ok(EPSet::from_fn(ep.preperiod, ep.period, |n| {
                    let idx = if n <= t + q { n - 1 } else { t + (n - t - 1) % q };
                    images[idx as usize]
                }))
            }
            Kind::Exponent(seq) => {
                let (Region::Set(x), Region::Set(y)) = (a, b) else {
                    return Err(mismatch(&self.space, format!("{a}, {b}")));
                };
                Ok(ExponentPredicate::new(&self.space, x, y)?.over(seq))
            }
            Kind::Iterate(inner, k) => Ok(inner.hitting(a, b)?.dilate_preimage(*k)),
            Kind::Product(fs) => {
                let (xs, ys) = boxes(&self.space, a, b, fs.len())?;
                let mut acc = EPSet::naturals();
                for (f, (x, y)) in fs.iter().zip(xs.iter().zip(ys)) {
                    acc = acc.intersect(&f.hitting(x, y)?);
                }
                Ok(acc)
            }
            Kind::VectorProduct(inner, comps) => {
                let (xs, ys) = boxes(&self.space, a, b, comps.len())?;
                let mut acc = EPSet::naturals();
                for (aj, (x, y)) in comps.iter().zip(xs.iter().zip(ys)) {
                    acc = acc.intersect(&inner.hitting(x, y)?.dilate_preimage(*aj));
                }
                Ok(acc)
            }
            Kind::Tower(inner, k) => {
                let (xs, ys) = boxes(&self.space, a, b, 2)?;
                let (Region::Set(OpenSet::Finite(from)), Region::Set(OpenSet::Finite(to))) = (&xs[1], &ys[1]) else {
                    return Err(mismatch(&self.space, format!("{a}, {b}")));
                };
                let base = inner.hitting(&xs[0], &ys[0])?;
                let at_zero = xs[0].meets(&ys[0])?;
                let within = |m: u64| if m == 0 { at_zero } else { base.contains(m) };
                let k = *k;
                // n reaches floor (n+i) mod k after ⌊(n+i)/k⌋ base steps
                Ok(EPSet::from_fn(
                    k as usize * (base.preperiod() + 1),
                    k as usize * base.period(),
                    |n| {
                        from.points().any(|i| {
                            let j = n + i as u64;
                            to.contains((j % k) as usize) && within(j / k)
                        })
                    },
                ))
            }
        }
    }
}

fn boxes<'r>(space: &Space, a: &'r Region, b: &'r Region, len: usize) -> Result<(&'r [Region], &'r [Region])> {
    match (a.factors(), b.factors()) {
        (Some(x), Some(y)) if x.len() == len && y.len() == len => Ok((x, y)),
        _ => Err(mismatch(space, format!("{a}, {b}"))),
    }
}

/// One factor of the flattened phase space: an atom system read at a
/// dilated time scale.
struct Atom<'e> {
    engine: &'e Engine,
    dilation: u64,
}

fn flatten<'e>(engine: &'e Engine, dilation: u64, out: &mut Vec<Atom<'e>>) {
    match &engine.kind {
        Kind::Iterate(inner, k) => flatten(inner, dilation * k, out),
        Kind::Product(fs) => fs.iter().for_each(|f| flatten(f, dilation, out)),
        Kind::VectorProduct(inner, comps) => comps.iter().for_each(|aj| flatten(inner, dilation * aj, out)),
        Kind::Table(_) | Kind::Exponent(_) | Kind::Tower(..) => out.push(Atom { engine, dilation }),
    }
}

/// Minimal test pairs of one coordinate with their hitting sets.
struct CoordinateSets {
    pairs: Vec<(Region, Region)>,
    sets: Vec<EPSet>,
}

fn coordinate_sets(sys: &SystemDescriptor, resolution: u32) -> Result<Vec<CoordinateSets>> {
    let engine = Engine::new(sys)?;
    let mut atoms = Vec::new();
    flatten(&engine, 1, &mut atoms);
    let mut undilated: HashMap<*const Engine, CoordinateSets> = HashMap::new();
    let mut out = Vec::with_capacity(atoms.len());
    for atom in atoms {
        let base = match undilated.entry(atom.engine as *const Engine) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => {
                let basis = minimal_basis(&atom.engine.space, resolution)?;
                let mut pairs = Vec::with_capacity(basis.len() * basis.len());
                let mut sets = Vec::with_capacity(basis.len() * basis.len());
                for a in &basis {
                    for b in &basis {
                        sets.push(atom.engine.hitting(a, b)?);
                        pairs.push((a.clone(), b.clone()));
                    }
                }
                e.insert(CoordinateSets { pairs, sets })
            }
        };
        out.push(CoordinateSets {
            pairs: base.pairs.clone(),
            sets: base.sets.iter().map(|s| s.dilate_preimage(atom.dilation)).collect(),
        });
    }
    Ok(out)
}

/// Tuple of test pairs (one per coordinate) whose hitting sets have empty
/// intersection.
fn find_unhit(coords: &[CoordinateSets]) -> Result<Option<Vec<(Region, Region)>>> {
    for (j, c) in coords.iter().enumerate() {
        if let Some(i) = c.sets.iter().position(EPSet::is_empty) {
            return Ok(Some(
                coords
                    .iter()
                    .enumerate()
                    .map(|(l, d)| if l == j { c.pairs[i].clone() } else { d.pairs[0].clone() })
                    .collect(),
            ));
        }
    }
    let all = || coords.iter().flat_map(|c| c.sets.iter());
    let t = all().map(EPSet::preperiod).max().unwrap_or(0);
    let q = all().map(EPSet::period).fold(1, lcm);
    let universe = t + q;
    if universe > MAX_UNIVERSE {
        return Err(Error::Unsupported(format!("time universe {universe} too large")));
    }
    let game: Vec<Coordinate> = coords
        .iter()
        .map(|c| {
            Coordinate::new(c.sets.iter().enumerate().map(|(i, s)| {
                let mut bits = Bits::new(universe);
                s.to_bits(universe)
                    .iter()
                    .enumerate()
                    .filter(|(_, &m)| m)
                    .for_each(|(n, _)| bits.set(n));
                (bits, i)
            }))
        })
        .collect();
    Ok(find_empty_choice(&Bits::full(universe), &game)
        .map(|choice| choice.iter().zip(coords).map(|(&i, c)| c.pairs[i].clone()).collect()))
}

const EMPTY: &str = "N(A,B)=∅";

/// Every pair of minimal test opens has a nonempty hitting set.
pub fn is_transitive(sys: &SystemDescriptor, resolution: u32) -> Result<Verdict> {
    let coords = coordinate_sets(sys, resolution)?;
    Ok(match find_unhit(&coords)? {
        Some(pairs) => Verdict::refuted(EMPTY, pairs, Some(resolution)),
        None => Verdict::Proven { resolution },
    })
}

/// Transitivity of `f^{(a_1)} × … × f^{(a_p)}` on boxes.
pub fn is_vector_transitive(sys: &SystemDescriptor, a: &Vector, resolution: u32) -> Result<Verdict> {
    let product = SystemDescriptor::vector_product(sys.clone(), a.clone());
    Ok(is_transitive(&product, resolution)?.located(&format!("a={a}")))
}

/// Checks `a = (1, …, p)` for `p ≤ p_max`; passing is bounded evidence.
pub fn is_multi_transitive(sys: &SystemDescriptor, p_max: usize, resolution: u32) -> Result<Verdict> {
    for p in 1..=p_max {
        let v = is_vector_transitive(sys, &Vector::ascending(p), resolution)?;
        if v.is_refuted() {
            return Ok(v.located(&format!("p={p}")));
        }
    }
    Ok(Verdict::unknown(format!("p_max={p_max}"), Some(resolution)))
}

/// Checks every vector of length `≤ p_max` with components `≤ a_max`.
pub fn is_strongly_multi_transitive(
    sys: &SystemDescriptor,
    p_max: usize,
    a_max: u64,
    resolution: u32,
) -> Result<Verdict> {
    for a in Vector::enumerate(p_max, a_max) {
        let v = is_vector_transitive(sys, &a, resolution)?;
        if v.is_refuted() {
            return Ok(v);
        }
    }
    Ok(Verdict::unknown(
        format!("p_max={p_max},a_max={a_max}"),
        Some(resolution),
    ))
}

/// Transitivity of every iterate `n ≤ n_max`.
pub fn is_totally_transitive(sys: &SystemDescriptor, n_max: u64, resolution: u32) -> Result<Verdict> {
    for n in 1..=n_max {
        let v = is_transitive(&SystemDescriptor::iterate(sys.clone(), n)?, resolution)?;
        if v.is_refuted() {
            return Ok(v.located(&format!("n={n}")));
        }
    }
    Ok(Verdict::unknown(format!("n_max={n_max}"), Some(resolution)))
}

/// Transitivity of the `k`-fold self product, `k ≥ 2`.
pub fn is_weakly_mixing(sys: &SystemDescriptor, order: usize, resolution: u32) -> Result<Verdict> {
    if order < 2 {
        return Err(Error::InvalidArgument("weak mixing order must be >= 2".into()));
    }
    is_vector_transitive(sys, &Vector::ones(order), resolution)
}

/// Every hitting set of minimal test boxes is cofinite.
///
/// A box hitting set is the intersection of coordinate sets, so it is
/// cofinite exactly when each coordinate set is.
pub fn is_strongly_mixing(sys: &SystemDescriptor, resolution: u32) -> Result<Verdict> {
    let coords = coordinate_sets(sys, resolution)?;
    for (j, c) in coords.iter().enumerate() {
        if let Some(i) = c.sets.iter().position(|s| !s.is_cofinite()) {
            let pairs = coords
                .iter()
                .enumerate()
                .map(|(l, d)| if l == j { c.pairs[i].clone() } else { d.pairs[0].clone() })
                .collect();
            return Ok(Verdict::refuted(
                format!("N(A,B)={} not cofinite", c.sets[i]),
                pairs,
                Some(resolution),
            ));
        }
    }
    Ok(Verdict::Proven { resolution })
}

/// Every hitting set of minimal test boxes lies in `F[a]`.
pub fn is_family_transitive(sys: &SystemDescriptor, a: &Vector, resolution: u32) -> Result<Verdict> {
    let coords = coordinate_sets(sys, resolution)?;
    // the family is upward closed: only inclusion-minimal coordinate sets matter
    let minimal: Vec<Vec<usize>> = coords
        .iter()
        .map(|c| {
            let mut keep: Vec<usize> = Vec::new();
            for (i, s) in c.sets.iter().enumerate() {
                if keep.iter().any(|&k| c.sets[k] == *s) {
                    continue;
                }
                if !c.sets.iter().any(|o| o != s && o.is_subset(s)) {
                    keep.push(i);
                }
            }
            keep
        })
        .collect();
    let total = minimal.iter().try_fold(1usize, |acc, m| acc.checked_mul(m.len()));
    if total.is_none_or(|t| t > MAX_COMBINATIONS) {
        return Err(Error::Unsupported("too many box combinations".into()));
    }
    let mut choice = vec![0usize; coords.len()];
    loop {
        let mut set = EPSet::naturals();
        for (j, c) in coords.iter().enumerate() {
            set = set.intersect(&c.sets[minimal[j][choice[j]]]);
        }
        if let Some(offset) = set.family_obstruction(a) {
            let pairs = coords
                .iter()
                .enumerate()
                .map(|(j, c)| c.pairs[minimal[j][choice[j]]].clone())
                .collect();
            let offset: Vec<String> = offset.iter().map(u64::to_string).collect();
            return Ok(Verdict::refuted(
                format!("a={a} N(A,B)={set} offset=({})", offset.join(",")),
                pairs,
                Some(resolution),
            ));
        }
        let mut j = 0;
        loop {
            if j == coords.len() {
                return Ok(Verdict::Proven { resolution });
            }
            choice[j] += 1;
            if choice[j] < minimal[j].len() {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
    }
}

/// Every minimal test hitting set lies in `F[(1..p)]` for `p ≤ p_max`.
pub fn is_family_infty_transitive(sys: &SystemDescriptor, p_max: usize, resolution: u32) -> Result<Verdict> {
    for p in 1..=p_max {
        let v = is_family_transitive(sys, &Vector::ascending(p), resolution)?;
        if v.is_refuted() {
            return Ok(v.located(&format!("p={p}")));
        }
    }
    Ok(Verdict::unknown(format!("p_max={p_max}"), Some(resolution)))
}

/// Transitivity of `sys_a × sys_b`.
pub fn weakly_disjoint(sys_a: &SystemDescriptor, sys_b: &SystemDescriptor, resolution: u32) -> Result<Verdict> {
    is_transitive(
        &SystemDescriptor::product(vec![sys_a.clone(), sys_b.clone()])?,
        resolution,
    )
}

/// Outcome of a mild-mixing battery run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatteryReport {
    pub verdict: Verdict,
    /// Members skipped because they are not transitive at the resolution.
    pub skipped: Vec<SystemDescriptor>,
}

/// Weak disjointness from each transitive battery member. A failure is
/// definitive; passing every member is evidence only.
pub fn mild_mixing_battery(
    sys: &SystemDescriptor,
    battery: &[SystemDescriptor],
    resolution: u32,
) -> Result<BatteryReport> {
    let mut skipped = Vec::new();
    for member in battery {
        if !is_transitive(member, resolution)?.is_proven() {
            skipped.push(member.clone());
            continue;
        }
        let v = weakly_disjoint(sys, member, resolution)?;
        if v.is_refuted() {
            return Ok(BatteryReport {
                verdict: v.located(&format!("member={member}")),
                skipped,
            });
        }
    }
    let checked = battery.len() - skipped.len();
    Ok(BatteryReport {
        verdict: Verdict::unknown(format!("battery={checked}/{}", battery.len()), Some(resolution)),
        skipped,
    })
}

fn with_towers(members: Vec<SystemDescriptor>, heights: &[u64]) -> Vec<SystemDescriptor> {
    let mut out = Vec::new();
    for m in members {
        out.push(m.clone());
        for &k in heights {
            out.push(tower(m.clone(), k).expect("valid height"));
        }
    }
    out
}

/// The two-point rotation, the constant shift, the two growing-exponent
/// shift systems, and towers of height 2 and 3 over each. Finite members
/// come first: they are the cheapest to test against.
pub fn default_battery() -> Vec<SystemDescriptor> {
    with_towers(
        vec![
            fixtures::rotation(2),
            fixtures::constant_shift(),
            fixtures::swing_shift(4),
            fixtures::swing_shift(2),
        ],
        &[2, 3],
    )
}

/// Finite rotations of order `2..=max_order` with their towers, followed by
/// the rest of the default battery.
pub fn enriched_battery(max_order: usize) -> Vec<SystemDescriptor> {
    let mut out = with_towers((2..=max_order).map(fixtures::rotation).collect(), &[2, 3]);
    let rest: Vec<SystemDescriptor> = default_battery().into_iter().filter(|m| !out.contains(m)).collect();
    out.extend(rest);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::{rat, ArcSet, CylinderSet, FiniteSubset};
    use crate::systems::composed;
    use fixtures::*;

    fn arc(a: (i64, i64), b: (i64, i64)) -> Region {
        Region::Set(OpenSet::Arcs(ArcSet::arc(rat(a.0, a.1), rat(b.0, b.1)).unwrap()))
    }

    fn fin(n: usize, pts: &[usize]) -> Region {
        Region::Set(OpenSet::Finite(FiniteSubset::from_points(n, pts).unwrap()))
    }

    fn cyl(lo: i64, w: &[u8]) -> Region {
        Region::Set(OpenSet::Cylinders(CylinderSet::single(2, lo, w.to_vec()).unwrap()))
    }

    /// Direct evaluation of `f_1^n(A) ∩ B` for `n = 1..=h`.
    fn direct(sys: &SystemDescriptor, a: &Region, b: &Region, h: u64) -> Vec<bool> {
        (1..=h)
            .map(|n| composed(sys, n).hits(&sys.space(), a, b).unwrap())
            .collect()
    }

    #[test]
    fn identity_hits_everywhere() {
        let n = hitting_set(&identity(2), &fin(2, &[0]), &fin(2, &[0])).unwrap();
        assert_eq!(n, EPSet::naturals());
        assert_eq!(n.to_string(), "ep{t=0; trans=; q=1; R={0}}");
    }

    #[test]
    fn pair_growing_odd_times_from_three() {
        let sys = pair_growing_circle(2);
        let n = hitting_set(&sys, &arc((0, 1), (1, 4)), &arc((1, 2), (3, 4))).unwrap();
        assert_eq!(n, "ep{t=1; trans=; q=2; R={1}}".parse().unwrap());
        let bits = direct(&sys, &arc((0, 1), (1, 4)), &arc((1, 2), (3, 4)), 200);
        assert_eq!(bits, n.to_bits(200));
    }

    #[test]
    fn swing_shift_cylinder_returns_always() {
        let a = cyl(0, &[0]);
        let n = hitting_set(&swing_shift(4), &a, &a).unwrap();
        assert_eq!(n, EPSet::naturals());
    }

    #[test]
    fn exponent_route_matches_direct_evaluation() {
        let systems = [
            swing_shift(4),
            swing_shift(2),
            swing_shift(3),
            pair_growing_circle(2),
            pair_growing_circle(3),
        ];
        for sys in &systems {
            let basis = minimal_basis(&sys.space(), 2).unwrap();
            for a in basis.iter().take(6) {
                for b in basis.iter().rev().take(6) {
                    let n = hitting_set(sys, a, b).unwrap();
                    assert_eq!(n.to_bits(120), direct(sys, a, b, 120), "{sys} {a} {b}");
                }
            }
        }
        let sys = constant_circle(3);
        for a in [arc((0, 1), (1, 30)), arc((1, 2), (2, 3)), arc((9, 10), (1, 10))] {
            for b in [arc((0, 1), (1, 50)), arc((1, 3), (1, 2)), arc((99, 100), (1, 1))] {
                let n = hitting_set(&sys, &a, &b).unwrap();
                assert_eq!(n.to_bits(40), direct(&sys, &a, &b, 40), "{a} {b}");
            }
        }
    }

    #[test]
    fn tower_route_matches_direct_evaluation() {
        for base in [
            rotation(3),
            finite_tables(3, vec![vec![1, 1, 0], vec![2, 0, 1]]),
            swing_shift(4),
        ] {
            for k in 1..=3 {
                let sys = tower(base.clone(), k).unwrap();
                let basis = minimal_basis(&sys.space(), 1).unwrap();
                for a in basis.iter().take(8) {
                    for b in basis.iter().take(8) {
                        let n = hitting_set(&sys, a, b).unwrap();
                        assert_eq!(n.to_bits(80), direct(&sys, a, b, 80), "{sys} {a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn transitivity_examples() {
        let v = is_transitive(&identity(2), 1).unwrap();
        assert_eq!(v.witness().unwrap().pairs, vec![(fin(2, &[0]), fin(2, &[1]))]);
        assert!(is_transitive(&swing_shift(4), 1).unwrap().is_proven());
        assert!(is_transitive(&pair_growing_circle(2), 4).unwrap().is_proven());
    }

    #[test]
    fn vector_transitivity_examples() {
        let v = is_vector_transitive(&pair_growing_circle(2), &Vector::new(vec![1, 2]).unwrap(), 4).unwrap();
        assert!(v.is_refuted(), "{v}");
        let v = is_vector_transitive(&swing_shift(4), &Vector::new(vec![1, 2]).unwrap(), 1).unwrap();
        assert!(v.is_proven(), "{v}");
        for sys in [identity(2), rotation(3), swing_shift(4), pair_growing_circle(2)] {
            let one = is_vector_transitive(&sys, &Vector::ones(1), 2).unwrap();
            let plain = is_transitive(&sys, 2).unwrap();
            assert_eq!(one.is_proven(), plain.is_proven());
        }
    }

    #[test]
    fn multi_transitivity_examples() {
        let v = is_multi_transitive(&pair_growing_circle(2), 3, 4).unwrap();
        assert!(v.to_string().starts_with("REFUTED witness=[p=2 a=(1,2)"), "{v}");
        let v = is_multi_transitive(&swing_shift(4), 3, 1).unwrap();
        assert_eq!(v.to_string(), "UNKNOWN bound=p_max=3@res=1");
        assert!(is_multi_transitive(&identity(2), 2, 1)
            .unwrap()
            .to_string()
            .contains("p=1"));
    }

    #[test]
    fn strong_multi_transitivity_examples() {
        assert!(is_strongly_multi_transitive(&swing_shift(4), 2, 3, 1)
            .unwrap()
            .is_unknown());
        let v = is_strongly_multi_transitive(&pair_growing_circle(2), 2, 2, 4).unwrap();
        assert!(v.to_string().contains("[a=(2) "), "{v}");
        assert!(is_strongly_multi_transitive(&identity(1), 2, 3, 1)
            .unwrap()
            .is_unknown());
    }

    #[test]
    fn total_transitivity_examples() {
        assert!(is_totally_transitive(&swing_shift(4), 4, 1).unwrap().is_unknown());
        assert!(is_totally_transitive(&pair_growing_circle(2), 4, 4)
            .unwrap()
            .to_string()
            .contains("[n=2"));
        assert!(is_totally_transitive(&identity(2), 4, 1)
            .unwrap()
            .to_string()
            .contains("[n=1"));
    }

    #[test]
    fn mixing_examples() {
        assert!(is_weakly_mixing(&swing_shift(4), 2, 1).unwrap().is_proven());
        assert!(is_weakly_mixing(&identity(2), 2, 1).unwrap().is_refuted());
        assert!(is_weakly_mixing(&swing_shift(2), 2, 1).unwrap().is_proven());
        assert!(is_weakly_mixing(&swing_shift(4), 1, 1).is_err());
        assert!(is_strongly_mixing(&constant_shift(), 1).unwrap().is_proven());
        assert!(is_strongly_mixing(&pair_growing_circle(2), 4).unwrap().is_refuted());
        assert!(is_strongly_mixing(&identity(2), 1).unwrap().is_refuted());
    }

    #[test]
    fn family_examples() {
        let a = Vector::new(vec![1, 2]).unwrap();
        assert!(is_family_transitive(&pair_growing_circle(2), &a, 4)
            .unwrap()
            .is_refuted());
        assert!(is_family_transitive(&swing_shift(4), &a, 1).unwrap().is_proven());
        assert!(
            is_family_transitive(&constant_shift(), &Vector::new(vec![3, 1, 2]).unwrap(), 1)
                .unwrap()
                .is_proven()
        );
    }

    #[test]
    fn disjointness_examples() {
        assert!(weakly_disjoint(&swing_shift(4), &swing_shift(4), 1)
            .unwrap()
            .is_proven());
        assert!(weakly_disjoint(&swing_shift(4), &identity(2), 1).unwrap().is_refuted());
        assert!(weakly_disjoint(&swing_shift(2), &swing_shift(3), 1)
            .unwrap()
            .is_proven());
    }

    #[test]
    fn battery_examples() {
        let battery = default_battery();
        assert!(mild_mixing_battery(&swing_shift(4), &battery, 1)
            .unwrap()
            .verdict
            .is_unknown());
        assert!(mild_mixing_battery(&identity(2), &battery, 1)
            .unwrap()
            .verdict
            .is_refuted());
        assert!(mild_mixing_battery(&pair_growing_circle(2), &battery, 4)
            .unwrap()
            .verdict
            .is_refuted());
    }
}
