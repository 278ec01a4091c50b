//! Exact open-set calculus for full shifts, the circle and finite spaces,
//! together with images and preimages under the exactly representable maps.

mod circle;
mod cylinder;
mod finite;

use std::fmt;

pub use circle::{rat, Arc, ArcSet, Rational};
pub use cylinder::{Cylinder, CylinderSet, ShiftPoint};
pub use finite::{validate_table, FiniteSubset, MAX_POINTS};

use crate::error::{mismatch, Error, Result};
use num::{BigInt, One, Zero};

/// Phase space of a system. Products carry one factor per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Space {
    /// Two-sided full shift on `symbols` letters.
    Shift {
        symbols: u8,
    },
    /// The circle, with expanding base map `θ ↦ pθ`.
    Circle {
        p: u32,
    },
    /// `{0..n-1}` with the discrete topology.
    Finite {
        n: usize,
    },
    Product(Vec<Space>),
}

impl Space {
    pub fn validate(&self) -> Result<()> {
        match self {
            Space::Shift { symbols } if *symbols < 2 => {
                Err(Error::InvalidArgument("shift alphabet needs at least 2 symbols".into()))
            }
            Space::Circle { p } if *p < 2 => Err(Error::InvalidArgument("circle multiplier p must be >= 2".into())),
            Space::Finite { n } if *n == 0 || *n > MAX_POINTS => Err(Error::InvalidArgument(format!(
                "finite space size must lie in 1..={MAX_POINTS}"
            ))),
            Space::Product(fs) if fs.is_empty() => Err(Error::InvalidArgument("empty product space".into())),
            Space::Product(fs) => fs.iter().try_for_each(Space::validate),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Shift { symbols } => write!(f, "shift{{s={symbols}}}"),
            Space::Circle { p } => write!(f, "circle{{p={p}}}"),
            Space::Finite { n } => write!(f, "finite{{n={n}}}"),
            Space::Product(fs) => {
                write!(f, "product(")?;
                for (i, s) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Open subset of one of the three base spaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum OpenSet {
    Cylinders(CylinderSet),
    Arcs(ArcSet),
    Finite(FiniteSubset),
}

impl OpenSet {
    pub fn belongs_to(&self, space: &Space) -> bool {
        match (self, space) {
            (OpenSet::Cylinders(c), Space::Shift { symbols }) => c.symbols() == *symbols,
            (OpenSet::Arcs(_), Space::Circle { .. }) => true,
            (OpenSet::Finite(s), Space::Finite { n }) => s.size() == *n,
            _ => false,
        }
    }

    fn kind(&self) -> String {
        match self {
            OpenSet::Cylinders(c) => format!("shift{{s={}}}", c.symbols()),
            OpenSet::Arcs(_) => "circle".into(),
            OpenSet::Finite(s) => format!("finite{{n={}}}", s.size()),
        }
    }

    pub fn contains_point(&self, x: &Point) -> Result<bool> {
        match (self, x) {
            (OpenSet::Cylinders(c), Point::Symbolic(w)) => Ok(c.contains_point(w)),
            (OpenSet::Arcs(a), Point::Angle(t)) => Ok(a.contains_point(t)),
            (OpenSet::Finite(s), Point::Element(e)) => Ok(s.contains(*e)),
            _ => Err(mismatch(self.kind(), x)),
        }
    }
}

impl fmt::Display for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpenSet::Cylinders(c) => c.fmt(f),
            OpenSet::Arcs(a) => a.fmt(f),
            OpenSet::Finite(s) => s.fmt(f),
        }
    }
}

pub fn intersect(a: &OpenSet, b: &OpenSet) -> Result<OpenSet> {
    match (a, b) {
        (OpenSet::Cylinders(x), OpenSet::Cylinders(y)) if x.symbols() == y.symbols() => {
            Ok(OpenSet::Cylinders(x.intersect(y)?))
        }
        (OpenSet::Arcs(x), OpenSet::Arcs(y)) => Ok(OpenSet::Arcs(x.intersect(y))),
        (OpenSet::Finite(x), OpenSet::Finite(y)) if x.size() == y.size() => Ok(OpenSet::Finite(x.intersect(y))),
        _ => Err(mismatch(a.kind(), b.kind())),
    }
}

/// `a ∩ b ≠ ∅`, without materializing the intersection.
pub fn meets(a: &OpenSet, b: &OpenSet) -> Result<bool> {
    match (a, b) {
        (OpenSet::Cylinders(x), OpenSet::Cylinders(y)) if x.symbols() == y.symbols() => Ok(x.meets(y)),
        (OpenSet::Arcs(x), OpenSet::Arcs(y)) => Ok(x.meets(y)),
        (OpenSet::Finite(x), OpenSet::Finite(y)) if x.size() == y.size() => Ok(!x.intersect(y).is_empty()),
        _ => Err(mismatch(a.kind(), b.kind())),
    }
}

pub fn is_empty(a: &OpenSet) -> bool {
    match a {
        OpenSet::Cylinders(c) => c.is_empty(),
        OpenSet::Arcs(s) => s.is_empty(),
        OpenSet::Finite(s) => s.is_empty(),
    }
}

/// Exactly representable self-map of a base space.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MapDescriptor {
    /// `σ^e`.
    ShiftPower(i64),
    /// `θ ↦ p^e θ mod 1` for `e >= 0`; `θ ↦ θ / p^{-e}` on `[0,1)` for `e < 0`.
    CirclePower {
        e: i64,
        p: u32,
    },
    FiniteFunc(Vec<usize>),
}

impl MapDescriptor {
    pub fn identity_on(space: &Space) -> Result<MapDescriptor> {
        match space {
            Space::Shift { .. } => Ok(MapDescriptor::ShiftPower(0)),
            Space::Circle { p } => Ok(MapDescriptor::CirclePower { e: 0, p: *p }),
            Space::Finite { n } => Ok(MapDescriptor::FiniteFunc((0..*n).collect())),
            Space::Product(_) => Err(Error::InvalidArgument("maps act on base spaces only".into())),
        }
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        match (self, x) {
            (MapDescriptor::ShiftPower(e), Point::Symbolic(w)) => Ok(Point::Symbolic(w.shifted(*e))),
            (MapDescriptor::CirclePower { e, p }, Point::Angle(t)) => {
                let t = circle::frac(t);
                let scale = Rational::from_integer(BigInt::from(*p).pow(e.unsigned_abs() as u32));
                Ok(Point::Angle(if *e >= 0 {
                    circle::frac(&(t * scale))
                } else {
                    t / scale
                }))
            }
            (MapDescriptor::FiniteFunc(table), Point::Element(i)) if *i < table.len() => Ok(Point::Element(table[*i])),
            _ => Err(Error::NonRepresentablePoint(format!("{x} under {self:?}"))),
        }
    }
}

pub fn image(m: &MapDescriptor, a: &OpenSet) -> Result<OpenSet> {
    match (m, a) {
        (MapDescriptor::ShiftPower(e), OpenSet::Cylinders(c)) => Ok(OpenSet::Cylinders(c.shifted(*e))),
        (MapDescriptor::CirclePower { e, p }, OpenSet::Arcs(s)) => Ok(OpenSet::Arcs(s.image_power(*e, *p))),
        (MapDescriptor::FiniteFunc(t), OpenSet::Finite(s)) if t.len() == s.size() => Ok(OpenSet::Finite(s.image(t))),
        _ => Err(mismatch(format!("{m:?}"), a.kind())),
    }
}

pub fn preimage(m: &MapDescriptor, a: &OpenSet) -> Result<OpenSet> {
    match (m, a) {
        (MapDescriptor::ShiftPower(e), OpenSet::Cylinders(c)) => Ok(OpenSet::Cylinders(c.shifted(-*e))),
        (MapDescriptor::CirclePower { e, p }, OpenSet::Arcs(s)) => Ok(OpenSet::Arcs(s.preimage_power(*e, *p))),
        (MapDescriptor::FiniteFunc(t), OpenSet::Finite(s)) if t.len() == s.size() => Ok(OpenSet::Finite(s.preimage(t))),
        _ => Err(mismatch(format!("{m:?}"), a.kind())),
    }
}

fn all_words(symbols: u8, len: usize) -> Vec<Vec<u8>> {
    (0..len).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|w| {
                (0..symbols).map(move |c| {
                    let mut w = w.clone();
                    w.push(c);
                    w
                })
            })
            .collect()
    })
}

fn unit_arcs(q: u32) -> Vec<OpenSet> {
    let q = i64::from(q);
    (0..q)
        .map(|i| {
            let arc = Arc::new(rat(i, q), rat(i + 1, q)).expect("unit arc");
            OpenSet::Arcs(ArcSet::new(vec![arc]))
        })
        .collect()
}

/// Finite family of test opens: cylinders with window inside
/// `[-resolution, resolution]`, arcs of width `1/resolution`, or every
/// nonempty subset of a finite space.
pub fn subbasis(space: &Space, resolution: u32) -> Result<Vec<OpenSet>> {
    space.validate()?;
    match space {
        Space::Shift { symbols } => {
            let r = i64::from(resolution);
            let mut out = Vec::new();
            for lo in -r..=r {
                for hi in lo..=r {
                    for w in all_words(*symbols, (hi - lo + 1) as usize) {
                        out.push(OpenSet::Cylinders(CylinderSet::single(*symbols, lo, w)?));
                    }
                }
            }
            Ok(out)
        }
        Space::Circle { .. } => {
            if resolution == 0 {
                return Err(Error::InvalidArgument("circle resolution must be >= 1".into()));
            }
            Ok(unit_arcs(resolution))
        }
        Space::Finite { n } => {
            let top: u64 = if *n == 64 { u64::MAX } else { (1u64 << n) - 1 };
            (1..=top)
                .map(|m| Ok(OpenSet::Finite(FiniteSubset::new(*n, m)?)))
                .collect()
        }
        Space::Product(_) => Err(Error::InvalidArgument(
            "subbasis of a product is formed from boxes; use minimal_basis".into(),
        )),
    }
}

/// Inclusion-minimal members of [`subbasis`]: every member of the sub-basis
/// contains one of these. Properties that are monotone in the open sets
/// need only be checked here.
pub fn minimal_basis(space: &Space, resolution: u32) -> Result<Vec<Region>> {
    space.validate()?;
    match space {
        Space::Shift { symbols } => {
            let r = i64::from(resolution);
            all_words(*symbols, (2 * r + 1) as usize)
                .into_iter()
                .map(|w| Ok(Region::Set(OpenSet::Cylinders(CylinderSet::single(*symbols, -r, w)?))))
                .collect()
        }
        Space::Circle { .. } => Ok(subbasis(space, resolution)?.into_iter().map(Region::Set).collect()),
        Space::Finite { n } => (0..*n)
            .map(|x| Ok(Region::Set(OpenSet::Finite(FiniteSubset::singleton(*n, x)?))))
            .collect(),
        Space::Product(factors) => {
            let mut boxes: Vec<Vec<Region>> = vec![Vec::new()];
            for f in factors {
                let opts = minimal_basis(f, resolution)?;
                boxes = boxes
                    .into_iter()
                    .flat_map(|b| {
                        opts.iter().map(move |o| {
                            let mut b = b.clone();
                            b.push(o.clone());
                            b
                        })
                    })
                    .collect();
            }
            Ok(boxes.into_iter().map(Region::Box).collect())
        }
    }
}

/// Open set of a possibly product space: a base open or a box of opens.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Region {
    Set(OpenSet),
    Box(Vec<Region>),
}

impl Region {
    pub fn belongs_to(&self, space: &Space) -> bool {
        match (self, space) {
            (Region::Set(s), sp) => s.belongs_to(sp),
            (Region::Box(rs), Space::Product(fs)) => {
                rs.len() == fs.len() && rs.iter().zip(fs).all(|(r, f)| r.belongs_to(f))
            }
            _ => false,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Region::Set(s) => is_empty(s),
            Region::Box(rs) => rs.iter().any(Region::is_empty),
        }
    }

    pub fn meets(&self, other: &Region) -> Result<bool> {
        match (self, other) {
            (Region::Set(a), Region::Set(b)) => meets(a, b),
            (Region::Box(a), Region::Box(b)) if a.len() == b.len() => {
                for (x, y) in a.iter().zip(b) {
                    if !x.meets(y)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            _ => Err(mismatch(self, other)),
        }
    }

    pub fn intersect(&self, other: &Region) -> Result<Region> {
        match (self, other) {
            (Region::Set(a), Region::Set(b)) => Ok(Region::Set(intersect(a, b)?)),
            (Region::Box(a), Region::Box(b)) if a.len() == b.len() => Ok(Region::Box(
                a.iter().zip(b).map(|(x, y)| x.intersect(y)).collect::<Result<_>>()?,
            )),
            _ => Err(mismatch(self, other)),
        }
    }

    pub fn as_set(&self) -> Option<&OpenSet> {
        match self {
            Region::Set(s) => Some(s),
            Region::Box(_) => None,
        }
    }

    pub fn factors(&self) -> Option<&[Region]> {
        match self {
            Region::Box(rs) => Some(rs),
            Region::Set(_) => None,
        }
    }

    pub fn contains_point(&self, x: &Point) -> Result<bool> {
        match (self, x) {
            (Region::Set(s), p) => s.contains_point(p),
            (Region::Box(rs), Point::Tuple(ps)) if rs.len() == ps.len() => {
                for (r, p) in rs.iter().zip(ps) {
                    if !r.contains_point(p)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            _ => Err(mismatch(self, x)),
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Set(s) => s.fmt(f),
            Region::Box(rs) => {
                write!(f, "box(")?;
                for (i, r) in rs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{r}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Exactly representable point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Symbolic(ShiftPoint),
    /// Angle in turns; taken mod 1.
    Angle(Rational),
    Element(usize),
    Tuple(Vec<Point>),
}

impl Point {
    pub fn belongs_to(&self, space: &Space) -> bool {
        match (self, space) {
            (Point::Symbolic(w), Space::Shift { symbols }) => {
                w.left.iter().chain(&w.core).chain(&w.right).all(|c| c < symbols)
            }
            (Point::Angle(t), Space::Circle { .. }) => *t >= Rational::zero() && *t < Rational::one(),
            (Point::Element(x), Space::Finite { n }) => x < n,
            (Point::Tuple(ps), Space::Product(fs)) => {
                ps.len() == fs.len() && ps.iter().zip(fs).all(|(p, f)| p.belongs_to(f))
            }
            _ => false,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Symbolic(w) => w.fmt(f),
            Point::Angle(t) => write!(f, "{t}"),
            Point::Element(x) => write!(f, "{x}"),
            Point::Tuple(ps) => {
                write!(f, "(")?;
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
        }
    }
}
