//! Open subsets of the circle `ℝ/ℤ` as finite unions of open arcs with
//! rational endpoints.
//!
//! An arc is stored lifted: `0 <= lo < 1` and `lo < hi <= lo + 1`, so an arc
//! crossing 0 has `hi > 1` and the arc `(a, a + 1)` is the circle minus `{a}`.
//! Set operations go through a "line form": disjoint open intervals of
//! `[0, 1]` plus a flag recording whether 0 itself is covered.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

fn pow(p: u32, e: u32) -> Rational {
    Rational::from_integer(BigInt::from(p).pow(e))
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    lo: Rational,
    hi: Rational,
}

impl Arc {
    /// Open arc from `lo` counter-clockwise to `hi`. Endpoints lie in
    /// `[0, 1]`; `hi < lo` wraps through 0.
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        let unit = Rational::one();
        let in_range = |x: &Rational| !x.is_negative() && *x <= unit;
        if !in_range(&lo) || !in_range(&hi) {
            return Err(Error::InvalidArgument(format!(
                "arc endpoints must lie in [0,1]: ({lo}, {hi})"
            )));
        }
        let lo = frac(&lo);
        let hi = if hi == unit { unit.clone() } else { hi };
        if lo == hi {
            return Err(Error::InvalidArgument(format!("degenerate arc ({lo}, {hi})")));
        }
        let hi = if hi < lo { hi + unit } else { hi };
        Ok(Arc { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    /// Upper endpoint, reduced into `(0, 1]`.
    pub fn hi(&self) -> Rational {
        if self.hi > Rational::one() {
            &self.hi - Rational::one()
        } else {
            self.hi.clone()
        }
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn contains_point(&self, theta: &Rational) -> bool {
        let t = frac(theta);
        let t1 = &t + Rational::one();
        (self.lo < t && t < self.hi) || (self.lo < t1 && t1 < self.hi)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "arc({},{})", self.lo, self.hi())
    }
}

#[derive(Debug, Clone, Default)]
struct LineForm {
    intervals: Vec<(Rational, Rational)>,
    zero: bool,
}

impl LineForm {
    fn normalized(mut self) -> LineForm {
        self.intervals.retain(|(a, b)| a < b);
        self.intervals.sort();
        let mut merged: Vec<(Rational, Rational)> = Vec::new();
        for (a, b) in self.intervals {
            match merged.last_mut() {
                Some((_, hi)) if a < *hi => {
                    if b > *hi {
                        *hi = b;
                    }
                }
                _ => merged.push((a, b)),
            }
        }
        LineForm {
            intervals: merged,
            zero: self.zero,
        }
    }
}

/// Canonical finite union of open arcs: disjoint, sorted by `lo`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ArcSet {
    full: bool,
    arcs: Vec<Arc>,
}

impl ArcSet {
    pub fn empty() -> Self {
        ArcSet {
            full: false,
            arcs: Vec::new(),
        }
    }

    pub fn full() -> Self {
        ArcSet {
            full: true,
            arcs: Vec::new(),
        }
    }

    pub fn new(arcs: Vec<Arc>) -> Self {
        let mut line = LineForm::default();
        for arc in &arcs {
            push_arc(&mut line, arc);
        }
        ArcSet::from_line(line)
    }

    pub fn arc(lo: Rational, hi: Rational) -> Result<Self> {
        Ok(ArcSet::new(vec![Arc::new(lo, hi)?]))
    }

    pub fn is_full(&self) -> bool {
        self.full
    }

    pub fn is_empty(&self) -> bool {
        !self.full && self.arcs.is_empty()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn total_length(&self) -> Rational {
        if self.full {
            Rational::one()
        } else {
            self.arcs.iter().map(Arc::length).sum()
        }
    }

    pub fn max_arc_length(&self) -> Rational {
        if self.full {
            return Rational::one();
        }
        self.arcs.iter().map(Arc::length).max().unwrap_or_else(Rational::zero)
    }

    fn to_line(&self) -> LineForm {
        let mut line = LineForm::default();
        if self.full {
            line.intervals.push((Rational::zero(), Rational::one()));
            line.zero = true;
        } else {
            for arc in &self.arcs {
                push_arc(&mut line, arc);
            }
        }
        line.normalized()
    }

    fn from_line(line: LineForm) -> ArcSet {
        let line = line.normalized();
        let mut intervals = line.intervals;
        if line.zero && !intervals.is_empty() {
            if intervals.len() == 1 {
                return ArcSet::full();
            }
            let (_, first_hi) = intervals.remove(0);
            let (last_lo, _) = intervals.pop().expect("two intervals around 0");
            intervals.push((last_lo, first_hi + Rational::one()));
        }
        let mut arcs: Vec<Arc> = intervals.into_iter().map(|(lo, hi)| Arc { lo, hi }).collect();
        arcs.sort();
        ArcSet { full: false, arcs }
    }

    pub fn intersect(&self, other: &ArcSet) -> ArcSet {
        let a = self.to_line();
        let b = other.to_line();
        let mut out = LineForm {
            intervals: Vec::new(),
            zero: a.zero && b.zero,
        };
        for (a0, a1) in &a.intervals {
            for (b0, b1) in &b.intervals {
                let lo = a0.max(b0).clone();
                let hi = a1.min(b1).clone();
                if lo < hi {
                    out.intervals.push((lo, hi));
                }
            }
        }
        ArcSet::from_line(out)
    }

    pub fn union(&self, other: &ArcSet) -> ArcSet {
        let mut a = self.to_line();
        let b = other.to_line();
        a.intervals.extend(b.intervals);
        a.zero |= b.zero;
        ArcSet::from_line(a)
    }

    pub fn meets(&self, other: &ArcSet) -> bool {
        !self.intersect(other).is_empty()
    }

    pub fn contains_point(&self, theta: &Rational) -> bool {
        self.full || self.arcs.iter().any(|a| a.contains_point(theta))
    }

    /// Forward image under `θ ↦ p^e θ (mod 1)` for `e >= 0`, or the scaling
    /// `θ ↦ θ / p^{-e}` of `[0, 1)` for `e < 0`. Expanding images that cover
    /// all but finitely many points saturate to the full circle.
    pub fn image_power(&self, e: i64, p: u32) -> ArcSet {
        if e == 0 || self.is_empty() {
            return self.clone();
        }
        if e > 0 {
            let m = pow(p, e as u32);
            if self.full {
                return ArcSet::full();
            }
            let mut line = LineForm::default();
            for arc in &self.arcs {
                let len = arc.length() * &m;
                if len >= Rational::one() {
                    return ArcSet::full();
                }
                let lo = frac(&(&arc.lo * &m));
                let hi = &lo + len;
                push_arc(&mut line, &Arc { lo, hi });
            }
            ArcSet::from_line(line)
        } else {
            let d = pow(p, (-e) as u32);
            let line = self.to_line();
            ArcSet::from_line(LineForm {
                intervals: line.intervals.into_iter().map(|(a, b)| (a / &d, b / &d)).collect(),
                zero: false,
            })
        }
    }

    /// Preimage under the same maps as [`ArcSet::image_power`], reduced to its
    /// interior.
    pub fn preimage_power(&self, e: i64, p: u32) -> ArcSet {
        if e == 0 || self.is_empty() {
            return self.clone();
        }
        if e > 0 {
            if self.full {
                return ArcSet::full();
            }
            let m = pow(p, e as u32);
            let count: u64 = u64::from(p).pow(e as u32);
            let mut line = LineForm::default();
            for arc in &self.arcs {
                for j in 0..count {
                    let j = Rational::from_integer(BigInt::from(j));
                    let lifted = Arc {
                        lo: (&arc.lo + &j) / &m,
                        hi: (&arc.hi + &j) / &m,
                    };
                    push_arc(&mut line, &lifted);
                }
            }
            ArcSet::from_line(line)
        } else {
            let d = pow(p, (-e) as u32);
            let bound = Rational::one() / &d;
            let line = self.to_line();
            let intervals = line
                .intervals
                .into_iter()
                .filter_map(|(a, b)| {
                    let hi = b.min(bound.clone());
                    (a < hi).then(|| (a * &d, hi * &d))
                })
                .collect();
            ArcSet::from_line(LineForm { intervals, zero: false })
        }
    }

    /// Smallest positive breakpoint of the line form and whether the set
    /// contains an interval `(0, ε)`. Governs strongly contracting images.
    pub(crate) fn near_zero(&self) -> Option<(Rational, bool)> {
        let line = self.to_line();
        let (a, b) = line.intervals.first()?;
        if a.is_zero() {
            Some((b.clone(), true))
        } else {
            Some((a.clone(), false))
        }
    }
}

fn push_arc(line: &mut LineForm, arc: &Arc) {
    let unit = Rational::one();
    let lo = frac(&arc.lo);
    let hi = &arc.hi - (&arc.lo - &lo);
    if hi <= unit {
        line.intervals.push((lo, hi));
    } else {
        line.intervals.push((lo, unit.clone()));
        line.intervals.push((Rational::zero(), hi - unit));
        line.zero = true;
    }
}

impl fmt::Display for ArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.full {
            return write!(f, "circle");
        }
        if self.arcs.is_empty() {
            return write!(f, "arcs{{}}");
        }
        for (i, a) in self.arcs.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(a: (i64, i64), b: (i64, i64)) -> ArcSet {
        ArcSet::arc(rat(a.0, a.1), rat(b.0, b.1)).unwrap()
    }

    #[test]
    fn interval_intersection() {
        let got = arc((0, 1), (1, 4)).intersect(&arc((1, 8), (1, 2)));
        assert_eq!(got, arc((1, 8), (1, 4)));
    }

    #[test]
    fn touching_arcs_do_not_meet() {
        assert!(arc((0, 1), (1, 4)).intersect(&arc((1, 4), (1, 2))).is_empty());
        assert!(!arc((0, 1), (1, 4)).meets(&arc((1, 4), (1, 2))));
    }

    #[test]
    fn wrapping_arc_covers_zero() {
        let w = arc((3, 4), (1, 4));
        assert!(w.contains_point(&rat(0, 1)));
        assert!(w.meets(&arc((0, 1), (1, 8))));
        assert!(w.meets(&arc((7, 8), (1, 1))));
        assert_eq!(w.total_length(), rat(1, 2));
        assert_eq!(w.to_string(), "arc(3/4,1/4)");
    }

    #[test]
    fn union_closing_the_circle_is_full() {
        let u = arc((0, 1), (3, 4)).union(&arc((1, 2), (1, 4)));
        assert!(u.is_full());
        let gap = arc((0, 1), (1, 2)).union(&arc((1, 2), (1, 1)));
        assert!(!gap.is_full());
        assert!(!gap.contains_point(&rat(1, 2)));
        assert!(!gap.contains_point(&rat(0, 1)));
    }

    #[test]
    fn doubling_short_arc() {
        assert_eq!(arc((0, 1), (1, 4)).image_power(1, 2), arc((0, 1), (1, 2)));
    }

    #[test]
    fn expanding_long_arc_saturates() {
        assert!(arc((0, 1), (1, 4)).image_power(2, 2).is_full());
        assert!(arc((0, 1), (1, 2)).image_power(1, 2).is_full());
    }

    #[test]
    fn doubling_preimage_has_two_branches() {
        let pre = arc((0, 1), (1, 2)).preimage_power(1, 2);
        assert_eq!(
            pre,
            ArcSet::new(vec![
                Arc::new(rat(0, 1), rat(1, 4)).unwrap(),
                Arc::new(rat(1, 2), rat(3, 4)).unwrap(),
            ])
        );
    }

    #[test]
    fn contraction_splits_at_zero() {
        let img = arc((3, 4), (1, 4)).image_power(-1, 2);
        assert_eq!(
            img,
            ArcSet::new(vec![
                Arc::new(rat(0, 1), rat(1, 8)).unwrap(),
                Arc::new(rat(3, 8), rat(1, 2)).unwrap(),
            ])
        );
        assert_eq!(ArcSet::full().image_power(-2, 2), arc((0, 1), (1, 4)));
    }

    #[test]
    fn contraction_preimage() {
        let pre = arc((1, 8), (3, 4)).preimage_power(-1, 2);
        assert_eq!(pre, arc((1, 4), (1, 1)));
        assert!(arc((1, 2), (3, 4)).preimage_power(-1, 2).is_empty());
    }

    #[test]
    fn rejects_degenerate_arcs() {
        assert!(Arc::new(rat(1, 4), rat(1, 4)).is_err());
        assert!(Arc::new(rat(-1, 4), rat(1, 4)).is_err());
        assert!(Arc::new(rat(0, 1), rat(5, 4)).is_err());
    }
}
