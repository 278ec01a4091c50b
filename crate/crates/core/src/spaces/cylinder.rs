//! Cylinder sets of the two-sided full shift on `s` symbols.
//!
//! Index convention: the image of a point `x` under `σ` is `σ(x)_i = x_{i+1}`,
//! so `σ` moves a cylinder with window `[l, r]` to window `[l-1, r-1]`.

use std::fmt;

use crate::error::{Error, Result};

/// Gap positions filled by enumeration when two cylinders with separated
/// windows are intersected.
const MAX_GAP: i64 = 16;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cylinder {
    lo: i64,
    word: Vec<u8>,
}

impl Cylinder {
    pub fn new(lo: i64, word: Vec<u8>, symbols: u8) -> Result<Self> {
        if symbols < 2 {
            return Err(Error::InvalidArgument(format!(
                "alphabet size must be at least 2, got {symbols}"
            )));
        }
        if word.is_empty() {
            return Err(Error::InvalidArgument("cylinder word is empty".into()));
        }
        if let Some(&bad) = word.iter().find(|&&c| c >= symbols) {
            return Err(Error::InvalidArgument(format!(
                "symbol {bad} outside alphabet of size {symbols}"
            )));
        }
        Ok(Cylinder { lo, word })
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Last constrained index (inclusive).
    pub fn hi(&self) -> i64 {
        self.lo + self.word.len() as i64 - 1
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn symbol_at(&self, i: i64) -> Option<u8> {
        if i < self.lo || i > self.hi() {
            None
        } else {
            Some(self.word[(i - self.lo) as usize])
        }
    }

    /// Image under `σ^e`.
    pub fn shifted(&self, e: i64) -> Cylinder {
        Cylinder {
            lo: self.lo - e,
            word: self.word.clone(),
        }
    }

    pub fn meets(&self, other: &Cylinder) -> bool {
        let lo = self.lo.max(other.lo);
        let hi = self.hi().min(other.hi());
        (lo..=hi).all(|i| self.symbol_at(i) == other.symbol_at(i))
    }

    /// True when every point of `other` lies in `self`.
    pub fn contains(&self, other: &Cylinder) -> bool {
        self.lo >= other.lo
            && self.hi() <= other.hi()
            && (self.lo..=self.hi()).all(|i| self.symbol_at(i) == other.symbol_at(i))
    }

    pub fn contains_point(&self, x: &ShiftPoint) -> bool {
        (self.lo..=self.hi()).all(|i| Some(x.symbol(i)) == self.symbol_at(i))
    }

    /// Exact intersection as a union of contiguous cylinders.
    fn intersect(&self, other: &Cylinder, symbols: u8) -> Result<Vec<Cylinder>> {
        if !self.meets(other) {
            return Ok(Vec::new());
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let fixed: Vec<Option<u8>> = (lo..=hi)
            .map(|i| self.symbol_at(i).or_else(|| other.symbol_at(i)))
            .collect();
        let gap = fixed.iter().filter(|c| c.is_none()).count() as i64;
        if gap > MAX_GAP {
            return Err(Error::Unsupported(format!(
                "cylinder intersection with a gap of {gap} free positions"
            )));
        }
        let mut words = vec![Vec::with_capacity(fixed.len())];
        for slot in fixed {
            words = match slot {
                Some(c) => words
                    .into_iter()
                    .map(|mut w| {
                        w.push(c);
                        w
                    })
                    .collect(),
                None => words
                    .into_iter()
                    .flat_map(|w| {
                        (0..symbols).map(move |c| {
                            let mut w = w.clone();
                            w.push(c);
                            w
                        })
                    })
                    .collect(),
            };
        }
        Ok(words.into_iter().map(|word| Cylinder { lo, word }).collect())
    }
}

impl fmt::Display for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.lo)?;
        for c in &self.word {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Finite union of cylinders. Canonical: sorted, no component contains another.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CylinderSet {
    symbols: u8,
    components: Vec<Cylinder>,
}

impl CylinderSet {
    pub fn new(symbols: u8, components: Vec<Cylinder>) -> Self {
        let mut set = CylinderSet { symbols, components };
        set.canonicalize();
        set
    }

    pub fn empty(symbols: u8) -> Self {
        CylinderSet {
            symbols,
            components: Vec::new(),
        }
    }

    pub fn single(symbols: u8, lo: i64, word: Vec<u8>) -> Result<Self> {
        Ok(CylinderSet::new(symbols, vec![Cylinder::new(lo, word, symbols)?]))
    }

    pub fn symbols(&self) -> u8 {
        self.symbols
    }

    pub fn components(&self) -> &[Cylinder] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    fn canonicalize(&mut self) {
        self.components.sort();
        self.components.dedup();
        let all = std::mem::take(&mut self.components);
        self.components = all
            .iter()
            .filter(|c| !all.iter().any(|d| d != *c && d.contains(c)))
            .cloned()
            .collect();
    }

    pub fn meets(&self, other: &CylinderSet) -> bool {
        self.components
            .iter()
            .any(|a| other.components.iter().any(|b| a.meets(b)))
    }

    pub fn intersect(&self, other: &CylinderSet) -> Result<CylinderSet> {
        let mut out = Vec::new();
        for a in &self.components {
            for b in &other.components {
                out.extend(a.intersect(b, self.symbols)?);
            }
        }
        Ok(CylinderSet::new(self.symbols, out))
    }

    pub fn union(&self, other: &CylinderSet) -> CylinderSet {
        let mut all = self.components.clone();
        all.extend(other.components.iter().cloned());
        CylinderSet::new(self.symbols, all)
    }

    pub fn shifted(&self, e: i64) -> CylinderSet {
        CylinderSet {
            symbols: self.symbols,
            components: self.components.iter().map(|c| c.shifted(e)).collect(),
        }
    }

    /// Smallest window containing every component, if nonempty.
    pub fn span(&self) -> Option<(i64, i64)> {
        let lo = self.components.iter().map(Cylinder::lo).min()?;
        let hi = self.components.iter().map(Cylinder::hi).max()?;
        Some((lo, hi))
    }

    pub fn contains_point(&self, x: &ShiftPoint) -> bool {
        self.components.iter().any(|c| c.contains_point(x))
    }
}

impl fmt::Display for CylinderSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cyl{{")?;
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// Eventually periodic bi-infinite word: `core` starts at index `start`,
/// `right` repeats after the core and `left` repeats (outward) before it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShiftPoint {
    pub left: Vec<u8>,
    pub core: Vec<u8>,
    pub start: i64,
    pub right: Vec<u8>,
}

impl ShiftPoint {
    pub fn new(left: Vec<u8>, core: Vec<u8>, start: i64, right: Vec<u8>) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::NonRepresentablePoint(
                "shift point needs nonempty periodic tails".into(),
            ));
        }
        Ok(ShiftPoint {
            left,
            core,
            start,
            right,
        })
    }

    pub fn symbol(&self, i: i64) -> u8 {
        let end = self.start + self.core.len() as i64;
        if i < self.start {
            let k = (self.start - 1 - i) as usize;
            self.left[k % self.left.len()]
        } else if i >= end {
            let k = (i - end) as usize;
            self.right[k % self.right.len()]
        } else {
            self.core[(i - self.start) as usize]
        }
    }

    /// `σ^e(x)`, with `σ(x)_i = x_{i+1}`.
    pub fn shifted(&self, e: i64) -> ShiftPoint {
        ShiftPoint {
            start: self.start - e,
            ..self.clone()
        }
    }

    /// Symbols on a window, used for comparisons and rendering.
    pub fn window(&self, lo: i64, hi: i64) -> Vec<u8> {
        (lo..=hi).map(|i| self.symbol(i)).collect()
    }
}

impl fmt::Display for ShiftPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = |w: &[u8]| w.iter().map(|c| c.to_string()).collect::<String>();
        write!(
            f,
            "word(({}); {}:{}; ({}))",
            digits(&self.left),
            self.start,
            digits(&self.core),
            digits(&self.right)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyl(lo: i64, w: &[u8]) -> CylinderSet {
        CylinderSet::single(2, lo, w.to_vec()).unwrap()
    }

    #[test]
    fn contradictory_constraint_is_empty() {
        assert!(cyl(0, &[0]).intersect(&cyl(0, &[1])).unwrap().is_empty());
    }

    #[test]
    fn adjacent_windows_merge() {
        assert_eq!(cyl(0, &[0]).intersect(&cyl(1, &[1])).unwrap(), cyl(0, &[0, 1]));
    }

    #[test]
    fn separated_windows_fill_the_gap() {
        let got = cyl(0, &[0]).intersect(&cyl(2, &[1])).unwrap();
        let want = CylinderSet::new(
            2,
            vec![
                Cylinder::new(0, vec![0, 0, 1], 2).unwrap(),
                Cylinder::new(0, vec![0, 1, 1], 2).unwrap(),
            ],
        );
        assert_eq!(got, want);
    }

    #[test]
    fn sigma_moves_window_left() {
        let c = cyl(0, &[1, 0]).shifted(1);
        assert_eq!(c.span(), Some((-1, 0)));
    }

    #[test]
    fn canonical_form_drops_contained_components() {
        let s = CylinderSet::new(
            2,
            vec![
                Cylinder::new(0, vec![0], 2).unwrap(),
                Cylinder::new(0, vec![0, 1], 2).unwrap(),
                Cylinder::new(0, vec![0], 2).unwrap(),
            ],
        );
        assert_eq!(s.components().len(), 1);
        assert_eq!(s.to_string(), "cyl{0:0}");
    }

    #[test]
    fn rejects_bad_symbols() {
        assert!(Cylinder::new(0, vec![2], 2).is_err());
        assert!(Cylinder::new(0, vec![], 2).is_err());
        assert!(Cylinder::new(0, vec![0], 1).is_err());
    }

    #[test]
    fn point_symbols_follow_tails() {
        let x = ShiftPoint::new(vec![1], vec![0, 1], 0, vec![0]).unwrap();
        assert_eq!(x.window(-2, 3), vec![1, 1, 0, 1, 0, 0]);
        assert_eq!(x.shifted(1).symbol(-1), 0);
        assert_eq!(x.shifted(1).symbol(0), 1);
    }
}
