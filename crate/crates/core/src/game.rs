//! Decides games of the form "for every choice of one set per coordinate,
//! the chosen sets share a common element" over a finite universe.
//!
//! Both a-transitivity (pick one hitting set per coordinate, ask for a
//! common time) and residue-reduced membership in `F[a]` (pick one offset
//! per coordinate, ask for a common residue) have this shape.

use std::collections::HashSet;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub(crate) fn new(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub(crate) fn full(len: usize) -> Self {
        let mut b = Bits::new(len);
        for i in 0..len {
            b.set(i);
        }
        b
    }

    pub(crate) fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    fn count(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }
}

/// One coordinate of the game: candidate sets, each tagged with the index of
/// the caller's object it came from.
pub(crate) struct Coordinate {
    options: Vec<(Bits, usize)>,
}

impl Coordinate {
    /// Keeps one representative per distinct set and drops sets that contain
    /// another candidate: a superset never helps empty the intersection.
    pub(crate) fn new(options: impl IntoIterator<Item = (Bits, usize)>) -> Self {
        let mut distinct: Vec<(Bits, usize)> = Vec::new();
        for (bits, tag) in options {
            if !distinct.iter().any(|(b, _)| *b == bits) {
                distinct.push((bits, tag));
            }
        }
        let minimal: Vec<(Bits, usize)> = distinct
            .iter()
            .filter(|(b, _)| !distinct.iter().any(|(c, _)| c != b && c.is_subset(b)))
            .cloned()
            .collect();
        Coordinate { options: minimal }
    }
}

/// Returns one tag per coordinate whose sets have empty common intersection
/// with `universe`, or `None` when every choice leaves a common element.
pub(crate) fn find_empty_choice(universe: &Bits, coords: &[Coordinate]) -> Option<Vec<usize>> {
    let mut failed = HashSet::new();
    solve(0, universe.clone(), coords, &mut failed)
}

fn solve(j: usize, alive: Bits, coords: &[Coordinate], failed: &mut HashSet<(usize, Bits)>) -> Option<Vec<usize>> {
    if alive.is_empty() {
        return Some(
            coords[j..]
                .iter()
                .map(|c| c.options.first().map_or(0, |o| o.1))
                .collect(),
        );
    }
    if j == coords.len() || failed.contains(&(j, alive.clone())) {
        return None;
    }
    let mut next: Vec<(Bits, usize)> = coords[j].options.iter().map(|(b, tag)| (alive.and(b), *tag)).collect();
    next.sort_by_key(|(b, _)| b.count());
    for (narrowed, tag) in next {
        if let Some(mut rest) = solve(j + 1, narrowed, coords, failed) {
            rest.insert(0, tag);
            return Some(rest);
        }
    }
    failed.insert((j, alive));
    None
}
