use std::fmt;

use crate::error::{Error, Result};

/// Largest finite phase space; members are stored in a `u64` mask.
pub const MAX_POINTS: usize = 64;

/// Subset of `{0..n-1}`. Every subset is open in the discrete topology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiniteSubset {
    n: usize,
    mask: u64,
}

impl FiniteSubset {
    pub fn new(n: usize, mask: u64) -> Result<Self> {
        if n == 0 || n > MAX_POINTS {
            return Err(Error::InvalidArgument(format!(
                "finite space size must lie in 1..={MAX_POINTS}, got {n}"
            )));
        }
        if n < 64 && mask >> n != 0 {
            return Err(Error::InvalidArgument(format!(
                "mask {mask:#b} has members outside {{0..{}}}",
                n - 1
            )));
        }
        Ok(FiniteSubset { n, mask })
    }

    pub fn from_points(n: usize, points: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &x in points {
            if x >= n {
                return Err(Error::InvalidArgument(format!(
                    "point {x} outside finite space of size {n}"
                )));
            }
            mask |= 1 << x;
        }
        FiniteSubset::new(n, mask)
    }

    pub fn singleton(n: usize, x: usize) -> Result<Self> {
        FiniteSubset::from_points(n, &[x])
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, x: usize) -> bool {
        x < self.n && self.mask >> x & 1 == 1
    }

    pub fn points(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&x| self.contains(x))
    }

    pub fn intersect(&self, other: &FiniteSubset) -> FiniteSubset {
        FiniteSubset {
            n: self.n,
            mask: self.mask & other.mask,
        }
    }

    pub fn union(&self, other: &FiniteSubset) -> FiniteSubset {
        FiniteSubset {
            n: self.n,
            mask: self.mask | other.mask,
        }
    }

    pub fn image(&self, table: &[usize]) -> FiniteSubset {
        let mask = self.points().fold(0u64, |m, x| m | 1 << table[x]);
        FiniteSubset { n: self.n, mask }
    }

    pub fn preimage(&self, table: &[usize]) -> FiniteSubset {
        let mask = (0..self.n)
            .filter(|&x| self.contains(table[x]))
            .fold(0u64, |m, x| m | 1 << x);
        FiniteSubset { n: self.n, mask }
    }
}

impl fmt::Display for FiniteSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.points().map(|x| x.to_string()).collect();
        write!(f, "fin{{{}}}", pts.join(","))
    }
}

/// Checks that `table` is a total function on `{0..n-1}`.
pub fn validate_table(table: &[usize], n: usize) -> Result<()> {
    if table.len() != n {
        return Err(Error::InvalidArgument(format!(
            "table has {} entries for a space of size {n}",
            table.len()
        )));
    }
    if let Some(&bad) = table.iter().find(|&&y| y >= n) {
        return Err(Error::InvalidArgument(format!(
            "table value {bad} outside {{0..{}}}",
            n - 1
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_mask_is_empty() {
        assert!(FiniteSubset::new(4, 0).unwrap().is_empty());
    }

    #[test]
    fn swap_preimage() {
        let zero = FiniteSubset::singleton(2, 0).unwrap();
        assert_eq!(zero.preimage(&[1, 0]), FiniteSubset::singleton(2, 1).unwrap());
        assert_eq!(zero.image(&[1, 0]), FiniteSubset::singleton(2, 1).unwrap());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(FiniteSubset::new(2, 0b100).is_err());
        assert!(FiniteSubset::from_points(3, &[3]).is_err());
        assert!(validate_table(&[0, 2], 2).is_err());
        assert!(validate_table(&[0], 2).is_err());
    }

    #[test]
    fn renders_members() {
        assert_eq!(FiniteSubset::from_points(4, &[0, 2]).unwrap().to_string(), "fin{0,2}");
    }
}
