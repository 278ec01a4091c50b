//! Eventually periodic subsets of `ℕ = {1, 2, ...}` and membership in the
//! Furstenberg family `F[a]` generated by a vector.

use std::fmt;
use std::str::FromStr;

use num::integer::{gcd, lcm};

use crate::error::{Error, Result};
use crate::game::{find_empty_choice, Bits, Coordinate};
use crate::systems::Vector;
use crate::verdict::Verdict;

/// `F ⊆ ℕ` given by membership bits on `1..=preperiod` and a residue set
/// mod `period` governing every `n > preperiod`.
///
/// Always canonical: the period is minimal, and the preperiod is minimal for
/// that period.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EPSet {
    preperiod: usize,
    period: usize,
    transient: Vec<bool>,
    residues: Vec<bool>,
}

impl EPSet {
    /// Builds the set from a membership predicate that is known to satisfy
    /// `member(n + period) == member(n)` for all `n > preperiod`.
    pub fn from_fn(preperiod: usize, period: usize, member: impl Fn(u64) -> bool) -> EPSet {
        assert!(period >= 1, "period must be positive");
        let t = preperiod as u64;
        let q = period as u64;
        let transient = (1..=t).map(&member).collect();
        let residues = (0..q)
            .map(|r| {
                let first = t + 1;
                member(first + (r + q - first % q) % q)
            })
            .collect();
        let mut set = EPSet {
            preperiod,
            period,
            transient,
            residues,
        };
        set.canonicalize();
        set
    }

    /// `transient` lists members in `1..=preperiod`; `residues` lists the
    /// classes mod `period` that belong to the set beyond the preperiod.
    pub fn new(preperiod: usize, transient: &[u64], period: usize, residues: &[u64]) -> Result<EPSet> {
        if period == 0 {
            return Err(Error::InvalidArgument("period must be positive".into()));
        }
        if let Some(n) = transient.iter().find(|&&n| n == 0 || n > preperiod as u64) {
            return Err(Error::InvalidArgument(format!(
                "transient member {n} outside 1..={preperiod}"
            )));
        }
        if let Some(r) = residues.iter().find(|&&r| r >= period as u64) {
            return Err(Error::InvalidArgument(format!("residue {r} outside 0..{period}")));
        }
        Ok(EPSet::from_fn(preperiod, period, |n| {
            if n <= preperiod as u64 {
                transient.contains(&n)
            } else {
                residues.contains(&(n % period as u64))
            }
        }))
    }

    pub fn empty() -> EPSet {
        EPSet::from_fn(0, 1, |_| false)
    }

    pub fn naturals() -> EPSet {
        EPSet::from_fn(0, 1, |_| true)
    }

    /// `{n ≥ 1 : n ≡ r (mod q)}`.
    pub fn residue_class(q: usize, r: usize) -> EPSet {
        EPSet::from_fn(0, q, |n| n % q as u64 == (r % q) as u64)
    }

    /// The finite set given by `members`.
    pub fn finite(members: &[u64]) -> EPSet {
        let t = members.iter().copied().max().unwrap_or(0) as usize;
        EPSet::from_fn(t, 1, |n| members.contains(&n))
    }

    fn canonicalize(&mut self) {
        let q = self.period;
        if let Some(d) = (1..=q)
            .filter(|&d| q.is_multiple_of(d))
            .find(|&d| (0..q).all(|r| self.residues[r] == self.residues[r % d]))
        {
            self.residues.truncate(d);
            self.period = d;
        }
        while self.preperiod > 0 && self.transient[self.preperiod - 1] == self.residues[self.preperiod % self.period] {
            self.transient.pop();
            self.preperiod -= 1;
        }
    }

    pub fn preperiod(&self) -> usize {
        self.preperiod
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// Members of `1..=preperiod`.
    pub fn transient_members(&self) -> Vec<u64> {
        (1..=self.preperiod as u64)
            .filter(|&n| self.transient[n as usize - 1])
            .collect()
    }

    /// Residue classes present beyond the preperiod.
    pub fn residue_members(&self) -> Vec<u64> {
        (0..self.period as u64).filter(|&r| self.residues[r as usize]).collect()
    }

    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            false
        } else if n <= self.preperiod as u64 {
            self.transient[n as usize - 1]
        } else {
            self.residues[(n % self.period as u64) as usize]
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.transient.iter().chain(&self.residues).any(|&b| b)
    }

    pub fn is_finite(&self) -> bool {
        !self.residues.iter().any(|&b| b)
    }

    /// Contains every sufficiently large `n`.
    pub fn is_cofinite(&self) -> bool {
        self.residues.iter().all(|&b| b)
    }

    pub fn first_member(&self) -> Option<u64> {
        (1..=(self.preperiod + self.period) as u64).find(|&n| self.contains(n))
    }

    /// Membership bits for `n = 1..=horizon`.
    pub fn to_bits(&self, horizon: usize) -> Vec<bool> {
        (1..=horizon as u64).map(|n| self.contains(n)).collect()
    }

    fn combine(&self, other: &EPSet, op: impl Fn(bool, bool) -> bool) -> EPSet {
        let t = self.preperiod.max(other.preperiod);
        let q = lcm(self.period, other.period);
        EPSet::from_fn(t, q, |n| op(self.contains(n), other.contains(n)))
    }

    pub fn union(&self, other: &EPSet) -> EPSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &EPSet) -> EPSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn complement(&self) -> EPSet {
        EPSet::from_fn(self.preperiod, self.period, |n| !self.contains(n))
    }

    pub fn is_subset(&self, other: &EPSet) -> bool {
        self.intersect(&other.complement()).is_empty()
    }

    /// `{m ≥ 1 : a·m ∈ F}`.
    pub fn dilate_preimage(&self, a: u64) -> EPSet {
        assert!(a >= 1, "dilation factor must be positive");
        let q = self.period as u64;
        let t = self.preperiod as u64 / a;
        EPSet::from_fn(t as usize, (q / gcd(q, a)) as usize, |m| self.contains(a * m))
    }

    /// Decides `F ∈ F[a]`: for every offset `n ∈ ℤ₊^p` some `m ≥ 1` puts
    /// every `m·a_j + n_j` in `F`.
    ///
    /// Only residues mod the period matter. If every residue offset `ñ`
    /// admits a residue `m̃` with each `(m̃·a_j + ñ_j) mod q` in the periodic
    /// part, an actual `m ≡ m̃` can be taken large enough to clear the
    /// preperiod. Conversely a bad `ñ` lifts to an offset with every
    /// `n_j > preperiod`, beyond which no `m` of any size can land in `F`.
    pub fn in_family(&self, a: &Vector) -> bool {
        self.family_obstruction(a).is_none()
    }

    /// An offset vector `n` (all components past the preperiod) for which no
    /// `m ≥ 1` works, if one exists.
    pub fn family_obstruction(&self, a: &Vector) -> Option<Vec<u64>> {
        let q = self.period;
        let coords: Vec<Coordinate> = a
            .components()
            .iter()
            .map(|&aj| {
                Coordinate::new((0..q).map(|offset| {
                    let mut bits = Bits::new(q);
                    for m in 0..q {
                        if self.residues[(m * (aj as usize % q) + offset) % q] {
                            bits.set(m);
                        }
                    }
                    (bits, offset)
                }))
            })
            .collect();
        let choice = find_empty_choice(&Bits::full(q), &coords)?;
        let base = self.preperiod as u64 + 1;
        Some(
            choice
                .into_iter()
                .map(|r| {
                    let r = r as u64;
                    base + (r + q as u64 - base % q as u64) % q as u64
                })
                .collect(),
        )
    }

    /// Semi-decides membership in `F[∞]`, the intersection of `F[(1,..,p)]`
    /// over all `p`.
    pub fn in_family_infty(&self, p_max: usize) -> Verdict {
        for p in 1..=p_max {
            if !self.in_family(&Vector::ascending(p)) {
                return Verdict::refuted(format!("p={p}"), Vec::new(), None);
            }
        }
        Verdict::unknown(format!("p_max={p_max}"), None)
    }
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for EPSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ep{{t={}; trans={}; q={}; R={{{}}}}}",
            self.preperiod,
            join(&self.transient_members()),
            self.period,
            join(&self.residue_members())
        )
    }
}

impl FromStr for EPSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<EPSet> {
        let bad = |why: &str| Error::InvalidArgument(format!("bad EPSet literal `{s}`: {why}"));
        let body = s
            .trim()
            .strip_prefix("ep{")
            .and_then(|b| b.strip_suffix('}'))
            .ok_or_else(|| bad("expected ep{...}"))?;
        let (mut t, mut trans, mut q, mut res) = (None, Vec::new(), None, Vec::new());
        let list = |v: &str| -> Result<Vec<u64>> {
            let v = v.trim().trim_start_matches('{').trim_end_matches('}');
            v.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<u64>().map_err(|_| bad("expected integers")))
                .collect()
        };
        for field in body.split(';') {
            let field = field.trim();
            if field.is_empty() {
                continue;
            }
            let (key, value) = field.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            match key.trim() {
                "t" => t = Some(value.trim().parse::<usize>().map_err(|_| bad("t"))?),
                "trans" => trans = list(value)?,
                "q" => q = Some(value.trim().parse::<usize>().map_err(|_| bad("q"))?),
                "R" => res = list(value)?,
                other => return Err(bad(&format!("unknown field `{other}`"))),
            }
        }
        EPSet::new(t.unwrap_or(0), &trans, q.ok_or_else(|| bad("missing q"))?, &res)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odds() -> EPSet {
        EPSet::residue_class(2, 1)
    }

    fn evens() -> EPSet {
        EPSet::residue_class(2, 0)
    }

    fn v(xs: &[u64]) -> Vector {
        Vector::new(xs.to_vec()).unwrap()
    }

    #[test]
    fn membership_examples() {
        assert!(EPSet::naturals().contains(7));
        assert!(!odds().contains(4));
        let late_odds: EPSet = "ep{t=2; trans=; q=2; R={1}}".parse().unwrap();
        assert!(!late_odds.contains(1));
        assert!(late_odds.contains(3));
        assert!(!late_odds.contains(0));
    }

    #[test]
    fn canonical_form_is_minimal() {
        let late_odds: EPSet = "ep{t=2; trans=; q=2; R={1}}".parse().unwrap();
        assert_eq!(late_odds.preperiod(), 1);
        assert_eq!(late_odds.to_string(), "ep{t=1; trans=; q=2; R={1}}");
        let same: EPSet = "ep{t=0; q=4; R={1,3}}".parse().unwrap();
        assert_eq!(same, odds());
    }

    #[test]
    fn boolean_algebra() {
        assert!(odds().intersect(&evens()).is_empty());
        assert_eq!(odds().union(&evens()), EPSet::naturals());
        let threes = EPSet::residue_class(3, 0);
        let not_threes = EPSet::from_fn(0, 3, |n| n % 3 != 0);
        assert_eq!(threes.complement(), not_threes);
    }

    #[test]
    fn dilation_examples() {
        assert!(odds().dilate_preimage(2).is_empty());
        assert_eq!(odds().dilate_preimage(1), odds());
        assert_eq!(
            EPSet::residue_class(6, 0).dilate_preimage(2),
            EPSet::residue_class(3, 0)
        );
    }

    #[test]
    fn cofiniteness() {
        let almost = EPSet::naturals().intersect(&EPSet::finite(&[1, 4]).complement());
        assert!(almost.is_cofinite());
        assert!(!odds().is_cofinite());
        assert!(!EPSet::empty().is_cofinite());
    }

    #[test]
    fn family_examples() {
        assert!(EPSet::naturals().in_family(&v(&[3, 1, 2])));
        assert!(!EPSet::empty().in_family(&v(&[1])));
        assert!(!odds().in_family(&v(&[1, 2])));
        assert!(odds().in_family(&v(&[1])));
        assert!(!EPSet::residue_class(3, 0).in_family(&v(&[1, 2])));
    }

    #[test]
    fn family_infty_examples() {
        assert_eq!(odds().in_family_infty(5).to_string(), "REFUTED witness=[p=2]");
        assert!(EPSet::naturals().in_family_infty(6).is_unknown());
        let late = EPSet::from_fn(3, 1, |n| n > 3);
        assert_eq!(late.in_family_infty(4).to_string(), "UNKNOWN bound=p_max=4");
    }

    #[test]
    fn obstruction_clears_the_preperiod() {
        let f: EPSet = "ep{t=5; trans=1,2,3; q=2; R={1}}".parse().unwrap();
        let n = f.family_obstruction(&v(&[1, 2])).unwrap();
        assert!(n.iter().all(|&x| x > 5));
        for m in 1..200u64 {
            assert!(!(f.contains(m + n[0]) && f.contains(2 * m + n[1])));
        }
    }

    #[test]
    fn literal_roundtrip_and_errors() {
        let f: EPSet = "ep{t=3; trans=1,3; q=4; R={0,2}}".parse().unwrap();
        assert_eq!(f.to_string().parse::<EPSet>().unwrap(), f);
        assert!("ep{t=1; trans=2; q=1; R={}}".parse::<EPSet>().is_err());
        assert!("ep{t=0; q=2; R={2}}".parse::<EPSet>().is_err());
        assert!("ep{t=0; R={}}".parse::<EPSet>().is_err());
        assert!("nope".parse::<EPSet>().is_err());
    }
}
