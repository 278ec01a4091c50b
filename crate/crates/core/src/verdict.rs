use std::fmt;

use crate::spaces::Region;

/// Three-valued result of a decider whose definition quantifies over
/// infinitely many objects.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Holds for every sub-basic open at `resolution`.
    Proven {
        resolution: u32,
    },
    Refuted {
        witness: Witness,
    },
    /// Every check up to the bound passed; the full claim is not decided.
    UnknownAtBound {
        bound: Bound,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Where the failure sits: `p=2`, `a=(1,2)`, `n=2`, a battery member, ...
    pub at: String,
    /// Source/target opens of the failing query, one pair per coordinate.
    pub pairs: Vec<(Region, Region)>,
    pub resolution: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bound {
    pub label: String,
    pub resolution: Option<u32>,
}

impl Verdict {
    pub fn is_proven(&self) -> bool {
        matches!(self, Verdict::Proven { .. })
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::UnknownAtBound { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Refuted { witness } => Some(witness),
            _ => None,
        }
    }

    pub(crate) fn refuted(at: impl Into<String>, pairs: Vec<(Region, Region)>, resolution: Option<u32>) -> Self {
        Verdict::Refuted {
            witness: Witness {
                at: at.into(),
                pairs,
                resolution,
            },
        }
    }

    pub(crate) fn unknown(label: impl Into<String>, resolution: Option<u32>) -> Self {
        Verdict::UnknownAtBound {
            bound: Bound {
                label: label.into(),
                resolution,
            },
        }
    }

    /// Prefixes the witness location, e.g. with the vector that failed.
    pub(crate) fn located(self, at: &str) -> Self {
        match self {
            Verdict::Refuted { mut witness } => {
                witness.at = if witness.at.is_empty() {
                    at.to_string()
                } else {
                    format!("{at} {}", witness.at)
                };
                Verdict::Refuted { witness }
            }
            other => other,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.at)?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            write!(f, "{}({a}->{b})", if i == 0 { " " } else { ", " })?;
        }
        if let Some(r) = self.resolution {
            write!(f, " @res={r}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Proven { resolution } => write!(f, "PROVEN@res={resolution}"),
            Verdict::Refuted { witness } => write!(f, "REFUTED witness={witness}"),
            Verdict::UnknownAtBound { bound } => {
                write!(f, "UNKNOWN bound={}", bound.label)?;
                if let Some(r) = bound.resolution {
                    write!(f, "@res={r}")?;
                }
                Ok(())
            }
        }
    }
}
