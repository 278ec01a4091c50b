//! Exact transitivity and mixing analysis for non-autonomous discrete
//! dynamical systems over finitely presented spaces.

pub mod epsets;
pub mod error;
mod game;
pub mod oracle;
pub mod spaces;
pub mod syntax;
pub mod systems;
pub mod transitivity;
pub mod verdict;

pub use epsets::EPSet;
pub use error::{Error, ParseError, Result};
pub use spaces::{OpenSet, Point, Region, Space};
pub use systems::{composed, ep_compose, orbit, tower, ComposedForm, Schedule, SystemDescriptor, Vector};
pub use verdict::Verdict;
