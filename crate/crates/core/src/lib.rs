//! Finite left skew braces: validation, split products, general extensions,
//! abelian cohomology and the Wells exact sequence, by exhaustive computation.
pub mod brace;
pub mod catalog;
pub mod cohomology;
pub mod extension;
pub mod group;
pub mod io;
pub mod perm;
pub mod report;
pub mod search;
pub mod split;
pub mod wells;

pub use brace::{BraceError, BraceHom, SkewBrace};
pub use group::{FiniteGroup, GroupError};
pub use perm::{Perm, PermGroup};

/// Resource limits for exhaustive searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest carrier size accepted by enumeration routines.
    pub order_bound: usize,
    /// Maximum number of candidate objects a search may visit.
    pub budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { order_bound: group::DEFAULT_ORDER_BOUND, budget: 50_000_000 }
    }
}

impl Limits {
    /// Defaults, with the budget overridden by `BRACEFORGE_BUDGET` when set.
    pub fn from_env() -> Limits {
        let mut l = Limits::default();
        if let Some(b) = std::env::var("BRACEFORGE_BUDGET").ok().and_then(|v| v.trim().parse().ok()) {
            l.budget = b;
        }
        l
    }
}
