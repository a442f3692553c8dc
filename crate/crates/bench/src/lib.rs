//! Shared fixtures for the benchmarks.

use nhol_core::groups::{automorphism_group, make_named_group};
use nhol_core::{AutGroupRecord, Budget, FiniteGroup, HolomorphContext};

/// Groups benchmarked throughout: one simple, one almost simple, one centerless solvable.
pub const GROUPS: [&str; 3] = ["A5", "S5", "S4"];

pub fn group(name: &str) -> FiniteGroup {
    make_named_group(name).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn aut(g: &FiniteGroup) -> AutGroupRecord {
    automorphism_group(g, &Budget::default()).unwrap_or_else(|e| panic!("Aut({}): {e}", g.name()))
}

pub fn holomorph(name: &str) -> HolomorphContext {
    HolomorphContext::build(&group(name), &Budget::default()).unwrap_or_else(|e| panic!("Hol({name}): {e}"))
}
