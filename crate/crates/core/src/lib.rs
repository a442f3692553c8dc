//! Exhaustive computations around the holomorph of a finite group.
//!
//! The crate realizes `Hol(G)` as a permutation group on the elements of `G`,
//! enumerates its regular subgroups (the sets `H0`, `H1`, `H2`), assembles the
//! quotient `T(G) = NHol(G)/Hol(G)` from conjugators of `H0` members, and counts
//! fixed point free endomorphisms both by brute force and by closed formulas
//! that apply to almost simple groups.
//!
//! Conventions: permutations compose right-to-left, `(p ∘ q)(i) = p(q(i))`.
//! With this convention `λ(σ) = (x ↦ σx)` and `ρ(σ) = (x ↦ xσ⁻¹)` are both
//! homomorphisms into the symmetric group on `G`.

pub mod crossed;
pub mod error;
pub mod fpf;
pub mod groups;
pub mod holomorph;
pub mod perm;
pub mod report;
pub mod search;
pub mod verify;

pub use crate::crossed::{CrossedHom, Homomorphism};
pub use crate::error::{Error, Result};
pub use crate::fpf::FpfCountReport;
pub use crate::groups::{AutGroupRecord, FiniteGroup};
pub use crate::holomorph::{HolomorphContext, RegularSubgroupRecord, SubgroupTag, TGroup};
pub use crate::perm::{IndexedGroup, PermGroup, Permutation};
pub use crate::report::{Claim, OrderCountRecord, VerificationReport};

/// Limit on the number of group elements any single computation may materialize.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_elements: usize,
}

impl Budget {
    pub const DEFAULT_MAX_ELEMENTS: usize = 1_000_000;

    pub fn new(max_elements: usize) -> Self {
        Budget { max_elements }
    }

    pub(crate) fn check(&self, count: usize, what: &str) -> Result<()> {
        if count > self.max_elements {
            Err(Error::budget(what, self.max_elements))
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_MAX_ELEMENTS)
    }
}
