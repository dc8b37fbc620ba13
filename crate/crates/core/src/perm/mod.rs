//! Permutations of ω as expressions over named generators, evaluated
//! pointwise and analysed on finite windows.
//!
//! Equality of infinite permutations is only semidecidable, so every
//! equality-flavoured operation takes an explicit [`Window`] and a
//! disagreement found there is conclusive while agreement is not.

mod analysis;
pub mod atoms;
mod cert;
mod expr;
mod finperm;

use thiserror::Error;

pub use analysis::{classify, cycle_profile, equal_on, profile_on, window_image, ClassVerdict, CycleProfile};
pub use atoms::AtomRegistry;
pub use cert::{PeriodicSwaps, SwapCertificate};
pub use expr::{Atom, AtomRule, PermExpr};
pub use finperm::{conjugator_finitary, FinPerm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("point map is not a permutation")]
    NotAPermutation,
    #[error("cycle literal needs at least two distinct points")]
    MalformedCycle,
    #[error("cycle types differ")]
    CycleTypeMismatch,
    #[error("evaluation needs stage {needed} but the construction stops at {available}")]
    StageBudget { needed: u64, available: u64 },
    #[error("window bound must be at least 1")]
    EmptyWindow,
    #[error("invalid certificate: {0}")]
    BadCertificate(&'static str),
}

/// The points `{0, …, N−1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Window(u64);

impl Window {
    pub fn new(bound: u64) -> Result<Self, PermError> {
        if bound == 0 {
            Err(PermError::EmptyWindow)
        } else {
            Ok(Window(bound))
        }
    }

    pub fn bound(self) -> u64 {
        self.0
    }

    pub fn contains(self, x: u64) -> bool {
        x < self.0
    }

    pub fn points(self) -> std::ops::Range<u64> {
        0..self.0
    }

    /// Orbit step budget used when none is given: `4·N`.
    pub fn default_budget(self) -> u64 {
        4 * self.0
    }
}
