//! Certified verification: branch and bound over parameter boxes,
//! certified one-dimensional minimization and the threshold lemmas.

pub mod bnb;
pub mod certificate;
pub mod constraints;
pub mod lemmas;
pub mod minimize;
pub mod sampling;

pub use bnb::{branch_and_bound, branch_and_bound_with, choose_split, Budget, RunOptions};
pub use certificate::{
    revalidate, Certificate, Leaf, LeafStatus, Method, PartialCertificate, Revalidation, Stats, Unresolved,
};
pub use constraints::{Constraint, ConstraintKind, ConstraintSet, Truth};
pub use lemmas::{certify_lemma_distanceest, certify_lemma_volumeest, ClaimCheck, LemmaReport};
pub use minimize::{certify_min_1d, IntervalFn, Min1d};

use crate::error::Result;
use crate::interval::Box5;
use crate::strange::Profile;

/// `[0, coord_max]^5` for the profile.
pub fn default_root(profile: Profile) -> Result<Box5> {
    Box5::cube(0.0, profile.thresholds().coord_max)
}
