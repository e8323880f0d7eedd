//! Truncated simplicial sets and categories, nerves, edgewise subdivision
//! and exact Segal checks.

mod nerve;
mod pmonoid;
mod segal;
mod sset;

pub use nerve::{edgewise_subdivision, nerve, nerve_partial_monoid, twisted_arrow_category};
pub use pmonoid::PartialMonoid;
pub use segal::{
    check_2segal_comparisons, check_2segal_groupoids, check_segal, check_segal1_in_cat, SegalDegree,
};
pub use sset::{
    assemble_scat, find_isomorphism, is_isomorphism, validate_truncated, validate_truncated_cat,
    TruncSCat, TruncSSet,
};

/// Truncation bound used when none is given.
pub const DEFAULT_BOUND: usize = 4;
