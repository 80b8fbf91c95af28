//! Isoperimetric machinery for convex 3-polytopes with few vertices.
//!
//! The crate bundles a small convex-polytope kernel ([`geometry`]), Steiner
//! symmetrization ([`symmetrize`]), the five-parameter "strange" double
//! pyramid family ([`strange`]), outward-rounded interval arithmetic
//! ([`interval`]) and the branch-and-bound / bisection certifiers built on
//! top of it ([`certify`]). The [`cli`] module backs the `polyiso` binary.

// NaN-rejecting comparisons such as `!(x > 0.0)` are intentional throughout
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certify;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod interval;
pub mod strange;
pub mod symmetrize;

pub use error::{Error, Partial, Result};
pub use geometry::{Polygon2, Polytope3, TriangulatedBoundary, Vec3};
pub use interval::{Box5, Interval};
