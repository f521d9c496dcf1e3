//! Combinatorics of Schubert varieties in the type A affine Grassmannian,
//! indexed by length vectors, with tangent-space and singular-locus tools.
//!
//! Points live in a [`Context`] `(n, s)` with `d = sn`. Everything above the
//! classical layer works on [`Point`]s; the classical layer takes raw tuples.

#![forbid(unsafe_code)]

pub mod bruhat;
pub mod classical;
pub mod error;
pub mod loci;
#[cfg(feature = "oracle")]
pub mod oracle;
pub mod patterns;
pub mod point;
pub mod reflections;
pub mod tangent;
#[cfg(test)]
mod testing;

pub use bruhat::{codim, dim_schubert, interval_below, leq, lt, IntervalIndex};
pub use error::{Error, Result};
pub use loci::{classify_point, Classification, Method, OneStringLocus, PStablePair, SearchLimits, Status};
pub use patterns::{Pattern, PatternKind, SingularWitness};
pub use point::{special_point, Context, Point, Representations, Special};
pub use reflections::{AffineRoot, Reflection};
pub use tangent::{Exactness, TangentReport};
