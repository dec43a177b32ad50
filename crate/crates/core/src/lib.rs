//! Exact-arithmetic toolkit for singular plane curves.
//!
//! Everything is computed over the rationals: multivariate polynomials,
//! local colengths, embedded resolution by blowups, clusters of infinitely
//! near points, cohomology of zero-dimensional schemes in the plane, the
//! gamma invariants of singular points, and the numerical criteria for
//! smoothness and irreducibility of families of curves with prescribed
//! singularities.  No floating point is used anywhere; every reported
//! number is exact.

pub mod algebra;
pub mod castelnuovo;
pub mod cluster;
pub mod criteria;
pub mod invariants;
pub mod local;
pub mod resolution;
pub mod zariski;

pub use algebra::{MultiPoly, QMatrix, Rat};

/// Version string embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
