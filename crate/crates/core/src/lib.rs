//! Geodesic distances on the surface of the cube `[-1, 1]^n` measured in the
//! sup norm.
//!
//! Closed forms cover adjacent and opposite facets in three dimensions
//! ([`adjacent3`], [`opposite3`]) and candidate families for general `n`
//! ([`nd`]). Two brute-force engines in [`oracle`] check them.

pub mod adjacent3;
pub mod audit;
pub mod conditions;
pub mod error;
pub mod export;
pub mod nd;
pub mod opposite3;
pub mod oracle;
pub mod sampling;
pub mod surface;

pub use error::{GeodesicError, Result};
pub use surface::{
    canonicalize, classify_pair, path_length, sup_distance, Canonical, FaceId, GeodesicPath,
    PairClass, Sign, SignedPermutation, SurfacePoint, DEFAULT_TOL,
};

/// Tolerance for deciding which of several closed-form quantities is minimal.
pub const TIE: f64 = 1e-12;

/// `c + (x + y)`: every max-term in the closed forms has this shape. Routing
/// all of them through one function keeps values bitwise equal across the
/// three-dimensional formulas and the general candidate families.
#[inline]
pub(crate) fn term(c: f64, x: f64, y: f64) -> f64 {
    c + (x + y)
}
