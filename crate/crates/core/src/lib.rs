//! Exact factorization of 2x2 matrices over commutative rings.
//!
//! * [`idfactor`] writes singular matrices over Euclidean domains as products
//!   of idempotents, with replayable certificates.
//! * [`elemfact`] writes invertible matrices as products of elementary
//!   matrices and normalizes them to the `diag(α, β) T(r_1) ... T(r_k)` form.
//! * [`obstruct`] searches for that form over discretely ordered rings and
//!   emits checkable non-factorability certificates, e.g. over Int(Z).
//! * [`curve`] implements coordinate rings of affine curves with the degree
//!   pseudo-valuation and regular-row independence reports.

pub mod curve;
pub mod elemfact;
pub mod error;
pub mod idfactor;
pub mod intz;
pub mod json;
pub mod mat2;
pub mod obstruct;
pub mod ring;

pub use error::{Error, Result};
pub use mat2::Mat2;
pub use ring::{gcd_bezout, RingElem, RingId};

/// Default depth limit for the obstruction search.
pub const DEFAULT_DEPTH: usize = 8;

/// Depth limit from `IDEMFACT_DEPTH`, falling back to [`DEFAULT_DEPTH`].
pub fn depth_from_env() -> usize {
    std::env::var("IDEMFACT_DEPTH")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&d| d > 0)
        .unwrap_or(DEFAULT_DEPTH)
}
