//! Exact-arithmetic computations around extended affine Weyl groups and
//! affine Hecke algebras of simply-connected semisimple type.
//!
//! Everything here works over `Z`, `Z[v, v^{-1}]` or `Q`; there is no
//! floating point anywhere.  The main layers, bottom to top:
//!
//! * [`rootdata`] — Cartan matrices, root systems, weights, convex hulls
//!   of Weyl orbits.
//! * [`weyl`] — finite and extended affine Weyl groups, Iwahori–Matsumoto
//!   length, Bruhat order, the length-zero subgroup `Omega`.
//! * [`braid`] — words in the affine braid group in its Bernstein
//!   presentation (generators `T_s` and `theta_x`).
//! * [`hecke`] — the affine Hecke algebra in its Iwahori–Matsumoto basis,
//!   Bernstein elements `theta_x`, standard-basis conversion.
//! * [`polyrep`] — the Demazure–Lusztig action on `Z[v,v^{-1}][X]` and
//!   presentation verification.
//! * [`klpoly`] — Kazhdan–Lusztig polynomials by two independent
//!   algorithms, and component multiplicities derived from them.
//! * [`kernel`] — convolution kernel classes: the dictionary between
//!   Hecke basis elements and (twisted) Steinberg-scheme classes.
//! * [`koszul`] — degree-truncated Koszul homology over `Q` and the
//!   Hilbert-series cross-check, including the rank-one Steinberg chart.

#![forbid(unsafe_code)]

pub mod braid;
pub mod error;
pub mod hecke;
pub mod kernel;
pub mod klpoly;
pub mod koszul;
pub mod laurent;
pub mod linalg;
pub mod polyrep;
pub mod rootdata;
pub mod weyl;

pub use error::Error;
pub use laurent::LaurentPoly;
pub use rootdata::RootDatum;
pub use weyl::{AffWeylElt, WeylElt, WeylGroup};

/// Environment variable bounding the size of any group enumeration.
/// When unset, [`DEFAULT_MAX_GROUP_SIZE`] applies.
pub const MAX_GROUP_SIZE_ENV: &str = "AFFINE_HECKE_MAX_W";

/// Default bound on `|W|` (and on affine Cayley-ball enumerations).
pub const DEFAULT_MAX_GROUP_SIZE: usize = 1_000_000;

/// Resolve the enumeration bound from the environment, falling back to
/// [`DEFAULT_MAX_GROUP_SIZE`] when the variable is unset or unparsable.
pub fn max_group_size() -> usize {
    std::env::var(MAX_GROUP_SIZE_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_GROUP_SIZE)
}
