//! Computational engine for L-functions of degree-2 Siegel (paramodular)
//! eigenforms.
//!
//! The crate is organised bottom-up:
//!
//! - [`numeric`]: Euler factors, Satake multisets, Dirichlet coefficient
//!   series and the symmetric-function identities used throughout.
//! - [`gl2`]: exact q-expansions of level-one elliptic eigenforms and their
//!   normalised Hecke data.
//! - [`gsp4`]: paramodular eigenform data, spinor/standard local factors,
//!   Saito–Kurokawa lifts and packet classification.
//! - [`characters`]: Dirichlet characters, Gauss and Kloosterman sums and
//!   the character-sum identities.
//! - [`analytic`]: prime sums, smooth cutoffs, approximate functional
//!   equations, character families and first moments.
//!
//! Data-parallel loops go through [`par`], which uses rayon when the
//! `parallel` feature is enabled and plain iterators otherwise. Every
//! reduction is evaluated in a fixed order, so results do not depend on the
//! thread count.

pub mod analytic;
pub mod arith;
pub mod characters;
mod error;
pub mod gl2;
pub mod gsp4;
pub mod io;
pub mod ntt;
pub mod numeric;
pub mod par;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Library version recorded in run manifests.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
