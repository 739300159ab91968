//! Exact classification of Real line bundles on Real tori.
//!
//! The crate computes, in exact integer and mod-2 arithmetic, the
//! characteristic data classifying Real (in the sense of Atiyah) line
//! bundles on a torus `V/Λ` with a lattice involution, the induced theta
//! and determinant-index classes on the Picard torus of a Klein surface,
//! and the orientability of the real loci of symmetric powers and
//! projectivized Quot bundles. A floating-point holonomy oracle
//! ([`holonomy`]) cross-checks the exact layer numerically.
//!
//! Everything outside [`holonomy`] is exact: S¹-valued data is carried as
//! rational angles `q` (value `exp(πi·q)`), so all roots of unity coming
//! from integer data are represented without drift.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod exact;
pub mod holonomy;
pub mod klein;
pub mod localization;
pub mod orientability;
pub mod sampling;
pub mod theta;
pub mod torus;

mod error;

pub use error::{Error, Result};
