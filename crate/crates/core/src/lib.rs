//! Demazure roots and additive actions on complete toric surfaces.
//!
//! The crate decides whether the toric surface of a complete fan admits an
//! additive action (an effective action of `G_a^2` with an open orbit),
//! counts such actions up to isomorphism, and writes representatives down
//! as explicit polynomial maps on Cox coordinates.

#![no_std]

extern crate alloc;

pub mod additive;
pub mod builtins;
pub mod coxring;
pub mod error;
pub mod fan;
pub mod lattice;
pub mod roots;
pub mod sweep;
pub mod verify;

pub use additive::{classify, find_admissible_basis, find_admissible_basis_2d, AdmissibleBasis, Classification};
pub use error::{Error, Result};
pub use fan::{build_fan, Fan2};
pub use lattice::{CharVec, LatticeVec};
pub use roots::{all_roots, DemazureRoot, RootSystem};
