//! Graded polynomial algebra on Cox coordinates and the calculus of
//! locally nilpotent derivations used to write additive actions down.

pub mod action;
pub mod derivation;
pub mod generators;
pub mod grading;
pub mod normal_form;
pub mod poly;

pub use action::{compose, exp_action, ActionMap};
pub use derivation::{commutator, degree_of, lnd_from_root, torus_conjugate, torus_conjugate_at, Derivation, TorusCharacter};
pub use generators::Generators;
pub use grading::{cl_grading, ClGrading};
pub use normal_form::{normal_form, NormalForm};
pub use poly::{Monomial, Poly, Rational, Var};

#[cfg(test)]
mod tests;
