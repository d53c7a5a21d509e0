use alloc::vec::Vec;

use super::derivation::{lnd_from_root, Derivation};
use super::poly::Rational;
use crate::additive::AdmissibleBasis;
use crate::error::Result;
use crate::fan::Fan2;
use crate::lattice::CharVec;

/// `a*p1* + b*p2*` for the dual basis of `basis`.
pub fn char_in_basis(basis: &AdmissibleBasis, a: i64, b: i64) -> CharVec {
    let [d1, d2] = &basis.dual.duals;
    CharVec::from([a * d1[0] + b * d2[0], a * d1[1] + b * d2[1]])
}

/// Coordinates `(<p1, e>, <p2, e>)` of a character in the dual basis.
pub fn basis_coords(fan: &Fan2, basis: &AdmissibleBasis, e: &CharVec) -> (i64, i64) {
    let (i1, i2) = basis.basis_indices;
    (
        crate::lattice::pair2(fan.ray(i1), e),
        crate::lattice::pair2(fan.ray(i2), e),
    )
}

/// The root derivation of `-p1*`, moving only the first basis coordinate.
pub fn delta(fan: &Fan2, basis: &AdmissibleBasis) -> Result<Derivation> {
    lnd_from_root(fan, basis.basis_indices.0, &char_in_basis(basis, -1, 0))
}

/// The root derivation of `k*p1* - p2*`:
/// `x_{i1}^k prod_j x_j^{a_j2 - k a_j1} d/dx_{i2}`.
pub fn partial(fan: &Fan2, basis: &AdmissibleBasis, k: i64) -> Result<Derivation> {
    lnd_from_root(fan, basis.basis_indices.1, &char_in_basis(basis, k, -1))
}

/// The derivations `delta, d_0, ..., d_d` spanning the Lie algebra in which
/// every additive action of a non-wide surface lives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    pub delta: Derivation,
    pub partials: Vec<Derivation>,
}

impl Generators {
    pub fn new(fan: &Fan2, basis: &AdmissibleBasis, d: usize) -> Result<Self> {
        Ok(Generators {
            delta: delta(fan, basis)?,
            partials: (0..=d as i64).map(|k| partial(fan, basis, k)).collect::<Result<_>>()?,
        })
    }

    pub fn d(&self) -> usize {
        self.partials.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.delta.num_vars()
    }

    /// `a*delta + sum_k b_k d_k`.
    pub fn combine(&self, a: &Rational, b: &[Rational]) -> Derivation {
        let mut out = self.delta.scale(a);
        for (p, c) in self.partials.iter().zip(b) {
            out = out.add(&p.scale(c));
        }
        out
    }
}
