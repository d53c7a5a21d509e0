use alloc::vec;
use alloc::vec::Vec;

use super::poly::{Monomial, Var};
use crate::additive::AdmissibleBasis;
use crate::error::{inconsistency, Result};
use crate::fan::Fan2;
use crate::lattice::pair2;

/// The class-group grading of the Cox ring when the basis rays form a
/// lattice basis: `Cl(X) = Z^{m-2}`, one coordinate per non-basis ray.
///
/// `deg x_{i1} = (a_{j1})_j`, `deg x_{i2} = (a_{j2})_j` and each non-basis
/// coordinate `x_j` gets the unit vector of its own slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClGrading {
    degrees: Vec<Vec<i64>>,
    /// Non-basis rays in slot order.
    pub slots: Vec<usize>,
}

impl ClGrading {
    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn degree(&self, var: usize) -> &[i64] {
        &self.degrees[var]
    }

    pub fn degrees(&self) -> &[Vec<i64>] {
        &self.degrees
    }

    /// Degree of a monomial; group parameters have degree zero.
    pub fn monomial_degree(&self, m: &Monomial) -> Vec<i64> {
        let mut deg = vec![0; self.rank()];
        for &(v, e) in m.factors() {
            if let Var::X(i) = v {
                for (a, b) in deg.iter_mut().zip(&self.degrees[i as usize]) {
                    *a += b * e as i64;
                }
            }
        }
        deg
    }
}

/// Builds the grading from an admissible basis and checks that every
/// principal divisor `div(chi^w) = -sum_i <w, p_i> D_i` has degree zero.
pub fn cl_grading(fan: &Fan2, basis: &AdmissibleBasis) -> Result<ClGrading> {
    let m = fan.num_rays();
    let (i1, i2) = basis.basis_indices;
    let slots: Vec<usize> = basis.alpha.iter().map(|a| a.ray).collect();
    let mut degrees = vec![vec![0i64; slots.len()]; m];
    for (k, a) in basis.alpha.iter().enumerate() {
        degrees[i1][k] = a.a1;
        degrees[i2][k] = a.a2;
        degrees[a.ray][k] = 1;
    }
    for w in &basis.dual.duals {
        let mut total = vec![0i64; slots.len()];
        for (i, p) in fan.rays().iter().enumerate() {
            let c = pair2(p, w);
            for (t, d) in total.iter_mut().zip(&degrees[i]) {
                *t += c * d;
            }
        }
        if total.iter().any(|&t| t != 0) {
            return Err(inconsistency("class-group grading does not kill the principal divisors"));
        }
    }
    Ok(ClGrading { degrees, slots })
}
