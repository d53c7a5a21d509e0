//! Complete two-dimensional fans, reconstructed from their primitive rays.
//!
//! A complete fan in the plane is determined by its rays: the maximal cones
//! are exactly the cones spanned by angularly consecutive rays. Ordering is
//! done with half-plane classification and cross products, so no
//! trigonometry is involved.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::lattice::{is_primitive, LatticeVec, MAX_COORD};

/// A validated complete fan in N = Z^2.
///
/// Rays keep their input order; indices into [`Fan2::rays`] are 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan2 {
    rays: Vec<LatticeVec>,
    cyclic_order: Vec<usize>,
    maximal_cones: Vec<(usize, usize)>,
    adjacency: Vec<bool>,
}

#[inline]
pub(crate) fn cross(a: &LatticeVec, b: &LatticeVec) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn upper_half(v: &LatticeVec) -> bool {
    v[1] > 0 || (v[1] == 0 && v[0] > 0)
}

/// Counterclockwise angular order starting at the positive x-axis.
pub fn angle_cmp(a: &LatticeVec, b: &LatticeVec) -> Ordering {
    match (upper_half(a), upper_half(b)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => 0.cmp(&cross(a, b)),
    }
}

impl Fan2 {
    /// Validates `rays` and derives the cyclic order and maximal cones.
    pub fn new(rays: Vec<LatticeVec>) -> Result<Self> {
        let m = rays.len();
        for r in &rays {
            if r.dim() != 2 {
                return Err(Error::NotTwoDimensional(r.dim()));
            }
            if let Some(&c) = r.coords().iter().find(|c| c.abs() > MAX_COORD) {
                return Err(Error::CoordinateTooLarge(c));
            }
        }
        if let Some(i) = rays.iter().position(|r| !is_primitive(r)) {
            return Err(Error::RayNotPrimitive(i + 1));
        }
        for i in 0..m {
            for j in i + 1..m {
                if rays[i] == rays[j] {
                    return Err(Error::DuplicateRay(i + 1, j + 1));
                }
            }
        }
        if m < 3 {
            // Fewer than three rays never span the plane; report the uncovered
            // gap when there is one so that the error names the actual defect.
            return Err(match m {
                2 => Error::NotComplete(1, 2),
                _ => Error::TooFewRays(m),
            });
        }

        let mut cyclic_order: Vec<usize> = (0..m).collect();
        cyclic_order.sort_by(|&a, &b| angle_cmp(&rays[a], &rays[b]));

        let mut maximal_cones = Vec::with_capacity(m);
        let mut adjacency = vec![false; m * m];
        for k in 0..m {
            let a = cyclic_order[k];
            let b = cyclic_order[(k + 1) % m];
            if cross(&rays[a], &rays[b]) <= 0 {
                return Err(Error::NotComplete(a + 1, b + 1));
            }
            maximal_cones.push((a, b));
            adjacency[a * m + b] = true;
            adjacency[b * m + a] = true;
        }
        Ok(Fan2 {
            rays,
            cyclic_order,
            maximal_cones,
            adjacency,
        })
    }

    /// Convenience constructor from coordinate pairs.
    pub fn from_pairs(pairs: &[[i64; 2]]) -> Result<Self> {
        Self::new(pairs.iter().map(|&p| LatticeVec::from(p)).collect())
    }

    pub fn rays(&self) -> &[LatticeVec] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &LatticeVec {
        &self.rays[i]
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    /// Ray indices sorted counterclockwise from the positive x-axis.
    pub fn cyclic_order(&self) -> &[usize] {
        &self.cyclic_order
    }

    /// Maximal cones as pairs `(a, b)` of consecutive rays, `b` following `a`
    /// counterclockwise.
    pub fn maximal_cones(&self) -> &[(usize, usize)] {
        &self.maximal_cones
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i < self.rays.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                index: i,
                len: self.rays.len(),
            })
        }
    }

    /// Whether rays `i` and `j` span a maximal cone.
    pub fn adjacent(&self, i: usize, j: usize) -> Result<bool> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(self.is_adjacent(i, j))
    }

    #[inline]
    pub(crate) fn is_adjacent(&self, i: usize, j: usize) -> bool {
        self.adjacency[i * self.rays.len() + j]
    }

    /// Number of maximal cones whose half-open span `[a, b)` contains the
    /// direction `w`. Equals 1 for every nonzero `w` exactly when the cones
    /// tile the plane once, i.e. their angles add up to a full turn.
    pub fn coverage(&self, w: &LatticeVec) -> usize {
        self.maximal_cones
            .iter()
            .filter(|&&(a, b)| cross(&self.rays[a], w) >= 0 && cross(w, &self.rays[b]) > 0)
            .count()
    }
}

/// Free-function form of [`Fan2::new`].
pub fn build_fan(rays: Vec<LatticeVec>) -> Result<Fan2> {
    Fan2::new(rays)
}
