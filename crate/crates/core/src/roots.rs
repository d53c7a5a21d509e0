//! Demazure roots of a complete two-dimensional fan.
//!
//! The roots attached to ray `i` are the characters `e` with `<p_i, e> = -1`
//! and `<p_j, e> >= 0` for every other ray, subject to the cone condition:
//! any ray `j` with `<p_j, e> = 0` must span a cone of the fan together with
//! `p_i`. They lie on a line in M, and completeness cuts that line down to a
//! bounded segment, so the enumeration is an exact integer-interval scan.

use alloc::vec::Vec;

use crate::additive::{find_admissible_basis_2d, AdmissibleBasis};
use crate::error::{inconsistency, Error, Result};
use crate::fan::{angle_cmp, Fan2};
use crate::lattice::{ceil_div, floor_div, pair2, solve_pairing_line, CharVec, LatticeVec};

/// A root `e` together with the ray it is attached to (0-based).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DemazureRoot {
    pub e: CharVec,
    pub ray: usize,
}

/// All roots of a fan, split into semisimple and unipotent parts, with a
/// positive system when the fan admits an additive action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    /// `per_ray[i]` is the sorted set of roots attached to ray `i`.
    pub per_ray: Vec<Vec<DemazureRoot>>,
    pub semisimple: Vec<CharVec>,
    pub unipotent: Vec<CharVec>,
    /// `None` when the fan admits no additive action.
    pub regular_vector: Option<LatticeVec>,
    pub positive: Option<Vec<CharVec>>,
}

impl RootSystem {
    pub fn all(&self) -> impl Iterator<Item = &DemazureRoot> {
        self.per_ray.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.per_ray.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, e: &CharVec) -> bool {
        self.all().any(|r| &r.e == e)
    }

    pub fn at(&self, ray: usize) -> &[DemazureRoot] {
        &self.per_ray[ray]
    }

    /// Positive roots attached to ray `i`.
    pub fn positive_at(&self, ray: usize) -> Vec<CharVec> {
        let Some(pos) = &self.positive else {
            return Vec::new();
        };
        self.per_ray[ray]
            .iter()
            .filter(|r| pos.contains(&r.e))
            .map(|r| r.e.clone())
            .collect()
    }
}

/// The segment of the line `<p_i, e> = -1` cut out by the inequalities
/// `<p_j, e> >= 0`, as `e0 + k*q` for `k_min <= k <= k_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSegment {
    pub e0: CharVec,
    pub q: CharVec,
    /// `None` when the inequalities are infeasible.
    pub range: Option<(i64, i64)>,
}

impl RootSegment {
    pub fn point(&self, k: i64) -> CharVec {
        CharVec::from([self.e0[0] + k * self.q[0], self.e0[1] + k * self.q[1]])
    }
}

/// Solves the inequality system for ray `i` on its pairing line.
pub fn root_segment(fan: &Fan2, i: usize) -> Result<RootSegment> {
    fan.check_index(i)?;
    let (e0, q) = solve_pairing_line(fan.ray(i), -1)?;
    let mut lo: Option<i64> = None;
    let mut hi: Option<i64> = None;
    let mut feasible = true;
    for (j, p) in fan.rays().iter().enumerate() {
        if j == i {
            continue;
        }
        // <p, e0> + k <p, q> >= 0
        let a = pair2(p, &e0);
        let b = pair2(p, &q);
        match b.signum() {
            0 => feasible &= a >= 0,
            1 => {
                let bound = ceil_div(-a, b);
                lo = Some(lo.map_or(bound, |l| l.max(bound)));
            }
            _ => {
                let bound = floor_div(-a, b);
                hi = Some(hi.map_or(bound, |h| h.min(bound)));
            }
        }
    }
    let (Some(lo), Some(hi)) = (lo, hi) else {
        // Rays of a complete fan positively span the plane, so some ray pairs
        // positively and some negatively with q.
        return Err(inconsistency("root segment is unbounded on a complete fan"));
    };
    let range = (feasible && lo <= hi).then_some((lo, hi));
    Ok(RootSegment { e0, q, range })
}

/// Roots attached to ray `i`, sorted lexicographically. With
/// `cone_condition` false only the pairing inequalities are imposed.
pub fn enumerate_roots_with(fan: &Fan2, i: usize, cone_condition: bool) -> Result<Vec<DemazureRoot>> {
    let seg = root_segment(fan, i)?;
    let mut out = Vec::new();
    if let Some((lo, hi)) = seg.range {
        for k in lo..=hi {
            let e = seg.point(k);
            if cone_condition && !satisfies_cone_condition(fan, i, &e) {
                continue;
            }
            out.push(DemazureRoot { e, ray: i });
        }
    }
    out.sort();
    Ok(out)
}

pub(crate) fn satisfies_cone_condition(fan: &Fan2, i: usize, e: &CharVec) -> bool {
    fan.rays()
        .iter()
        .enumerate()
        .all(|(j, p)| j == i || pair2(p, e) != 0 || fan.is_adjacent(i, j))
}

/// The set of Demazure roots attached to ray `i`.
pub fn enumerate_roots_at(fan: &Fan2, i: usize) -> Result<Vec<DemazureRoot>> {
    enumerate_roots_with(fan, i, true)
}

/// Splits a root list into `(semisimple, unipotent)`, each sorted.
pub fn split_roots(per_ray: &[Vec<DemazureRoot>]) -> (Vec<CharVec>, Vec<CharVec>) {
    let all: Vec<&CharVec> = per_ray.iter().flatten().map(|r| &r.e).collect();
    let mut semisimple = Vec::new();
    let mut unipotent = Vec::new();
    for e in &all {
        let neg = e.neg();
        if all.iter().any(|f| **f == neg) {
            semisimple.push((*e).clone());
        } else {
            unipotent.push((*e).clone());
        }
    }
    semisimple.sort();
    unipotent.sort();
    (semisimple, unipotent)
}

/// Enumerates every root of the fan and, when an admissible basis exists,
/// fixes a regular vector and the resulting positive system.
pub fn all_roots(fan: &Fan2) -> Result<RootSystem> {
    let basis = find_admissible_basis_2d(fan)?;
    root_system_for(fan, basis.as_ref())
}

pub(crate) fn root_system_for(fan: &Fan2, basis: Option<&AdmissibleBasis>) -> Result<RootSystem> {
    let per_ray = (0..fan.num_rays())
        .map(|i| enumerate_roots_at(fan, i))
        .collect::<Result<Vec<_>>>()?;
    let (semisimple, unipotent) = split_roots(&per_ray);
    let mut rs = RootSystem {
        per_ray,
        semisimple,
        unipotent,
        regular_vector: None,
        positive: None,
    };
    if let Some(basis) = basis {
        let u = select_regular_vector(fan, basis, &rs)?;
        rs.positive = Some(positive_system(&rs.semisimple, &u, &rs.unipotent)?);
        rs.regular_vector = Some(u);
    }
    Ok(rs)
}

/// Lattice points of max-norm `r`, counterclockwise from `(r, 0)`.
fn ring(r: i64) -> Vec<LatticeVec> {
    if r == 0 {
        return alloc::vec![LatticeVec::from([0, 0])];
    }
    let mut pts = Vec::with_capacity(8 * r as usize);
    for a in -r..=r {
        for b in -r..=r {
            if a.abs().max(b.abs()) == r {
                pts.push(LatticeVec::from([a, b]));
            }
        }
    }
    pts.sort_by(angle_cmp);
    pts
}

const MAX_SCALE: i64 = 64;

/// Picks `u` in N with `<u, e> != 0` on every semisimple root and
/// `<u, e> < 0` on every root of a non-basis ray.
///
/// Candidates are `Q*u0 + a*p1 + b*p2` with `u0 = -(p1 + p2)`, scanning
/// `Q = 1, 2, ...` and `(a, b)` ring by ring up to max-norm `Q`. When both
/// `p1* - p2*` and its negative are roots, the candidate must also make
/// `p1* - p2*` positive; that pins the normal form in which the first basis
/// ray carries a single positive root whenever both basis rays carry more
/// than one.
pub fn select_regular_vector(fan: &Fan2, basis: &AdmissibleBasis, roots: &RootSystem) -> Result<LatticeVec> {
    let (i1, i2) = basis.basis_indices;
    let (p1, p2) = (fan.ray(i1), fan.ray(i2));
    let [d1, d2] = &basis.dual.duals;
    let tilt = CharVec::from([d1[0] - d2[0], d1[1] - d2[1]]);
    let tilt_opposite_pair = roots.semisimple.contains(&tilt) && roots.semisimple.contains(&tilt.neg());
    let non_basis: Vec<&CharVec> = roots
        .all()
        .filter(|r| r.ray != i1 && r.ray != i2)
        .map(|r| &r.e)
        .collect();

    let accept = |u: &LatticeVec| {
        roots.semisimple.iter().all(|e| pair2(u, e) != 0)
            && non_basis.iter().all(|e| pair2(u, e) < 0)
            && (!tilt_opposite_pair || pair2(u, &tilt) > 0)
    };

    for q in 1..=MAX_SCALE {
        for r in 0..=q {
            if r == 0 && q > 1 {
                continue;
            }
            for delta in ring(r) {
                let (a, b) = (delta[0] - q, delta[1] - q);
                let u = LatticeVec::from([a * p1[0] + b * p2[0], a * p1[1] + b * p2[1]]);
                if accept(&u) {
                    return Ok(u);
                }
            }
        }
    }
    Err(Error::NoRegularVector)
}

/// `{e in S : <u, e> > 0} ∪ U`, sorted.
pub fn positive_system(semisimple: &[CharVec], u: &LatticeVec, unipotent: &[CharVec]) -> Result<Vec<CharVec>> {
    let mut pos = Vec::with_capacity(semisimple.len() / 2 + unipotent.len());
    for e in semisimple {
        match pair2(u, e) {
            0 => return Err(Error::NotRegular(e.coords().to_vec())),
            v if v > 0 => pos.push(e.clone()),
            _ => {}
        }
    }
    pos.extend(unipotent.iter().cloned());
    pos.sort();
    Ok(pos)
}

/// Closed-form size of the root set of a basis ray, from the columns of the
/// negative-octant coefficients: `floor(min_j a_j / b_j) + 1`, where terms
/// with `b_j = 0` do not constrain the minimum. Returns `None` for an
/// unbounded set (no constraining term).
pub fn closed_form_root_count(alpha: &[(i64, i64)], first: bool) -> Option<i64> {
    alpha
        .iter()
        .map(|&(a1, a2)| if first { (a1, a2) } else { (a2, a1) })
        .filter(|&(_, den)| den != 0)
        .map(|(num, den)| floor_div(num, den))
        .min()
        .map(|m| m + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn es(v: &[DemazureRoot]) -> Vec<[i64; 2]> {
        v.iter().map(|r| [r.e[0], r.e[1]]).collect()
    }
    fn cvs(v: &[CharVec]) -> Vec<[i64; 2]> {
        v.iter().map(|e| [e[0], e[1]]).collect()
    }

    #[test]
    fn projective_plane_roots() {
        let fan = Fan2::from_pairs(&[[1, 0], [0, 1], [-1, -1]]).unwrap();
        assert_eq!(es(&enumerate_roots_at(&fan, 0).unwrap()), vec![[-1, 0], [-1, 1]]);
        let rs = all_roots(&fan).unwrap();
        assert_eq!(rs.len(), 6);
        assert_eq!(rs.semisimple.len(), 6);
        assert_eq!(cvs(rs.positive.as_ref().unwrap()), vec![[-1, 0], [0, -1], [1, -1]]);
        let u = rs.regular_vector.unwrap();
        assert_eq!(u, LatticeVec::from([-1, -2]));
    }

    #[test]
    fn hirzebruch_last_ray_has_no_roots() {
        let fan = Fan2::from_pairs(&[[1, 0], [0, 1], [-1, -1], [0, -1]]).unwrap();
        assert!(enumerate_roots_at(&fan, 3).unwrap().is_empty());
    }

    #[test]
    fn weighted_plane_roots() {
        let fan = Fan2::from_pairs(&[[1, 0], [0, 1], [-1, -2]]).unwrap();
        assert_eq!(es(&enumerate_roots_at(&fan, 1).unwrap()), vec![[0, -1], [1, -1], [2, -1]]);
    }

    #[test]
    fn product_of_lines_has_no_unipotent_roots() {
        let fan = Fan2::from_pairs(&[[1, 0], [0, 1], [-1, 0], [0, -1]]).unwrap();
        let rs = all_roots(&fan).unwrap();
        assert!(rs.unipotent.is_empty());
        assert_eq!(rs.semisimple.len(), 4);
        // u0 = -(p1 + p2) is already regular here
        assert_eq!(rs.regular_vector, Some(LatticeVec::from([-1, -1])));
        assert_eq!(cvs(rs.positive.as_ref().unwrap()), vec![[-1, 0], [0, -1]]);
    }

    #[test]
    fn wide_example_roots_are_unipotent() {
        let fan = Fan2::from_pairs(&[[1, 0], [0, 1], [-1, -2], [-2, -1]]).unwrap();
        let rs = all_roots(&fan).unwrap();
        assert!(rs.semisimple.is_empty());
        assert_eq!(cvs(&rs.unipotent), vec![[-1, 0], [0, -1]]);
        assert_eq!(rs.regular_vector, Some(LatticeVec::from([-1, -1])));
        assert_eq!(rs.positive.unwrap(), rs.unipotent);
    }

    #[test]
    fn positive_system_rejects_irregular_vector() {
        let s = vec![CharVec::from([1, -1]), CharVec::from([-1, 1])];
        let err = positive_system(&s, &LatticeVec::from([-1, -1]), &[]).unwrap_err();
        assert!(matches!(err, Error::NotRegular(_)));
        assert!(positive_system(&[], &LatticeVec::from([-1, -1]), &[]).unwrap().is_empty());
    }

    #[test]
    fn closed_form_counts() {
        assert_eq!(closed_form_root_count(&[(1, 1)], true), Some(2));
        assert_eq!(closed_form_root_count(&[(1, 2)], false), Some(3));
        assert_eq!(closed_form_root_count(&[(1, 2), (2, 1)], true), Some(1));
        assert_eq!(closed_form_root_count(&[(1, 1), (0, 1)], true), Some(1));
        assert_eq!(closed_form_root_count(&[(1, 1), (0, 1)], false), Some(2));
        assert_eq!(closed_form_root_count(&[(0, 1)], false), None);
    }
}
