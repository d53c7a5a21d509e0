//! Exhaustive enumeration of small complete fans.
//!
//! Fans are generated as subsets of the angularly sorted primitive vectors
//! in a box, so each ray set is produced exactly once. A subset listed in
//! angular order is complete iff every consecutive pair, including the
//! wrap-around, turns strictly counterclockwise; the recursion prunes on the
//! consecutive condition as rays are added.

use alloc::vec::Vec;

use crate::fan::angle_cmp;
use crate::lattice::{is_primitive, LatticeVec};

/// Primitive vectors in `[-b, b]^2`, counterclockwise from the positive
/// x-axis.
pub fn primitive_vectors(b: i64) -> Vec<[i64; 2]> {
    let mut v: Vec<LatticeVec> = Vec::new();
    for x in -b..=b {
        for y in -b..=b {
            let p = LatticeVec::from([x, y]);
            if is_primitive(&p) {
                v.push(p);
            }
        }
    }
    v.sort_by(angle_cmp);
    v.into_iter().map(|p| [p[0], p[1]]).collect()
}

fn cross(a: [i64; 2], b: [i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

/// Calls `f` on the rays of every complete fan with between `min_rays` and
/// `max_rays` rays taken from `[-b, b]^2`, in angular order.
pub fn for_each_fan(b: i64, min_rays: usize, max_rays: usize, mut f: impl FnMut(&[[i64; 2]])) {
    let vs = primitive_vectors(b);
    let mut stack: Vec<[i64; 2]> = Vec::with_capacity(max_rays);
    for start in 0..vs.len() {
        stack.push(vs[start]);
        extend(&vs, start + 1, min_rays.max(3), max_rays, &mut stack, &mut f);
        stack.pop();
    }
}

fn extend(vs: &[[i64; 2]], from: usize, min: usize, max: usize, stack: &mut Vec<[i64; 2]>, f: &mut impl FnMut(&[[i64; 2]])) {
    let last = *stack.last().unwrap();
    if stack.len() >= min && cross(last, stack[0]) > 0 {
        f(stack);
    }
    if stack.len() == max {
        return;
    }
    for k in from..vs.len() {
        // Sorted order: once the turn from `last` stops being positive it
        // never becomes positive again.
        if cross(last, vs[k]) <= 0 {
            break;
        }
        stack.push(vs[k]);
        extend(vs, k + 1, min, max, stack, f);
        stack.pop();
    }
}

/// Number of fans [`for_each_fan`] visits.
pub fn count_fans(b: i64, min_rays: usize, max_rays: usize) -> usize {
    let mut n = 0;
    for_each_fan(b, min_rays, max_rays, |_| n += 1);
    n
}
