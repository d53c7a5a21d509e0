use proptest::prelude::*;

use toric_additive_core::additive::{all_admissible_bases, classify, complete_collections};
use toric_additive_core::coxring::normal_form::{conjugate_first, normal_form, LieElement};
use toric_additive_core::coxring::poly::{ratio, Poly, Rational};
use toric_additive_core::fan::Fan2;
use toric_additive_core::lattice::{dual_basis, pairing, primitive, solve_pairing_line, CharVec, LatticeVec};
use toric_additive_core::roots::all_roots;
use toric_additive_core::sweep::primitive_vectors;
use toric_additive_core::verify::{brute_force_roots, check_condition2_redundant, roots_within_box, DEFAULT_BOX};

fn vec2() -> impl Strategy<Value = [i64; 2]> {
    [-50i64..=50, -50i64..=50]
}

fn unimodular() -> impl Strategy<Value = [[i64; 2]; 2]> {
    // Products of elementary matrices.
    prop::collection::vec((0u8..4, -2i64..=2), 1..5).prop_map(|ops| {
        let mut m = [[1, 0], [0, 1]];
        for (op, k) in ops {
            m = match op {
                0 => [[m[0][0] + k * m[1][0], m[0][1] + k * m[1][1]], m[1]],
                1 => [m[0], [m[1][0] + k * m[0][0], m[1][1] + k * m[0][1]]],
                2 => [m[1], m[0]],
                _ => [[-m[0][0], -m[0][1]], m[1]],
            };
        }
        m
    })
}

/// A complete fan: sorted primitive vectors chosen so that no gap is a
/// half-turn or more.
fn small_fan() -> impl Strategy<Value = Vec<[i64; 2]>> {
    let vs = primitive_vectors(3);
    prop::collection::btree_set(0..vs.len(), 3..7).prop_filter_map("not complete", move |idx| {
        let rays: Vec<[i64; 2]> = idx.iter().map(|&i| vs[i]).collect();
        Fan2::from_pairs(&rays).ok().map(|_| rays)
    })
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| ratio(n, d))
}

fn apply(m: &[[i64; 2]; 2], v: [i64; 2]) -> [i64; 2] {
    [m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]]
}

proptest! {
    #[test]
    fn pairing_is_bilinear(p in vec2(), q in vec2(), e in vec2()) {
        let sum = LatticeVec::from([p[0] + q[0], p[1] + q[1]]);
        let e = CharVec::from(e);
        prop_assert_eq!(
            pairing(&sum, &e).unwrap(),
            pairing(&LatticeVec::from(p), &e).unwrap() + pairing(&LatticeVec::from(q), &e).unwrap()
        );
    }

    #[test]
    fn primitive_divides(v in vec2()) {
        prop_assume!(v != [0, 0]);
        let (p, g) = primitive(&LatticeVec::from(v)).unwrap();
        prop_assert!(g > 0);
        prop_assert_eq!([p[0] * g, p[1] * g], v);
        prop_assert_eq!(primitive(&p).unwrap().1, 1);
    }

    #[test]
    fn dual_basis_is_dual(m in unimodular()) {
        let (p, q) = (LatticeVec::from(m[0]), LatticeVec::from(m[1]));
        let b = dual_basis(&p, &q).unwrap();
        for (i, v) in [&p, &q].into_iter().enumerate() {
            for (j, w) in b.duals.iter().enumerate() {
                prop_assert_eq!(pairing(v, w).unwrap(), if i == j { 1 } else { 0 });
            }
        }
    }

    #[test]
    fn pairing_line_points(v in vec2(), c in -20i64..=20, k in -5i64..=5) {
        prop_assume!(v != [0, 0]);
        let (p, _) = primitive(&LatticeVec::from(v)).unwrap();
        let (e0, q) = solve_pairing_line(&p, c).unwrap();
        prop_assert_eq!(pairing(&p, &q).unwrap(), 0);
        let e = CharVec::from([e0[0] + k * q[0], e0[1] + k * q[1]]);
        prop_assert_eq!(pairing(&p, &e).unwrap(), c);
    }

    #[test]
    fn fans_cover_the_plane(rays in small_fan(), w in vec2()) {
        prop_assume!(w != [0, 0]);
        prop_assert_eq!(Fan2::from_pairs(&rays).unwrap().coverage(&LatticeVec::from(w)), 1);
    }

    #[test]
    fn roots_satisfy_definition(rays in small_fan()) {
        let fan = Fan2::from_pairs(&rays).unwrap();
        let rs = all_roots(&fan).unwrap();
        for r in rs.all() {
            for (j, p) in fan.rays().iter().enumerate() {
                let v = pairing(p, &r.e).unwrap();
                if j == r.ray {
                    prop_assert_eq!(v, -1);
                } else {
                    prop_assert!(v >= 0);
                }
            }
        }
        prop_assert_eq!(&brute_force_roots(&fan, DEFAULT_BOX).per_ray, &rs.per_ray);
        prop_assert!(roots_within_box(&fan, DEFAULT_BOX).unwrap());
        prop_assert!(check_condition2_redundant(&fan).unwrap());
        for e in &rs.semisimple {
            prop_assert!(rs.contains(&e.neg()));
        }
        if let (Some(u), Some(pos)) = (&rs.regular_vector, &rs.positive) {
            for e in &rs.semisimple {
                prop_assert!(pairing(u, e).unwrap() != 0);
            }
            for e in pos {
                prop_assert!(rs.unipotent.contains(e) || pairing(u, e).unwrap() > 0);
            }
        }
    }

    #[test]
    fn classification_is_intrinsic(rays in small_fan(), m in unimodular(), shift in 0usize..6) {
        let fan = Fan2::from_pairs(&rays).unwrap();
        let mut moved: Vec<[i64; 2]> = rays.iter().map(|&r| apply(&m, r)).collect();
        moved.rotate_left(shift % rays.len());
        moved.reverse();
        let other = Fan2::from_pairs(&moved).unwrap();
        let (a, b) = (classify(&fan).unwrap(), classify(&other).unwrap());
        prop_assert_eq!(
            (a.admits_action, a.wide, a.d, a.num_classes, a.root_system.len()),
            (b.admits_action, b.wide, b.d, b.num_classes, b.root_system.len())
        );
        prop_assert_eq!(
            all_admissible_bases(&fan).unwrap().is_empty(),
            complete_collections(&fan, &a.root_system).is_empty()
        );
    }

    #[test]
    fn normal_form_is_unique(mu in prop::collection::vec(rational(), 2..5), k in 0usize..3, bump in 1i64..5) {
        prop_assume!(mu.last() != Some(&ratio(0, 1)));
        let nf = normal_form(&mu).unwrap();
        let d = mu.len() - 1;
        let mut target = vec![ratio(0, 1); d + 1];
        target[d] = mu[d].clone();
        prop_assert_eq!(&conjugate_first(&mu, &nf.eta), &LieElement::new(ratio(1, 1), target.clone()));
        let mut bad = nf.eta.clone();
        let k = k % d;
        bad[k] += ratio(bump, 1);
        prop_assert_ne!(conjugate_first(&mu, &bad), LieElement::new(ratio(1, 1), target));
    }

    #[test]
    fn polynomials_round_trip(terms in prop::collection::vec((rational(), 0u32..3, 0u32..3, 0u32..2, 0u32..2), 0..6)) {
        let mut p = Poly::zero();
        for (c, a, b, s, t) in terms {
            let m = Poly::x(0).pow(a) * Poly::x(2).pow(b) * Poly::s(0).pow(s) * Poly::s(1).pow(t);
            p += m.scale(&c);
        }
        let text = p.to_string();
        prop_assert_eq!(Poly::parse(&text).unwrap(), p);
    }
}
