use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use super::action::{compose, exp_action, ActionMap, S1, S1_PRIME, S2, S2_PRIME};
use super::derivation::*;
use super::generators::Generators;
use super::grading::cl_grading;
use super::normal_form::{conjugate_first, normal_form, verify_by_conjugation};
use super::poly::{rat, ratio, Poly, Rational};
use crate::additive::{classify, find_admissible_basis_2d};
use crate::error::Error;
use crate::fan::Fan2;
use crate::lattice::CharVec;

fn p2() -> Fan2 {
    Fan2::from_pairs(&[[1, 0], [0, 1], [-1, -1]]).unwrap()
}

fn f1() -> Fan2 {
    Fan2::from_pairs(&[[1, 0], [0, 1], [-1, -1], [0, -1]]).unwrap()
}

fn p112() -> Fan2 {
    Fan2::from_pairs(&[[1, 0], [0, 1], [-1, -2]]).unwrap()
}

fn poly(s: &str) -> Poly {
    Poly::parse(s).unwrap()
}

fn map(images: &[&str]) -> ActionMap {
    ActionMap::from_images(images.iter().map(|s| poly(s)).collect())
}

fn d(m: usize, i: usize, coeff: &str) -> Derivation {
    Derivation::single(m, i, poly(coeff))
}

fn gens(fan: &Fan2) -> Generators {
    let c = classify(fan).unwrap();
    c.generators().unwrap().unwrap()
}

#[test]
fn root_derivations() {
    assert_eq!(lnd_from_root(&p2(), 0, &CharVec::from([-1, 0])).unwrap(), d(3, 0, "x3"));
    assert_eq!(lnd_from_root(&p2(), 1, &CharVec::from([1, -1])).unwrap(), d(3, 1, "x1"));
    assert_eq!(lnd_from_root(&f1(), 1, &CharVec::from([0, -1])).unwrap(), d(4, 1, "x3*x4"));
    assert_eq!(
        lnd_from_root(&p2(), 0, &CharVec::from([-1, -1])),
        Err(Error::NegativeExponent(2))
    );
    assert_eq!(d(3, 0, "x3").to_string(), "x3*d/dx1");
}

#[test]
fn apply_is_a_derivation() {
    let delta = d(3, 0, "x3");
    assert_eq!(delta.apply(&poly("x1^2")), poly("2*x1*x3"));
    assert_eq!(delta.apply(&poly("x2")), Poly::zero());
    let e = d(3, 1, "x1");
    let (f, g) = (poly("x1*x2 + x3"), poly("x2^2 - x1"));
    assert_eq!(e.apply(&(&f * &g)), &e.apply(&f) * &g + &f * &e.apply(&g));
}

#[test]
fn commutators_on_p2() {
    let g = gens(&p2());
    assert_eq!(commutator(&g.delta, &g.partials[1]), g.partials[0]);
    assert!(commutator(&g.partials[0], &g.partials[1]).is_zero());
    assert!(commutator(&g.delta, &g.delta).is_zero());
    assert!(commutator(&g.delta, &g.partials[0]).is_zero());
}

#[test]
fn commutators_on_p112() {
    let g = gens(&p112());
    assert_eq!(g.d(), 2);
    assert_eq!(commutator(&g.delta, &g.partials[2]), g.partials[1].scale(&rat(2)));
    assert_eq!(commutator(&g.delta, &g.partials[1]), g.partials[0]);
    assert!(commutator(&g.partials[1], &g.partials[2]).is_zero());
}

#[test]
fn actions_on_p2() {
    let g = gens(&p2());
    let normalized = exp_action(&g.delta, &g.partials[0]).unwrap();
    assert_eq!(normalized, map(&["x1 + s1*x3", "x2 + s2*x3", "x3"]));
    let d1 = g.delta.add(&g.partials[1]);
    let non_normalized = exp_action(&d1, &g.partials[0]).unwrap();
    assert_eq!(
        non_normalized,
        map(&["x1 + s1*x3", "x2 + s1*x1 + s2*x3 + 1/2*s1^2*x3", "x3"])
    );
    assert_eq!(
        non_normalized.image(1).to_string(),
        "x2 + s1*x1 + s2*x3 + 1/2*s1^2*x3"
    );
}

#[test]
fn actions_on_f1() {
    let g = gens(&f1());
    assert_eq!(g.delta, d(4, 0, "x3"));
    assert_eq!(g.partials, vec![d(4, 1, "x3*x4"), d(4, 1, "x1*x4")]);
    let d1 = g.delta.add(&g.partials[1]);
    assert_eq!(
        exp_action(&d1, &g.partials[0]).unwrap(),
        map(&["x1 + s1*x3", "x2 + s1*x1*x4 + s2*x3*x4 + 1/2*s1^2*x3*x4", "x3", "x4"])
    );
}

#[test]
fn non_commuting_pair_is_rejected() {
    let g = gens(&p2());
    assert_eq!(exp_action(&g.delta, &g.partials[1]), Err(Error::NotCommuting));
}

#[test]
fn composition() {
    let a = map(&["x1 + s1*x3", "x2 + s2*x3", "x3"]);
    let c = compose(&a, &a).unwrap();
    assert_eq!(c, map(&["x1 + s1*x3 + s3*x3", "x2 + s2*x3 + s4*x3", "x3"]));
    let sum = a.reparametrize(&(Poly::var(S1) + Poly::var(S1_PRIME)), &(Poly::var(S2) + Poly::var(S2_PRIME)));
    assert_eq!(c, sum);
    assert_eq!(compose(&a, &ActionMap::identity(3)).unwrap(), a);
    assert_eq!(
        compose(&a, &ActionMap::identity(4)),
        Err(Error::VariableMismatch(3, 4))
    );
}

#[test]
fn degrees() {
    let fan = p2();
    let basis = find_admissible_basis_2d(&fan).unwrap().unwrap();
    let g = cl_grading(&fan, &basis).unwrap();
    assert_eq!(g.degrees(), &[vec![1], vec![1], vec![1]]);
    assert_eq!(degree_of(&d(3, 0, "x3"), &g), Ok(vec![0]));
    assert_eq!(degree_of(&d(3, 0, "x1"), &g), Ok(vec![0]));
    assert_eq!(degree_of(&d(3, 0, "x1^2"), &g), Ok(vec![1]));
    assert_eq!(degree_of(&Derivation::zero(3), &g), Err(Error::ZeroDerivation));
    let mixed = Derivation::from_entries(vec![poly("x1"), poly("x1^2"), Poly::zero()]);
    assert_eq!(degree_of(&mixed, &g), Err(Error::NotHomogeneous(1, 2)));

    let fan = f1();
    let basis = find_admissible_basis_2d(&fan).unwrap().unwrap();
    let g = cl_grading(&fan, &basis).unwrap();
    assert_eq!(g.degrees(), &[vec![1, 0], vec![1, 1], vec![1, 0], vec![0, 1]]);
    assert_eq!(degree_of(&d(4, 2, "x1"), &g), Ok(vec![0, 0]));

    let fan = p112();
    let basis = find_admissible_basis_2d(&fan).unwrap().unwrap();
    let g = cl_grading(&fan, &basis).unwrap();
    assert_eq!(g.degrees(), &[vec![1], vec![2], vec![1]]);
}

#[test]
fn torus_characters() {
    let (chi, delta) = torus_conjugate(&p2(), 0, &CharVec::from([-1, 0])).unwrap();
    assert_eq!(chi.to_string(), "t1^-1*t3");
    assert_eq!(delta, d(3, 0, "x3"));
    assert_eq!(chi.evaluate(&[rat(1), rat(1), rat(1)]), Ok(rat(1)));
    let (c, _) = torus_conjugate_at(&p2(), 1, &CharVec::from([1, -1]), &[rat(2), rat(1), rat(1)]).unwrap();
    assert_eq!(c, rat(2));
    assert_eq!(chi.evaluate(&[rat(0), rat(1), rat(1)]), Err(Error::ZeroTorusEntry(1)));
}

#[test]
fn torus_character_matches_direct_conjugation() {
    let fan = f1();
    let t = [ratio(2, 3), rat(-5), ratio(1, 7), rat(3)];
    for i in 0..fan.num_rays() {
        for r in crate::roots::enumerate_roots_at(&fan, i).unwrap() {
            let (c, dr) = torus_conjugate_at(&fan, i, &r.e, &t).unwrap();
            assert_eq!(conjugate_by_torus(&dr, &t).unwrap(), dr.scale(&c));
        }
    }
}

#[test]
fn normal_form_d1() {
    for (m0, m1) in [(rat(3), rat(2)), (ratio(-1, 2), rat(5)), (rat(0), rat(1))] {
        let nf = normal_form(&[m0.clone(), m1.clone()]).unwrap();
        assert_eq!(nf.eta, vec![&m0 + &m1]);
    }
}

#[test]
fn normal_form_zero_lower_coefficients() {
    // The conjugator always contains delta, so eta is nonzero even when
    // the input is already in normal form; the output is the input.
    let mu = [rat(0), rat(0), rat(4)];
    let nf = normal_form(&mu).unwrap();
    assert_eq!(nf.first, super::normal_form::LieElement::new(rat(1), mu.to_vec()));
    assert_eq!(normal_form(&[rat(0), rat(4)]).unwrap().eta, vec![rat(4)]);
    assert_eq!(normal_form(&[rat(1)]).map(|n| n.eta), Err(Error::NotApplicable));
}

#[test]
fn normal_form_reconjugates_symbolically() {
    let g = gens(&p112());
    let mu: Vec<Rational> = vec![ratio(2, 3), rat(-1), ratio(5, 2)];
    let nf = normal_form(&mu).unwrap();
    assert!(verify_by_conjugation(&g, &mu, &nf.eta).unwrap());
    let mut bad = nf.eta.clone();
    bad[0] += rat(1);
    assert!(!verify_by_conjugation(&g, &mu, &bad).unwrap());
    assert_ne!(conjugate_first(&mu, &bad), nf.first);
}
