//! Conjugating a commuting pair `(delta + sum_k mu_k d_k, d_0)` into the
//! normal form `(delta + mu_d d_d, d_0)`.
//!
//! The computation runs in the Lie algebra spanned by `delta, d_0..d_d`,
//! where `[delta, d_k] = k d_{k-1}` and the `d_k` commute. The conjugating
//! automorphism is `exp(delta + sum_{k>=1} eta_k d_k)`; the coefficient of
//! `d_k` in the conjugate depends only on `eta_{k+1}, ..., eta_d`, and
//! affinely on `eta_{k+1}`, so the `eta` are solved from the top down.

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::action::{apply_map, exp_automorphism};
use super::derivation::Derivation;
use super::generators::Generators;
use super::poly::{rat, Rational};
use crate::error::{inconsistency, Error, Result};

/// `a*delta + sum_k b[k] d_k` as a coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    pub delta: Rational,
    pub partials: Vec<Rational>,
}

impl LieElement {
    pub fn new(delta: Rational, partials: Vec<Rational>) -> Self {
        LieElement { delta, partials }
    }

    fn d(&self) -> usize {
        self.partials.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.delta.is_zero() && self.partials.iter().all(Zero::is_zero)
    }

    fn add_scaled(&mut self, other: &LieElement, c: &Rational) {
        self.delta += &other.delta * c;
        for (a, b) in self.partials.iter_mut().zip(&other.partials) {
            *a += b * c;
        }
    }

    /// Bracket from `[delta, d_k] = k d_{k-1}` and `[d_k, d_l] = 0`.
    pub fn bracket(&self, other: &LieElement) -> LieElement {
        let d = self.d();
        let mut out = LieElement::new(Rational::zero(), vec![Rational::zero(); d + 1]);
        for k in 1..=d {
            let kq = rat(k as i64);
            out.partials[k - 1] += &self.delta * &other.partials[k] * &kq;
            out.partials[k - 1] -= &other.delta * &self.partials[k] * &kq;
        }
        out
    }

    /// `exp(ad(self)) other = sum_l ad(self)^l other / l!`.
    pub fn exp_ad(&self, other: &LieElement) -> LieElement {
        let mut sum = other.clone();
        let mut term = other.clone();
        // ad is nilpotent on this algebra: d + 2 brackets kill everything.
        for l in 1..=self.d() + 2 {
            term = self.bracket(&term);
            term = LieElement::new(
                &term.delta / rat(l as i64),
                term.partials.iter().map(|c| c / rat(l as i64)).collect(),
            );
            if term.is_zero() {
                break;
            }
            sum.add_scaled(&term, &Rational::one());
        }
        sum
    }

    pub fn to_derivation(&self, g: &Generators) -> Derivation {
        g.combine(&self.delta, &self.partials)
    }
}

/// Output of [`normal_form`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    /// `eta_1..eta_d`.
    pub eta: Vec<Rational>,
    /// The conjugated first derivation; equals `delta + mu_d d_d`.
    pub first: LieElement,
    /// The conjugated second derivation; equals `d_0`.
    pub second: LieElement,
}

/// `delta + sum_{k=1}^d eta_k d_k`.
pub fn conjugator(eta: &[Rational]) -> LieElement {
    let mut partials = vec![Rational::zero()];
    partials.extend(eta.iter().cloned());
    LieElement::new(Rational::one(), partials)
}

/// Solves for `eta` given `mu_0..mu_d`.
pub fn normal_form(mu: &[Rational]) -> Result<NormalForm> {
    if mu.len() < 2 {
        return Err(Error::NotApplicable);
    }
    let d = mu.len() - 1;
    let first = LieElement::new(Rational::one(), mu.to_vec());
    let mut second_p = vec![Rational::zero(); d + 1];
    second_p[0] = Rational::one();
    let second = LieElement::new(Rational::zero(), second_p);

    let mut eta = vec![Rational::zero(); d];
    for k in (0..d).rev() {
        // Coefficient of d_k as an affine function of eta_{k+1}.
        eta[k] = Rational::zero();
        let c0 = conjugator(&eta).exp_ad(&first).partials[k].clone();
        eta[k] = Rational::one();
        let c1 = conjugator(&eta).exp_ad(&first).partials[k].clone();
        let slope = &c1 - &c0;
        if slope.is_zero() {
            return Err(inconsistency("normal-form system is not triangular"));
        }
        eta[k] = -c0 / slope;
    }

    let y = conjugator(&eta);
    let first = y.exp_ad(&first);
    let second = y.exp_ad(&second);
    let mut target = vec![Rational::zero(); d + 1];
    target[d] = mu[d].clone();
    if first != LieElement::new(Rational::one(), target) {
        return Err(inconsistency("normal form did not reduce the lower coefficients"));
    }
    let unchanged = second.delta.is_zero()
        && second.partials[0].is_one()
        && second.partials[1..].iter().all(Zero::is_zero);
    if !unchanged {
        return Err(inconsistency("conjugation moved the second derivation"));
    }
    Ok(NormalForm { eta, first, second })
}

/// `psi∘D∘psi^{-1}` for the ring automorphism `psi = exp(y)`, computed on
/// polynomials by substitution.
pub fn conjugate_by_exp(y: &Derivation, d: &Derivation) -> Result<Derivation> {
    let psi = exp_automorphism(y)?;
    let psi_inv = exp_automorphism(&y.scale(&-Rational::one()))?;
    let entries = (0..d.num_vars())
        .map(|i| apply_map(&psi, &d.apply(psi_inv.image(i))))
        .collect();
    Ok(Derivation::from_entries(entries))
}

/// Re-derives the normal form on actual polynomials: conjugates the
/// original pair by `exp(delta + sum eta_k d_k)` and compares with
/// `(delta + mu_d d_d, d_0)`.
pub fn verify_by_conjugation(g: &Generators, mu: &[Rational], eta: &[Rational]) -> Result<bool> {
    let d = g.d();
    if mu.len() != d + 1 || eta.len() != d {
        return Err(Error::LengthMismatch {
            left: mu.len(),
            right: d + 1,
        });
    }
    let y = conjugator(eta).to_derivation(g);
    let d1 = g.combine(&Rational::one(), mu);
    let d2 = g.partials[0].clone();
    let mut target = vec![Rational::zero(); d + 1];
    target[d] = mu[d].clone();
    let want1 = g.combine(&Rational::one(), &target);
    Ok(conjugate_by_exp(&y, &d1)? == want1 && conjugate_by_exp(&y, &d2)? == d2)
}

/// The conjugate of `delta + sum_k mu_k d_k` by `exp(delta + sum_k eta_k d_k)`.
pub fn conjugate_first(mu: &[Rational], eta: &[Rational]) -> LieElement {
    conjugator(eta).exp_ad(&LieElement::new(Rational::one(), mu.to_vec()))
}
