use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::grading::ClGrading;
use super::poly::{Monomial, Poly, Rational, Var};
use crate::error::{Error, Result};
use crate::fan::Fan2;
use crate::lattice::{pair2, CharVec};

/// A derivation of `K[x1..xm]` (with the group parameters as constants),
/// stored as the images of the coordinates: `D = sum_i D(x_i) d/dx_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    entries: Vec<Poly>,
}

impl Derivation {
    pub fn zero(m: usize) -> Self {
        Derivation {
            entries: vec![Poly::zero(); m],
        }
    }

    pub fn from_entries(entries: Vec<Poly>) -> Self {
        Derivation { entries }
    }

    /// `coeff * d/dx_i` on `m` variables.
    pub fn single(m: usize, i: usize, coeff: Poly) -> Self {
        let mut d = Derivation::zero(m);
        d.entries[i] = coeff;
        d
    }

    pub fn num_vars(&self) -> usize {
        self.entries.len()
    }

    /// `D(x_i)`.
    pub fn entry(&self, i: usize) -> &Poly {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Applies the derivation to `f` by the Leibniz rule.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (i, coeff) in self.entries.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let df = f.derivative(Var::x(i));
            if !df.is_zero() {
                out += coeff * &df;
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Derivation {
        Derivation {
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Multiplies every entry by a polynomial constant for the derivation,
    /// such as a group parameter.
    pub fn mul_poly(&self, c: &Poly) -> Derivation {
        Derivation {
            entries: self.entries.iter().map(|p| p * c).collect(),
        }
    }

    pub fn add(&self, other: &Derivation) -> Derivation {
        Derivation {
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Derivation) -> Derivation {
        Derivation {
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    /// Largest total degree in the Cox coordinates among the entries.
    pub fn max_degree(&self) -> u32 {
        self.entries.iter().map(Poly::x_degree).max().unwrap_or(0)
    }
}

impl fmt::Debug for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, p) in self.entries.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if p.num_terms() == 1 {
                write!(f, "{p}*d/dx{}", i + 1)?;
            } else {
                write!(f, "({p})*d/dx{}", i + 1)?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `[D, E] = D∘E - E∘D`, evaluated on each coordinate.
pub fn commutator(d: &Derivation, e: &Derivation) -> Derivation {
    Derivation {
        entries: (0..d.num_vars())
            .map(|i| d.apply(e.entry(i)) - e.apply(d.entry(i)))
            .collect(),
    }
}

/// The locally nilpotent derivation `prod_{j != i} x_j^{<p_j, e>} d/dx_i`
/// attached to a root `e` of ray `i`.
pub fn lnd_from_root(fan: &Fan2, ray: usize, e: &CharVec) -> Result<Derivation> {
    fan.check_index(ray)?;
    let mut factors = Vec::new();
    for (j, p) in fan.rays().iter().enumerate() {
        if j == ray {
            continue;
        }
        let k = pair2(p, e);
        if k < 0 {
            return Err(Error::NegativeExponent(j + 1));
        }
        factors.push((Var::x(j), k as u32));
    }
    Ok(Derivation::single(
        fan.num_rays(),
        ray,
        Poly::monomial(Monomial::from_factors(factors)),
    ))
}

/// The Cl-degree of a homogeneous derivation: `deg D(x_i) - deg x_i` for
/// any nonzero entry, required to agree across entries and terms.
pub fn degree_of(d: &Derivation, grading: &ClGrading) -> Result<Vec<i64>> {
    let mut found: Option<(usize, Vec<i64>)> = None;
    for (i, p) in d.entries().iter().enumerate() {
        for (m, _) in p.terms() {
            let mut deg = grading.monomial_degree(m);
            for (a, b) in deg.iter_mut().zip(grading.degree(i)) {
                *a -= b;
            }
            match &found {
                None => found = Some((i, deg)),
                Some((i0, d0)) if *d0 != deg => return Err(Error::NotHomogeneous(i0 + 1, i + 1)),
                Some(_) => {}
            }
        }
    }
    found.map(|(_, d)| d).ok_or(Error::ZeroDerivation)
}

/// A Laurent monomial `prod_j t_j^{a_j}` in formal torus coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusCharacter(pub Vec<i64>);

impl TorusCharacter {
    pub fn evaluate(&self, t: &[Rational]) -> Result<Rational> {
        let mut acc = Rational::one();
        for (j, (&a, tj)) in self.0.iter().zip(t).enumerate() {
            if tj.is_zero() {
                return Err(Error::ZeroTorusEntry(j + 1));
            }
            let base = if a < 0 { tj.recip() } else { tj.clone() };
            acc *= num_traits::pow(base, a.unsigned_abs() as usize);
        }
        Ok(acc)
    }
}

impl fmt::Display for TorusCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match a {
                1 => write!(f, "t{}", j + 1)?,
                _ => write!(f, "t{}^{a}", j + 1)?,
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// The character `prod_j t_j^{<p_j, e>}` by which the diagonal torus
/// rescales the root derivation of `e` under conjugation.
pub fn torus_character(fan: &Fan2, e: &CharVec) -> TorusCharacter {
    TorusCharacter(fan.rays().iter().map(|p| pair2(p, e)).collect())
}

/// Conjugates the root derivation of `e` by a formal torus element:
/// `t D_e t^{-1} = chi(t) D_e`.
pub fn torus_conjugate(fan: &Fan2, ray: usize, e: &CharVec) -> Result<(TorusCharacter, Derivation)> {
    Ok((torus_character(fan, e), lnd_from_root(fan, ray, e)?))
}

/// Numeric version of [`torus_conjugate`].
pub fn torus_conjugate_at(fan: &Fan2, ray: usize, e: &CharVec, t: &[Rational]) -> Result<(Rational, Derivation)> {
    let (chi, d) = torus_conjugate(fan, ray, e)?;
    Ok((chi.evaluate(t)?, d))
}

/// Direct conjugation `t∘D∘t^{-1}` where `t` acts by `x_j -> t_j x_j`.
pub fn conjugate_by_torus(d: &Derivation, t: &[Rational]) -> Result<Derivation> {
    if let Some(j) = t.iter().position(Zero::is_zero) {
        return Err(Error::ZeroTorusEntry(j + 1));
    }
    let act = |p: &Poly| p.substitute(&|v| match v {
        Var::X(j) => Some(Poly::x(j as usize).scale(&t[j as usize])),
        Var::S(_) => None,
    });
    Ok(Derivation::from_entries(
        d.entries()
            .iter()
            .enumerate()
            .map(|(i, p)| act(p).scale(&t[i].recip()))
            .collect(),
    ))
}
