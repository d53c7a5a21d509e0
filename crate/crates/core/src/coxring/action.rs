use alloc::vec::Vec;
use core::fmt;

use super::derivation::{commutator, Derivation};
use super::poly::{ratio, Poly, Var};
use crate::error::{Error, Result};

/// Parameter slots: `s1, s2` for the action itself, `s3, s4` for the second
/// factor when composing.
pub const S1: Var = Var::S(0);
pub const S2: Var = Var::S(1);
pub const S1_PRIME: Var = Var::S(2);
pub const S2_PRIME: Var = Var::S(3);

/// A polynomial self-map of the Cox coordinates depending on the group
/// parameters: `x_i -> images[i](x, s1, s2)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ActionMap {
    images: Vec<Poly>,
}

impl ActionMap {
    pub fn identity(m: usize) -> Self {
        ActionMap {
            images: (0..m).map(Poly::x).collect(),
        }
    }

    pub fn from_images(images: Vec<Poly>) -> Self {
        ActionMap { images }
    }

    pub fn num_vars(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> &Poly {
        &self.images[i]
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    /// Substitutes polynomials for the group parameters.
    pub fn reparametrize(&self, s1: &Poly, s2: &Poly) -> ActionMap {
        let map = |v: Var| match v {
            S1 => Some(s1.clone()),
            S2 => Some(s2.clone()),
            _ => None,
        };
        ActionMap {
            images: self.images.iter().map(|p| p.substitute(&map)).collect(),
        }
    }

    /// Renames `s1, s2` to `s3, s4`.
    pub fn primed(&self) -> ActionMap {
        self.reparametrize(&Poly::var(S1_PRIME), &Poly::var(S2_PRIME))
    }

    /// The map at `s1 = s2 = 0`.
    pub fn at_origin(&self) -> ActionMap {
        self.reparametrize(&Poly::zero(), &Poly::zero())
    }
}

impl fmt::Debug for ActionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ActionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "x{} -> {p}", i + 1)?;
        }
        Ok(())
    }
}

/// Applies `exp(X) = sum_l X^l / l!` to `f`, failing if `X^l f` is still
/// nonzero after `bound` steps.
pub fn exp_apply(x: &Derivation, f: &Poly, bound: usize, var: usize) -> Result<Poly> {
    let mut term = f.clone();
    let mut sum = f.clone();
    for l in 1..=bound + 1 {
        term = x.apply(&term).scale(&ratio(1, l as i64));
        if term.is_zero() {
            return Ok(sum);
        }
        sum += &term;
    }
    Err(Error::NotLocallyNilpotent { var: var + 1, bound })
}

/// Iteration bound for nilpotency: `m * max(deg, 1)` applications.
pub fn nilpotency_bound(d: &Derivation) -> usize {
    d.num_vars() * (d.max_degree().max(1) as usize) + 1
}

/// `x_i -> exp(s1*D1 + s2*D2)(x_i)` for commuting locally nilpotent `D1`,
/// `D2`, with `s1, s2` kept as formal parameters.
pub fn exp_action(d1: &Derivation, d2: &Derivation) -> Result<ActionMap> {
    if !commutator(d1, d2).is_zero() {
        return Err(Error::NotCommuting);
    }
    let x = d1.mul_poly(&Poly::var(S1)).add(&d2.mul_poly(&Poly::var(S2)));
    let bound = nilpotency_bound(d1).max(nilpotency_bound(d2));
    let images = (0..d1.num_vars())
        .map(|i| exp_apply(&x, &Poly::x(i), bound, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(ActionMap { images })
}

/// The ring automorphism `exp(D)` (no parameters), as images of the
/// coordinates.
pub fn exp_automorphism(d: &Derivation) -> Result<ActionMap> {
    let bound = nilpotency_bound(d);
    let images = (0..d.num_vars())
        .map(|i| exp_apply(d, &Poly::x(i), bound, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(ActionMap { images })
}

/// Applies a coordinate map to a polynomial by substitution.
pub fn apply_map(a: &ActionMap, f: &Poly) -> Poly {
    f.substitute(&|v| match v {
        Var::X(j) => Some(a.images[j as usize].clone()),
        Var::S(_) => None,
    })
}

/// Substitutes `a` into `b` after renaming `b`'s parameters to `s3, s4`:
/// `x_i -> b_i(a(x, s1, s2), s3, s4)`.
pub fn compose(a: &ActionMap, b: &ActionMap) -> Result<ActionMap> {
    if a.num_vars() != b.num_vars() {
        return Err(Error::VariableMismatch(a.num_vars(), b.num_vars()));
    }
    let b = b.primed();
    Ok(ActionMap {
        images: b.images.iter().map(|p| apply_map(a, p)).collect(),
    })
}
