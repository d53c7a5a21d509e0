//! Sparse multivariate polynomials with exact rational coefficients over the
//! Cox variables `x1..xm` and the group parameters `s1, s2, ...`.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A polynomial variable. `X(i)` is the Cox coordinate `x_{i+1}`; `S(k)` is
/// the group parameter `s_{k+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X(u16),
    S(u8),
}

impl Var {
    pub fn x(i: usize) -> Var {
        Var::X(i as u16)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{}", *i as usize + 1),
            Var::S(k) => write!(f, "s{}", *k as usize + 1),
        }
    }
}

/// A monomial as a sorted list of `(variable, exponent)` with positive
/// exponents.
///
/// Monomials are ordered by ascending total degree; ties are broken
/// lexicographically with larger exponents of earlier variables first. This
/// is the canonical term order used for rendering.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(alloc::vec![(v, 1)])
    }

    /// Builds a monomial from arbitrary `(var, exp)` pairs, merging repeats
    /// and dropping zero exponents.
    pub fn from_factors(factors: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut v: Vec<(Var, u32)> = factors.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_by_key(|&(var, _)| var);
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some((last, acc)) if *last == var => *acc += e,
                _ => out.push((var, e)),
            }
        }
        Monomial(out)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0
            .binary_search_by_key(&v, |&(var, _)| var)
            .map_or(0, |k| self.0[k].1)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// `self / v`, together with the exponent of `v` in `self`; `None` if `v`
    /// does not divide `self`.
    fn divide_var(&self, v: Var) -> Option<(Monomial, u32)> {
        let k = self.0.binary_search_by_key(&v, |&(var, _)| var).ok()?;
        let e = self.0[k].1;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(k);
        } else {
            out[k].1 -= 1;
        }
        Some((Monomial(out), e))
    }

    /// Splits off every factor for which `pred` holds.
    fn split(&self, pred: impl Fn(Var) -> bool) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().partition(|&&(v, _)| pred(v));
        (Monomial(a), Monomial(b))
    }

    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let (a, b) = (&self.0, &other.0);
        for k in 0..a.len().max(b.len()) {
            match (a.get(k), b.get(k)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va != vb {
                        return va.cmp(&vb);
                    }
                    if ea != eb {
                        return eb.cmp(&ea);
                    }
                }
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (None, None) => break,
            }
        }
        Ordering::Equal
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.lex_cmp(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        // Parameters first, then Cox coordinates: "s1^2*x3".
        let ordered = self
            .0
            .iter()
            .filter(|(v, _)| matches!(v, Var::S(_)))
            .chain(self.0.iter().filter(|(v, _)| matches!(v, Var::X(_))));
        for (k, (v, e)) in ordered.enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial with rational coefficients; zero coefficients are never
/// stored.
#[derive(Clone, PartialEq, Eq, Default, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Poly::term(Rational::one(), Monomial::var(v))
    }

    pub fn x(i: usize) -> Self {
        Poly::var(Var::x(i))
    }

    pub fn s(k: usize) -> Self {
        Poly::var(Var::S(k as u8))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Poly::term(Rational::one(), m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to `v`.
    pub fn derivative(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if let Some((rest, e)) = m.divide_var(v) {
                out.add_term(rest, c * rat(e as i64));
            }
        }
        out
    }

    /// Variables occurring with positive exponent.
    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.0.iter().map(|&(v, _)| v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Maximal total degree in the Cox coordinates.
    pub fn x_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.0.iter().filter(|(v, _)| matches!(v, Var::X(_))).map(|&(_, e)| e).sum())
            .max()
            .unwrap_or(0)
    }

    /// Simultaneous substitution: each variable `v` with `map(v) = Some(p)`
    /// is replaced by `p`; other variables are kept.
    pub fn substitute(&self, map: &dyn Fn(Var) -> Option<Poly>) -> Poly {
        let mut cache: Vec<(Var, Vec<Poly>)> = Vec::new();
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(c.clone());
            let mut kept: Vec<(Var, u32)> = Vec::new();
            for &(v, e) in &m.0 {
                match map(v) {
                    None => kept.push((v, e)),
                    Some(image) => {
                        let slot = match cache.iter().position(|(w, _)| *w == v) {
                            Some(k) => k,
                            None => {
                                cache.push((v, alloc::vec![Poly::one(), image]));
                                cache.len() - 1
                            }
                        };
                        let powers = &mut cache[slot].1;
                        while powers.len() <= e as usize {
                            let next = &powers[powers.len() - 1] * &powers[1];
                            powers.push(next);
                        }
                        acc = &acc * &powers[e as usize];
                    }
                }
            }
            out += acc.mul_monomial(&Monomial(kept));
        }
        out
    }

    /// Evaluates every variable through `point`; variables with no value
    /// are an error.
    pub fn evaluate(&self, point: &dyn Fn(Var) -> Option<Rational>) -> Option<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.0 {
                let val = point(v)?;
                t *= num_traits::pow(val, e as usize);
            }
            total += t;
        }
        Some(total)
    }

    /// Collects coefficients with respect to the variables selected by
    /// `outer`: returns pairs (outer monomial, inner polynomial).
    pub fn collect_by(&self, outer: impl Fn(Var) -> bool + Copy) -> BTreeMap<Monomial, Poly> {
        let mut out: BTreeMap<Monomial, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (o, i) = m.split(outer);
            out.entry(o).or_default().add_term(i, c.clone());
        }
        out
    }

    /// Parses the canonical text format, e.g. `x2 + s1*x1 - 1/2*s1^2*x3`.
    pub fn parse(src: &str) -> Result<Poly> {
        Parser { src: src.as_bytes(), pos: 0 }.poly()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl core::ops::AddAssign<Poly> for Poly {
    fn add_assign(&mut self, rhs: Poly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a> core::ops::AddAssign<&'a Poly> for Poly {
    fn add_assign(&mut self, rhs: &'a Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<'a> core::ops::SubAssign<&'a Poly> for Poly {
    fn sub_assign(&mut self, rhs: &'a Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<'b> Add<&'b Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &'b Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += rhs;
        self
    }
}

impl<'b> Sub<&'b Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &'b Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl<'b> Mul<&'b Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &'b Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: String::from(msg),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("0");
        BigInt::parse_bytes(digits.as_bytes(), 10).map_or_else(|| self.err("bad integer"), Ok)
    }

    fn small_number(&mut self) -> Result<u32> {
        let n = self.number()?;
        u32::try_from(n).or_else(|_| self.err("exponent too large"))
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut out = Poly::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if !first => break,
                None => return self.err("empty polynomial"),
                Some(b'+') if !first => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(_) => return self.err("expected '+' or '-'"),
            };
            first = false;
            let (m, c) = self.term()?;
            out.add_term(m, if sign { -c } else { c });
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Monomial, Rational)> {
        let mut coeff = Rational::one();
        let mut factors = Vec::new();
        loop {
            match self.peek() {
                Some(b'0'..=b'9') => {
                    let num = self.number()?;
                    let den = if self.peek() == Some(b'/') {
                        self.pos += 1;
                        self.number()?
                    } else {
                        BigInt::one()
                    };
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                    coeff *= Rational::new(num, den);
                }
                Some(c @ (b'x' | b's')) => {
                    self.pos += 1;
                    let idx = self.small_number()? as usize;
                    if idx == 0 {
                        return self.err("variable indices start at 1");
                    }
                    let v = if c == b'x' {
                        Var::X(u16::try_from(idx - 1).or_else(|_| self.err("index too large"))?)
                    } else {
                        Var::S(u8::try_from(idx - 1).or_else(|_| self.err("index too large"))?)
                    };
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.small_number()?
                    } else {
                        1
                    };
                    factors.push((v, e));
                }
                _ => return self.err("expected a coefficient or variable"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((Monomial::from_factors(factors), coeff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn canonical_rendering() {
        let p = Poly::x(1) + Poly::s(0) * Poly::x(0) + Poly::s(1) * Poly::x(2)
            + Poly::s(0).pow(2).scale(&ratio(1, 2)) * Poly::x(2);
        assert_eq!(p.to_string(), "x2 + s1*x1 + s2*x3 + 1/2*s1^2*x3");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!((-Poly::x(0) - Poly::one()).to_string(), "-1 - x1");
    }

    #[test]
    fn parse_round_trip() {
        for src in ["x2 + s1*x1 + s2*x3 + 1/2*s1^2*x3", "-1 - x1", "0", "3/4*s2^3*x1^2*x5"] {
            let p = Poly::parse(src).unwrap();
            assert_eq!(p.to_string(), src);
        }
        assert_eq!(Poly::parse("x1*x1").unwrap(), Poly::x(0).pow(2));
        assert!(Poly::parse("x0").is_err());
        assert!(Poly::parse("x1 +").is_err());
        assert!(Poly::parse("1/0").is_err());
        assert!(Poly::parse("").is_err());
    }

    #[test]
    fn derivative_and_substitution() {
        let p = Poly::x(0).pow(3) * Poly::x(1);
        assert_eq!(p.derivative(Var::x(0)), (Poly::x(0).pow(2) * Poly::x(1)).scale(&rat(3)));
        let q = p.substitute(&|v| (v == Var::x(0)).then(|| Poly::x(0) + Poly::one()));
        let expected = (Poly::x(0) + Poly::one()).pow(3) * Poly::x(1);
        assert_eq!(q, expected);
    }

    #[test]
    fn evaluate_at_point() {
        let p = Poly::parse("x1^2 + 1/2*x2").unwrap();
        let v = p.evaluate(&|v| match v {
            Var::X(0) => Some(rat(3)),
            Var::X(1) => Some(rat(4)),
            _ => None,
        });
        assert_eq!(v, Some(rat(11)));
    }
}
