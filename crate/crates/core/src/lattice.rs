//! Integer vectors in the lattice N of one-parameter subgroups and its dual
//! M of characters, and the handful of 2x2 lattice routines the
//! classification needs.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest coordinate magnitude accepted for rays. Keeps every 2x2 product
/// comfortably inside `i64`.
pub const MAX_COORD: i64 = 1 << 30;

macro_rules! int_vector {
    ($name:ident, $doc:literal) => {
        #[doc = $doc]
        #[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(Vec<i64>);

        impl $name {
            pub fn new(coords: Vec<i64>) -> Self {
                Self(coords)
            }

            pub fn coords(&self) -> &[i64] {
                &self.0
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&c| c == 0)
            }

            pub fn neg(&self) -> Self {
                Self(self.0.iter().map(|c| -c).collect())
            }

            pub fn into_inner(self) -> Vec<i64> {
                self.0
            }
        }

        impl From<[i64; 2]> for $name {
            fn from(c: [i64; 2]) -> Self {
                Self(c.to_vec())
            }
        }

        impl From<Vec<i64>> for $name {
            fn from(c: Vec<i64>) -> Self {
                Self(c)
            }
        }

        impl Index<usize> for $name {
            type Output = i64;
            fn index(&self, i: usize) -> &i64 {
                &self.0[i]
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt::Display::fmt(self, f)
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("(")?;
                for (k, c) in self.0.iter().enumerate() {
                    if k > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    };
}

int_vector!(LatticeVec, "A vector of the lattice N (rays, one-parameter subgroups).");
int_vector!(CharVec, "A vector of the character lattice M (Demazure roots, dual bases).");

/// A lattice basis of rank 2 together with its dual basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualBasis {
    pub originals: [LatticeVec; 2],
    pub duals: [CharVec; 2],
}

fn check_len(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::LengthMismatch { left, right })
    }
}

/// The natural pairing between N and M in fixed coordinates.
pub fn pairing(p: &LatticeVec, e: &CharVec) -> Result<i64> {
    check_len(p.dim(), e.dim())?;
    let s: i128 = p.0.iter().zip(&e.0).map(|(&a, &b)| a as i128 * b as i128).sum();
    i64::try_from(s).map_err(|_| Error::Overflow)
}

/// Pairing for vectors already known to be two-dimensional and bounded.
#[inline]
pub(crate) fn pair2(p: &LatticeVec, e: &CharVec) -> i64 {
    p.0[0] * e.0[0] + p.0[1] * e.0[1]
}

/// Splits a nonzero vector into its primitive generator and the gcd of its
/// coordinates.
pub fn primitive(v: &LatticeVec) -> Result<(LatticeVec, i64)> {
    let g = v.0.iter().fold(0i64, |g, &c| g.gcd(&c));
    if g == 0 {
        return Err(Error::ZeroVector);
    }
    Ok((LatticeVec(v.0.iter().map(|c| c / g).collect()), g))
}

pub fn is_primitive(v: &LatticeVec) -> bool {
    matches!(primitive(v), Ok((_, 1)))
}

/// Determinant of the 2x2 matrix with columns `p`, `q`.
pub fn det2(p: &LatticeVec, q: &LatticeVec) -> Result<i64> {
    check_len(p.dim(), 2)?;
    check_len(q.dim(), 2)?;
    let d = p.0[0] as i128 * q.0[1] as i128 - p.0[1] as i128 * q.0[0] as i128;
    i64::try_from(d).map_err(|_| Error::Overflow)
}

pub fn is_basis(p: &LatticeVec, q: &LatticeVec) -> Result<bool> {
    Ok(det2(p, q)?.abs() == 1)
}

/// The dual basis of a unimodular pair: the inverse transpose of the matrix
/// with columns `p`, `q`.
pub fn dual_basis(p: &LatticeVec, q: &LatticeVec) -> Result<DualBasis> {
    let det = det2(p, q)?;
    if det.abs() != 1 {
        return Err(Error::NotABasis { det });
    }
    // det = +-1, so dividing by det is multiplying by det.
    let p_star = CharVec(vec![q.0[1] * det, -q.0[0] * det]);
    let q_star = CharVec(vec![-p.0[1] * det, p.0[0] * det]);
    Ok(DualBasis {
        originals: [p.clone(), q.clone()],
        duals: [p_star, q_star],
    })
}

/// Writes `v = -a1*b0 - a2*b1` in the basis of `b` and reports whether `v`
/// lies in the closed negative octant (`a1, a2 >= 0`).
pub fn negative_octant_coords(v: &LatticeVec, b: &DualBasis) -> Result<(i64, i64, bool)> {
    let a1 = -pairing(v, &b.duals[0])?;
    let a2 = -pairing(v, &b.duals[1])?;
    Ok((a1, a2, a1 >= 0 && a2 >= 0))
}

/// Parametrizes the integer solutions of `<p, e> = c` as `e0 + k*q`.
///
/// `q` is primitive and lexicographically positive.
pub fn solve_pairing_line(p: &LatticeVec, c: i64) -> Result<(CharVec, CharVec)> {
    check_len(p.dim(), 2)?;
    let (a, b) = (p.0[0], p.0[1]);
    let ext = a.extended_gcd(&b);
    let (x, y) = match ext.gcd {
        1 => (ext.x, ext.y),
        -1 => (-ext.x, -ext.y),
        _ => return Err(Error::NotPrimitive(p.0.clone())),
    };
    let e0 = CharVec(vec![
        x.checked_mul(c).ok_or(Error::Overflow)?,
        y.checked_mul(c).ok_or(Error::Overflow)?,
    ]);
    let mut q = vec![-b, a];
    if q[0] < 0 || (q[0] == 0 && q[1] < 0) {
        q = vec![b, -a];
    }
    Ok((e0, CharVec(q)))
}

/// Coordinates of `v` in the basis `basis` of an n-dimensional lattice, or
/// `None` when `basis` is not a lattice basis. Exact rational elimination.
pub fn basis_coordinates(basis: &[LatticeVec], v: &LatticeVec) -> Result<Option<Vec<i64>>> {
    let n = basis.len();
    for b in basis {
        check_len(b.dim(), n)?;
    }
    check_len(v.dim(), n)?;
    let det = determinant(basis);
    if det.abs() != BigInt::one() {
        return Ok(None);
    }
    // Solve sum_k c_k basis[k] = v; augmented matrix has rows = coordinates.
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|row| {
            let mut r: Vec<BigRational> = basis.iter().map(|b| BigRational::from_integer(b.0[row].into())).collect();
            r.push(BigRational::from_integer(v.0[row].into()));
            r
        })
        .collect();
    let sol = gauss_solve(&mut m).ok_or_else(|| crate::error::inconsistency("unimodular system is singular"))?;
    sol.into_iter()
        .map(|c| {
            if !c.is_integer() {
                return Err(crate::error::inconsistency("unimodular solve produced a fraction"));
            }
            c.to_integer().to_i64().ok_or(Error::Overflow)
        })
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// Determinant of the matrix with the given columns (fraction-free Bareiss).
pub fn determinant(cols: &[LatticeVec]) -> BigInt {
    let n = cols.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|r| cols.iter().map(|c| BigInt::from(c.0[r])).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Solves a square augmented system in place; `None` if singular.
pub(crate) fn gauss_solve(m: &mut [Vec<BigRational>]) -> Option<Vec<BigRational>> {
    let n = m.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for j in col..=n {
            m[col][j] = &m[col][j] * &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..=n {
                    let t = &m[col][j] * &f;
                    m[r][j] -= t;
                }
            }
        }
    }
    Some(m.iter().map(|row| row[n].clone()).collect())
}

/// Rank of a rational matrix (rows as given).
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..m.len() {
            if !m[r][col].is_zero() {
                let f = &m[r][col] / &m[rank][col];
                for j in col..ncols {
                    let t = &m[rank][j] * &f;
                    m[r][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    Integer::div_ceil(&a, &b)
}

pub(crate) fn floor_div(a: i64, b: i64) -> i64 {
    Integer::div_floor(&a, &b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lv(x: i64, y: i64) -> LatticeVec {
        LatticeVec::from([x, y])
    }
    fn cv(x: i64, y: i64) -> CharVec {
        CharVec::from([x, y])
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&lv(1, 0), &cv(-1, 0)).unwrap(), -1);
        assert_eq!(pairing(&lv(-1, -1), &cv(1, -1)).unwrap(), 0);
        assert_eq!(pairing(&lv(-1, -2), &cv(2, -1)).unwrap(), 0);
        assert_eq!(
            pairing(&LatticeVec::new(vec![1, 2, 3]), &cv(1, 1)),
            Err(Error::LengthMismatch { left: 3, right: 2 })
        );
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&lv(2, 4)).unwrap(), (lv(1, 2), 2));
        assert_eq!(primitive(&lv(-1, 0)).unwrap(), (lv(-1, 0), 1));
        assert_eq!(primitive(&lv(-3, -3)).unwrap(), (lv(-1, -1), 3));
        assert_eq!(primitive(&lv(0, 0)), Err(Error::ZeroVector));
    }

    #[test]
    fn basis_examples() {
        assert!(is_basis(&lv(1, 0), &lv(0, 1)).unwrap());
        assert!(is_basis(&lv(1, 0), &lv(1, 1)).unwrap());
        assert!(!is_basis(&lv(1, 0), &lv(-1, -2)).unwrap());
    }

    #[test]
    fn dual_basis_examples() {
        let b = dual_basis(&lv(1, 0), &lv(0, 1)).unwrap();
        assert_eq!(b.duals, [cv(1, 0), cv(0, 1)]);
        let b = dual_basis(&lv(1, 0), &lv(1, 1)).unwrap();
        assert_eq!(b.duals, [cv(1, -1), cv(0, 1)]);
        let b = dual_basis(&lv(0, 1), &lv(-1, -1)).unwrap();
        assert_eq!(b.duals, [cv(-1, 1), cv(-1, 0)]);
        assert_eq!(dual_basis(&lv(1, 0), &lv(-1, -2)), Err(Error::NotABasis { det: -2 }));
    }

    #[test]
    fn negative_octant_examples() {
        let std = dual_basis(&lv(1, 0), &lv(0, 1)).unwrap();
        assert_eq!(negative_octant_coords(&lv(-1, -1), &std).unwrap(), (1, 1, true));
        assert_eq!(negative_octant_coords(&lv(-2, -1), &std).unwrap(), (2, 1, true));
        assert_eq!(negative_octant_coords(&lv(1, 0), &std).unwrap(), (-1, 0, false));
    }

    #[test]
    fn pairing_line_examples() {
        let (e0, q) = solve_pairing_line(&lv(1, 0), -1).unwrap();
        assert_eq!((e0, q), (cv(-1, 0), cv(0, 1)));
        let (e0, q) = solve_pairing_line(&lv(0, 1), -1).unwrap();
        assert_eq!((e0, q), (cv(0, -1), cv(1, 0)));
        let (e0, q) = solve_pairing_line(&lv(-1, -1), -1).unwrap();
        assert_eq!(pairing(&lv(-1, -1), &e0).unwrap(), -1);
        assert_eq!(q, cv(1, -1));
        assert!(matches!(solve_pairing_line(&lv(2, 2), -1), Err(Error::NotPrimitive(_))));
    }

    #[test]
    fn higher_dimensional_coordinates() {
        let basis = [
            LatticeVec::new(vec![1, 0, 0]),
            LatticeVec::new(vec![1, 1, 0]),
            LatticeVec::new(vec![0, 0, 1]),
        ];
        let c = basis_coordinates(&basis, &LatticeVec::new(vec![-2, -1, -1])).unwrap();
        assert_eq!(c, Some(vec![-1, -1, -1]));
        let singular = [LatticeVec::new(vec![2, 0]), LatticeVec::new(vec![0, 1])];
        assert_eq!(basis_coordinates(&singular, &lv(1, 1)).unwrap(), None);
        assert_eq!(determinant(&singular), BigInt::from(2));
    }
}
