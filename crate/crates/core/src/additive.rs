//! Existence and classification of additive actions.
//!
//! A complete toric variety admits an additive action exactly when some
//! choice of `n` rays forms a lattice basis with every remaining ray in the
//! closed negative octant of that basis. For surfaces the number of actions
//! up to isomorphism is one if the fan is wide and two otherwise.

use alloc::format;
use alloc::vec::Vec;

use crate::coxring::action::{exp_action, ActionMap};
use crate::coxring::derivation::Derivation;
use crate::coxring::generators::{basis_coords, Generators};
use crate::error::{inconsistency, Error, Result};
use crate::fan::Fan2;
use crate::lattice::{basis_coordinates, dual_basis, is_basis, negative_octant_coords, pair2, DualBasis, LatticeVec};
use crate::roots::{root_system_for, DemazureRoot, RootSystem};

/// Negative-octant coefficients of a non-basis ray:
/// `p_ray = -a1 * p_{i1} - a2 * p_{i2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AlphaRow {
    pub ray: usize,
    pub a1: i64,
    pub a2: i64,
}

/// An ordered pair of rays forming a lattice basis with all other rays in
/// its negative octant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleBasis {
    pub basis_indices: (usize, usize),
    pub dual: DualBasis,
    /// One row per non-basis ray, in ray order.
    pub alpha: Vec<AlphaRow>,
}

impl AdmissibleBasis {
    /// Tries to build an admissible basis on rays `(i1, i2)`.
    pub fn try_new(fan: &Fan2, i1: usize, i2: usize) -> Result<Option<Self>> {
        fan.check_index(i1)?;
        fan.check_index(i2)?;
        if i1 == i2 || !is_basis(fan.ray(i1), fan.ray(i2))? {
            return Ok(None);
        }
        let dual = dual_basis(fan.ray(i1), fan.ray(i2))?;
        let mut alpha = Vec::with_capacity(fan.num_rays() - 2);
        for (j, p) in fan.rays().iter().enumerate() {
            if j == i1 || j == i2 {
                continue;
            }
            let (a1, a2, inside) = negative_octant_coords(p, &dual)?;
            if !inside {
                return Ok(None);
            }
            alpha.push(AlphaRow { ray: j, a1, a2 });
        }
        Ok(Some(AdmissibleBasis {
            basis_indices: (i1, i2),
            dual,
            alpha,
        }))
    }

    /// The same basis with the two rays exchanged.
    pub fn swapped(&self) -> AdmissibleBasis {
        let (i1, i2) = self.basis_indices;
        let [p, q] = &self.dual.originals;
        let [ps, qs] = &self.dual.duals;
        AdmissibleBasis {
            basis_indices: (i2, i1),
            dual: DualBasis {
                originals: [q.clone(), p.clone()],
                duals: [qs.clone(), ps.clone()],
            },
            alpha: self
                .alpha
                .iter()
                .map(|r| AlphaRow {
                    ray: r.ray,
                    a1: r.a2,
                    a2: r.a1,
                })
                .collect(),
        }
    }

    pub fn alpha_pairs(&self) -> Vec<(i64, i64)> {
        self.alpha.iter().map(|r| (r.a1, r.a2)).collect()
    }
}

/// The first admissible basis in lexicographic order of index pairs.
pub fn find_admissible_basis_2d(fan: &Fan2) -> Result<Option<AdmissibleBasis>> {
    let m = fan.num_rays();
    for i in 0..m {
        for j in i + 1..m {
            if let Some(b) = AdmissibleBasis::try_new(fan, i, j)? {
                return Ok(Some(b));
            }
        }
    }
    Ok(None)
}

/// Every admissible basis `(i, j)` with `i < j`.
pub fn all_admissible_bases(fan: &Fan2) -> Result<Vec<AdmissibleBasis>> {
    let m = fan.num_rays();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if let Some(b) = AdmissibleBasis::try_new(fan, i, j)? {
                out.push(b);
            }
        }
    }
    Ok(out)
}

/// Admissible index tuple in any dimension: `basis` is a lattice basis and
/// row `k` of `alpha` gives `p_j = -sum_l alpha[k].1[l] p_{basis[l]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleTuple {
    pub basis: Vec<usize>,
    pub alpha: Vec<(usize, Vec<i64>)>,
}

/// Ray-list criterion for arbitrary dimension `n`. The caller promises the
/// rays belong to a complete fan; only existence is decided here.
pub fn find_admissible_basis(rays: &[LatticeVec]) -> Result<Option<AdmissibleTuple>> {
    let Some(n) = rays.first().map(LatticeVec::dim) else {
        return Ok(None);
    };
    if rays.len() < n {
        return Ok(None);
    }
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        if let Some(t) = try_tuple(rays, &idx)? {
            return Ok(Some(t));
        }
        let Some(k) = (0..n).rev().find(|&k| idx[k] < rays.len() - n + k) else {
            return Ok(None);
        };
        idx[k] += 1;
        for l in k + 1..n {
            idx[l] = idx[l - 1] + 1;
        }
    }
}

fn try_tuple(rays: &[LatticeVec], idx: &[usize]) -> Result<Option<AdmissibleTuple>> {
    let basis: Vec<LatticeVec> = idx.iter().map(|&i| rays[i].clone()).collect();
    let mut alpha = Vec::new();
    for (j, p) in rays.iter().enumerate() {
        if idx.contains(&j) {
            continue;
        }
        let Some(c) = basis_coordinates(&basis, p)? else {
            return Ok(None);
        };
        if c.iter().any(|&x| x > 0) {
            return Ok(None);
        }
        alpha.push((j, c.into_iter().map(|x| -x).collect()));
    }
    Ok(Some(AdmissibleTuple {
        basis: idx.to_vec(),
        alpha,
    }))
}

/// Two roots `e1`, `e2` attached to rays `i1`, `i2` with
/// `<p_{ik}, e_l> = -delta_{kl}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteCollection {
    pub roots: (DemazureRoot, DemazureRoot),
    pub basis_indices: (usize, usize),
}

/// All complete collections, one per unordered ray pair that carries one.
pub fn complete_collections(fan: &Fan2, roots: &RootSystem) -> Vec<CompleteCollection> {
    let mut out = Vec::new();
    let m = fan.num_rays();
    for a in 0..m {
        for b in a + 1..m {
            for ea in roots.at(a) {
                if pair2(fan.ray(b), &ea.e) != 0 {
                    continue;
                }
                for eb in roots.at(b) {
                    if pair2(fan.ray(a), &eb.e) == 0 {
                        out.push(CompleteCollection {
                            roots: (ea.clone(), eb.clone()),
                            basis_indices: (a, b),
                        });
                    }
                }
            }
        }
    }
    out
}

/// Wideness, evaluated through both the coefficient test (rays on both
/// sides of the antidiagonal) and the root test (both basis rays carry a
/// single root); disagreement is reported as an internal error.
pub fn is_wide(basis: &AdmissibleBasis, roots: &RootSystem) -> Result<bool> {
    let by_alpha = basis.alpha.iter().any(|r| r.a1 > r.a2) && basis.alpha.iter().any(|r| r.a1 < r.a2);
    let (i1, i2) = basis.basis_indices;
    let singleton = |ray: usize, e: &crate::lattice::CharVec| {
        let r = roots.at(ray);
        r.len() == 1 && r[0].e == e.neg()
    };
    let by_roots = singleton(i1, &basis.dual.duals[0]) && singleton(i2, &basis.dual.duals[1]);
    if by_alpha != by_roots {
        return Err(inconsistency(format!(
            "wideness tests disagree for basis {:?}: coefficients say {by_alpha}, roots say {by_roots}",
            basis.basis_indices
        )));
    }
    Ok(by_alpha)
}

/// A commuting pair of derivations together with the action they generate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionRepresentative {
    pub d1: Derivation,
    pub d2: Derivation,
    pub action: ActionMap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representatives {
    pub normalized: ActionRepresentative,
    /// Present exactly when the fan is not wide.
    pub non_normalized: Option<ActionRepresentative>,
}

/// The full classification of additive actions on a complete toric surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub fan: Fan2,
    pub admits_action: bool,
    /// Oriented so that the first basis ray carries exactly one positive
    /// root.
    pub basis: Option<AdmissibleBasis>,
    pub root_system: RootSystem,
    pub wide: bool,
    /// `d + 1` is the number of positive roots on the second basis ray.
    pub d: usize,
    /// 0 when no additive action exists.
    pub num_classes: usize,
    pub representatives: Option<Representatives>,
}

impl Classification {
    pub fn generators(&self) -> Result<Option<Generators>> {
        match &self.basis {
            Some(b) => Ok(Some(Generators::new(&self.fan, b, self.d)?)),
            None => Ok(None),
        }
    }
}

/// Classifies additive actions on the toric surface of `fan`.
pub fn classify(fan: &Fan2) -> Result<Classification> {
    let Some(basis) = find_admissible_basis_2d(fan)? else {
        let root_system = root_system_for(fan, None)?;
        return Ok(Classification {
            fan: fan.clone(),
            admits_action: false,
            basis: None,
            root_system,
            wide: false,
            d: 0,
            num_classes: 0,
            representatives: None,
        });
    };
    let root_system = root_system_for(fan, Some(&basis))?;
    let basis = orient_basis(fan, basis, &root_system)?;
    let (i1, i2) = basis.basis_indices;
    let r1 = root_system.positive_at(i1);
    let r2 = root_system.positive_at(i2);
    if r1.len() != 1 || basis_coords(fan, &basis, &r1[0]) != (-1, 0) {
        return Err(inconsistency("first basis ray must carry exactly the positive root -p1*"));
    }
    let d = r2.len() - 1;
    let mut ks: Vec<(i64, i64)> = r2.iter().map(|e| basis_coords(fan, &basis, e)).collect();
    ks.sort();
    if ks.iter().enumerate().any(|(k, &c)| c != (k as i64, -1)) {
        return Err(inconsistency("positive roots of the second basis ray are not (k, -1), 0 <= k <= d"));
    }
    let max_size = root_system.at(i1).len().max(root_system.at(i2).len());
    if max_size != d + 1 {
        return Err(inconsistency("d + 1 differs from the larger basis-ray root set"));
    }
    let wide = is_wide(&basis, &root_system)?;
    if wide != (d == 0) {
        return Err(inconsistency("wideness disagrees with d = 0"));
    }
    let representatives = emit_representatives(fan, &basis, d)?;
    Ok(Classification {
        fan: fan.clone(),
        admits_action: true,
        basis: Some(basis),
        root_system,
        wide,
        d,
        num_classes: if wide { 1 } else { 2 },
        representatives: Some(representatives),
    })
}

/// Swaps the basis rays if needed so that the first carries a single
/// positive root; when both root sets are larger than one, asserts the
/// only possible shape `{(-1,0), (-1,1)}`, `{(0,-1), (1,-1)}`.
fn orient_basis(fan: &Fan2, basis: AdmissibleBasis, rs: &RootSystem) -> Result<AdmissibleBasis> {
    let (i1, i2) = basis.basis_indices;
    if rs.at(i1).len() > 1 && rs.at(i2).len() > 1 {
        let coords = |ray: usize| {
            let mut v: Vec<(i64, i64)> = rs.at(ray).iter().map(|r| basis_coords(fan, &basis, &r.e)).collect();
            v.sort();
            v
        };
        if coords(i1) != [(-1, 0), (-1, 1)] || coords(i2) != [(0, -1), (1, -1)] {
            return Err(inconsistency("both basis rays carry several roots in an unexpected shape"));
        }
    }
    let basis = if rs.positive_at(i1).len() > 1 { basis.swapped() } else { basis };
    Ok(basis)
}

fn emit_representatives(fan: &Fan2, basis: &AdmissibleBasis, d: usize) -> Result<Representatives> {
    let g = Generators::new(fan, basis, d)?;
    let n1 = g.delta.clone();
    let n2 = g.partials[0].clone();
    let normalized = ActionRepresentative {
        action: exp_action(&n1, &n2)?,
        d1: n1,
        d2: n2.clone(),
    };
    let non_normalized = if d == 0 {
        None
    } else {
        let d1 = g.delta.add(&g.partials[d]);
        Some(ActionRepresentative {
            action: exp_action(&d1, &n2)?,
            d1,
            d2: n2,
        })
    };
    Ok(Representatives {
        normalized,
        non_normalized,
    })
}

/// `(normalized, non_normalized)` action maps of a classification.
pub fn emit_actions(c: &Classification) -> Result<(ActionMap, Option<ActionMap>)> {
    let reps = c.representatives.as_ref().ok_or(Error::NotApplicable)?;
    Ok((
        reps.normalized.action.clone(),
        reps.non_normalized.as_ref().map(|r| r.action.clone()),
    ))
}

/// Classification summary for a specific admissible basis, used to check
/// that the class count does not depend on the basis choice.
pub fn basis_profile(basis: &AdmissibleBasis, rs: &RootSystem) -> Result<(bool, usize)> {
    let (i1, i2) = basis.basis_indices;
    Ok((is_wide(basis, rs)?, rs.at(i1).len().max(rs.at(i2).len())))
}
