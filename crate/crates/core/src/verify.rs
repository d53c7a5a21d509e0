//! Independent oracles and invariant checks for the classification.
//!
//! Nothing here feeds back into [`crate::additive::classify`]; every check
//! recomputes its answer by a separate route (box scans instead of interval
//! arithmetic, polynomial substitution instead of Lie-algebra bookkeeping,
//! rank computations instead of the structure argument).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::additive::{basis_profile, all_admissible_bases, Classification};
use crate::coxring::action::{compose, ActionMap, S1, S1_PRIME, S2, S2_PRIME};
use crate::coxring::derivation::{commutator, degree_of, lnd_from_root, Derivation};
use crate::coxring::generators::Generators;
use crate::coxring::grading::{cl_grading, ClGrading};
use crate::coxring::poly::{rat, ratio, Monomial, Poly, Rational, Var};
use crate::error::{Error, Result};
use crate::fan::Fan2;
use crate::lattice::{rank, CharVec};
use crate::roots::{enumerate_roots_with, root_segment, split_roots, DemazureRoot, RootSystem};

/// Default half-width of the oracle box.
pub const DEFAULT_BOX: i64 = 10;

/// Scans every character in `[-b, b]^2` against the root definition.
pub fn brute_force_roots(fan: &Fan2, b: i64) -> RootSystem {
    let m = fan.num_rays();
    let rays: Vec<[i64; 2]> = fan.rays().iter().map(|p| [p[0], p[1]]).collect();
    let mut per_ray: Vec<Vec<DemazureRoot>> = vec![Vec::new(); m];
    let mut pairings = vec![0i64; m];
    for x in -b..=b {
        for y in -b..=b {
            for (k, p) in rays.iter().enumerate() {
                pairings[k] = p[0] * x + p[1] * y;
            }
            for i in 0..m {
                if pairings[i] != -1 {
                    continue;
                }
                let ok = (0..m).all(|j| {
                    j == i || pairings[j] > 0 || (pairings[j] == 0 && fan.is_adjacent(i, j))
                });
                if ok {
                    per_ray[i].push(DemazureRoot {
                        e: CharVec::from([x, y]),
                        ray: i,
                    });
                }
            }
        }
    }
    for r in &mut per_ray {
        r.sort();
    }
    let (semisimple, unipotent) = split_roots(&per_ray);
    RootSystem {
        per_ray,
        semisimple,
        unipotent,
        regular_vector: None,
        positive: None,
    }
}

/// Whether every root of `fan` lies in the box `[-b, b]^2`, certified by
/// the endpoints of the feasible segment on each pairing line.
pub fn roots_within_box(fan: &Fan2, b: i64) -> Result<bool> {
    for i in 0..fan.num_rays() {
        let seg = root_segment(fan, i)?;
        if let Some((lo, hi)) = seg.range {
            for k in [lo, hi] {
                let e = seg.point(k);
                if e[0].abs() > b || e[1].abs() > b {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Enumeration with and without the cone condition agrees on every ray.
pub fn check_condition2_redundant(fan: &Fan2) -> Result<bool> {
    for i in 0..fan.num_rays() {
        if enumerate_roots_with(fan, i, true)? != enumerate_roots_with(fan, i, false)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `A(s) ∘ A(s') = A(s + s')` and `A(0) = id`, as polynomial identities.
pub fn check_group_law(a: &ActionMap) -> Result<bool> {
    if a.at_origin() != ActionMap::identity(a.num_vars()) {
        return Ok(false);
    }
    let lhs = compose(a, a)?;
    let rhs = a.reparametrize(
        &(Poly::var(S1) + Poly::var(S1_PRIME)),
        &(Poly::var(S2) + Poly::var(S2_PRIME)),
    );
    Ok(lhs == rhs)
}

/// `[delta, d_k] = k d_{k-1}` (zero for `k = 0`) and `[d_k, d_l] = 0`.
pub fn check_commutator_table(g: &Generators) -> bool {
    let m = g.num_vars();
    for (k, pk) in g.partials.iter().enumerate() {
        let want = if k == 0 {
            Derivation::zero(m)
        } else {
            g.partials[k - 1].scale(&rat(k as i64))
        };
        if commutator(&g.delta, pk) != want {
            return false;
        }
        for pl in &g.partials[k + 1..] {
            if !commutator(pk, pl).is_zero() {
                return false;
            }
        }
    }
    true
}

/// Rebuilds `d_k = x_{i1}^k prod_j x_j^{a_j2 - k a_j1} d/dx_{i2}` from the
/// coefficient matrix alone and compares with the root derivations.
pub fn check_partial_shapes(c: &Classification, g: &Generators) -> bool {
    let Some(basis) = &c.basis else {
        return false;
    };
    let (i1, i2) = basis.basis_indices;
    let m = c.fan.num_rays();
    let delta = Derivation::single(
        m,
        i1,
        Poly::monomial(Monomial::from_factors(
            basis.alpha.iter().map(|r| (Var::x(r.ray), r.a1 as u32)),
        )),
    );
    if delta != g.delta {
        return false;
    }
    g.partials.iter().enumerate().all(|(k, pk)| {
        let k = k as i64;
        let exps: Option<Vec<(Var, u32)>> = basis
            .alpha
            .iter()
            .map(|r| u32::try_from(r.a2 - k * r.a1).ok().map(|e| (Var::x(r.ray), e)))
            .collect();
        exps.is_some_and(|mut f| {
            f.push((Var::x(i1), k as u32));
            *pk == Derivation::single(m, i2, Poly::monomial(Monomial::from_factors(f)))
        })
    })
}

/// Every root derivation has Cl-degree zero.
pub fn check_degree_zero(fan: &Fan2, grading: &ClGrading, roots: &RootSystem) -> Result<bool> {
    for r in roots.all() {
        let d = lnd_from_root(fan, r.ray, &r.e)?;
        if degree_of(&d, grading)?.iter().any(|&x| x != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank of the tangent map of `G_a^2 x H_X` at `point`: the images of the
/// two derivations together with the infinitesimal grading-torus actions.
pub fn tangent_rank(d1: &Derivation, d2: &Derivation, g: &ClGrading, point: &[Rational]) -> Result<usize> {
    let m = d1.num_vars();
    if point.len() != m {
        return Err(Error::LengthMismatch {
            left: point.len(),
            right: m,
        });
    }
    if let Some(j) = point.iter().position(Zero::is_zero) {
        return Err(Error::ZeroCoordinate(j + 1));
    }
    let at = |v: Var| match v {
        Var::X(j) => point.get(j as usize).cloned(),
        Var::S(_) => None,
    };
    let mut rows = Vec::with_capacity(m);
    for d in [d1, d2] {
        let row = d
            .entries()
            .iter()
            .map(|p| p.evaluate(&at).ok_or(Error::NotApplicable))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    for k in 0..g.rank() {
        rows.push((0..m).map(|i| rat(g.degree(i)[k]) * &point[i]).collect());
    }
    Ok(rank(&rows))
}

/// Whether the orbit of `point` under `G_a^2 x H_X` is open in `K^m`.
pub fn check_open_orbit(d1: &Derivation, d2: &Derivation, g: &ClGrading, point: &[Rational]) -> Result<bool> {
    Ok(tangent_rank(d1, d2, g, point)? == d1.num_vars())
}

/// Tries the all-ones point, then `retries` seeded random points with
/// nonzero rational coordinates.
pub fn check_open_orbit_seeded(d1: &Derivation, d2: &Derivation, g: &ClGrading, seed: u64, retries: usize) -> Result<bool> {
    let m = d1.num_vars();
    if check_open_orbit(d1, d2, g, &vec![Rational::one(); m])? {
        return Ok(true);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retries {
        let point: Vec<Rational> = (0..m).map(|_| random_nonzero(&mut rng)).collect();
        if check_open_orbit(d1, d2, g, &point)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A random rational with numerator in `±[1, 9]` and denominator in `[1, 9]`.
pub fn random_nonzero<R: Rng>(rng: &mut R) -> Rational {
    let n = rng.gen_range(1..=9i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
    ratio(n, rng.gen_range(1..=9i64))
}

/// A projective point `(s1 : s2)`, scaled so the first nonzero entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Line(pub Rational, pub Rational);

impl Line {
    fn normalized(s1: Rational, s2: Rational) -> Line {
        if !s1.is_zero() {
            Line(Rational::one(), s2 / s1)
        } else {
            Line(Rational::zero(), Rational::one())
        }
    }

    /// The line spanned by the second derivation.
    pub fn second() -> Line {
        Line(Rational::zero(), Rational::one())
    }
}

impl core::fmt::Display for Line {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({}:{})", self.0, self.1)
    }
}

/// The annihilator of `f` inside `V = {s1 D1 + s2 D2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Annihilator {
    Zero,
    Line(Line),
    Full,
}

/// Solves `(s1 D1 + s2 D2) f = 0` for `(s1, s2)` coefficientwise.
pub fn annihilator(d1: &Derivation, d2: &Derivation, f: &Poly) -> Annihilator {
    let p1 = d1.apply(f);
    let p2 = d2.apply(f);
    let mut monomials: Vec<&Monomial> = p1.terms().chain(p2.terms()).map(|(m, _)| m).collect();
    monomials.sort();
    monomials.dedup();
    let eqs: Vec<(Rational, Rational)> = monomials.iter().map(|m| (p1.coefficient(m), p2.coefficient(m))).collect();
    let Some((a, b)) = eqs.iter().find(|(a, b)| !a.is_zero() || !b.is_zero()).cloned() else {
        return Annihilator::Full;
    };
    if eqs.iter().all(|(c, d)| (c * &b - d * &a).is_zero()) {
        Annihilator::Line(Line::normalized(b, -a))
    } else {
        Annihilator::Zero
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorReport {
    /// `x_{i2}` followed by `x_{i1}^k prod_j x_j^{a_j2 - k a_j1}`, `k = 0..d`.
    pub component_basis: Vec<Poly>,
    /// Probe polynomials with a one-dimensional annihilator.
    pub lines: Vec<(Poly, Line)>,
    pub has_full_annihilator: bool,
    /// Probes annihilated by all of `V`.
    pub full_witnesses: Vec<Poly>,
}

impl AnnihilatorReport {
    pub fn distinct_lines(&self) -> Vec<Line> {
        let mut v: Vec<Line> = self.lines.iter().map(|(_, l)| l.clone()).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// The homogeneous component containing `x_{i2}`.
pub fn component_basis(c: &Classification) -> Result<Vec<Poly>> {
    let basis = c.basis.as_ref().ok_or(Error::NotApplicable)?;
    let (i1, i2) = basis.basis_indices;
    let mut out = vec![Poly::x(i2)];
    for k in 0..=c.d as i64 {
        let mut f = vec![(Var::x(i1), k as u32)];
        for r in &basis.alpha {
            let e = r.a2 - k * r.a1;
            if e < 0 {
                return Err(Error::NegativeExponent(r.ray + 1));
            }
            f.push((Var::x(r.ray), e as u32));
        }
        out.push(Poly::monomial(Monomial::from_factors(f)));
    }
    Ok(out)
}

/// Annihilators of the component basis and of `x_{i2} + c*m_1`,
/// `c in {1, -1}` (`c = 0` is the first basis element), each re-verified by substituting the line back.
pub fn annihilator_profile(d1: &Derivation, d2: &Derivation, c: &Classification) -> Result<AnnihilatorReport> {
    if c.d == 0 {
        return Err(Error::NotApplicable);
    }
    let comp = component_basis(c)?;
    let mut probes = comp.clone();
    for k in [1i64, -1] {
        probes.push(&comp[0] + &comp[2].scale(&rat(k)));
    }
    let mut report = AnnihilatorReport {
        component_basis: comp,
        lines: Vec::new(),
        has_full_annihilator: false,
        full_witnesses: Vec::new(),
    };
    for f in probes {
        match annihilator(d1, d2, &f) {
            Annihilator::Zero => {}
            Annihilator::Full => {
                if !d1.apply(&f).is_zero() || !d2.apply(&f).is_zero() {
                    return Err(crate::error::inconsistency("full annihilator witness does not verify"));
                }
                report.has_full_annihilator = true;
                report.full_witnesses.push(f);
            }
            Annihilator::Line(l) => {
                let v = d1.scale(&l.0).add(&d2.scale(&l.1));
                if !v.apply(&f).is_zero() {
                    return Err(crate::error::inconsistency("annihilator line does not verify"));
                }
                report.lines.push((f, l));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActionClass {
    Normalized,
    NonNormalized,
}

/// Separates the two isomorphism classes by their annihilator lines: only
/// the span of the second derivation for the non-normalized class, at least
/// one other line for the normalized one.
pub fn distinguish_actions(d1: &Derivation, d2: &Derivation, c: &Classification) -> Result<ActionClass> {
    let lines = annihilator_profile(d1, d2, c)?.distinct_lines();
    if lines == [Line::second()] {
        Ok(ActionClass::NonNormalized)
    } else if lines.iter().any(|l| *l != Line::second()) {
        Ok(ActionClass::Normalized)
    } else {
        Err(Error::Inconclusive)
    }
}

/// Wideness and the larger basis-ray root count for every admissible basis
/// of the fan; the classification is basis independent iff all agree.
pub fn basis_profiles(fan: &Fan2, roots: &RootSystem) -> Result<Vec<(bool, usize)>> {
    all_admissible_bases(fan)?
        .iter()
        .map(|b| basis_profile(b, roots))
        .collect()
}

/// A torus element fixing `delta` and multiplying `d_d` by `factor`:
/// `t_{i2} = 1/factor`, every other entry 1.
pub fn rescaling_torus(c: &Classification, factor: &Rational) -> Result<Vec<Rational>> {
    let basis = c.basis.as_ref().ok_or(Error::NotApplicable)?;
    if factor.is_zero() {
        return Err(Error::ZeroTorusEntry(basis.basis_indices.1 + 1));
    }
    let mut t = vec![Rational::one(); c.fan.num_rays()];
    t[basis.basis_indices.1] = factor.recip();
    Ok(t)
}

/// Outcome of one verification check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Runs the full battery of checks on a classification.
pub fn verify_classification(c: &Classification, box_size: i64, seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut push = |name: &'static str, r: Result<bool>, detail: String| {
        let (passed, detail) = match r {
            Ok(p) => (p, detail),
            Err(e) => (false, format!("{e}")),
        };
        out.push(CheckResult { name, passed, detail });
    };
    let fan = &c.fan;

    let brute = brute_force_roots(fan, box_size);
    let certified = roots_within_box(fan, box_size);
    push(
        "oracle_roots",
        certified.map(|inside| inside && brute.per_ray == c.root_system.per_ray),
        format!("box [-{box_size}, {box_size}]^2, {} roots", c.root_system.len()),
    );
    push("cone_condition_redundant", check_condition2_redundant(fan), String::new());

    let Some(basis) = &c.basis else {
        return out;
    };
    let grading = match cl_grading(fan, basis) {
        Ok(g) => g,
        Err(e) => {
            push("grading", Err(e), String::new());
            return out;
        }
    };
    push("grading", Ok(true), format!("Cl(X) = Z^{}", grading.rank()));
    push(
        "degree_zero",
        check_degree_zero(fan, &grading, &c.root_system),
        String::from("every root derivation has Cl-degree zero"),
    );
    let profiles = basis_profiles(fan, &c.root_system);
    push(
        "basis_independence",
        profiles.as_ref().map(|p| p.iter().all(|x| *x == (c.wide, c.d + 1))).map_err(Clone::clone),
        format!("{} admissible bases", profiles.as_ref().map_or(0, Vec::len)),
    );
    if let Ok(Some(g)) = c.generators() {
        push("commutators", Ok(check_commutator_table(&g)), format!("d = {}", c.d));
        push("partial_shapes", Ok(check_partial_shapes(c, &g)), String::new());
    }
    if let Some(reps) = &c.representatives {
        let mut each = |label: &'static str, r: &crate::additive::ActionRepresentative| {
            let (gl, oo) = match label {
                "normalized" => ("group_law_normalized", "open_orbit_normalized"),
                _ => ("group_law_non_normalized", "open_orbit_non_normalized"),
            };
            push(gl, check_group_law(&r.action), String::new());
            push(oo, check_open_orbit_seeded(&r.d1, &r.d2, &grading, seed, 8), String::new());
        };
        each("normalized", &reps.normalized);
        if let Some(nn) = &reps.non_normalized {
            each("non_normalized", nn);
        }
        if let Some(nn) = &reps.non_normalized {
            let n = distinguish_actions(&reps.normalized.d1, &reps.normalized.d2, c);
            let m = distinguish_actions(&nn.d1, &nn.d2, c);
            let show = |r: &Result<ActionClass>| match r {
                Ok(ActionClass::Normalized) => String::from("normalized"),
                Ok(ActionClass::NonNormalized) => String::from("non-normalized"),
                Err(e) => format!("{e}"),
            };
            let detail = format!("profiles read {} and {}", show(&n), show(&m));
            push(
                "non_isomorphism",
                Ok(n == Ok(ActionClass::Normalized) && m == Ok(ActionClass::NonNormalized)),
                detail,
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::additive::classify;

    fn classified(pairs: &[[i64; 2]]) -> Classification {
        classify(&Fan2::from_pairs(pairs).unwrap()).unwrap()
    }

    const P2: [[i64; 2]; 3] = [[1, 0], [0, 1], [-1, -1]];
    const P112: [[i64; 2]; 3] = [[1, 0], [0, 1], [-1, -2]];

    #[test]
    fn oracle_matches_analytic_roots() {
        for pairs in [&P2[..], &P112[..], &[[1, 0], [0, 1], [-1, -1], [0, -1]], &[[1, 2], [-2, -1], [1, -1]]] {
            let c = classified(pairs);
            assert_eq!(brute_force_roots(&c.fan, DEFAULT_BOX).per_ray, c.root_system.per_ray);
            assert!(roots_within_box(&c.fan, DEFAULT_BOX).unwrap());
            assert!(check_condition2_redundant(&c.fan).unwrap());
        }
        // A box too small to hold the long root string of P(1,1,2).
        let c = classified(&P112);
        assert!(!roots_within_box(&c.fan, 1).unwrap());
    }

    #[test]
    fn group_law_detects_corruption() {
        let c = classified(&P2);
        let reps = c.representatives.as_ref().unwrap();
        assert!(check_group_law(&reps.normalized.action).unwrap());
        assert!(check_group_law(&reps.non_normalized.as_ref().unwrap().action).unwrap());
        let mut images = reps.normalized.action.images().to_vec();
        images[1] = Poly::parse("x2 + s2*x3 + s1^2*x3").unwrap();
        assert!(!check_group_law(&ActionMap::from_images(images)).unwrap());
    }

    #[test]
    fn open_orbit() {
        let c = classified(&P2);
        let g = c.generators().unwrap().unwrap();
        let grading = cl_grading(&c.fan, c.basis.as_ref().unwrap()).unwrap();
        let ones = vec![rat(1); 3];
        assert!(check_open_orbit(&g.delta, &g.partials[0], &grading, &ones).unwrap());
        assert!(!check_open_orbit(&g.partials[0], &g.partials[1], &grading, &ones).unwrap());
        assert!(!check_open_orbit_seeded(&g.partials[0], &g.partials[1], &grading, 7, 4).unwrap());
        assert_eq!(
            check_open_orbit(&g.delta, &g.partials[0], &grading, &[rat(1), rat(0), rat(1)]),
            Err(Error::ZeroCoordinate(2))
        );
    }

    #[test]
    fn annihilators_on_p2() {
        let c = classified(&P2);
        let reps = c.representatives.as_ref().unwrap();
        let n = &reps.normalized;
        let report = annihilator_profile(&n.d1, &n.d2, &c).unwrap();
        let lines = report.distinct_lines();
        assert!(lines.contains(&Line(rat(1), rat(0))));
        assert!(lines.contains(&Line(rat(1), rat(-1))));
        assert_eq!(report.full_witnesses, [Poly::x(2)]);

        let nn = reps.non_normalized.as_ref().unwrap();
        let report = annihilator_profile(&nn.d1, &nn.d2, &c).unwrap();
        assert_eq!(report.distinct_lines(), [Line::second()]);
        assert!(report.lines.iter().any(|(f, _)| *f == Poly::x(0)));
        assert!(report.has_full_annihilator);

        assert_eq!(distinguish_actions(&n.d1, &n.d2, &c), Ok(ActionClass::Normalized));
        assert_eq!(distinguish_actions(&nn.d1, &nn.d2, &c), Ok(ActionClass::NonNormalized));
    }

    #[test]
    fn distinguishes_on_p112() {
        let c = classified(&P112);
        let reps = c.representatives.as_ref().unwrap();
        let nn = reps.non_normalized.as_ref().unwrap();
        assert_eq!(distinguish_actions(&nn.d1, &nn.d2, &c), Ok(ActionClass::NonNormalized));
        let n = &reps.normalized;
        assert_eq!(distinguish_actions(&n.d1, &n.d2, &c), Ok(ActionClass::Normalized));
    }

    #[test]
    fn torus_rescaling() {
        use crate::coxring::derivation::conjugate_by_torus;
        let c = classified(&P112);
        let g = c.generators().unwrap().unwrap();
        let t = rescaling_torus(&c, &ratio(-3, 2)).unwrap();
        let d1 = g.delta.add(&g.partials[2]);
        let want = g.delta.add(&g.partials[2].scale(&ratio(-3, 2)));
        assert_eq!(conjugate_by_torus(&d1, &t).unwrap(), want);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..5 {
            let t: Vec<Rational> = (0..3).map(|_| random_nonzero(&mut rng)).collect();
            let e1 = conjugate_by_torus(&d1, &t).unwrap();
            let e2 = conjugate_by_torus(&g.partials[0], &t).unwrap();
            assert_eq!(distinguish_actions(&e1, &e2, &c), Ok(ActionClass::NonNormalized));
        }
    }

    #[test]
    fn wide_fans_have_no_profile() {
        let c = classified(&[[1, 0], [0, 1], [-1, 0], [0, -1]]);
        let n = &c.representatives.as_ref().unwrap().normalized;
        assert_eq!(annihilator_profile(&n.d1, &n.d2, &c), Err(Error::NotApplicable));
    }

    #[test]
    fn structure_checks() {
        for pairs in [&P2[..], &P112[..], &[[1, 0], [0, 1], [-1, -1], [0, -1]]] {
            let c = classified(pairs);
            let g = c.generators().unwrap().unwrap();
            assert!(check_commutator_table(&g));
            assert!(check_partial_shapes(&c, &g));
        }
    }

    #[test]
    fn full_battery_passes() {
        for pairs in [&P2[..], &P112[..], &[[1, 0], [0, 1], [-1, -2], [-2, -1]], &[[1, 2], [-2, -1], [1, -1]]] {
            for r in verify_classification(&classified(pairs), DEFAULT_BOX, 0) {
                assert!(r.passed, "{pairs:?}: {} {}", r.name, r.detail);
            }
        }
    }
}
