//! The JSON classification document and the verification report.
//!
//! Ray numbers in documents are 1-based, matching the `p1, p2, ...` and
//! `x1, x2, ...` labels used in polynomial strings.

use serde::{Deserialize, Serialize};
use toric_additive_core::additive::Classification;
use toric_additive_core::coxring::action::ActionMap;
use toric_additive_core::coxring::poly::Poly;
use toric_additive_core::lattice::{CharVec, LatticeVec};
use toric_additive_core::verify::{annihilator_profile, verify_classification, AnnihilatorReport};
use toric_additive_core::{Error, Fan2, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaEntry {
    pub ray: usize,
    pub a1: i64,
    pub a2: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RayRoots {
    pub ray: usize,
    pub roots: Vec<[i64; 2]>,
}

/// Images of `x1, x2, ...` as polynomial strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Actions {
    pub normalized: Vec<String>,
    pub non_normalized: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub all_passed: bool,
    pub box_size: i64,
    pub seed: u64,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub rays: Vec<[i64; 2]>,
    pub maximal_cones: Vec<[usize; 2]>,
    pub admits_action: bool,
    pub basis_indices: Option<[usize; 2]>,
    pub alpha: Vec<AlphaEntry>,
    pub roots: Vec<RayRoots>,
    pub semisimple: Vec<[i64; 2]>,
    pub unipotent: Vec<[i64; 2]>,
    pub regular_vector: Option<[i64; 2]>,
    pub positive: Option<Vec<[i64; 2]>>,
    pub wide: bool,
    pub d: usize,
    pub num_classes: usize,
    pub actions: Option<Actions>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verification: Option<VerificationReport>,
}

fn pair(v: &CharVec) -> [i64; 2] {
    [v[0], v[1]]
}

fn npair(v: &LatticeVec) -> [i64; 2] {
    [v[0], v[1]]
}

fn action_strings(a: &ActionMap) -> Vec<String> {
    a.images().iter().map(ToString::to_string).collect()
}

pub fn fan_rays(fan: &Fan2) -> Vec<[i64; 2]> {
    fan.rays().iter().map(npair).collect()
}

pub fn maximal_cones(fan: &Fan2) -> Vec<[usize; 2]> {
    fan.maximal_cones().iter().map(|&(a, b)| [a + 1, b + 1]).collect()
}

pub fn root_lists(rs: &RootSystem) -> Vec<RayRoots> {
    rs.per_ray
        .iter()
        .enumerate()
        .map(|(i, r)| RayRoots {
            ray: i + 1,
            roots: r.iter().map(|x| pair(&x.e)).collect(),
        })
        .collect()
}

impl ClassificationDocument {
    pub fn new(name: Option<String>, c: &Classification) -> Self {
        let rs = &c.root_system;
        ClassificationDocument {
            name,
            rays: fan_rays(&c.fan),
            maximal_cones: maximal_cones(&c.fan),
            admits_action: c.admits_action,
            basis_indices: c.basis.as_ref().map(|b| [b.basis_indices.0 + 1, b.basis_indices.1 + 1]),
            alpha: c
                .basis
                .as_ref()
                .map(|b| {
                    b.alpha
                        .iter()
                        .map(|r| AlphaEntry {
                            ray: r.ray + 1,
                            a1: r.a1,
                            a2: r.a2,
                        })
                        .collect()
                })
                .unwrap_or_default(),
            roots: root_lists(rs),
            semisimple: rs.semisimple.iter().map(pair).collect(),
            unipotent: rs.unipotent.iter().map(pair).collect(),
            regular_vector: rs.regular_vector.as_ref().map(npair),
            positive: rs.positive.as_ref().map(|p| p.iter().map(pair).collect()),
            wide: c.wide,
            d: c.d,
            num_classes: c.num_classes,
            actions: c.representatives.as_ref().map(|r| Actions {
                normalized: action_strings(&r.normalized.action),
                non_normalized: r.non_normalized.as_ref().map(|n| action_strings(&n.action)),
            }),
            verification: None,
        }
    }

    /// Parses the action strings back into maps.
    pub fn action_maps(&self) -> Result<Option<(ActionMap, Option<ActionMap>)>, Error> {
        let parse = |v: &[String]| -> Result<ActionMap, Error> {
            Ok(ActionMap::from_images(v.iter().map(|s| Poly::parse(s)).collect::<Result<_, _>>()?))
        };
        let Some(a) = &self.actions else { return Ok(None) };
        let nn = a.non_normalized.as_deref().map(parse).transpose()?;
        Ok(Some((parse(&a.normalized)?, nn)))
    }
}

fn witnesses(r: &AnnihilatorReport, label: &str) -> Vec<String> {
    let mut out: Vec<String> = r.lines.iter().map(|(f, l)| format!("{label}: Ann({f}) = {l}")).collect();
    out.extend(r.full_witnesses.iter().map(|f| format!("{label}: Ann({f}) = V")));
    out
}

/// Runs every check on a classification and gathers annihilator witnesses
/// for non-wide fans.
pub fn verification_report(c: &Classification, box_size: i64, seed: u64) -> VerificationReport {
    let mut checks: Vec<Check> = verify_classification(c, box_size, seed)
        .into_iter()
        .map(|r| Check {
            name: r.name.to_string(),
            status: if r.passed { Status::Pass } else { Status::Fail },
            detail: r.detail,
            witnesses: Vec::new(),
        })
        .collect();
    let mut notes = Vec::new();
    if let Some(reps) = &c.representatives {
        if let Some(nn) = &reps.non_normalized {
            let n = &reps.normalized;
            let profiles = (annihilator_profile(&n.d1, &n.d2, c), annihilator_profile(&nn.d1, &nn.d2, c));
            if let (Ok(a), Ok(b)) = profiles {
                if let Some(check) = checks.iter_mut().find(|k| k.name == "non_isomorphism") {
                    check.witnesses = witnesses(&a, "normalized");
                    check.witnesses.extend(witnesses(&b, "non-normalized"));
                }
                if a.has_full_annihilator || b.has_full_annihilator {
                    notes.push(String::from(
                        "some probes are annihilated by all of V in both actions; only one-dimensional annihilators separate the classes",
                    ));
                }
            }
        }
    }
    VerificationReport {
        all_passed: checks.iter().all(|k| k.status == Status::Pass),
        box_size,
        seed,
        checks,
        notes,
    }
}
