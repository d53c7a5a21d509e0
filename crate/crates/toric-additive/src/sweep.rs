//! Exhaustive verification over every small complete fan.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use toric_additive_core::additive::{all_admissible_bases, classify, complete_collections, Classification};
use toric_additive_core::coxring::generators::char_in_basis;
use toric_additive_core::sweep::for_each_fan;
use toric_additive_core::verify::{basis_profiles, verify_classification};
use toric_additive_core::{Error, Fan2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    /// Classification invariants only.
    Structure,
    /// Every check, including the polynomial ones.
    Full,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepConfig {
    pub bound: i64,
    pub min_rays: usize,
    pub max_rays: usize,
    pub box_size: i64,
    pub seed: u64,
    pub level: Level,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            bound: 3,
            min_rays: 3,
            max_rays: 6,
            box_size: 10,
            seed: 0,
            level: Level::Full,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SweepReport {
    pub fans: usize,
    pub admitting: usize,
    pub wide: usize,
    /// Number of fans per value of `d` among non-wide admitting fans.
    pub by_d: BTreeMap<usize, usize>,
    /// Fans checked per check name.
    pub checked: BTreeMap<String, usize>,
    /// Failures per check name; absent means zero.
    pub violations: BTreeMap<String, usize>,
    /// Up to ten failing fans, with the failing check.
    pub examples: Vec<String>,
    pub seconds: f64,
}

impl SweepReport {
    pub fn total_violations(&self) -> usize {
        self.violations.values().sum()
    }

    pub fn violations_of(&self, name: &str) -> usize {
        self.violations.get(name).copied().unwrap_or(0)
    }

    pub fn checked_of(&self, name: &str) -> usize {
        self.checked.get(name).copied().unwrap_or(0)
    }

    fn record(&mut self, rays: &[[i64; 2]], name: &str, ok: bool) {
        *self.checked.entry(name.to_string()).or_default() += 1;
        if !ok {
            *self.violations.entry(name.to_string()).or_default() += 1;
            if self.examples.len() < 10 {
                self.examples.push(format!("{name}: {rays:?}"));
            }
        }
    }
}

/// The structural invariants of the classification on one fan.
fn structure_checks(report: &mut SweepReport, rays: &[[i64; 2]], fan: &Fan2, c: &Classification) -> Result<(), Error> {
    let bases = all_admissible_bases(fan)?;
    let collections = complete_collections(fan, &c.root_system);
    report.record(rays, "collections_iff_basis", bases.is_empty() == collections.is_empty());
    report.record(rays, "existence_iff_basis", c.admits_action != bases.is_empty());
    let Some(basis) = &c.basis else { return Ok(()) };
    let (i1, i2) = basis.basis_indices;
    let singletons = c.root_system.at(i1).len() == 1 && c.root_system.at(i2).len() == 1;
    report.record(rays, "wide_iff_singletons", c.wide == singletons);
    report.record(rays, "classes_iff_wide", (c.num_classes == 1) == c.wide);
    let profiles = basis_profiles(fan, &c.root_system)?;
    report.record(
        rays,
        "basis_independence",
        profiles.iter().all(|p| *p == (c.wide, c.d + 1)),
    );
    let duals = [char_in_basis(basis, 1, 0), char_in_basis(basis, 0, 1)];
    let non_basis_ok = basis
        .alpha
        .iter()
        .all(|r| c.root_system.at(r.ray).iter().all(|e| duals.contains(&e.e)));
    report.record(rays, "non_basis_roots_are_duals", non_basis_ok);
    Ok(())
}

pub fn run(config: &SweepConfig) -> SweepReport {
    let start = Instant::now();
    let mut report = SweepReport::default();
    for_each_fan(config.bound, config.min_rays, config.max_rays, |rays| {
        report.fans += 1;
        let outcome = Fan2::from_pairs(rays).and_then(|fan| {
            let c = classify(&fan)?;
            structure_checks(&mut report, rays, &fan, &c)?;
            Ok(c)
        });
        let c = match outcome {
            Ok(c) => c,
            Err(e) => {
                report.record(rays, &format!("error: {e}"), false);
                return;
            }
        };
        if c.admits_action {
            report.admitting += 1;
            if c.wide {
                report.wide += 1;
            } else {
                *report.by_d.entry(c.d).or_default() += 1;
            }
        }
        if config.level == Level::Full {
            for r in verify_classification(&c, config.box_size, config.seed) {
                report.record(rays, r.name, r.passed);
            }
        }
    });
    report.seconds = start.elapsed().as_secs_f64();
    report
}
