//! Per-group verification: runs every inequality and identity check and
//! collects the outcomes into a [`VerificationReport`]. Failed checks are
//! recorded with a witness, never raised.

mod check;
mod source;

use std::time::{Duration, Instant};

use serde::Serialize;

pub use check::{
    check_center_lemmas, check_k_bounds, check_meo_bound, check_monotone_removal, check_psi_identities,
    check_theorem_on_subset, CheckResult, Relation, Witness,
};
pub use source::{
    enumerate_cc_subsets, sample_cc_subsets, select_source, CcMode, CcSubsetSource, CcSubsets, ClassMask, Exhaustive,
    Sampled, MAX_EXHAUSTIVE_CLASSES,
};

use crate::classes::{class_number, power_classes};
use crate::error::Result;
use crate::group::{center, centralizer, is_normal, left_cosets, GroupTable, Subset, DEFAULT_SUBGROUP_CAP};
use crate::order::{order_stats, psi, psi_all, OrderStats};
use crate::subgroups::{cyclic_subgroup, enumerate_subgroups_with_cap};
use check::{removal_sides, theorem_on_mask, CenterTallies, Tally};

pub const DEFAULT_CLASS_LIMIT: usize = 20;
pub const DEFAULT_SAMPLES: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub class_limit: usize,
    pub samples: usize,
    pub seed: u64,
    pub subgroup_cap: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { class_limit: DEFAULT_CLASS_LIMIT, samples: DEFAULT_SAMPLES, seed: 0, subgroup_cap: DEFAULT_SUBGROUP_CAP }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubgroupSource {
    /// Every subgroup, from full enumeration.
    All,
    /// Cyclic subgroups, centralizers, the center and `G`.
    Fallback,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupRow {
    pub order: usize,
    pub normal: bool,
    pub abelian: bool,
    /// `|N ∩ Z(G)|`
    pub center_meet: usize,
}

/// Coset sums for subgroups not inside the center. Informational only.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct NoncentralCosets {
    pub subgroups: usize,
    pub cosets: usize,
    /// Cosets `aN` with ψ(aN) < ψ(N).
    pub below_subgroup: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub order: usize,
    pub stats: OrderStats,
    pub k: u64,
    pub power_classes: usize,
    pub checks: Vec<CheckResult>,
    pub cc_mode: CcMode,
    pub cc_tested: u64,
    pub seed: u64,
    pub subgroup_source: SubgroupSource,
    pub subgroups: Vec<SubgroupRow>,
    pub noncentral_cosets: NoncentralCosets,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn violations(&self) -> u64 {
        self.checks.iter().map(|c| c.failures).sum()
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn instances(&self) -> u64 {
        self.checks.iter().map(|c| c.instances).sum()
    }

    pub fn check(&self, id: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check_id == id)
    }
}

fn fallback_subgroups(g: &GroupTable) -> Vec<Subset> {
    let mut subs: Vec<Subset> = g.elements().map(|x| cyclic_subgroup(g, x).expect("valid index")).collect();
    subs.extend(g.elements().map(|x| centralizer(g, x).expect("valid index")));
    subs.push(center(g));
    subs.push(g.all());
    subs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    subs.dedup();
    subs
}

pub fn verify_group(g: &GroupTable, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let start = Instant::now();
    let n = g.order() as u64;
    let psi_g = psi_all(g);
    let stats = order_stats(g, &g.all())?;
    let k = class_number(g);

    let mut checks = vec![check_meo_bound(g)];
    checks.extend(check_k_bounds(g));
    checks.extend(check_psi_identities(g));

    // Center lemmas over subgroups.
    let (subs, subgroup_source) = match enumerate_subgroups_with_cap(g, cfg.subgroup_cap) {
        Ok(s) => (s, SubgroupSource::All),
        Err(crate::Error::CapacityExceeded { .. }) => (fallback_subgroups(g), SubgroupSource::Fallback),
        Err(e) => return Err(e),
    };
    let z = center(g);
    let mut tallies = CenterTallies::new();
    let mut rows = Vec::with_capacity(subs.len());
    let mut noncentral = NoncentralCosets::default();
    for sub in &subs {
        let meet = tallies.record(g, psi_g, &z, sub);
        rows.push(SubgroupRow {
            order: sub.len(),
            normal: is_normal(g, sub)?,
            abelian: sub.iter().all(|a| sub.iter().all(|b| g.mul(a, b) == g.mul(b, a))),
            center_meet: meet.len(),
        });
        if !sub.is_subset_of(&z) {
            let psi_sub = psi(g, sub)?;
            noncentral.subgroups += 1;
            for coset in left_cosets(g, sub)? {
                noncentral.cosets += 1;
                if psi(g, &coset)? < psi_sub {
                    noncentral.below_subgroup += 1;
                }
            }
        }
    }
    checks.extend(tallies.finish());

    // Class-removal monotonicity over descending-order prefixes.
    let partition = power_classes(g);
    let mut sorted: Vec<(u64, usize)> = partition.classes.iter().map(|c| (c.rep_order, c.representative)).collect();
    sorted.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut removal = Tally::new("monotone_removal", Relation::Ge);
    for t in 2..=sorted.len() {
        let (lhs, rhs) = removal_sides(sorted[..t - 1].iter().map(|c| c.0), sorted[t - 1].0);
        removal.record(lhs, rhs, || Some(Witness::Prefix { len: t }));
    }
    checks.push(removal.finish());

    // Theorem over CC-subsets.
    let class_psi: Vec<u64> = partition.classes.iter().map(|c| c.psi()).collect();
    let class_size: Vec<u64> = partition.classes.iter().map(|c| c.members.len() as u64).collect();
    let source = select_source(partition.len(), cfg.class_limit, cfg.samples, cfg.seed);
    let mut theorem = Tally::new("theorem", Relation::Ge);
    for mask in source.masks(partition.len()) {
        theorem_on_mask(&mut theorem, psi_g, n, &class_psi, &class_size, &mask);
    }
    let theorem = theorem.finish();
    let cc_tested = theorem.instances;
    checks.push(theorem);

    Ok(VerificationReport {
        name: g.name().to_string(),
        order: g.order(),
        stats,
        k,
        power_classes: partition.len(),
        checks,
        cc_mode: source.mode(),
        cc_tested,
        seed: cfg.seed,
        subgroup_source,
        subgroups: rows,
        noncentral_cosets: noncentral,
        elapsed: start.elapsed(),
    })
}
