//! Exact inequality checks. Every comparison is done on cross-multiplied
//! integers; nothing is ever rounded.

use std::cmp::Ordering;

use serde::Serialize;

use crate::classes::{class_number, is_cc_subset, psi_via_conjugacy, PowerClass};
use crate::error::{invalid, Result};
use crate::group::{center, is_subgroup, left_cosets, GroupTable, Subset};
use crate::numtheory::totient;
use crate::order::{count_cyclic_membership_pairs, meo, psi, psi_all};

use super::source::ClassMask;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "==")]
    Eq,
}

impl Relation {
    pub fn holds(self, lhs: u128, rhs: u128) -> bool {
        match self {
            Relation::Ge => lhs >= rhs,
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
        }
    }
}

/// Replay information for a recorded instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Union of power classes, as a hex bitmask over `power_classes` order.
    Classes { mask: String, classes: usize },
    /// First `len` power classes after sorting by descending order.
    Prefix { len: usize },
    Subgroup { members: Subset },
    Coset { subgroup: Subset, representative: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub relation: Relation,
    pub holds: bool,
    /// The retained instance: the first failure, or else the tightest pass.
    pub lhs: u128,
    pub rhs: u128,
    pub instances: u64,
    pub failures: u64,
    pub witness: Option<Witness>,
}

impl CheckResult {
    pub fn single(check_id: &str, relation: Relation, lhs: u128, rhs: u128, witness: Option<Witness>) -> Self {
        let mut t = Tally::new(check_id, relation);
        t.record(lhs, rhs, || witness);
        t.finish()
    }
}

/// 256-bit product as (high, low).
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    const MASK: u128 = u64::MAX as u128;
    let (a1, a0) = (a >> 64, a & MASK);
    let (b1, b0) = (b >> 64, b & MASK);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & MASK) + (p10 & MASK);
    let lo = (p00 & MASK) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

/// Compares `a/b` with `c/d` for positive denominators.
fn cmp_ratio(a: u128, b: u128, c: u128, d: u128) -> Ordering {
    mul_wide(a, d).cmp(&mul_wide(c, b))
}

/// Aggregates many instances of one check into a [`CheckResult`].
pub(crate) struct Tally {
    result: CheckResult,
}

impl Tally {
    pub(crate) fn new(check_id: &str, relation: Relation) -> Self {
        Tally {
            result: CheckResult {
                check_id: check_id.to_string(),
                relation,
                holds: true,
                lhs: 0,
                rhs: 0,
                instances: 0,
                failures: 0,
                witness: None,
            },
        }
    }

    pub(crate) fn record(&mut self, lhs: u128, rhs: u128, witness: impl FnOnce() -> Option<Witness>) {
        let r = &mut self.result;
        let ok = r.relation.holds(lhs, rhs);
        let first = r.instances == 0;
        r.instances += 1;
        let keep = if !ok {
            r.failures += 1;
            r.holds
        } else if !r.holds {
            false
        } else if first {
            true
        } else {
            // ratios lhs/rhs: smaller is tighter for >=, larger for <=
            match r.relation {
                Relation::Ge => cmp_ratio(lhs, rhs, r.lhs, r.rhs) == Ordering::Less,
                Relation::Le => cmp_ratio(lhs, rhs, r.lhs, r.rhs) == Ordering::Greater,
                Relation::Eq => false,
            }
        };
        if !ok {
            r.holds = false;
        }
        if keep {
            r.lhs = lhs;
            r.rhs = rhs;
            r.witness = witness();
        }
    }

    pub(crate) fn finish(self) -> CheckResult {
        self.result
    }
}

/// o(G)² ≥ o(A) as ψ(G)²·|A| ≥ ψ(A)·|G|².
pub(crate) fn theorem_sides(psi_g: u64, n: u64, psi_a: u64, size_a: u64) -> (u128, u128) {
    let (pg, n) = (psi_g as u128, n as u128);
    (pg * pg * size_a as u128, psi_a as u128 * n * n)
}

pub fn check_theorem_on_subset(g: &GroupTable, a: &Subset) -> Result<CheckResult> {
    if !is_cc_subset(g, a)? {
        return Err(invalid("theorem check needs a CC-subset"));
    }
    let (lhs, rhs) = theorem_sides(psi_all(g), g.order() as u64, psi(g, a)?, a.len() as u64);
    Ok(CheckResult::single("theorem", Relation::Ge, lhs, rhs, None))
}

/// The theorem for a class-mask union, with the mask kept as the witness.
pub(crate) fn theorem_on_mask(
    tally: &mut Tally,
    psi_g: u64,
    n: u64,
    class_psi: &[u64],
    class_size: &[u64],
    mask: &ClassMask,
) {
    let (mut pa, mut sa) = (0u64, 0u64);
    for i in mask.ones() {
        pa += class_psi[i];
        sa += class_size[i];
    }
    let (lhs, rhs) = theorem_sides(psi_g, n, pa, sa);
    tally.record(lhs, rhs, || Some(Witness::Classes { mask: mask.to_hex(), classes: class_psi.len() }));
}

/// Sides of α/β ≥ (α + φ(o_t)·o_t)/(β + φ(o_t)), cross-multiplied, where
/// α = Σ_{i<t} φ(o_i)·o_i and β = Σ_{i<t} φ(o_i).
pub(crate) fn removal_sides(head_orders: impl Iterator<Item = u64>, last_order: u64) -> (u128, u128) {
    let (mut alpha, mut beta) = (0u128, 0u128);
    for o in head_orders {
        let phi = totient(o) as u128;
        alpha += phi * o as u128;
        beta += phi;
    }
    let phi_t = totient(last_order) as u128;
    (alpha * (beta + phi_t), (alpha + phi_t * last_order as u128) * beta)
}

pub fn check_monotone_removal(_g: &GroupTable, classes: &[PowerClass]) -> Result<CheckResult> {
    let Some((last, head)) = classes.split_last() else {
        return Err(invalid("monotone removal needs at least two classes"));
    };
    if head.is_empty() {
        return Err(invalid("monotone removal needs at least two classes"));
    }
    if head.iter().any(|c| c.rep_order < last.rep_order) {
        return Err(invalid("last class must have minimal order"));
    }
    let (lhs, rhs) = removal_sides(head.iter().map(|c| c.rep_order), last.rep_order);
    Ok(CheckResult::single("monotone_removal", Relation::Ge, lhs, rhs, Some(Witness::Prefix { len: classes.len() })))
}

pub fn check_meo_bound(g: &GroupTable) -> CheckResult {
    let p = psi_all(g) as u128;
    let n = g.order() as u128;
    CheckResult::single("meo_bound", Relation::Ge, p * p, n * n * meo(g) as u128, None)
}

/// ψ(G) ≤ k(G)·|G| and k(G)² ≥ meo(G).
pub fn check_k_bounds(g: &GroupTable) -> Vec<CheckResult> {
    let k = class_number(g) as u128;
    vec![
        CheckResult::single("avg_le_k", Relation::Le, psi_all(g) as u128, k * g.order() as u128, None),
        CheckResult::single("k_sq_ge_meo", Relation::Ge, k * k, meo(g) as u128, None),
    ]
}

pub fn check_psi_identities(g: &GroupTable) -> Vec<CheckResult> {
    let p = psi_all(g) as u128;
    vec![
        CheckResult::single("psi_pair_count", Relation::Eq, p, count_cyclic_membership_pairs(g) as u128, None),
        CheckResult::single("psi_conjugacy", Relation::Eq, p, psi_via_conjugacy(g) as u128, None),
    ]
}

/// Tallies for the center lemmas, shared across many subgroups.
pub(crate) struct CenterTallies {
    pub avg: Tally,
    pub coset: Tally,
    pub corollary: Tally,
}

impl CenterTallies {
    pub(crate) fn new() -> Self {
        CenterTallies {
            avg: Tally::new("center_avg", Relation::Le),
            coset: Tally::new("center_coset", Relation::Ge),
            corollary: Tally::new("center_corollary", Relation::Le),
        }
    }

    pub(crate) fn finish(self) -> Vec<CheckResult> {
        vec![self.avg.finish(), self.coset.finish(), self.corollary.finish()]
    }

    /// Records the checks for one subgroup `sub` given `z = Z(G)`. Returns `N ∩ Z(G)`.
    pub(crate) fn record(&mut self, g: &GroupTable, psi_g: u64, z: &Subset, sub: &Subset) -> Subset {
        let n = g.order() as u128;
        let h = sub.intersection(z);
        let psi_h = psi(g, &h).expect("contains identity");
        let size_h = h.len() as u128;
        self.avg.record(psi_h as u128 * n, psi_g as u128 * size_h, || Some(Witness::Subgroup { members: sub.clone() }));
        for coset in left_cosets(g, &h).expect("intersection of subgroups") {
            let rep = coset.iter().next().expect("non-empty coset");
            let psi_c = psi(g, &coset).expect("non-empty coset");
            self.coset.record(psi_c as u128, psi_h as u128, || {
                Some(Witness::Coset { subgroup: h.clone(), representative: rep })
            });
        }
        if sub.len() == g.order() {
            self.corollary.record(psi_h as u128 * n, psi_g as u128 * size_h, || None);
        }
        h
    }
}

/// For `H = N ∩ Z(G)`: o(H) ≤ o(G), ψ(aH) ≥ ψ(H) over every coset, and
/// o(Z(G)) ≤ o(G) when `N = G`.
pub fn check_center_lemmas(g: &GroupTable, sub: &Subset) -> Result<Vec<CheckResult>> {
    if !is_subgroup(g, sub) {
        return Err(invalid("center lemmas need a subgroup"));
    }
    let mut t = CenterTallies::new();
    t.record(g, psi_all(g), &center(g), sub);
    let mut out = t.finish();
    if sub.len() != g.order() {
        out.pop();
    }
    Ok(out)
}
