//! Coprime-power classes (the generator sets of cyclic subgroups), CC-subsets,
//! and conjugacy classes.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::group::{centralizer, GroupTable, Subset};
use crate::numtheory::{gcd, totient};
use crate::rat::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionKind {
    Power,
    Conjugacy,
}

/// One block of a partition. Every member has order `rep_order`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ElementClass {
    pub representative: usize,
    pub members: Subset,
    pub rep_order: u64,
}

pub type PowerClass = ElementClass;

impl ElementClass {
    pub fn psi(&self) -> u64 {
        self.rep_order * self.members.len() as u64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassPartition {
    pub kind: PartitionKind,
    pub classes: Vec<ElementClass>,
    #[serde(skip)]
    class_of: Vec<usize>,
}

impl ClassPartition {
    fn from_classes(kind: PartitionKind, n: usize, classes: Vec<ElementClass>) -> Self {
        let mut class_of = vec![usize::MAX; n];
        for (i, c) in classes.iter().enumerate() {
            for m in c.members.iter() {
                class_of[m] = i;
            }
        }
        ClassPartition { kind, classes, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    /// Union of the classes selected by `pick`.
    pub fn union_of(&self, pick: impl Fn(usize) -> bool) -> Subset {
        Subset::new(self.classes.iter().enumerate().filter(|(i, _)| pick(*i)).flat_map(|(_, c)| c.members.iter()))
    }
}

/// `{x^k : 1 <= k <= o(x), gcd(k, o(x)) = 1}`
fn coprime_powers(g: &GroupTable, x: usize) -> Vec<usize> {
    let o = g.cached_order(x);
    let mut out = Vec::with_capacity(totient(o) as usize);
    let mut p = x;
    for k in 1..=o {
        if gcd(k, o) == 1 {
            out.push(p);
        }
        p = g.mul(p, x);
    }
    out
}

/// Partition by `g ~ h` iff `h = g^k` for some `k` coprime to `o(g)`.
/// Representatives are the smallest index in each class.
pub fn power_classes(g: &GroupTable) -> ClassPartition {
    let n = g.order();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for x in g.elements() {
        if assigned[x] {
            continue;
        }
        let members = coprime_powers(g, x);
        for &m in &members {
            assigned[m] = true;
        }
        classes.push(ElementClass { representative: x, members: Subset::new(members), rep_order: g.cached_order(x) });
    }
    ClassPartition::from_classes(PartitionKind::Power, n, classes)
}

/// Smallest CC-subset containing `s`.
pub fn cc_closure(g: &GroupTable, s: &Subset) -> Result<Subset> {
    if s.is_empty() {
        return Err(invalid("cc_closure of an empty subset"));
    }
    g.check_subset(s)?;
    Ok(Subset::new(s.iter().flat_map(|x| coprime_powers(g, x))))
}

pub fn is_cc_subset(g: &GroupTable, s: &Subset) -> Result<bool> {
    if s.is_empty() {
        return Err(invalid("is_cc_subset of an empty subset"));
    }
    g.check_subset(s)?;
    Ok(s.iter().all(|x| coprime_powers(g, x).into_iter().all(|y| s.contains(y))))
}

pub fn conjugacy_classes(g: &GroupTable) -> ClassPartition {
    let n = g.order();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for x in g.elements() {
        if assigned[x] {
            continue;
        }
        let members = Subset::new(g.elements().map(|h| g.mul(g.mul(h, x), g.inv(h))));
        for m in members.iter() {
            assigned[m] = true;
        }
        classes.push(ElementClass { representative: x, members, rep_order: g.cached_order(x) });
    }
    ClassPartition::from_classes(PartitionKind::Conjugacy, n, classes)
}

/// k(G).
pub fn class_number(g: &GroupTable) -> u64 {
    conjugacy_classes(g).len() as u64
}

/// ψ(G) = Σ |G|·o(x_i)/|C_G(x_i)| over conjugacy class representatives.
pub fn psi_via_conjugacy(g: &GroupTable) -> u64 {
    let n = g.order() as u64;
    conjugacy_classes(g)
        .classes
        .iter()
        .map(|c| {
            let cent = centralizer(g, c.representative).expect("representative in range").len() as u64;
            debug_assert_eq!(n % cent, 0);
            n / cent * c.rep_order
        })
        .sum()
}

/// o(G) = Σ o(x_i)/|C_G(x_i)|, summed as exact rationals.
pub fn avg_order_via_conjugacy(g: &GroupTable) -> Rat {
    conjugacy_classes(g).classes.iter().fold(Rat::integer(0), |acc, c| {
        let cent = centralizer(g, c.representative).expect("representative in range").len() as u64;
        acc.checked_add(&Rat::new(c.rep_order, cent)).expect("denominators bounded by |G|")
    })
}
