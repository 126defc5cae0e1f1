//! Subgroup generation and full subgroup enumeration.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::{GroupTable, Subset, DEFAULT_SUBGROUP_CAP};

/// Subgroup generated by `gens` (words in the generators; finite, so inverses come for free).
pub fn generated_subgroup(g: &GroupTable, gens: &[usize]) -> Result<Subset> {
    for &x in gens {
        g.check_index(x)?;
    }
    Ok(Subset::from_mask(&closure_mask(g, vec![false; g.order()], &[0], gens)))
}

pub fn cyclic_subgroup(g: &GroupTable, x: usize) -> Result<Subset> {
    generated_subgroup(g, &[x])
}

/// Grows `mask` (already containing `seed`) by right multiplication with `gens`.
fn closure_mask(g: &GroupTable, mut mask: Vec<bool>, seed: &[usize], gens: &[usize]) -> Vec<bool> {
    let mut queue: Vec<usize> = Vec::new();
    for &s in seed {
        if !mask[s] {
            mask[s] = true;
        }
        queue.push(s);
    }
    while let Some(x) = queue.pop() {
        for &gen in gens {
            let y = g.mul(x, gen);
            if !mask[y] {
                mask[y] = true;
                queue.push(y);
            }
        }
    }
    mask
}

pub fn enumerate_subgroups(g: &GroupTable) -> Result<Vec<Subset>> {
    enumerate_subgroups_with_cap(g, DEFAULT_SUBGROUP_CAP)
}

/// All subgroups, sorted by (size, members).
///
/// Seeds with every cyclic subgroup and joins each known subgroup with each
/// cyclic generator outside it until nothing new appears. Every subgroup is a
/// join of cyclic subgroups, so the fixpoint is complete.
pub fn enumerate_subgroups_with_cap(g: &GroupTable, cap: usize) -> Result<Vec<Subset>> {
    let n = g.order();
    if n > cap {
        return Err(Error::CapacityExceeded { what: "subgroup enumeration", requested: n, cap });
    }
    // One generator per cyclic subgroup is enough for the joins.
    let mut cyclic_gens = Vec::new();
    let mut seen_cyclic: HashSet<Vec<bool>> = HashSet::new();
    let mut found: HashSet<Vec<bool>> = HashSet::new();
    // (mask, generators)
    let mut work: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
    for x in g.elements() {
        let mask = closure_mask(g, vec![false; n], &[0], &[x]);
        if seen_cyclic.insert(mask.clone()) {
            cyclic_gens.push(x);
            found.insert(mask.clone());
            work.push((mask, vec![x]));
        }
    }
    let mut next = 0;
    while next < work.len() {
        let (mask, gens) = work[next].clone();
        next += 1;
        for &x in &cyclic_gens {
            if mask[x] {
                continue;
            }
            let members: Vec<usize> = (0..n).filter(|&i| mask[i]).collect();
            let mut joined_gens = gens.clone();
            joined_gens.push(x);
            let joined = closure_mask(g, mask.clone(), &members, &joined_gens);
            if found.insert(joined.clone()) {
                work.push((joined, joined_gens));
            }
        }
    }
    let mut out: Vec<Subset> = work.into_iter().map(|(m, _)| Subset::from_mask(&m)).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;
    use crate::group::is_subgroup;
    use crate::numtheory::divisors;

    /// Brute force: every subset closed under multiplication that contains 0.
    fn subgroups_by_subset_scan(g: &GroupTable) -> Vec<Subset> {
        let n = g.order();
        assert!(n <= 16);
        let mut out = Vec::new();
        for bits in 0u32..(1 << n) {
            if bits & 1 == 0 {
                continue;
            }
            let s = Subset::new((0..n).filter(|i| bits >> i & 1 == 1));
            if is_subgroup(g, &s) {
                out.push(s);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    #[test]
    fn cyclic_groups_have_divisor_many_subgroups() {
        for m in 1..=40 {
            let g = make_cyclic(m).unwrap();
            let subs = enumerate_subgroups(&g).unwrap();
            let sizes: Vec<u64> = subs.iter().map(|s| s.len() as u64).collect();
            assert_eq!(sizes, divisors(m as u64), "C{m}");
        }
    }

    #[test]
    fn s3_subgroups() {
        let s3 = make_symmetric(3).unwrap();
        let subs = enumerate_subgroups(&s3).unwrap();
        let sizes: Vec<usize> = subs.iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![1, 2, 2, 2, 3, 6]);
        assert_eq!(subs, subgroups_by_subset_scan(&s3));
    }

    #[test]
    fn matches_subset_scan_on_small_groups() {
        for g in [
            make_cyclic(1).unwrap(),
            make_dihedral(4).unwrap(),
            make_dicyclic(2).unwrap(),
            make_abelian(&[2, 2, 2]).unwrap(),
            make_abelian(&[2, 4]).unwrap(),
            make_dihedral(6).unwrap(),
            make_dicyclic(3).unwrap(),
            make_alternating(4).unwrap(),
            make_abelian(&[2, 2, 2, 2]).unwrap(),
        ] {
            assert_eq!(enumerate_subgroups(&g).unwrap(), subgroups_by_subset_scan(&g), "{}", g.name());
        }
    }

    #[test]
    fn trivial_group_has_one_subgroup() {
        assert_eq!(enumerate_subgroups(&make_cyclic(1).unwrap()).unwrap().len(), 1);
    }

    #[test]
    fn known_counts() {
        // S4 has 30 subgroups, C2^3 has 16.
        assert_eq!(enumerate_subgroups(&make_symmetric(4).unwrap()).unwrap().len(), 30);
        assert_eq!(enumerate_subgroups(&make_abelian(&[2, 2, 2]).unwrap()).unwrap().len(), 16);
        for h in enumerate_subgroups(&make_symmetric(4).unwrap()).unwrap() {
            assert!(is_subgroup(&make_symmetric(4).unwrap(), &h));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let s5 = make_symmetric(5).unwrap();
        assert!(matches!(enumerate_subgroups_with_cap(&s5, 100), Err(Error::CapacityExceeded { .. })));
    }
}
