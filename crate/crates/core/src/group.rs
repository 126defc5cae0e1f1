//! Dense Cayley-table groups and the subset machinery built on them.
//!
//! Elements are `0..n` with the identity pinned at index 0. Tables are
//! immutable once built; element orders are computed once at construction.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, AxiomViolation, Error, Result};

/// Largest table any constructor will build unless a caller passes its own cap.
pub const DEFAULT_ORDER_CAP: usize = 2048;
/// Largest group for which [`enumerate_subgroups`](crate::subgroups::enumerate_subgroups) runs by default.
pub const DEFAULT_SUBGROUP_CAP: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    n: usize,
    table: Vec<u32>,
    inv: Vec<u32>,
    orders: Vec<u32>,
    element_names: Option<Vec<String>>,
}

impl GroupTable {
    /// Builds from a flat row-major table that is already known to be a group.
    pub(crate) fn from_trusted(name: impl Into<String>, n: usize, table: Vec<u32>) -> Self {
        debug_assert_eq!(table.len(), n * n);
        let mut inv = vec![0u32; n];
        for g in 0..n {
            let row = &table[g * n..(g + 1) * n];
            inv[g] = row.iter().position(|&x| x == 0).expect("row contains identity") as u32;
        }
        let mut orders = vec![0u32; n];
        for g in 0..n {
            let mut k = 1;
            let mut x = g;
            while x != 0 {
                x = table[x * n + g] as usize;
                k += 1;
            }
            orders[g] = k;
        }
        GroupTable { name: name.into(), n, table, inv, orders, element_names: None }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_element_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(invalid(format!("expected {} element names, got {}", self.n, names.len())));
        }
        self.element_names = Some(names);
        Ok(self)
    }

    pub fn element_names(&self) -> Option<&[String]> {
        self.element_names.as_deref()
    }

    /// Display label for `g`: its configured name, or the index.
    pub fn label(&self, g: usize) -> String {
        match &self.element_names {
            Some(names) => names[g].clone(),
            None => g.to_string(),
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, g: usize) -> usize {
        self.inv[g] as usize
    }

    /// Memoized order of `g`; callers must pass a valid index.
    #[inline]
    pub(crate) fn cached_order(&self, g: usize) -> u64 {
        self.orders[g] as u64
    }

    pub fn check_index(&self, g: usize) -> Result<()> {
        if g < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: g, order: self.n })
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// `g^k` by repeated multiplication.
    pub fn pow(&self, g: usize, k: u64) -> usize {
        let mut x = 0;
        for _ in 0..k {
            x = self.mul(x, g);
        }
        x
    }

    /// The table as nested rows, the shape used by Cayley files.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n.max(1)).take(self.n).map(|r| r.iter().map(|&x| x as usize).collect()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a + 1..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn all(&self) -> Subset {
        Subset { members: (0..self.n as u32).collect() }
    }

    pub fn identity_subset(&self) -> Subset {
        Subset { members: vec![0] }
    }

    pub fn subset(&self, members: impl IntoIterator<Item = usize>) -> Result<Subset> {
        let s = Subset::new(members);
        self.check_subset(&s)?;
        Ok(s)
    }

    pub(crate) fn check_subset(&self, s: &Subset) -> Result<()> {
        match s.members.last() {
            Some(&m) if m as usize >= self.n => Err(Error::IndexOutOfRange { index: m as usize, order: self.n }),
            _ => Ok(()),
        }
    }
}

/// Sorted, duplicate-free element indices of some group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset {
    members: Vec<u32>,
}

impl Subset {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<u32> = members.into_iter().map(|m| m as u32).collect();
        members.sort_unstable();
        members.dedup();
        Subset { members }
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Self {
        Subset { members: mask.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u32).collect() }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&(g as u32)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|&m| m as usize)
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.iter().all(|g| other.contains(g))
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset::new(self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset { members: self.members.iter().copied().filter(|&m| other.contains(m as usize)).collect() }
    }
}

/// Checks the four group axioms on a raw table and returns every violation found.
///
/// Associativity reports only its first witness triple; once a table fails
/// the Latin-square test the associativity scan is still run so that all
/// independent axiom failures are visible at once.
pub fn validate_table(raw: &[Vec<usize>]) -> std::result::Result<GroupTable, Vec<AxiomViolation>> {
    let n = raw.len();
    let mut violations = Vec::new();
    for (r, row) in raw.iter().enumerate() {
        if row.len() != n {
            violations.push(AxiomViolation::NotSquare { row: r, len: row.len(), expected: n });
        }
        for (c, &v) in row.iter().enumerate() {
            if v >= n {
                violations.push(AxiomViolation::EntryOutOfRange { row: r, col: c, value: v });
            }
        }
    }
    if n == 0 {
        violations.push(AxiomViolation::NotSquare { row: 0, len: 0, expected: 1 });
    }
    if !violations.is_empty() {
        return Err(violations);
    }
    let at = |a: usize, b: usize| raw[a][b];

    for g in 0..n {
        if at(0, g) != g || at(g, 0) != g {
            violations.push(AxiomViolation::IdentityNotAtZero { g, left: at(0, g), right: at(g, 0) });
            break;
        }
    }
    for r in 0..n {
        let mut seen = vec![usize::MAX; n];
        for c in 0..n {
            let v = at(r, c);
            if seen[v] != usize::MAX {
                violations.push(AxiomViolation::RowNotPermutation { row: r, value: v, first_col: seen[v], second_col: c });
                break;
            }
            seen[v] = c;
        }
    }
    for c in 0..n {
        let mut seen = vec![usize::MAX; n];
        for r in 0..n {
            let v = at(r, c);
            if seen[v] != usize::MAX {
                violations.push(AxiomViolation::ColumnNotPermutation { col: c, value: v, first_row: seen[v], second_row: r });
                break;
            }
            seen[v] = r;
        }
    }
    'assoc: for a in 0..n {
        for b in 0..n {
            let ab = at(a, b);
            for c in 0..n {
                if at(ab, c) != at(a, at(b, c)) {
                    violations.push(AxiomViolation::NotAssociative { a, b, c });
                    break 'assoc;
                }
            }
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }
    let flat = raw.iter().flat_map(|r| r.iter().map(|&x| x as u32)).collect();
    Ok(GroupTable::from_trusted("table", n, flat))
}

/// Non-empty, contains the identity, closed under products and inverses.
pub fn is_subgroup(g: &GroupTable, h: &Subset) -> bool {
    if h.is_empty() || g.check_subset(h).is_err() || !h.contains(0) {
        return false;
    }
    h.iter().all(|a| h.contains(g.inv(a)) && h.iter().all(|b| h.contains(g.mul(a, b))))
}

pub fn center(g: &GroupTable) -> Subset {
    Subset::new(g.elements().filter(|&a| g.elements().all(|b| g.mul(a, b) == g.mul(b, a))))
}

pub fn centralizer(g: &GroupTable, x: usize) -> Result<Subset> {
    g.check_index(x)?;
    Ok(Subset::new(g.elements().filter(|&h| g.mul(h, x) == g.mul(x, h))))
}

pub fn is_normal(g: &GroupTable, h: &Subset) -> Result<bool> {
    if !is_subgroup(g, h) {
        return Err(invalid("is_normal requires a subgroup"));
    }
    Ok(g.elements().all(|a| h.iter().all(|x| h.contains(g.mul(g.mul(a, x), g.inv(a))))))
}

/// Left cosets `aH` of a subgroup, each listed once, ordered by smallest member.
pub fn left_cosets(g: &GroupTable, h: &Subset) -> Result<Vec<Subset>> {
    if !is_subgroup(g, h) {
        return Err(invalid("left_cosets requires a subgroup"));
    }
    let mut seen = vec![false; g.order()];
    let mut cosets = Vec::with_capacity(g.order() / h.len());
    for a in g.elements() {
        if seen[a] {
            continue;
        }
        let coset = Subset::new(h.iter().map(|x| g.mul(a, x)));
        for m in coset.iter() {
            seen[m] = true;
        }
        cosets.push(coset);
    }
    Ok(cosets)
}

/// Right cosets `Ha`, in the same canonical order as [`left_cosets`].
pub fn right_cosets(g: &GroupTable, h: &Subset) -> Result<Vec<Subset>> {
    if !is_subgroup(g, h) {
        return Err(invalid("right_cosets requires a subgroup"));
    }
    let mut seen = vec![false; g.order()];
    let mut cosets = Vec::new();
    for a in g.elements() {
        if seen[a] {
            continue;
        }
        let coset = Subset::new(h.iter().map(|x| g.mul(x, a)));
        for m in coset.iter() {
            seen[m] = true;
        }
        cosets.push(coset);
    }
    Ok(cosets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::*;

    #[test]
    fn validate_c2() {
        let g = validate_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.inv(1), 1);
    }

    #[test]
    fn validate_rejects_bad_row() {
        let errs = validate_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(errs.iter().any(|e| matches!(e, AxiomViolation::RowNotPermutation { row: 1, .. })), "{errs:?}");
    }

    #[test]
    fn validate_rejects_swapped_identity_rows() {
        let mut rows = make_symmetric(3).unwrap().rows();
        rows.swap(0, 1);
        let errs = validate_table(&rows).unwrap_err();
        assert!(errs.iter().any(|e| matches!(e, AxiomViolation::IdentityNotAtZero { .. })), "{errs:?}");
    }

    #[test]
    fn validate_rejects_ragged_and_out_of_range() {
        let errs = validate_table(&[vec![0, 1], vec![1]]).unwrap_err();
        assert!(matches!(errs[0], AxiomViolation::NotSquare { row: 1, .. }));
        let errs = validate_table(&[vec![0, 2], vec![1, 0]]).unwrap_err();
        assert!(matches!(errs[0], AxiomViolation::EntryOutOfRange { row: 0, col: 1, value: 2 }));
        assert!(validate_table(&[]).is_err());
    }

    #[test]
    fn center_and_centralizers() {
        let s3 = make_symmetric(3).unwrap();
        assert_eq!(center(&s3), s3.identity_subset());
        assert_eq!(centralizer(&s3, 0).unwrap(), s3.all());
        for x in s3.elements() {
            let c = centralizer(&s3, x).unwrap();
            match s3.cached_order(x) {
                2 => assert_eq!(c.len(), 2),
                3 => assert_eq!(c.len(), 3),
                _ => {}
            }
        }
        assert!(centralizer(&s3, 6).is_err());

        let q8 = make_dicyclic(2).unwrap();
        assert_eq!(center(&q8).len(), 2);
        let c6 = make_cyclic(6).unwrap();
        assert_eq!(center(&c6), c6.all());
    }

    #[test]
    fn center_is_intersection_of_centralizers() {
        for g in [make_symmetric(4).unwrap(), make_dicyclic(3).unwrap(), make_dihedral(6).unwrap()] {
            let mut acc = g.all();
            for x in g.elements() {
                acc = acc.intersection(&centralizer(&g, x).unwrap());
            }
            assert_eq!(acc, center(&g));
        }
    }

    #[test]
    fn normality_in_s3() {
        let s3 = make_symmetric(3).unwrap();
        assert!(is_normal(&s3, &s3.all()).unwrap());
        let three: Vec<usize> = s3.elements().filter(|&x| s3.cached_order(x) != 2).collect();
        assert!(is_normal(&s3, &s3.subset(three).unwrap()).unwrap());
        let t = s3.elements().find(|&x| s3.cached_order(x) == 2).unwrap();
        assert!(!is_normal(&s3, &s3.subset([0, t]).unwrap()).unwrap());
        assert!(is_normal(&s3, &s3.subset([t]).unwrap()).is_err());
    }

    #[test]
    fn central_cosets_agree_left_right() {
        let q8 = make_dicyclic(2).unwrap();
        let z = center(&q8);
        let mut l = left_cosets(&q8, &z).unwrap();
        let mut r = right_cosets(&q8, &z).unwrap();
        l.sort();
        r.sort();
        assert_eq!(l, r);
        assert_eq!(l.len(), 4);
    }
}
