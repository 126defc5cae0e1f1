//! Constructors for the built-in group families.
//!
//! Each family has a fixed element ordering so that reports are reproducible:
//!
//! * `C_m`: index `i` is `x^i`.
//! * `D_m` (order `2m`): index `e·m + i` is `s^e r^i`.
//! * `Dic_m` (order `4m`): index `e·2m + i` is `x^e a^i`, with `x² = a^m`.
//! * direct products: `(a, b)` is `a·|B| + b`; abelian groups fold this left to right.
//! * permutation groups: breadth-first discovery order from the identity,
//!   multiplying on the right by each generator in turn.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::group::{GroupTable, DEFAULT_ORDER_CAP};

fn check_cap(what: &'static str, requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        Err(Error::CapacityExceeded { what, requested, cap })
    } else {
        Ok(())
    }
}

fn build(name: String, n: usize, mul: impl Fn(usize, usize) -> usize) -> GroupTable {
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            table.push(mul(a, b) as u32);
        }
    }
    GroupTable::from_trusted(name, n, table)
}

pub fn make_cyclic(m: usize) -> Result<GroupTable> {
    if m == 0 {
        return Err(invalid("cyclic group needs m >= 1"));
    }
    check_cap("cyclic group", m, DEFAULT_ORDER_CAP)?;
    Ok(build(format!("C{m}"), m, |a, b| (a + b) % m))
}

/// Dihedral group of order `2m`: `r^m = s^2 = 1`, `s r s = r^-1`.
pub fn make_dihedral(m: usize) -> Result<GroupTable> {
    if m == 0 {
        return Err(invalid("dihedral group needs m >= 1"));
    }
    check_cap("dihedral group", 2 * m, DEFAULT_ORDER_CAP)?;
    Ok(build(format!("D{m}"), 2 * m, |a, b| {
        let (e, i) = (a / m, a % m);
        let (f, j) = (b / m, b % m);
        // r^i s^f = s^f r^{±i}
        let i = if f == 1 { (m - i) % m } else { i };
        ((e + f) % 2) * m + (i + j) % m
    }))
}

/// Dicyclic group of order `4m`: `a^{2m} = 1`, `x^2 = a^m`, `x^-1 a x = a^-1`.
/// `m = 2` is the quaternion group and is named `Q8`.
pub fn make_dicyclic(m: usize) -> Result<GroupTable> {
    if m < 2 {
        return Err(invalid("dicyclic group needs m >= 2"));
    }
    check_cap("dicyclic group", 4 * m, DEFAULT_ORDER_CAP)?;
    let k = 2 * m;
    let name = if m == 2 { "Q8".to_string() } else { format!("Dic{m}") };
    Ok(build(name, 4 * m, |a, b| {
        let (e, i) = (a / k, a % k);
        let (f, j) = (b / k, b % k);
        match (e, f) {
            (_, 0) => e * k + (i + j) % k,
            (0, _) => k + (j + k - i) % k,
            _ => (m + j + k - i) % k,
        }
    }))
}

pub fn direct_product(a: &GroupTable, b: &GroupTable) -> Result<GroupTable> {
    direct_product_with_cap(a, b, DEFAULT_ORDER_CAP)
}

pub fn direct_product_with_cap(a: &GroupTable, b: &GroupTable, cap: usize) -> Result<GroupTable> {
    let (na, nb) = (a.order(), b.order());
    let n = na.saturating_mul(nb);
    check_cap("direct product", n, cap)?;
    Ok(build(format!("{}x{}", a.name(), b.name()), n, |x, y| {
        a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)
    }))
}

/// `C_{d1} × … × C_{dk}`; the empty list is the trivial group.
pub fn make_abelian(invariants: &[usize]) -> Result<GroupTable> {
    make_abelian_with_cap(invariants, DEFAULT_ORDER_CAP)
}

pub fn make_abelian_with_cap(invariants: &[usize], cap: usize) -> Result<GroupTable> {
    if let Some(&d) = invariants.iter().find(|&&d| d < 2) {
        return Err(invalid(format!("abelian invariant {d} must be >= 2")));
    }
    let order = invariants.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d)).unwrap_or(usize::MAX);
    check_cap("abelian group", order, cap)?;
    let mut acc = make_cyclic(1)?;
    for &d in invariants {
        acc = direct_product_with_cap(&acc, &make_cyclic(d)?, cap)?;
    }
    let name = if invariants.is_empty() {
        "C1".to_string()
    } else {
        invariants.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join("x")
    };
    Ok(acc.with_name(name))
}

/// A bijection of `0..degree`, stored as its image array.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        if d == 0 {
            return Err(invalid("permutation degree must be positive"));
        }
        let mut seen = vec![false; d];
        for &x in &images {
            if x >= d || seen[x] {
                return Err(invalid(format!("{images:?} is not a permutation of 0..{d}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images: images.into_iter().map(|x| x as u32).collect() })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                let y = cycle[(k + 1) % cycle.len()];
                if x >= degree || y >= degree {
                    return Err(invalid(format!("cycle point out of range for degree {degree}")));
                }
                images[x] = y;
            }
        }
        Permutation::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        let mut transpositions = 0;
        for start in 0..self.degree() {
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image(x);
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        transpositions % 2 == 0
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Permutation::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images.into_iter().map(|x| x as usize).collect()
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with fixed points omitted; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.image(x);
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

pub fn close_generators(degree: usize, gens: &[Permutation], name: &str) -> Result<GroupTable> {
    close_generators_with_cap(degree, gens, name, DEFAULT_ORDER_CAP)
}

pub fn close_generators_with_cap(
    degree: usize,
    gens: &[Permutation],
    name: &str,
    cap: usize,
) -> Result<GroupTable> {
    if degree == 0 {
        return Err(invalid("permutation degree must be positive"));
    }
    if let Some(g) = gens.iter().find(|g| g.degree() != degree) {
        return Err(invalid(format!("generator of degree {} in a degree-{degree} group", g.degree())));
    }
    let mut elements = vec![Permutation::identity(degree)];
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    let mut next = 0;
    while next < elements.len() {
        for g in gens {
            let y = elements[next].then(g);
            if !index.contains_key(&y) {
                if elements.len() == cap {
                    return Err(Error::CapacityExceeded { what: "generator closure", requested: cap + 1, cap });
                }
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
        next += 1;
    }
    let n = elements.len();
    let table = build(name.to_string(), n, |a, b| index[&elements[a].then(&elements[b])]);
    table.with_element_names(elements.iter().map(|p| p.to_string()).collect())
}

/// Symmetric group `S_d`, generated by `(0 1 … d-1)` and `(0 1)`.
pub fn make_symmetric(d: usize) -> Result<GroupTable> {
    if d == 0 {
        return Err(invalid("symmetric group needs degree >= 1"));
    }
    let mut gens = Vec::new();
    if d >= 2 {
        gens.push(Permutation::from_cycles(d, &[&(0..d).collect::<Vec<_>>()])?);
        gens.push(Permutation::from_cycles(d, &[&[0, 1]])?);
    }
    close_generators(d, &gens, &format!("S{d}"))
}

/// Alternating group `A_d`, generated by the 3-cycles `(0 1 k)`.
pub fn make_alternating(d: usize) -> Result<GroupTable> {
    if d == 0 {
        return Err(invalid("alternating group needs degree >= 1"));
    }
    let gens = (2..d).map(|k| Permutation::from_cycles(d, &[&[0, 1, k]])).collect::<Result<Vec<_>>>()?;
    close_generators(d, &gens, &format!("A{d}"))
}

pub fn factorial(d: usize) -> usize {
    (1..=d).product()
}
