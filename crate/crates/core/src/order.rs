//! Element orders, ψ (sum of element orders), average order, and the
//! pair-counting identity ψ(G) = |{(a, b) : b ∈ ⟨a⟩}|.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::group::{GroupTable, Subset};
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderStats {
    pub psi: u64,
    pub size: u64,
    pub avg: Rat,
    pub meo: u64,
}

pub fn element_order(g: &GroupTable, x: usize) -> Result<u64> {
    g.check_index(x)?;
    Ok(g.cached_order(x))
}

pub fn psi(g: &GroupTable, x: &Subset) -> Result<u64> {
    if x.is_empty() {
        return Err(invalid("psi of an empty subset"));
    }
    g.check_subset(x)?;
    Ok(x.iter().map(|e| g.cached_order(e)).sum())
}

/// ψ(G), the sum over every element.
pub fn psi_all(g: &GroupTable) -> u64 {
    g.elements().map(|e| g.cached_order(e)).sum()
}

pub fn avg_order(g: &GroupTable, x: &Subset) -> Result<Rat> {
    Ok(Rat::new(psi(g, x)?, x.len() as u64))
}

/// Maximum element order of `g` itself (not of a subset).
pub fn meo(g: &GroupTable) -> u64 {
    g.elements().map(|e| g.cached_order(e)).max().unwrap_or(1)
}

/// ψ, size, average and the largest element order within `x`.
pub fn order_stats(g: &GroupTable, x: &Subset) -> Result<OrderStats> {
    let psi = psi(g, x)?;
    let size = x.len() as u64;
    let meo = x.iter().map(|e| g.cached_order(e)).max().unwrap_or(1);
    Ok(OrderStats { psi, size, avg: Rat::new(psi, size), meo })
}

/// Counts pairs `(a, b)` with `b` a power of `a` by walking the powers of
/// every `a` through the table. Does not touch the order cache.
pub fn count_cyclic_membership_pairs(g: &GroupTable) -> u64 {
    let n = g.order();
    let mut in_cyclic = vec![false; n];
    let mut total = 0u64;
    for a in g.elements() {
        in_cyclic.iter_mut().for_each(|m| *m = false);
        let mut x = a;
        while !in_cyclic[x] {
            in_cyclic[x] = true;
            x = g.mul(x, a);
        }
        total += g.elements().filter(|&b| in_cyclic[b]).count() as u64;
    }
    total
}
