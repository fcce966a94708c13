use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::lattice::{enumerate_subgroups_with_cap, DEFAULT_ENUMERATION_CAP};
use super::{FiniteGroup, Subgroup};
use crate::error::Result;
use crate::numtheory::{factorize, ExactRational};

/// Counts over the full subgroup lattice of one group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupCensus {
    pub group_order: usize,
    /// `|L(G)|`
    pub total: usize,
    /// `c(G)`
    pub cyclic: usize,
    pub normal: usize,
    pub nilpotent: usize,
    /// Number of subgroups of each order.
    pub by_order: BTreeMap<usize, usize>,
}

/// The five degree functions of a group, as exact fractions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Degrees {
    pub alpha: ExactRational,
    pub beta: ExactRational,
    pub cdeg: ExactRational,
    pub ndeg: ExactRational,
    pub jdeg: ExactRational,
}

pub fn census(group: &FiniteGroup) -> Result<SubgroupCensus> {
    census_with_cap(group, DEFAULT_ENUMERATION_CAP)
}

pub fn census_with_cap(group: &FiniteGroup, cap: usize) -> Result<SubgroupCensus> {
    let subgroups = enumerate_subgroups_with_cap(group, cap)?;
    Ok(census_of(group, &subgroups))
}

/// Census over an already enumerated lattice.
pub fn census_of(group: &FiniteGroup, subgroups: &[Subgroup]) -> SubgroupCensus {
    let gens = group.generators();
    let mut census = SubgroupCensus {
        group_order: group.order(),
        total: subgroups.len(),
        cyclic: 0,
        normal: 0,
        nilpotent: 0,
        by_order: BTreeMap::new(),
    };
    for h in subgroups {
        *census.by_order.entry(h.order()).or_default() += 1;
        if h.is_cyclic(group) {
            census.cyclic += 1;
        }
        if normal_under(group, h, &gens) {
            census.normal += 1;
        }
        if nilpotent(group, h) {
            census.nilpotent += 1;
        }
    }
    census
}

/// α = c/|G|, β = |L|/|G|, cdeg = c/|L|, ndeg = normal/|L|, jdeg = nilpotent/|L|.
///
/// Panics if `cdeg ≠ α/β`, which would mean the census is internally inconsistent.
pub fn degrees(c: &SubgroupCensus) -> Degrees {
    let ratio = |a: usize, b: usize| ExactRational::frac(a as u64, b as u64);
    let d = Degrees {
        alpha: ratio(c.cyclic, c.group_order),
        beta: ratio(c.total, c.group_order),
        cdeg: ratio(c.cyclic, c.total),
        ndeg: ratio(c.normal, c.total),
        jdeg: ratio(c.nilpotent, c.total),
    };
    assert_eq!(d.cdeg, &d.alpha / &d.beta, "cdeg must equal alpha/beta");
    d
}

/// True iff `g H g⁻¹ = H` for every `g`.
pub fn is_normal(group: &FiniteGroup, h: &Subgroup) -> Result<bool> {
    h.check_in(group)?;
    Ok(normal_under(group, h, &group.generators()))
}

/// True iff every Sylow subgroup of `H` is normal in `H`.
pub fn is_nilpotent_subgroup(group: &FiniteGroup, h: &Subgroup) -> Result<bool> {
    h.check_in(group)?;
    Ok(nilpotent(group, h))
}

// Invariance under conjugation by a generating set implies invariance under
// the whole group.
fn normal_under(group: &FiniteGroup, h: &Subgroup, gens: &[usize]) -> bool {
    if h.order() == 1 || h.order() == group.order() {
        return true;
    }
    gens.iter().all(|&s| {
        let s_inv = group.inverse(s);
        h.elements()
            .iter()
            .all(|&x| h.contains(group.mul(group.mul(s, x), s_inv)))
    })
}

// A Sylow p-subgroup P of H is normal iff it is the only one, iff P contains
// every p-element of H, iff H has exactly |P| elements of p-power order.
fn nilpotent(group: &FiniteGroup, h: &Subgroup) -> bool {
    let orders = group.element_orders();
    factorize(h.order() as u64).iter().all(|&(p, e)| {
        let sylow_order = (p as usize).pow(e);
        let p_elements = h
            .elements()
            .iter()
            .filter(|&&x| is_power_of(orders[x], p as usize))
            .count();
        p_elements == sylow_order
    })
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}
