//! Concrete finite groups as Cayley tables, and the brute-force subgroup
//! lattice built on top of them.

mod census;
mod lattice;
mod subgroup;
mod table_file;

pub use census::{
    census, census_of, census_with_cap, degrees, is_nilpotent_subgroup, is_normal, Degrees,
    SubgroupCensus,
};
pub use lattice::{enumerate_subgroups, enumerate_subgroups_with_cap, DEFAULT_ENUMERATION_CAP};
pub use subgroup::Subgroup;
pub use table_file::{parse_table_document, to_table_document};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::families::FamilySpec;

/// Largest group order any constructor will build.
pub const MAX_GROUP_ORDER: usize = 2048;

/// Orders up to this bound get an exhaustive associativity check.
const EXHAUSTIVE_ASSOCIATIVITY_LIMIT: usize = 256;
const ASSOCIATIVITY_SAMPLES: usize = 100_000;

/// A finite group given by its multiplication table.
///
/// Elements are the indices `0..order`; `mul(i, j)` is the index of `gᵢ·gⱼ`.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverses: Vec<usize>,
    element_orders: Vec<usize>,
    labels: Option<Vec<String>>,
    meta: Option<FamilySpec>,
}

impl FiniteGroup {
    /// Builds a group from `order × order` rows, validating every group axiom.
    pub fn from_rows(rows: &[Vec<usize>], labels: Option<Vec<String>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::domain("a group needs at least one element"));
        }
        if order > MAX_GROUP_ORDER {
            return Err(Error::OrderLimit {
                order: order.to_string(),
                limit: MAX_GROUP_ORDER,
            });
        }
        let mut table = Vec::with_capacity(order * order);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::domain(format!(
                    "table[{i}] has {} entries, expected {order}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(Error::domain(format!(
                        "table[{i}][{j}] = {v} is out of range 0..{order}"
                    )));
                }
                table.push(v as u32);
            }
        }
        Self::from_flat(order, table, labels)
    }

    /// Builds a group of the given order from a multiplication function.
    pub fn from_fn(order: usize, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        if order == 0 || order > MAX_GROUP_ORDER {
            return Err(Error::OrderLimit {
                order: order.to_string(),
                limit: MAX_GROUP_ORDER,
            });
        }
        let mut table = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                let v = mul(i, j);
                if v >= order {
                    return Err(Error::domain(format!(
                        "product of {i} and {j} is {v}, out of range 0..{order}"
                    )));
                }
                table.push(v as u32);
            }
        }
        Self::from_flat(order, table, None)
    }

    fn from_flat(order: usize, table: Vec<u32>, labels: Option<Vec<String>>) -> Result<Self> {
        if let Some(l) = &labels {
            if l.len() != order {
                return Err(Error::domain(format!(
                    "labels has {} entries, expected {order}",
                    l.len()
                )));
            }
        }
        let at = |i: usize, j: usize| table[i * order + j] as usize;

        // Latin square: every row and every column is a permutation.
        let mut seen = vec![usize::MAX; order];
        for i in 0..order {
            for j in 0..order {
                let v = at(i, j);
                if seen[v] == i {
                    return Err(Error::domain(format!(
                        "table[{i}] repeats element {v} (row is not a permutation)"
                    )));
                }
                seen[v] = i;
            }
        }
        seen.fill(usize::MAX);
        for j in 0..order {
            for i in 0..order {
                let v = at(i, j);
                if seen[v] == j {
                    return Err(Error::domain(format!(
                        "column {j} repeats element {v} (column is not a permutation)"
                    )));
                }
                seen[v] = j;
            }
        }

        let identity = (0..order)
            .find(|&e| (0..order).all(|j| at(e, j) == j && at(j, e) == j))
            .ok_or_else(|| Error::domain("table has no two-sided identity"))?;

        let mut inverses = vec![0; order];
        for (i, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..order)
                .find(|&j| at(i, j) == identity)
                .expect("latin square rows contain the identity");
            if at(*inv, i) != identity {
                return Err(Error::domain(format!(
                    "element {i} has no two-sided inverse"
                )));
            }
        }

        let group = FiniteGroup {
            order,
            element_orders: Vec::new(),
            table,
            identity,
            inverses,
            labels,
            meta: None,
        };
        group.check_associativity()?;
        Ok(group.with_element_orders())
    }

    /// Skips validation; the caller guarantees the table is a group.
    pub(crate) fn from_flat_trusted(
        order: usize,
        table: Vec<u32>,
        labels: Option<Vec<String>>,
    ) -> Self {
        let identity = (0..order)
            .find(|&e| (0..order).all(|j| table[e * order + j] as usize == j))
            .expect("trusted table has an identity");
        let inverses = (0..order)
            .map(|i| {
                (0..order)
                    .find(|&j| table[i * order + j] as usize == identity)
                    .expect("trusted table has inverses")
            })
            .collect();
        FiniteGroup {
            order,
            table,
            identity,
            inverses,
            element_orders: Vec::new(),
            labels,
            meta: None,
        }
        .with_element_orders()
    }

    fn with_element_orders(mut self) -> Self {
        self.element_orders = (0..self.order)
            .map(|g| {
                let mut k = 1;
                let mut x = g;
                while x != self.identity {
                    x = self.mul(x, g);
                    k += 1;
                }
                k
            })
            .collect();
        self
    }

    fn check_associativity(&self) -> Result<()> {
        let n = self.order;
        let check = |i: usize, j: usize, k: usize| -> Result<()> {
            if self.mul(self.mul(i, j), k) != self.mul(i, self.mul(j, k)) {
                Err(Error::domain(format!(
                    "table is not associative at ({i}, {j}, {k})"
                )))
            } else {
                Ok(())
            }
        };
        if n <= EXHAUSTIVE_ASSOCIATIVITY_LIMIT {
            for i in 0..n {
                for j in 0..n {
                    let ij = self.mul(i, j);
                    for k in 0..n {
                        if self.mul(ij, k) != self.mul(i, self.mul(j, k)) {
                            return check(i, j, k);
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x05ee_d0f7_ab1e);
            for _ in 0..ASSOCIATIVITY_SAMPLES {
                check(
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                )?;
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// Smallest `k ≥ 1` with `g^k = e`.
    pub fn element_order(&self, g: usize) -> Result<usize> {
        self.element_orders
            .get(g)
            .copied()
            .ok_or_else(|| Error::domain(format!("element {g} is out of range 0..{}", self.order)))
    }

    pub(crate) fn element_orders(&self) -> &[usize] {
        &self.element_orders
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> usize {
        self.element_orders
            .iter()
            .fold(1, |acc, &o| num_integer::lcm(acc, o))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|i| (0..i).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    pub fn center(&self) -> Subgroup {
        let elements: Vec<usize> = (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect();
        Subgroup::from_sorted_trusted(elements, self.order)
    }

    /// A generating set found greedily; not necessarily minimal.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.order];
        span[self.identity] = true;
        let mut members = vec![self.identity];
        // Visit elements by decreasing order so large cyclic pieces come first.
        let mut candidates: Vec<usize> = (0..self.order).collect();
        candidates.sort_by_key(|&g| (std::cmp::Reverse(self.element_orders[g]), g));
        for g in candidates {
            if span[g] {
                continue;
            }
            gens.push(g);
            // Re-close over the enlarged generating set.
            let mut i = 0;
            while i < members.len() {
                let x = members[i];
                for &s in &gens {
                    let y = self.mul(x, s);
                    if !span[y] {
                        span[y] = true;
                        members.push(y);
                    }
                }
                i += 1;
            }
            if members.len() == self.order {
                break;
            }
        }
        gens
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display label for an element; falls back to its index.
    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::domain(format!(
                "labels has {} entries, expected {}",
                labels.len(),
                self.order
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Family provenance, when the group came from a family constructor.
    pub fn meta(&self) -> Option<&FamilySpec> {
        self.meta.as_ref()
    }

    pub fn with_meta(mut self, spec: FamilySpec) -> Self {
        self.meta = Some(spec);
        self
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }
}

/// The direct product `G × H`; the pair `(g, h)` has index `g·|H| + h`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    let order = g
        .order
        .checked_mul(h.order)
        .filter(|&o| o <= MAX_GROUP_ORDER)
        .ok_or_else(|| Error::OrderLimit {
            order: format!("{}·{}", g.order, h.order),
            limit: MAX_GROUP_ORDER,
        })?;
    let n = h.order;
    let mut table = Vec::with_capacity(order * order);
    for a in 0..order {
        let (ga, ha) = (a / n, a % n);
        for b in 0..order {
            let (gb, hb) = (b / n, b % n);
            table.push((g.mul(ga, gb) * n + h.mul(ha, hb)) as u32);
        }
    }
    let labels = (0..order)
        .map(|a| format!("({},{})", g.label(a / n), h.label(a % n)))
        .collect();
    let mut product = FiniteGroup::from_flat_trusted(order, table, Some(labels));
    if let (Some(l), Some(r)) = (g.meta(), h.meta()) {
        product.meta = Some(FamilySpec::DirectProduct(
            Box::new(l.clone()),
            Box::new(r.clone()),
        ));
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteGroup {
        FiniteGroup::from_fn(n, |a, b| (a + b) % n).unwrap()
    }

    #[test]
    fn element_orders_and_exponent() {
        let c6 = cyclic(6);
        assert_eq!(c6.element_order(0).unwrap(), 1);
        assert_eq!(c6.element_order(1).unwrap(), 6);
        assert_eq!(c6.element_order(2).unwrap(), 3);
        assert!(c6.element_order(6).is_err());
        assert_eq!(c6.exponent(), 6);
        let c2 = cyclic(2);
        let c2_3 = direct_product(&direct_product(&c2, &c2).unwrap(), &c2).unwrap();
        assert_eq!(c2_3.exponent(), 2);
    }

    #[test]
    fn rejects_broken_tables() {
        assert!(FiniteGroup::from_rows(&[vec![0, 1], vec![1, 1]], None).is_err());
        assert!(FiniteGroup::from_rows(&[vec![0, 1], vec![1]], None).is_err());
        assert!(FiniteGroup::from_rows(&[vec![0, 2], vec![1, 0]], None).is_err());
        // Latin square with identity 0 but not associative (order 5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_rows(&loop5, None).unwrap_err();
        assert!(err.to_string().contains("associative"), "{err}");
    }

    #[test]
    fn identity_need_not_be_index_zero() {
        // C2 with identity at index 1.
        let g = FiniteGroup::from_rows(&[vec![1, 0], vec![0, 1]], None).unwrap();
        assert_eq!(g.identity(), 1);
        assert_eq!(g.inverse(0), 0);
    }

    #[test]
    fn generators_span_group() {
        let g = direct_product(&cyclic(4), &cyclic(6)).unwrap();
        let gens = g.generators();
        assert!(gens.len() <= 2);
        let mut span = vec![g.identity()];
        let mut seen = vec![false; g.order()];
        seen[g.identity()] = true;
        let mut i = 0;
        while i < span.len() {
            for &s in &gens {
                let y = g.mul(span[i], s);
                if !seen[y] {
                    seen[y] = true;
                    span.push(y);
                }
            }
            i += 1;
        }
        assert_eq!(span.len(), 24);
    }

    #[test]
    fn product_order_limit() {
        let big = cyclic(64);
        let err = direct_product(&big, &big).unwrap_err();
        assert!(err.is_resource());
    }
}
