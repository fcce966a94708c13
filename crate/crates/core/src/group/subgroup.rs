use fixedbitset::FixedBitSet;

use super::FiniteGroup;
use crate::error::{Error, Result};

/// A subgroup, stored as the strictly sorted list of its element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<usize>,
    parent_order: usize,
    mask: FixedBitSet,
}

impl Subgroup {
    /// Validates that `elements` is a subgroup of `group`.
    pub fn new(group: &FiniteGroup, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        if let Some(&bad) = elements.iter().find(|&&e| e >= group.order()) {
            return Err(Error::domain(format!(
                "element {bad} is out of range 0..{}",
                group.order()
            )));
        }
        let sub = Self::from_sorted_trusted(elements, group.order());
        sub.check_in(group)?;
        Ok(sub)
    }

    pub(crate) fn from_sorted_trusted(elements: Vec<usize>, parent_order: usize) -> Self {
        let mut mask = FixedBitSet::with_capacity(parent_order);
        for &e in &elements {
            mask.insert(e);
        }
        Subgroup {
            elements,
            parent_order,
            mask,
        }
    }

    pub(crate) fn from_mask(mask: FixedBitSet) -> Self {
        let parent_order = mask.len();
        Subgroup {
            elements: mask.ones().collect(),
            parent_order,
            mask,
        }
    }

    /// Errors unless this really is a subgroup of `group`.
    pub(crate) fn check_in(&self, group: &FiniteGroup) -> Result<()> {
        if self.parent_order != group.order() {
            return Err(Error::domain(format!(
                "subgroup belongs to a group of order {}, not {}",
                self.parent_order,
                group.order()
            )));
        }
        if !self.contains(group.identity()) {
            return Err(Error::domain("subset does not contain the identity"));
        }
        for &a in &self.elements {
            if !self.contains(group.inverse(a)) {
                return Err(Error::domain(format!(
                    "subset is not closed under inverting {a}"
                )));
            }
            for &b in &self.elements {
                if !self.contains(group.mul(a, b)) {
                    return Err(Error::domain(format!(
                        "subset is not closed: {a}·{b} is missing"
                    )));
                }
            }
        }
        if !group.order().is_multiple_of(self.order()) {
            return Err(Error::domain(
                "subgroup order does not divide the group order",
            ));
        }
        Ok(())
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn parent_order(&self) -> usize {
        self.parent_order
    }

    #[inline]
    pub fn contains(&self, g: usize) -> bool {
        g < self.parent_order && self.mask.contains(g)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.mask.is_subset(&other.mask)
    }

    /// True iff some element has order `|H|`.
    pub fn is_cyclic(&self, group: &FiniteGroup) -> bool {
        let orders = group.element_orders();
        self.elements.iter().any(|&g| orders[g] == self.order())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_closure() {
        let c6 = FiniteGroup::from_fn(6, |a, b| (a + b) % 6).unwrap();
        let h = Subgroup::new(&c6, vec![4, 0, 2]).unwrap();
        assert_eq!(h.elements(), &[0, 2, 4]);
        assert!(h.is_cyclic(&c6));
        assert!(Subgroup::new(&c6, vec![0, 1]).is_err());
        assert!(Subgroup::new(&c6, vec![2, 4]).is_err());
        assert!(Subgroup::new(&c6, vec![0, 7]).is_err());
    }
}
