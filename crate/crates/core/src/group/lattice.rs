use std::collections::{HashMap, VecDeque};

use fixedbitset::FixedBitSet;

use super::{FiniteGroup, Subgroup};
use crate::error::{Error, Result};

/// Largest group order enumerated unless the caller raises the cap.
pub const DEFAULT_ENUMERATION_CAP: usize = 512;

struct Node {
    mask: FixedBitSet,
    elements: Vec<usize>,
    gens: Vec<usize>,
}

/// Every subgroup of `group`, using [`DEFAULT_ENUMERATION_CAP`].
pub fn enumerate_subgroups(group: &FiniteGroup) -> Result<Vec<Subgroup>> {
    enumerate_subgroups_with_cap(group, DEFAULT_ENUMERATION_CAP)
}

/// Every subgroup of `group`, sorted by order and then by element list.
///
/// Seeds the search with the cyclic subgroups `⟨g⟩`, then repeatedly joins
/// each known subgroup `H` with one element from each right coset `Hg ≠ H`,
/// keeping every closure not seen before, until nothing new appears.
pub fn enumerate_subgroups_with_cap(group: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>> {
    let n = group.order();
    if n > cap {
        return Err(Error::CapExceeded {
            order: n as u64,
            cap,
        });
    }

    let mut nodes: Vec<Node> = Vec::new();
    let mut index: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut queue = VecDeque::new();

    let mut add = |node: Node, nodes: &mut Vec<Node>, queue: &mut VecDeque<usize>| {
        if !index.contains_key(&node.mask) {
            index.insert(node.mask.clone(), nodes.len());
            queue.push_back(nodes.len());
            nodes.push(node);
        }
    };

    let trivial = {
        let mut mask = FixedBitSet::with_capacity(n);
        mask.insert(group.identity());
        Node {
            mask,
            elements: vec![group.identity()],
            gens: Vec::new(),
        }
    };
    add(trivial, &mut nodes, &mut queue);
    for g in 0..n {
        let node = closure(group, &nodes[0], g);
        add(node, &mut nodes, &mut queue);
    }

    let mut covered = FixedBitSet::with_capacity(n);
    while let Some(h) = queue.pop_front() {
        covered.clear();
        covered.union_with(&nodes[h].mask);
        for g in 0..n {
            if covered.contains(g) {
                continue;
            }
            // ⟨H, g⟩ = ⟨H, hg⟩ for every h ∈ H, so one element per coset suffices.
            for &x in &nodes[h].elements {
                covered.insert(group.mul(x, g));
            }
            let node = closure(group, &nodes[h], g);
            add(node, &mut nodes, &mut queue);
        }
    }

    let mut out: Vec<Subgroup> = nodes
        .into_iter()
        .map(|node| Subgroup::from_mask(node.mask))
        .collect();
    out.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements().cmp(b.elements()))
    });
    Ok(out)
}

/// `⟨H ∪ {g}⟩`, grown from the elements of `H` by right multiplication with
/// the generators of `H` and `g`.
fn closure(group: &FiniteGroup, base: &Node, g: usize) -> Node {
    let mut mask = base.mask.clone();
    let mut elements = base.elements.clone();
    let mut gens = base.gens.clone();
    gens.push(g);
    let mut i = 0;
    while i < elements.len() {
        let x = elements[i];
        for &s in &gens {
            let y = group.mul(x, s);
            if !mask.contains(y) {
                mask.insert(y);
                elements.push(y);
            }
        }
        i += 1;
    }
    Node {
        mask,
        elements,
        gens,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::direct_product;

    fn cyclic(n: usize) -> FiniteGroup {
        FiniteGroup::from_fn(n, |a, b| (a + b) % n).unwrap()
    }

    #[test]
    fn trivial_group() {
        let subs = enumerate_subgroups(&cyclic(1)).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].elements(), &[0]);
    }

    #[test]
    fn cyclic_groups_have_tau_subgroups() {
        for n in 1..=60usize {
            let subs = enumerate_subgroups(&cyclic(n)).unwrap();
            let tau = (1..=n).filter(|d| n % d == 0).count();
            assert_eq!(subs.len(), tau, "C{n}");
        }
    }

    #[test]
    fn klein_four() {
        let v = direct_product(&cyclic(2), &cyclic(2)).unwrap();
        let subs = enumerate_subgroups(&v).unwrap();
        assert_eq!(subs.len(), 5);
        let sizes: Vec<usize> = subs.iter().map(Subgroup::order).collect();
        assert_eq!(sizes, vec![1, 2, 2, 2, 4]);
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_subgroups_with_cap(&cyclic(20), 16).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { order: 20, cap: 16 }));
        assert!(err.to_string().contains("16"));
    }

    #[test]
    fn output_is_deterministic() {
        let g = direct_product(&cyclic(4), &cyclic(4)).unwrap();
        let a = enumerate_subgroups(&g).unwrap();
        let b = enumerate_subgroups(&g).unwrap();
        assert_eq!(a, b);
        for s in &a {
            s.check_in(&g).unwrap();
        }
    }
}
