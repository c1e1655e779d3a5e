//! Cliques through 0 in Cayley graphs.
//!
//! Both spectrum search and periodic-complement search reduce to finding a
//! set `C` containing 0 with every nonzero difference in a symmetric
//! connection set. Depth-first search in ascending order returns the
//! lexicographically least such set.

use crate::bitset::BitSet;
use crate::budget::Budget;
use crate::error::Result;
use crate::group::Group;

pub(crate) struct CayleyClique<'a> {
    shifted: Vec<BitSet>,
    budget: &'a mut Budget,
    size: usize,
}

/// Least `C` with `0 in C`, `|C| = size` and `C - C \ {0}` inside `allowed`.
pub(crate) fn cayley_clique(
    group: &Group,
    allowed: &BitSet,
    size: usize,
    budget: &mut Budget,
) -> Result<Option<BitSet>> {
    let n = group.order();
    if size == 0 {
        return Ok(None);
    }
    let mut start = BitSet::new(n);
    start.insert(0);
    if size == 1 {
        return Ok(Some(start));
    }
    if size > n {
        return Ok(None);
    }
    let mut shifted = Vec::with_capacity(n);
    for v in 0..n {
        let mut s = BitSet::new(n);
        for a in allowed.ones() {
            s.insert(group.add(v, a));
        }
        shifted.push(s);
    }
    let mut search = CayleyClique { shifted, budget, size };
    let mut cand = allowed.clone();
    cand.remove(0);
    let mut chosen = vec![0usize];
    if search.extend(&mut chosen, &cand)? {
        Ok(Some(BitSet::from_indices(n, chosen)))
    } else {
        Ok(None)
    }
}

impl CayleyClique<'_> {
    fn extend(&mut self, chosen: &mut Vec<usize>, cand: &BitSet) -> Result<bool> {
        self.budget.tick()?;
        if chosen.len() == self.size {
            return Ok(true);
        }
        if chosen.len() + cand.count() < self.size {
            return Ok(false);
        }
        let order: Vec<usize> = cand.ones().collect();
        for (i, &v) in order.iter().enumerate() {
            if chosen.len() + (order.len() - i) < self.size {
                break;
            }
            let mut next = cand.clone();
            next.intersect_with(&self.shifted[v]);
            for &u in &order[..=i] {
                next.remove(u);
            }
            chosen.push(v);
            if self.extend(chosen, &next)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_subgroup_clique() {
        let g = Group::cyclic(8).unwrap();
        // Differences allowed in {2,4,6}: the clique is {0,2,4,6}.
        let allowed = BitSet::from_indices(8, [2, 4, 6]);
        let c = cayley_clique(&g, &allowed, 4, &mut Budget::unlimited()).unwrap();
        assert_eq!(c.unwrap().ones().collect::<Vec<_>>(), vec![0, 2, 4, 6]);
        let c = cayley_clique(&g, &allowed, 5, &mut Budget::unlimited()).unwrap();
        assert!(c.is_none());
    }

    #[test]
    fn lexicographically_least() {
        let g = Group::cyclic(6).unwrap();
        let allowed = BitSet::from_indices(6, [1, 2, 3, 4, 5]);
        let c = cayley_clique(&g, &allowed, 3, &mut Budget::unlimited()).unwrap();
        assert_eq!(c.unwrap().ones().collect::<Vec<_>>(), vec![0, 1, 2]);
    }
}
