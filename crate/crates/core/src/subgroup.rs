//! Subgroups, closures and subgroup lattices.

use std::collections::{HashSet, VecDeque};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::subset::GroupSubset;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    carrier: GroupSubset,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn trivial(group: &Group) -> Self {
        Subgroup {
            carrier: GroupSubset::zero(group),
            generators: Vec::new(),
        }
    }

    pub fn whole(group: &Group) -> Self {
        let gens = (0..group.rank())
            .map(|j| {
                let mut c = vec![0u64; group.rank()];
                c[j] = 1 % group.factors()[j];
                group.index_of(&c).expect("unit vector")
            })
            .filter(|&g| g != 0)
            .collect();
        Subgroup {
            carrier: GroupSubset::full(group),
            generators: gens,
        }
    }

    /// Verifies closure of `set` and wraps it.
    pub fn from_subset(set: &GroupSubset) -> Result<Self> {
        if !is_subgroup(set) {
            return Err(Error::NotSubgroup);
        }
        let gens = reduce_generators(set.group(), set.iter());
        Ok(Subgroup {
            carrier: set.clone(),
            generators: gens,
        })
    }

    pub fn group(&self) -> &Group {
        self.carrier.group()
    }

    pub fn carrier(&self) -> &GroupSubset {
        &self.carrier
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn generator_elements(&self) -> Vec<GroupElement> {
        self.generators
            .iter()
            .map(|&g| self.group().element(g).expect("in range"))
            .collect()
    }

    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    pub fn index(&self) -> usize {
        self.group().order() / self.order()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.carrier.contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.group().order()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.carrier.is_subset(&other.carrier)
    }

    /// Least nonzero element, if any.
    pub fn least_nonzero(&self) -> Option<usize> {
        self.carrier.iter().find(|&g| g != 0)
    }

    /// `<self, extra>`.
    pub fn join(&self, extra: &[usize]) -> Subgroup {
        let mut gens = self.generators.clone();
        gens.extend_from_slice(extra);
        subgroup_generated_indices(self.group(), &gens)
    }

    /// `{g : <g, k> = 0 for all k in self}`, the characters trivial on `self`.
    pub fn annihilator(&self) -> Subgroup {
        let g = self.group();
        let members = (0..g.order()).filter(|&x| self.generators.iter().all(|&k| g.pairing(x, k) == 0));
        let set = GroupSubset::from_indices(g, members).expect("in range");
        Subgroup::from_subset(&set).expect("annihilators are subgroups")
    }
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup{:?}", self.carrier)
    }
}

pub fn is_subgroup(set: &GroupSubset) -> bool {
    let g = set.group();
    if !set.contains(0) {
        return false;
    }
    let elems = set.to_vec();
    elems.iter().all(|&a| elems.iter().all(|&b| set.contains(g.sub(a, b))))
}

/// Smallest subgroup containing `gens`, by breadth-first saturation.
pub fn subgroup_generated(group: &Group, gens: &[GroupElement]) -> Result<Subgroup> {
    let mut idx = Vec::with_capacity(gens.len());
    for e in gens {
        group.ensure_same(e.group())?;
        idx.push(e.index());
    }
    Ok(subgroup_generated_indices(group, &idx))
}

pub fn subgroup_generated_indices(group: &Group, gens: &[usize]) -> Subgroup {
    let mut bits = BitSet::new(group.order());
    bits.insert(0);
    let mut queue = VecDeque::from([0usize]);
    let steps: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
    while let Some(x) = queue.pop_front() {
        for &g in &steps {
            let y = group.add(x, g);
            if !bits.contains(y) {
                bits.insert(y);
                queue.push_back(y);
            }
        }
    }
    let carrier = GroupSubset::from_bits(group, bits);
    Subgroup {
        generators: reduce_generators(group, steps.into_iter()),
        carrier,
    }
}

/// Drops generators already in the span of the earlier ones.
fn reduce_generators(group: &Group, gens: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut span = BitSet::new(group.order());
    span.insert(0);
    let mut kept = Vec::new();
    for g in gens {
        if span.contains(g) {
            continue;
        }
        kept.push(g);
        let members: Vec<usize> = span.ones().collect();
        let mut m = g;
        while !span.contains(m) {
            for &s in &members {
                span.insert(group.add(s, m));
            }
            m = group.add(m, g);
        }
    }
    kept
}

/// Every subgroup of `group`, ordered by size and then lexicographically.
pub fn all_subgroups(group: &Group) -> Vec<Subgroup> {
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut out = vec![Subgroup::trivial(group)];
    seen.insert(out[0].carrier.bits().clone());
    let mut frontier = 0;
    while frontier < out.len() {
        let s = out[frontier].clone();
        frontier += 1;
        for g in 0..group.order() {
            if s.contains(g) {
                continue;
            }
            let t = s.join(&[g]);
            if seen.insert(t.carrier.bits().clone()) {
                out.push(t);
            }
        }
    }
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.carrier.cmp(&b.carrier)));
    out
}

/// Subgroups `<g>` with `g` of prime order, one per subgroup, ascending by least generator.
pub fn prime_order_subgroups(group: &Group) -> Vec<Subgroup> {
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut out = Vec::new();
    for g in 1..group.order() {
        if crate::arith::is_prime(group.order_of(g)) {
            let s = subgroup_generated_indices(group, &[g]);
            if seen.insert(s.carrier.bits().clone()) {
                out.push(s);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group;

    #[test]
    fn closures() {
        let z36 = parse_group("Z36").unwrap();
        let s = subgroup_generated(&z36, &[z36.element(12).unwrap()]).unwrap();
        assert_eq!(s.carrier().to_vec(), vec![0, 12, 24]);

        let z33 = parse_group("Z3^2").unwrap();
        let s = subgroup_generated(
            &z33,
            &[z33.element_at(&[1, 0]).unwrap(), z33.element_at(&[0, 1]).unwrap()],
        )
        .unwrap();
        assert_eq!(s.order(), 9);

        let z8 = parse_group("Z8").unwrap();
        let s = subgroup_generated(&z8, &[z8.zero()]).unwrap();
        assert_eq!(s.carrier().to_vec(), vec![0]);
    }

    #[test]
    fn idempotent_generation() {
        let g = parse_group("Z4xZ2^2").unwrap();
        for s in all_subgroups(&g) {
            let again = subgroup_generated(&g, &s.carrier().elements()).unwrap();
            assert_eq!(again.carrier(), s.carrier());
            let from_gens = subgroup_generated_indices(&g, s.generators());
            assert_eq!(from_gens.carrier(), s.carrier());
        }
    }

    #[test]
    fn subgroup_counts() {
        // Z8 has 4 subgroups, Z2^2 has 5, Z2^3 has 16, Z3^2 has 6.
        for (spec, n) in [("Z8", 4), ("Z2^2", 5), ("Z2^3", 16), ("Z3^2", 6), ("Z12", 6)] {
            assert_eq!(all_subgroups(&parse_group(spec).unwrap()).len(), n, "{spec}");
        }
    }

    #[test]
    fn annihilator_orders() {
        let g = parse_group("Z4xZ2").unwrap();
        for s in all_subgroups(&g) {
            assert_eq!(s.annihilator().order() * s.order(), g.order());
        }
    }
}
