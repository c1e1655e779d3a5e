//! Tiling pairs: verification, periods, complement enumeration and sweeps
//! over every tile of a group.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::divisors;
use crate::bitset::BitSet;
use crate::budget::{Budget, SearchConfig};
use crate::clique::cayley_clique;
use crate::error::{Error, Result};
use crate::fourier::zero_set;
use crate::group::Group;
use crate::quotient::Quotient;
use crate::subgroup::{prime_order_subgroups, subgroup_generated_indices, Subgroup};
use crate::subset::GroupSubset;

/// `{a - a' : a, a' in A}`.
pub fn difference_set(a: &GroupSubset) -> GroupSubset {
    let g = a.group();
    let elems = a.to_vec();
    let mut out = BitSet::new(g.order());
    for &x in &elems {
        for &y in &elems {
            out.insert(g.sub(x, y));
        }
    }
    GroupSubset::from_bits(g, out)
}

/// The three equivalent tiling tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    /// `|O| |T| = |G|` and `(O - O) & (T - T) = {0}`.
    #[default]
    Difference,
    /// `|O| |T| = |G|` and the two Fourier zero-sets cover every nonzero character.
    ZeroSet,
    /// `1_O * 1_T` is identically 1.
    Convolution,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Difference, Route::ZeroSet, Route::Convolution];
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Difference => "difference",
            Route::ZeroSet => "zeroset",
            Route::Convolution => "convolution",
        })
    }
}

impl FromStr for Route {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "difference" | "diff" => Ok(Route::Difference),
            "zeroset" | "zero-set" | "fourier" => Ok(Route::ZeroSet),
            "convolution" | "conv" => Ok(Route::Convolution),
            other => Err(Error::Syntax(format!("unknown route {other:?}"))),
        }
    }
}

pub fn is_tiling_pair(omega: &GroupSubset, t: &GroupSubset, route: Route) -> Result<bool> {
    omega.ensure_same(t)?;
    let g = omega.group();
    let n = g.order();
    match route {
        Route::Difference => {
            if omega.len() * t.len() != n {
                return Ok(false);
            }
            let mut d = difference_set(omega).into_bits();
            d.intersect_with(difference_set(t).bits());
            Ok(d.count() == 1)
        }
        Route::ZeroSet => {
            if omega.len() * t.len() != n || omega.is_empty() {
                return Ok(false);
            }
            let mut z = zero_set(omega).into_subset().into_bits();
            z.union_with(zero_set(t).subset().bits());
            z.insert(0);
            Ok(z.count() == n)
        }
        Route::Convolution => {
            let mut counts = vec![0u32; n];
            for a in omega.iter() {
                for b in t.iter() {
                    counts[g.add(a, b)] += 1;
                }
            }
            Ok(counts.iter().all(|&c| c == 1))
        }
    }
}

/// A verified factorization `G = O + T`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TilingPair {
    omega: GroupSubset,
    t: GroupSubset,
}

impl TilingPair {
    pub fn new(omega: GroupSubset, t: GroupSubset) -> Result<Self> {
        if !is_tiling_pair(&omega, &t, Route::Difference)? {
            return Err(Error::Precondition(format!(
                "{omega} and {t} do not tile {}",
                omega.group()
            )));
        }
        Ok(TilingPair { omega, t })
    }

    pub(crate) fn new_unchecked(omega: GroupSubset, t: GroupSubset) -> Self {
        debug_assert!(is_tiling_pair(&omega, &t, Route::Difference).unwrap_or(false));
        TilingPair { omega, t }
    }

    pub fn group(&self) -> &Group {
        self.omega.group()
    }

    pub fn omega(&self) -> &GroupSubset {
        &self.omega
    }

    pub fn t(&self) -> &GroupSubset {
        &self.t
    }

    /// `0 in O` and `0 in T`.
    pub fn is_normalized(&self) -> bool {
        self.omega.contains(0) && self.t.contains(0)
    }

    pub fn normalized(&self) -> TilingPair {
        TilingPair {
            omega: self.omega.normalized(),
            t: self.t.normalized(),
        }
    }

    pub fn swapped(&self) -> TilingPair {
        TilingPair {
            omega: self.t.clone(),
            t: self.omega.clone(),
        }
    }

    pub fn record(&self) -> PairRecord {
        PairRecord {
            omega: self.omega.to_vec(),
            t: self.t.to_vec(),
        }
    }
}

impl fmt::Debug for TilingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TilingPair({} : {} + {})", self.group(), self.omega, self.t)
    }
}

/// JSON-lines record for a tiling pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub omega: Vec<usize>,
    pub t: Vec<usize>,
}

/// The stabilizer `{g : A + g = A}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodGroup {
    subgroup: Subgroup,
}

impl PeriodGroup {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn elements(&self) -> Vec<usize> {
        self.subgroup.carrier().to_vec()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.subgroup.contains(g)
    }

    pub fn order(&self) -> usize {
        self.subgroup.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.subgroup.is_trivial()
    }
}

fn is_period_of(a: &GroupSubset, g: usize) -> bool {
    let grp = a.group();
    a.iter().all(|x| a.contains(grp.add(x, g)))
}

pub fn periods(a: &GroupSubset) -> PeriodGroup {
    let g = a.group();
    let mut bits = BitSet::new(g.order());
    bits.insert(0);
    if let Some(a0) = a.iter().next() {
        for x in a.iter() {
            let d = g.sub(x, a0);
            if d != 0 && is_period_of(a, d) {
                bits.insert(d);
            }
        }
    }
    let carrier = GroupSubset::from_bits(g, bits);
    PeriodGroup {
        subgroup: Subgroup::from_subset(&carrier).expect("stabilizers are subgroups"),
    }
}

pub fn is_periodic(a: &GroupSubset) -> bool {
    let g = a.group();
    match a.iter().next() {
        Some(a0) => a.iter().any(|x| x != a0 && is_period_of(a, g.sub(x, a0))),
        None => g.order() > 1,
    }
}

/// `{k a : a in A}`.
pub fn dilate(a: &GroupSubset, k: i64) -> GroupSubset {
    a.dilate(k)
}

/// Exact cover of the group by translates of a fixed set.
struct CoverSearch<'a> {
    n: usize,
    words: usize,
    /// `masks[t]` is `O + t` as flat words.
    masks: Vec<u64>,
    omega: Vec<usize>,
    group: &'a Group,
    budget: &'a mut Budget,
    target: usize,
}

impl<'a> CoverSearch<'a> {
    fn new(omega: &'a GroupSubset, budget: &'a mut Budget) -> Self {
        let group = omega.group();
        let n = group.order();
        let words = crate::bitset::word_count(n);
        let elems = omega.to_vec();
        let mut masks = vec![0u64; n * words];
        for t in 0..n {
            for &w in &elems {
                let x = group.add(w, t);
                masks[t * words + x / 64] |= 1u64 << (x % 64);
            }
        }
        CoverSearch {
            n,
            words,
            masks,
            target: n / elems.len().max(1),
            omega: elems,
            group,
            budget,
        }
    }

    #[inline]
    fn mask(&self, t: usize) -> &[u64] {
        &self.masks[t * self.words..(t + 1) * self.words]
    }

    fn disjoint(&self, covered: &[u64], t: usize) -> bool {
        self.mask(t).iter().zip(covered).all(|(a, b)| a & b == 0)
    }

    fn toggle(&self, covered: &mut [u64], t: usize) {
        for (c, m) in covered.iter_mut().zip(self.mask(t)) {
            *c ^= *m;
        }
    }

    fn first_uncovered(&self, covered: &[u64]) -> Option<usize> {
        for (wi, &w) in covered.iter().enumerate() {
            if w != u64::MAX {
                let i = wi * 64 + (!w).trailing_zeros() as usize;
                return (i < self.n).then_some(i);
            }
        }
        None
    }

    /// Runs from an initial set of translates; `visit` sees each completed cover.
    fn run(
        &mut self,
        initial: &[usize],
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        let mut covered = vec![0u64; self.words];
        if !self.n.is_multiple_of(64) {
            // Pad bits above n count as covered.
            let last = self.words - 1;
            covered[last] = !((1u64 << (self.n % 64)) - 1);
        }
        for &t in initial {
            if !self.disjoint(&covered, t) {
                return Ok(ControlFlow::Continue(()));
            }
            self.toggle(&mut covered, t);
        }
        let mut chosen = initial.to_vec();
        self.dfs(&mut covered, &mut chosen, visit)
    }

    fn dfs(
        &mut self,
        covered: &mut [u64],
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        self.budget.tick()?;
        let Some(x) = self.first_uncovered(covered) else {
            debug_assert_eq!(chosen.len(), self.target);
            return Ok(visit(chosen));
        };
        for i in 0..self.omega.len() {
            let t = self.group.sub(x, self.omega[i]);
            if self.disjoint(covered, t) {
                self.toggle(covered, t);
                chosen.push(t);
                let flow = self.dfs(covered, chosen, visit)?;
                chosen.pop();
                self.toggle(covered, t);
                if flow.is_break() {
                    return Ok(flow);
                }
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

fn check_divides(omega: &GroupSubset) -> Result<()> {
    let n = omega.group().order();
    if omega.is_empty() || !n.is_multiple_of(omega.len()) {
        return Err(Error::Precondition(format!(
            "|O| = {} does not divide |G| = {n}",
            omega.len()
        )));
    }
    Ok(())
}

/// Streams every complement `T` of `O` with `0 in T`, in search order.
pub fn for_each_complement(
    omega: &GroupSubset,
    budget: &mut Budget,
    mut f: impl FnMut(&GroupSubset) -> ControlFlow<()>,
) -> Result<ControlFlow<()>> {
    check_divides(omega)?;
    let group = omega.group().clone();
    let mut search = CoverSearch::new(omega, budget);
    search.run(&[0], &mut |ts| {
        let t = GroupSubset::from_indices(&group, ts.iter().copied()).expect("in range");
        f(&t)
    })
}

/// All complements, sorted. With `normalize` only those containing 0.
pub fn enumerate_complements(omega: &GroupSubset, normalize: bool) -> Result<Vec<GroupSubset>> {
    enumerate_complements_with(omega, normalize, &mut Budget::default())
}

pub fn enumerate_complements_with(
    omega: &GroupSubset,
    normalize: bool,
    budget: &mut Budget,
) -> Result<Vec<GroupSubset>> {
    let mut out = Vec::new();
    let _ = for_each_complement(omega, budget, |t| {
        out.push(t.clone());
        ControlFlow::Continue(())
    })?;
    if !normalize {
        let n = omega.group().order();
        let mut all = BTreeSet::new();
        for t in &out {
            for g in 0..n {
                all.insert(t.translate(g));
            }
        }
        out = all.into_iter().collect();
    }
    out.sort();
    Ok(out)
}

pub fn has_complement(omega: &GroupSubset, budget: &mut Budget) -> Result<bool> {
    if omega.is_empty() || !omega.group().order().is_multiple_of(omega.len()) {
        return Ok(false);
    }
    Ok(for_each_complement(omega, budget, |_| ControlFlow::Break(()))?.is_break())
}

/// A set `X` with `0 in X`, `|X| = size`, a nonzero period, and `X - X`
/// avoiding `forbidden`. Prime-order subgroups are tried in ascending order
/// of their least element; the first hit is returned together with it.
pub fn find_periodic_avoiding(
    group: &Group,
    forbidden: &GroupSubset,
    size: usize,
    budget: &mut Budget,
) -> Result<Option<(GroupSubset, Subgroup)>> {
    for k in prime_order_subgroups(group) {
        if let Some(x) = periodic_avoiding_in(&k, forbidden, size, budget)? {
            return Ok(Some((x, k)));
        }
    }
    Ok(None)
}

/// As [`find_periodic_avoiding`] but with the period subgroup `k` fixed.
pub fn periodic_avoiding_in(
    k: &Subgroup,
    forbidden: &GroupSubset,
    size: usize,
    budget: &mut Budget,
) -> Result<Option<GroupSubset>> {
    if !size.is_multiple_of(k.order()) || k.carrier().iter().any(|x| x != 0 && forbidden.contains(x)) {
        return Ok(None);
    }
    let q = Quotient::new(k)?;
    let qg = q.quotient_group();
    let mut allowed = BitSet::full(qg.order());
    for f in forbidden.iter() {
        allowed.remove(q.project(f));
    }
    allowed.remove(0);
    match cayley_clique(qg, &allowed, size / k.order(), budget)? {
        Some(c) => {
            let c = GroupSubset::from_bits(qg, c);
            let x = q.preimage(&c);
            debug_assert_eq!(x.len(), size);
            Ok(Some(x))
        }
        None => Ok(None),
    }
}

fn nonzero_differences<'a>(sets: impl IntoIterator<Item = &'a GroupSubset>, group: &Group) -> GroupSubset {
    let mut f = BitSet::new(group.order());
    for s in sets {
        f.union_with(difference_set(s).bits());
    }
    f.remove(0);
    GroupSubset::from_bits(group, f)
}

/// A periodic complement of `O` containing 0, if one exists.
pub fn find_periodic_complement(omega: &GroupSubset, budget: &mut Budget) -> Result<Option<GroupSubset>> {
    check_divides(omega)?;
    let g = omega.group();
    let f = nonzero_differences([omega], g);
    Ok(find_periodic_avoiding(g, &f, g.order() / omega.len(), budget)?.map(|(x, _)| x))
}

/// A periodic `X` of the given size that tiles with every set in `sets`.
pub fn find_periodic_common_complement(
    sets: &[GroupSubset],
    size: usize,
    budget: &mut Budget,
) -> Result<Option<GroupSubset>> {
    let Some(first) = sets.first() else {
        return Err(Error::Precondition("need at least one set".into()));
    };
    let g = first.group();
    for s in sets {
        first.ensure_same(s)?;
        if s.len() * size != g.order() {
            return Ok(None);
        }
    }
    let f = nonzero_differences(sets, g);
    Ok(find_periodic_avoiding(g, &f, size, budget)?.map(|(x, _)| x))
}

/// A tile up to translation, with all of its complements containing 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TileClass {
    /// Least translate containing 0.
    pub omega: GroupSubset,
    /// Sorted.
    pub complements: Vec<GroupSubset>,
}

impl TileClass {
    /// Every translate of the tile that contains 0.
    pub fn normalized_translates(&self) -> Vec<GroupSubset> {
        let g = self.omega.group();
        let mut v: Vec<GroupSubset> = self.omega.iter().map(|a| self.omega.translate(g.neg(a))).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Options for sweeps over all tiles of a group.
#[derive(Clone, Copy, Debug, Default)]
pub struct SweepOptions {
    pub size_filter: Option<usize>,
}

fn check_exhaustive(group: &Group, config: &SearchConfig) -> Result<()> {
    if group.order() as u64 > config.exhaustive_bound {
        return Err(Error::Precondition(format!(
            "|{group}| = {} exceeds the exhaustive bound {}",
            group.order(),
            config.exhaustive_bound
        )));
    }
    Ok(())
}

/// Visits every tile class of `group` with its complements: small tiles
/// (`|O|^2 <= |G|`) in search order, then large tiles by size and canonical form.
pub fn for_each_tile(
    group: &Group,
    opts: SweepOptions,
    config: &SearchConfig,
    budget: &mut Budget,
    mut f: impl FnMut(&TileClass) -> Result<ControlFlow<()>>,
) -> Result<ControlFlow<()>> {
    check_exhaustive(group, config)?;
    let n = group.order();
    let sizes = divisors(n as u64);
    let mut large: BTreeMap<usize, BTreeSet<GroupSubset>> = BTreeMap::new();
    for &k in &sizes {
        let k = k as usize;
        if k * k > n {
            continue;
        }
        let other = n / k;
        let wanted_small = opts.size_filter.is_none_or(|s| s == k);
        let wanted_large = other != k && opts.size_filter.is_none_or(|s| s == other);
        if !wanted_small && !wanted_large {
            continue;
        }
        let flow = small_tiles(group, k, budget, &mut |omega, budget| {
            let complements = enumerate_complements_with(&omega, true, budget)?;
            if complements.is_empty() {
                return Ok(ControlFlow::Continue(()));
            }
            if wanted_large {
                let bucket = large.entry(other).or_default();
                for t in &complements {
                    bucket.insert(t.canonical_translate());
                }
            }
            if wanted_small {
                return f(&TileClass { omega, complements });
            }
            Ok(ControlFlow::Continue(()))
        })?;
        if flow.is_break() {
            return Ok(flow);
        }
    }
    for (_, bucket) in large {
        for omega in bucket {
            let complements = enumerate_complements_with(&omega, true, budget)?;
            if f(&TileClass { omega, complements })?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
    }
    Ok(ControlFlow::Continue(()))
}

/// Canonical subsets of size `k` containing 0 that tile, in ascending order.
fn small_tiles(
    group: &Group,
    k: usize,
    budget: &mut Budget,
    f: &mut dyn FnMut(GroupSubset, &mut Budget) -> Result<ControlFlow<()>>,
) -> Result<ControlFlow<()>> {
    let n = group.order();
    let mut chosen = vec![0usize];
    fn rec(
        group: &Group,
        n: usize,
        k: usize,
        chosen: &mut Vec<usize>,
        budget: &mut Budget,
        f: &mut dyn FnMut(GroupSubset, &mut Budget) -> Result<ControlFlow<()>>,
    ) -> Result<ControlFlow<()>> {
        budget.tick()?;
        if chosen.len() == k {
            let s = GroupSubset::from_indices(group, chosen.iter().copied()).expect("in range");
            if s.canonical_translate() != s {
                return Ok(ControlFlow::Continue(()));
            }
            return f(s, budget);
        }
        let start = chosen.last().map_or(1, |&l| l + 1);
        let need = k - chosen.len();
        for x in start..=(n - need) {
            chosen.push(x);
            let flow = rec(group, n, k, chosen, budget, f)?;
            chosen.pop();
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
    rec(group, n, k, &mut chosen, budget, f)
}

/// Every tile class, collected.
pub fn enumerate_tile_classes(group: &Group, opts: SweepOptions, config: &SearchConfig) -> Result<Vec<TileClass>> {
    let mut out = Vec::new();
    let mut budget = config.budget();
    let _ = for_each_tile(group, opts, config, &mut budget, |c| {
        out.push(c.clone());
        Ok(ControlFlow::Continue(()))
    })?;
    Ok(out)
}

/// Every normalized tiling pair, sorted by `|O|`, then `O`, then `T`.
pub fn enumerate_tilings(group: &Group, size_filter: Option<usize>, config: &SearchConfig) -> Result<Vec<TilingPair>> {
    let mut out = Vec::new();
    let mut budget = config.budget();
    let _ = for_each_tile(group, SweepOptions { size_filter }, config, &mut budget, |c| {
        for omega in c.normalized_translates() {
            for t in &c.complements {
                out.push(TilingPair::new_unchecked(omega.clone(), t.clone()));
            }
        }
        Ok(ControlFlow::Continue(()))
    })?;
    out.sort_by(|a, b| {
        a.omega
            .len()
            .cmp(&b.omega.len())
            .then_with(|| a.omega.cmp(&b.omega))
            .then_with(|| a.t.cmp(&b.t))
    });
    Ok(out)
}

/// The subgroup generated by `A - A`; a normalized `A` lies in it.
pub fn span_of_differences(a: &GroupSubset) -> Subgroup {
    let g = a.group();
    let gens: Vec<usize> = match a.iter().next() {
        Some(a0) => a.iter().map(|x| g.sub(x, a0)).collect(),
        None => Vec::new(),
    };
    subgroup_generated_indices(g, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group;
    use crate::subset::parse_subset;

    fn set(g: &Group, s: &str) -> GroupSubset {
        parse_subset(g, s).unwrap()
    }

    #[test]
    fn difference_examples() {
        let z8 = Group::cyclic(8).unwrap();
        assert_eq!(
            difference_set(&set(&z8, "{0,1,2,3}")).to_vec(),
            vec![0, 1, 2, 3, 5, 6, 7]
        );
        let z36 = Group::cyclic(36).unwrap();
        let t = set(&z36, "{0,6,12,18,24,30}");
        assert_eq!(difference_set(&t), t);
        let g = parse_group("Z4xZ2").unwrap();
        assert_eq!(
            difference_set(&set(&g, "{(0,0),(1,1)}")).to_string(),
            "{(0,0),(1,1),(3,1)}"
        );
    }

    #[test]
    fn tiling_examples_all_routes() {
        let z4 = Group::cyclic(4).unwrap();
        let z36 = Group::cyclic(36).unwrap();
        let cases = [
            (set(&z4, "{0,1}"), set(&z4, "{0,2}"), true),
            (set(&z36, "{0,4,8,9,13,17}"), set(&z36, "{0,6,12,18,24,30}"), true),
            (set(&z4, "{0,1}"), set(&z4, "{0,1}"), false),
        ];
        for (o, t, want) in cases {
            for r in Route::ALL {
                assert_eq!(is_tiling_pair(&o, &t, r).unwrap(), want, "{o} {t} {r}");
            }
        }
    }

    #[test]
    fn period_examples() {
        let z36 = Group::cyclic(36).unwrap();
        assert_eq!(periods(&set(&z36, "{0,12,15,18,30,33}")).elements(), vec![0, 18]);
        assert_eq!(periods(&set(&z36, "{0,10,12,22,24,34}")).elements(), vec![0, 12, 24]);
        let z8 = Group::cyclic(8).unwrap();
        assert!(periods(&set(&z8, "{0,1,2,3}")).is_trivial());
        assert!(!is_periodic(&set(&z8, "{0,1,2,3}")));
        assert!(is_periodic(&set(&z8, "{0,1,4,5}")));
    }

    #[test]
    fn dilation_examples() {
        let z36 = Group::cyclic(36).unwrap();
        let t = set(&z36, "{0,6,12,18,24,30}");
        assert_eq!(dilate(&t, 5), t);
        let t1 = dilate(&set(&z36, "{0,12,15,18,30,33}"), 5);
        assert_eq!(t1, set(&z36, "{0,24,3,18,6,21}"));
        assert!(is_tiling_pair(&set(&z36, "{0,4,8,9,13,17}"), &t1, Route::Difference).unwrap());
        let z8 = Group::cyclic(8).unwrap();
        assert_eq!(dilate(&set(&z8, "{0,1}"), 3), set(&z8, "{0,3}"));
    }

    #[test]
    fn complement_examples() {
        let z8 = Group::cyclic(8).unwrap();
        let c = enumerate_complements(&set(&z8, "{0,1}"), true).unwrap();
        assert_eq!(c, vec![set(&z8, "{0,2,4,6}")]);
        let c = enumerate_complements(&set(&z8, "{0,1,2,3}"), true).unwrap();
        assert_eq!(c, vec![set(&z8, "{0,4}")]);
        let c = enumerate_complements(&set(&z8, "{0,1,2,3}"), false).unwrap();
        assert_eq!(c.len(), 4);

        let z36 = Group::cyclic(36).unwrap();
        let c = enumerate_complements(&set(&z36, "{0,4,8,9,13,17}"), true).unwrap();
        for t in ["{0,6,12,18,24,30}", "{0,12,15,18,30,33}", "{0,10,12,22,24,34}"] {
            assert!(c.contains(&set(&z36, t)), "{t}");
        }
        assert!(enumerate_complements(&set(&z36, "{0,1,2,3,4}"), true).is_err());
    }

    #[test]
    fn z4_tilings() {
        let z4 = Group::cyclic(4).unwrap();
        let pairs = enumerate_tilings(&z4, None, &SearchConfig::default()).unwrap();
        let got: Vec<(String, String)> = pairs
            .iter()
            .map(|p| (p.omega().to_string(), p.t().to_string()))
            .collect();
        let want = [
            ("{0}", "{0,1,2,3}"),
            ("{0,1}", "{0,2}"),
            ("{0,2}", "{0,1}"),
            ("{0,2}", "{0,3}"),
            ("{0,3}", "{0,2}"),
            ("{0,1,2,3}", "{0}"),
        ];
        assert_eq!(got, want.map(|(a, b)| (a.to_string(), b.to_string())));
    }

    #[test]
    fn periodic_complement_search() {
        let z8 = Group::cyclic(8).unwrap();
        let mut b = Budget::unlimited();
        let t = find_periodic_complement(&set(&z8, "{0,1,2,3}"), &mut b)
            .unwrap()
            .unwrap();
        assert_eq!(t, set(&z8, "{0,4}"));
        let z36 = Group::cyclic(36).unwrap();
        let t1 = set(&z36, "{0,12,15,18,30,33}");
        let t2 = set(&z36, "{0,10,12,22,24,34}");
        assert!(find_periodic_common_complement(&[t1, t2], 6, &mut b).unwrap().is_none());
    }

    #[test]
    fn exhaustive_bound_enforced() {
        let g = Group::cyclic(41).unwrap();
        assert!(enumerate_tilings(&g, None, &SearchConfig::default()).is_err());
    }
}
