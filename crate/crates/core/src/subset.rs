//! Subsets of a group as bit vectors over element indices.

use std::cmp::Ordering;
use std::fmt;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupSubset {
    group: Group,
    bits: BitSet,
}

impl GroupSubset {
    pub fn empty(group: &Group) -> Self {
        GroupSubset {
            group: group.clone(),
            bits: BitSet::new(group.order()),
        }
    }

    pub fn full(group: &Group) -> Self {
        GroupSubset {
            group: group.clone(),
            bits: BitSet::full(group.order()),
        }
    }

    pub fn zero(group: &Group) -> Self {
        let mut s = Self::empty(group);
        s.bits.insert(0);
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(group: &Group, indices: I) -> Result<Self> {
        let mut s = Self::empty(group);
        for i in indices {
            if i >= group.order() {
                return Err(Error::ElementOutOfRange(format!("{i} in {group}")));
            }
            s.bits.insert(i);
        }
        Ok(s)
    }

    pub fn from_coords<'a, I: IntoIterator<Item = &'a [u64]>>(group: &Group, coords: I) -> Result<Self> {
        let mut s = Self::empty(group);
        for c in coords {
            s.bits.insert(group.index_of(c)?);
        }
        Ok(s)
    }

    pub fn from_bits(group: &Group, bits: BitSet) -> Self {
        assert_eq!(bits.len(), group.order(), "bit length must match group order");
        GroupSubset {
            group: group.clone(),
            bits,
        }
    }

    pub fn from_elements(group: &Group, elems: &[GroupElement]) -> Result<Self> {
        let mut s = Self::empty(group);
        for e in elems {
            group.ensure_same(e.group())?;
            s.bits.insert(e.index());
        }
        Ok(s)
    }

    #[inline]
    pub fn group(&self) -> &Group {
        &self.group
    }

    #[inline]
    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn into_bits(self) -> BitSet {
        self.bits
    }

    /// Cardinality.
    #[inline]
    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.bits.insert(i);
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.iter()
            .map(|i| self.group.element(i).expect("index in range"))
            .collect()
    }

    pub fn ensure_same(&self, other: &GroupSubset) -> Result<()> {
        self.group.ensure_same(&other.group)
    }

    pub fn translate(&self, g: usize) -> GroupSubset {
        if g == 0 {
            return self.clone();
        }
        let mut out = BitSet::new(self.group.order());
        for a in self.bits.ones() {
            out.insert(self.group.add(a, g));
        }
        GroupSubset::from_bits(&self.group, out)
    }

    /// `{-a : a in A}`.
    pub fn negate(&self) -> GroupSubset {
        let mut out = BitSet::new(self.group.order());
        for a in self.bits.ones() {
            out.insert(self.group.neg(a));
        }
        GroupSubset::from_bits(&self.group, out)
    }

    /// `{k a : a in A}` as a set.
    pub fn dilate(&self, k: i64) -> GroupSubset {
        let mut out = BitSet::new(self.group.order());
        for a in self.bits.ones() {
            out.insert(self.group.scale(a, k));
        }
        GroupSubset::from_bits(&self.group, out)
    }

    /// Translate so that the least element moves to 0.
    pub fn normalized(&self) -> GroupSubset {
        match self.bits.first() {
            Some(m) if m != 0 => self.translate(self.group.neg(m)),
            _ => self.clone(),
        }
    }

    /// The least set among the translates `A - a`, `a in A`.
    pub fn canonical_translate(&self) -> GroupSubset {
        let mut best: Option<GroupSubset> = None;
        for a in self.bits.ones() {
            let t = self.translate(self.group.neg(a));
            if best.as_ref().is_none_or(|b| t < *b) {
                best = Some(t);
            }
        }
        best.unwrap_or_else(|| self.clone())
    }

    /// Minkowski sum `A + B` as a set.
    pub fn sumset(&self, other: &GroupSubset) -> Result<GroupSubset> {
        self.ensure_same(other)?;
        let mut out = BitSet::new(self.group.order());
        for a in self.bits.ones() {
            for b in other.bits.ones() {
                out.insert(self.group.add(a, b));
            }
        }
        Ok(GroupSubset::from_bits(&self.group, out))
    }

    /// `A + B` when every sum is distinct, `None` otherwise.
    pub fn direct_sum(&self, other: &GroupSubset) -> Result<Option<GroupSubset>> {
        self.ensure_same(other)?;
        let mut out = BitSet::new(self.group.order());
        for a in self.bits.ones() {
            for b in other.bits.ones() {
                let s = self.group.add(a, b);
                if out.contains(s) {
                    return Ok(None);
                }
                out.insert(s);
            }
        }
        Ok(Some(GroupSubset::from_bits(&self.group, out)))
    }

    pub fn union(&self, other: &GroupSubset) -> Result<GroupSubset> {
        self.ensure_same(other)?;
        let mut b = self.bits.clone();
        b.union_with(&other.bits);
        Ok(GroupSubset::from_bits(&self.group, b))
    }

    pub fn intersection(&self, other: &GroupSubset) -> Result<GroupSubset> {
        self.ensure_same(other)?;
        let mut b = self.bits.clone();
        b.intersect_with(&other.bits);
        Ok(GroupSubset::from_bits(&self.group, b))
    }

    pub fn difference(&self, other: &GroupSubset) -> Result<GroupSubset> {
        self.ensure_same(other)?;
        let mut b = self.bits.clone();
        b.difference_with(&other.bits);
        Ok(GroupSubset::from_bits(&self.group, b))
    }

    pub fn complement(&self) -> GroupSubset {
        GroupSubset::from_bits(&self.group, self.bits.complement())
    }

    pub fn is_subset(&self, other: &GroupSubset) -> bool {
        self.group.same(&other.group) && self.bits.is_subset(&other.bits)
    }

    /// Literal text in index form for cyclic presentations, tuple form otherwise.
    pub fn literal(&self) -> String {
        self.to_string()
    }
}

impl Ord for GroupSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits.cmp(&other.bits)
    }
}

impl PartialOrd for GroupSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            if self.group.rank() == 1 {
                write!(f, "{i}")?;
            } else {
                let c = self.group.coords(i);
                write!(f, "(")?;
                for (j, x) in c.iter().enumerate() {
                    if j > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")?;
            }
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.group, self)
    }
}

/// Parses an element literal: an index `7` or a tuple `(1,2)`.
pub fn parse_element(group: &Group, text: &str) -> Result<GroupElement> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix('(') {
        let inner = inner
            .strip_suffix(')')
            .ok_or_else(|| Error::Syntax(format!("unbalanced tuple {t:?}")))?;
        let coords = inner
            .split(',')
            .map(|c| {
                let c = c.trim();
                c.parse::<u64>()
                    .map_err(|_| Error::Syntax(format!("bad coordinate {c:?} in {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        group.element_at(&coords)
    } else {
        let i: usize = t
            .parse()
            .map_err(|_| Error::Syntax(format!("bad element literal {t:?}")))?;
        group.element(i)
    }
}

/// Parses `{0,4,8}` or `{(0,0),(1,2)}`.
pub fn parse_subset(group: &Group, text: &str) -> Result<GroupSubset> {
    let t = text.trim();
    let inner = t
        .strip_prefix('{')
        .and_then(|s| s.strip_suffix('}'))
        .ok_or_else(|| Error::Syntax(format!("subset literal must be braced: {t:?}")))?;
    let mut out = GroupSubset::empty(group);
    for item in split_top_level(inner)? {
        let e = parse_element(group, &item)?;
        out.insert(e.index());
    }
    Ok(out)
}

fn split_top_level(s: &str) -> Result<Vec<String>> {
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Syntax(format!("unbalanced parentheses in {s:?}")));
                }
                cur.push(ch);
            }
            ',' if depth == 0 => items.push(std::mem::take(&mut cur)),
            c if c.is_whitespace() => {}
            c => cur.push(c),
        }
    }
    if depth != 0 {
        return Err(Error::Syntax(format!("unbalanced parentheses in {s:?}")));
    }
    if !cur.is_empty() || !items.is_empty() {
        items.push(cur);
    }
    if items.iter().any(|i| i.is_empty()) {
        return Err(Error::Syntax(format!("empty element in {s:?}")));
    }
    Ok(items)
}
