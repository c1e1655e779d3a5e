//! Finite abelian groups presented as products of cyclic factors.
//!
//! Elements are indexed in mixed radix with the last factor varying fastest,
//! so in `Z4xZ2` the index of `(a, b)` is `2a + b`. Every subset, report and
//! enumeration in the crate uses this order.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{abelian_invariant_factors, lcm};
use crate::error::{Error, Result};

/// Default ceiling on group order.
pub const DEFAULT_MAX_ORDER: u64 = 4096;

#[derive(Debug)]
struct GroupData {
    factors: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
    exponent: u64,
}

/// A finite abelian group `Z_{n_1} x ... x Z_{n_s}`.
///
/// Cloning is cheap. Two groups are equal when their factor lists are equal;
/// isomorphic groups with different presentations are different values.
#[derive(Clone)]
pub struct Group(Arc<GroupData>);

impl Group {
    /// Builds a group from cyclic orders with the default order ceiling.
    pub fn new(factors: &[u64]) -> Result<Group> {
        Self::with_max_order(factors, DEFAULT_MAX_ORDER)
    }

    pub fn with_max_order(factors: &[u64], max_order: u64) -> Result<Group> {
        let mut order: u64 = 1;
        let mut exponent: u64 = 1;
        for &n in factors {
            if n < 1 {
                return Err(Error::FactorTooSmall(n));
            }
            order = order.checked_mul(n).ok_or(Error::OrderTooLarge {
                order: u64::MAX,
                max: max_order,
            })?;
            if order > max_order {
                return Err(Error::OrderTooLarge { order, max: max_order });
            }
            exponent = lcm(exponent, n);
        }
        let mut strides = vec![1usize; factors.len()];
        for j in (0..factors.len().saturating_sub(1)).rev() {
            strides[j] = strides[j + 1] * factors[j + 1] as usize;
        }
        Ok(Group(Arc::new(GroupData {
            factors: factors.to_vec(),
            strides,
            order: order as usize,
            exponent,
        })))
    }

    pub fn cyclic(n: u64) -> Result<Group> {
        Self::new(&[n])
    }

    pub fn trivial() -> Group {
        Self::new(&[]).expect("trivial group")
    }

    #[inline]
    pub fn factors(&self) -> &[u64] {
        &self.0.factors
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.0.order
    }

    /// Least common multiple of the factors.
    #[inline]
    pub fn exponent(&self) -> u64 {
        self.0.exponent
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.0.factors.len()
    }

    /// True when the presentation has at most one factor.
    pub fn is_cyclic_presentation(&self) -> bool {
        self.rank() <= 1
    }

    pub fn same(&self, other: &Group) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.factors == other.0.factors
    }

    pub fn ensure_same(&self, other: &Group) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::MixedGroups {
                left: self.to_string(),
                right: other.to_string(),
            })
        }
    }

    pub fn coords(&self, index: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.rank());
        let mut rem = index;
        for (j, &stride) in self.0.strides.iter().enumerate() {
            let c = rem / stride;
            rem %= stride;
            debug_assert!((c as u64) < self.0.factors[j]);
            out.push(c as u64);
        }
        out
    }

    pub fn index_of(&self, coords: &[u64]) -> Result<usize> {
        if coords.len() != self.rank() {
            return Err(Error::ElementOutOfRange(format!(
                "{coords:?} has rank {}, group {} has rank {}",
                coords.len(),
                self,
                self.rank()
            )));
        }
        let mut idx = 0usize;
        for (j, &c) in coords.iter().enumerate() {
            if c >= self.0.factors[j] {
                return Err(Error::ElementOutOfRange(format!("{coords:?} in {self}")));
            }
            idx += c as usize * self.0.strides[j];
        }
        Ok(idx)
    }

    /// Index of the element whose coordinates are `coords` reduced modulo the factors.
    pub fn index_of_reduced(&self, coords: &[i64]) -> usize {
        assert_eq!(coords.len(), self.rank());
        coords
            .iter()
            .zip(self.0.factors.iter().zip(&self.0.strides))
            .map(|(&c, (&n, &s))| c.rem_euclid(n as i64) as usize * s)
            .sum()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        let mut ra = a;
        let mut rb = b;
        let mut out = 0usize;
        for (j, &stride) in self.0.strides.iter().enumerate() {
            let n = self.0.factors[j] as usize;
            let ca = ra / stride;
            let cb = rb / stride;
            ra %= stride;
            rb %= stride;
            let mut c = ca + cb;
            if c >= n {
                c -= n;
            }
            out += c * stride;
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        let mut ra = a;
        let mut out = 0usize;
        for (j, &stride) in self.0.strides.iter().enumerate() {
            let n = self.0.factors[j] as usize;
            let c = ra / stride;
            ra %= stride;
            if c != 0 {
                out += (n - c) * stride;
            }
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k * a`, with negative `k` allowed.
    pub fn scale(&self, a: usize, k: i64) -> usize {
        let mut ra = a;
        let mut out = 0usize;
        for (j, &stride) in self.0.strides.iter().enumerate() {
            let n = self.0.factors[j] as i128;
            let c = (ra / stride) as i128;
            ra %= stride;
            out += ((c * k as i128).rem_euclid(n)) as usize * stride;
        }
        out
    }

    /// Least `k >= 1` with `k * a = 0`.
    pub fn order_of(&self, a: usize) -> u64 {
        self.coords(a)
            .iter()
            .zip(self.factors())
            .fold(1, |acc, (&c, &n)| lcm(acc, n / crate::arith::gcd(c, n)))
    }

    /// The exponent `e` in `[0, N)` with `chi_g(x) = exp(2 pi i e / N)`, `N` the group exponent.
    #[inline]
    pub fn pairing(&self, g: usize, x: usize) -> u64 {
        let big_n = self.0.exponent;
        let mut rg = g;
        let mut rx = x;
        let mut acc: u64 = 0;
        for (j, &stride) in self.0.strides.iter().enumerate() {
            let n = self.0.factors[j];
            let cg = (rg / stride) as u64;
            let cx = (rx / stride) as u64;
            rg %= stride;
            rx %= stride;
            acc = (acc + (big_n / n) * ((cg * cx) % n)) % big_n;
        }
        acc
    }

    pub fn element(&self, index: usize) -> Result<GroupElement> {
        if index >= self.order() {
            return Err(Error::ElementOutOfRange(format!("{index} in {self}")));
        }
        Ok(GroupElement {
            group: self.clone(),
            index,
        })
    }

    pub fn element_at(&self, coords: &[u64]) -> Result<GroupElement> {
        let index = self.index_of(coords)?;
        self.element(index)
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            group: self.clone(),
            index: 0,
        }
    }

    /// Direct product `self x other` with `other`'s factors appended.
    pub fn product(&self, other: &Group) -> Result<Group> {
        let mut f = self.factors().to_vec();
        f.extend_from_slice(other.factors());
        Group::new(&f)
    }

    /// Index in `self x other` of the pair `(a, b)`.
    pub fn pair_index(&self, other: &Group, a: usize, b: usize) -> usize {
        a * other.order() + b
    }

    /// The text spec for this presentation, e.g. `Z4xZ2^3`.
    pub fn spec(&self) -> String {
        self.to_string()
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for Group {}

impl Hash for Group {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.factors.hash(state);
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({self})")
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors = self.factors();
        if factors.is_empty() {
            return write!(f, "Z1");
        }
        let mut first = true;
        let mut i = 0;
        while i < factors.len() {
            let mut j = i;
            while j < factors.len() && factors[j] == factors[i] {
                j += 1;
            }
            if !first {
                write!(f, "x")?;
            }
            first = false;
            if j - i > 1 {
                write!(f, "Z{}^{}", factors[i], j - i)?;
            } else {
                write!(f, "Z{}", factors[i])?;
            }
            i = j;
        }
        Ok(())
    }
}

impl Serialize for Group {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Group {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_group(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses `Z36`, `Z4xZ2^3`, `Z9xZ3` and the like.
pub fn parse_group(spec: &str) -> Result<Group> {
    parse_group_with_max(spec, DEFAULT_MAX_ORDER)
}

pub fn parse_group_with_max(spec: &str, max_order: u64) -> Result<Group> {
    let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Syntax("empty group spec".into()));
    }
    let mut factors = Vec::new();
    for term in compact.split(['x', 'X', '×']) {
        let body = term
            .strip_prefix('Z')
            .ok_or_else(|| Error::Syntax(format!("term {term:?} must start with 'Z'")))?;
        let (base, rep) = match body.split_once('^') {
            Some((b, r)) => (b, Some(r)),
            None => (body, None),
        };
        let n: u64 = parse_number(base, term)?;
        let times = match rep {
            Some(r) => parse_number(r, term)?,
            None => 1,
        };
        if times == 0 {
            return Err(Error::Syntax(format!("repetition count in {term:?} must be positive")));
        }
        if n < 1 {
            return Err(Error::FactorTooSmall(n));
        }
        if times > 64 {
            return Err(Error::Syntax(format!("repetition count in {term:?} is too large")));
        }
        for _ in 0..times {
            factors.push(n);
        }
    }
    Group::with_max_order(&factors, max_order)
}

fn parse_number(s: &str, term: &str) -> Result<u64> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Syntax(format!("expected a number in {term:?}")));
    }
    s.parse()
        .map_err(|_| Error::Syntax(format!("number out of range in {term:?}")))
}

/// An element of a specific group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    group: Group,
    index: usize,
}

/// Everything `element_arith` reports about a pair of elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementArith {
    pub sum: GroupElement,
    pub difference: GroupElement,
    pub negation: GroupElement,
    pub order_of_first: u64,
}

/// Every abelian group of order `n`, in invariant-factor presentation.
/// The trivial group comes out as `Z1`, which round-trips through its spec.
pub fn abelian_groups(n: u64) -> Result<Vec<Group>> {
    abelian_invariant_factors(n)
        .into_iter()
        .map(|f| if f.is_empty() { Group::cyclic(1) } else { Group::new(&f) })
        .collect()
}

impl GroupElement {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn coords(&self) -> Vec<u64> {
        self.group.coords(self.index)
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement> {
        self.group.ensure_same(&other.group)?;
        Ok(self.with_index(self.group.add(self.index, other.index)))
    }

    pub fn sub(&self, other: &GroupElement) -> Result<GroupElement> {
        self.group.ensure_same(&other.group)?;
        Ok(self.with_index(self.group.sub(self.index, other.index)))
    }

    pub fn neg(&self) -> GroupElement {
        self.with_index(self.group.neg(self.index))
    }

    pub fn scale(&self, k: i64) -> GroupElement {
        self.with_index(self.group.scale(self.index, k))
    }

    pub fn order(&self) -> u64 {
        self.group.order_of(self.index)
    }

    /// Exponent of `chi_self(x)` as a power of a primitive `N`-th root of unity.
    pub fn pairing_exponent(&self, x: &GroupElement) -> Result<u64> {
        self.group.ensure_same(&x.group)?;
        Ok(self.group.pairing(self.index, x.index))
    }

    fn with_index(&self, index: usize) -> GroupElement {
        GroupElement {
            group: self.group.clone(),
            index,
        }
    }
}

pub fn element_arith(g: &GroupElement, h: &GroupElement) -> Result<ElementArith> {
    Ok(ElementArith {
        sum: g.add(h)?,
        difference: g.sub(h)?,
        negation: g.neg(),
        order_of_first: g.order(),
    })
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.group.rank() == 1 {
            write!(f, "{}", self.index)
        } else {
            let c = self.coords();
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")
        }
    }
}
