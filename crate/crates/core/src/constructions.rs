//! Explicit tilings: extension lemmas, counterexample witnesses, ascending
//! chain decompositions and subgroup complements in elementary p-groups.
//!
//! Every builder returns a [`ConstructionReport`] whose claims are checked
//! with the tiling engine rather than taken from the construction.

use std::collections::{BTreeMap, HashMap};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_prime, prime_power};
use crate::budget::{Budget, SearchConfig};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::properties::Certificate;
use crate::quotient::Quotient;
use crate::subgroup::{all_subgroups, subgroup_generated_indices, Subgroup};
use crate::subset::GroupSubset;
use crate::tiling::{
    difference_set, find_periodic_common_complement, for_each_complement, is_periodic, is_tiling_pair,
    periodic_avoiding_in, periods, Route, TilingPair,
};

/// `{phi(b) + b : b in B}`, with `phi` given as a map `B -> A`.
pub fn circ(a: &GroupSubset, b: &GroupSubset, phi: &BTreeMap<usize, usize>) -> Result<GroupSubset> {
    a.ensure_same(b)?;
    if !a.contains(0) || !b.contains(0) {
        return Err(Error::Precondition("both operands must contain 0".into()));
    }
    if phi.get(&0).copied().unwrap_or(0) != 0 {
        return Err(Error::Precondition("phi(0) must be 0".into()));
    }
    let g = a.group();
    let mut out = GroupSubset::empty(g);
    for x in b.iter() {
        let y = phi.get(&x).copied().unwrap_or(0);
        if !a.contains(y) {
            return Err(Error::Precondition(format!("phi({x}) = {y} is not in A")));
        }
        out.insert(g.add(x, y));
    }
    Ok(out)
}

/// A tiling pair produced by one of the extension lemmas.
#[derive(Clone, Debug)]
pub struct Extension {
    pub pair: TilingPair,
    /// Periodicity of the input tile in its own group.
    pub input_periodic: bool,
    pub output_periodic: bool,
}

/// Extends a tiling pair of `H` to `H x S` by adding a graph
/// `K = {(h_s, s)}` over `S`; `k` lists `(h_s, s)` as index pairs.
pub fn extend_tile_product(
    omega: &GroupSubset,
    t: &GroupSubset,
    s_group: &Group,
    k: &[(usize, usize)],
) -> Result<Extension> {
    let h_group = omega.group();
    if !is_tiling_pair(omega, t, Route::Convolution)? {
        return Err(Error::Precondition(format!("{omega} and {t} do not tile {h_group}")));
    }
    let mut seen = vec![None; s_group.order()];
    for &(h, s) in k {
        if h >= h_group.order() || s >= s_group.order() {
            return Err(Error::ElementOutOfRange(format!("({h},{s})")));
        }
        if seen[s].replace(h).is_some() {
            return Err(Error::Precondition(format!("K has two points over s = {s}")));
        }
    }
    if seen.iter().any(Option::is_none) {
        return Err(Error::Precondition("K must have one point over every s".into()));
    }
    if seen[0] != Some(0) {
        return Err(Error::Precondition("K must contain (0,0)".into()));
    }
    let g = h_group.product(s_group)?;
    let embed = |set: &GroupSubset| {
        GroupSubset::from_indices(&g, set.iter().map(|x| h_group.pair_index(s_group, x, 0))).expect("in range")
    };
    let kset = GroupSubset::from_indices(&g, k.iter().map(|&(h, s)| h_group.pair_index(s_group, h, s)))?;
    let big = embed(omega).sumset(&kset)?;
    let pair = TilingPair::new(big, embed(t)).map_err(|e| Error::Internal(format!("product extension: {e}")))?;
    Ok(Extension {
        input_periodic: is_periodic(omega),
        output_periodic: is_periodic(pair.omega()),
        pair,
    })
}

/// Extends a tiling pair of `S x Z_{p^n}` to `S x Z_{p^(n+1)}` through the
/// embedding `(s, j) -> (s, pj)` and `K = {(0, i) + h : 0 <= i < p}`.
pub fn extend_tile_cyclic(omega: &GroupSubset, t: &GroupSubset, h: usize) -> Result<Extension> {
    let src = omega.group();
    if !is_tiling_pair(omega, t, Route::Convolution)? {
        return Err(Error::Precondition(format!("{omega} and {t} do not tile {src}")));
    }
    let last = *src
        .factors()
        .last()
        .ok_or_else(|| Error::Precondition("group has no cyclic factor to extend".into()))?;
    let (p, _) = prime_power(last).ok_or(Error::NotPrimePower(last))?;
    if h >= src.order() {
        return Err(Error::ElementOutOfRange(h.to_string()));
    }
    let mut factors = src.factors().to_vec();
    *factors.last_mut().expect("nonempty") *= p;
    let g = Group::new(&factors)?;
    let embed_elem = |x: usize| {
        let mut c = src.coords(x);
        *c.last_mut().expect("nonempty") *= p;
        g.index_of(&c).expect("in range")
    };
    let embed = |set: &GroupSubset| GroupSubset::from_indices(&g, set.iter().map(embed_elem)).expect("in range");
    let hh = embed_elem(h);
    let step = g.index_of_reduced(&{
        let mut c = vec![0i64; factors.len()];
        *c.last_mut().expect("nonempty") = 1;
        c
    });
    let kset = GroupSubset::from_indices(&g, (0..p as i64).map(|i| g.add(g.scale(step, i), hh)))?;
    let big = embed(omega).sumset(&kset)?;
    let pair = TilingPair::new(big, embed(t)).map_err(|e| Error::Internal(format!("cyclic extension: {e}")))?;
    Ok(Extension {
        input_periodic: is_periodic(omega),
        output_periodic: is_periodic(pair.omega()),
        pair,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub claim: String,
    /// `None` when the check ran out of budget or was skipped.
    pub holds: Option<bool>,
    pub method: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub name: String,
    pub group: Group,
    pub parameters: BTreeMap<String, u64>,
    pub sets: BTreeMap<String, Vec<usize>>,
    pub claims: Vec<Claim>,
    pub notes: Vec<String>,
}

impl ConstructionReport {
    fn new(name: &str, group: &Group, parameters: &[(&str, u64)]) -> Self {
        ConstructionReport {
            name: name.to_string(),
            group: group.clone(),
            parameters: parameters.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            sets: BTreeMap::new(),
            claims: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn add_set(&mut self, name: &str, s: &GroupSubset) {
        self.sets.insert(name.to_string(), s.to_vec());
    }

    fn claim(&mut self, claim: impl Into<String>, holds: Option<bool>, method: &str) {
        self.claims.push(Claim {
            claim: claim.into(),
            holds,
            method: method.to_string(),
        });
    }

    pub fn set(&self, name: &str) -> Option<GroupSubset> {
        self.sets
            .get(name)
            .map(|v| GroupSubset::from_indices(&self.group, v.iter().copied()).expect("stored in range"))
    }

    /// Every claim was checked and holds.
    pub fn verified(&self) -> bool {
        self.claims.iter().all(|c| c.holds == Some(true))
    }

    /// Some claim was checked and is false.
    pub fn refuted(&self) -> bool {
        self.claims.iter().any(|c| c.holds == Some(false))
    }

    /// For witnesses of UPT failure: the tile with its listed complements.
    pub fn upt_certificate(&self) -> Option<Certificate> {
        let omega = self.sets.get("Omega")?.clone();
        let complements: Vec<Vec<usize>> = ["T0", "T1", "T2"]
            .iter()
            .filter_map(|k| self.sets.get(*k).cloned())
            .collect();
        (complements.len() >= 2).then(|| Certificate::Counterexample {
            omega,
            complements,
            reason: format!("{} witness", self.name),
        })
    }
}

fn multiples(g: &Group, gen: usize, count: u64) -> GroupSubset {
    GroupSubset::from_indices(g, (0..count as i64).map(|i| g.scale(gen, i))).expect("in range")
}

fn sum(a: &GroupSubset, b: &GroupSubset) -> GroupSubset {
    a.sumset(b).expect("same group")
}

fn union(a: &GroupSubset, b: &GroupSubset) -> GroupSubset {
    a.union(b).expect("same group")
}

fn generated(g: &Group, gens: &[usize]) -> GroupSubset {
    subgroup_generated_indices(g, gens).carrier().clone()
}

fn tiles(a: &GroupSubset, b: &GroupSubset) -> Option<bool> {
    Some(is_tiling_pair(a, b, Route::Convolution).unwrap_or(false))
}

fn no_common_period(sets: &[&GroupSubset]) -> bool {
    let g = sets[0].group();
    (1..g.order()).all(|x| sets.iter().any(|s| !periods(s).contains(x)))
}

/// Exact-cover check that no periodic set tiles with every set in `sets`:
/// enumerates the complements of the first one and tests the rest.
fn no_periodic_common_complement_exact(sets: &[&GroupSubset], budget: &mut Budget) -> Option<bool> {
    let mut found = false;
    let res = for_each_complement(sets[0], budget, |x| {
        if is_periodic(x)
            && sets[1..]
                .iter()
                .all(|s| is_tiling_pair(x, s, Route::Convolution).unwrap_or(false))
        {
            found = true;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    match res {
        Ok(_) => Some(!found),
        Err(_) => None,
    }
}

fn no_periodic_common_complement_clique(sets: &[&GroupSubset], budget: &mut Budget) -> Option<bool> {
    let owned: Vec<GroupSubset> = sets.iter().map(|s| (*s).clone()).collect();
    let size = sets[0].group().order() / sets[0].len();
    find_periodic_common_complement(&owned, size, budget)
        .ok()
        .map(|x| x.is_none())
}

fn require_primes(pairs: &[(&str, u64)]) -> Result<()> {
    for &(name, v) in pairs {
        if !is_prime(v) {
            return Err(Error::Precondition(format!("{name} = {v} is not prime")));
        }
    }
    Ok(())
}

fn checked_group(factors: &[u64]) -> Result<Group> {
    let mut order: u64 = 1;
    for &f in factors {
        order = order.checked_mul(f).ok_or(Error::Overflow("group order"))?;
    }
    Group::new(factors)
}

fn checked_pow(base: u64, e: u32) -> Result<u64> {
    base.checked_pow(e).ok_or(Error::Overflow("prime power"))
}

fn record_replacement_checks(
    report: &mut ConstructionReport,
    label: &str,
    sets: &[&GroupSubset],
    config: &SearchConfig,
) {
    let mut b = config.budget();
    let r = no_periodic_common_complement_exact(sets, &mut b);
    report.claim(label, r, "exact cover");
    let mut b = config.budget();
    let r = no_periodic_common_complement_clique(sets, &mut b);
    report.claim(label, r, "periodic clique search");
}

fn require_odd(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::Precondition("this construction needs an odd prime p".into()));
    }
    Ok(())
}

/// Witness that `Z_{p^2 q^2}` lacks the UPT property.
pub fn build_p2q2_witness(p: u64, q: u64, config: &SearchConfig) -> Result<ConstructionReport> {
    require_primes(&[("p", p), ("q", q)])?;
    if p == q {
        return Err(Error::Precondition("p and q must be distinct".into()));
    }
    let n = checked_pow(p, 2)? * checked_pow(q, 2)?;
    let g = checked_group(&[n])?;
    let a = (q * q) as usize;
    let b = (p * p) as usize;
    let pa = g.scale(a, p as i64);
    let qb = g.scale(b, q as i64);
    let big_a = multiples(&g, a, p);
    let big_b = multiples(&g, b, q);
    let omega = sum(&big_a, &big_b);
    let t = sum(&multiples(&g, pa, p), &multiples(&g, qb, q));
    let m1 = multiples(&g, pa, p);
    let mut n1 = multiples(&g, qb, q - 1);
    n1.insert(g.add(g.scale(qb, q as i64 - 1), a));
    let t1 = sum(&m1, &n1);
    let mut m2 = multiples(&g, pa, p - 1);
    m2.insert(g.add(g.scale(pa, p as i64 - 1), b));
    let n2 = multiples(&g, qb, q);
    let t2 = sum(&m2, &n2);

    let mut report = ConstructionReport::new("p2q2", &g, &[("p", p), ("q", q), ("a", a as u64), ("b", b as u64)]);
    for (k, s) in [("Omega", &omega), ("T", &t), ("T1", &t1), ("T2", &t2)] {
        report.add_set(k, s);
    }
    report
        .notes
        .push("M2 uses the replacement reading {i*pa : i < p-1} + {(p-1)pa + b}, matching N1".into());
    let mut literal = multiples(&g, pa, p);
    literal.insert(g.add(g.scale(pa, p as i64 - 1), b));
    report.notes.push(format!(
        "literal M2 has {} elements; its T2 tiles with Omega: {}",
        literal.len(),
        is_tiling_pair(&omega, &sum(&literal, &n2), Route::Convolution).unwrap_or(false)
    ));
    report.claim("Omega + T = G", tiles(&omega, &t), "convolution");
    report.claim("Omega + T1 = G", tiles(&omega, &t1), "convolution");
    report.claim("Omega + T2 = G", tiles(&omega, &t2), "convolution");
    report.claim("T1 != T2", Some(t1 != t2), "direct");
    report.claim(
        "periods(T1) and periods(T2) meet only in 0",
        Some(no_common_period(&[&t1, &t2])),
        "stabilizer scan",
    );
    record_replacement_checks(
        &mut report,
        "no periodic set tiles with both T1 and T2",
        &[&t1, &t2],
        config,
    );
    Ok(report)
}

/// Witness that `Z_{p^2} x Z_{p^2}` lacks the UPT property.
pub fn build_p2p2_witness(p: u64, config: &SearchConfig) -> Result<ConstructionReport> {
    require_primes(&[("p", p)])?;
    let pp = checked_pow(p, 2)?;
    let g = checked_group(&[pp, pp])?;
    let el = |x: u64, y: u64| g.index_of(&[x % pp, y % pp]).expect("in range");
    let omega = GroupSubset::from_indices(
        &g,
        (0..p)
            .flat_map(|i| (0..p).map(move |k| (i, i * p + k)))
            .map(|(x, y)| el(x, y)),
    )?;
    let t0 = sum(
        &generated(&g, &[el(0, p)]),
        &GroupSubset::from_indices(&g, (0..p).map(|i| el(i * p, i)))?,
    );
    let t1 = generated(&g, &[el(0, p), el(p, 0)]);
    let t2 = sum(
        &generated(&g, &[el(p, 0)]),
        &GroupSubset::from_indices(&g, (0..p).map(|i| el(i, 0)))?,
    );
    let mut report = ConstructionReport::new("p2p2", &g, &[("p", p)]);
    for (k, s) in [("Omega", &omega), ("T0", &t0), ("T1", &t1), ("T2", &t2)] {
        report.add_set(k, s);
    }
    for (k, s) in [("T0", &t0), ("T1", &t1), ("T2", &t2)] {
        report.claim(format!("Omega + {k} = G"), tiles(&omega, s), "convolution");
    }
    report.claim(
        "T0, T1, T2 share no nonzero period",
        Some(no_common_period(&[&t0, &t1, &t2])),
        "stabilizer scan",
    );
    record_replacement_checks(
        &mut report,
        "no periodic set tiles with T0, T1 and T2",
        &[&t0, &t1, &t2],
        config,
    );
    Ok(report)
}

/// The cyclic `Z_{p^3 q^2}` sets; `literal` follows the printed index ranges.
fn p3q2_sets(g: &Group, p: u64, q: u64, literal: bool) -> (GroupSubset, GroupSubset) {
    let a = (q * q) as usize;
    let b = (p * p * p) as usize;
    let pa = g.scale(a, p as i64);
    let ppa = g.scale(a, (p * p) as i64);
    let qb = g.scale(b, q as i64);
    let r = if literal { p } else { q };
    let big_a = multiples(g, pa, p);
    let big_b = multiples(g, b, r);
    let omega = sum(&big_a, &big_b);
    let m = multiples(g, ppa, p);
    let mut m1 = multiples(g, ppa, p - 1);
    m1.insert(g.add(g.scale(ppa, p as i64 - 1), b));
    let n = multiples(g, qb, r);
    let mut n1 = multiples(g, qb, r - 1);
    n1.insert(g.add(g.scale(qb, q as i64 - 1), pa));
    let d1 = if literal {
        multiples(g, a, p)
    } else {
        GroupSubset::from_indices(g, (1..p as i64).map(|i| g.scale(a, i))).expect("in range")
    };
    let t = union(&sum(&m1, &n), &sum(&sum(&m, &n1), &d1));
    (omega, t)
}

/// Witness that `Z_{p^3 q^2}` lacks the PT property.
pub fn build_p3q2_witness(p: u64, q: u64, config: &SearchConfig) -> Result<ConstructionReport> {
    require_primes(&[("p", p), ("q", q)])?;
    if p == q {
        return Err(Error::Precondition("p and q must be distinct".into()));
    }
    let n = checked_pow(p, 3)? * checked_pow(q, 2)?;
    let g = checked_group(&[n])?;
    let (omega, t) = p3q2_sets(&g, p, q, false);
    let (lo, lt) = p3q2_sets(&g, p, q, true);
    let mut report = ConstructionReport::new("p3q2", &g, &[("p", p), ("q", q)]);
    report.add_set("Omega", &omega);
    report.add_set("T", &t);
    report.notes.push(
        "B, N and N1 run over q indices and D1 over 1..p-1; the printed p-index ranges give \
         |Omega| = p^2"
            .into(),
    );
    report.notes.push(format!(
        "printed reading: |Omega| = {}, |T| = {}, tiles: {}",
        lo.len(),
        lt.len(),
        is_tiling_pair(&lo, &lt, Route::Convolution).unwrap_or(false)
    ));
    report.claim("|Omega| = pq", Some(omega.len() as u64 == p * q), "count");
    report.claim("Omega + T = G", tiles(&omega, &t), "convolution");
    report.claim("Omega is not periodic", Some(!is_periodic(&omega)), "stabilizer scan");
    report.claim("T is not periodic", Some(!is_periodic(&t)), "stabilizer scan");
    record_replacement_checks(&mut report, "no periodic set tiles with T", &[&t], config);
    Ok(report)
}

/// Witness that `Z_{p^3} x Z_{p^2}` lacks the PT property, p odd.
pub fn build_p3p2_witness(p: u64, config: &SearchConfig) -> Result<ConstructionReport> {
    require_primes(&[("p", p)])?;
    require_odd(p)?;
    let (p3, p2) = (checked_pow(p, 3)?, checked_pow(p, 2)?);
    let g = checked_group(&[p3, p2])?;
    let el = |x: u64, y: u64| g.index_of(&[x % p3, y % p2]).expect("in range");
    let omega = GroupSubset::from_indices(
        &g,
        (0..p)
            .flat_map(|i| (0..p).map(move |k| (i * p, i * p + k)))
            .map(|(x, y)| el(x, y)),
    )?;
    let t0 = sum(
        &generated(&g, &[el(0, p)]),
        &GroupSubset::from_indices(&g, (0..p).map(|i| el(i * p * p, i)))?,
    );
    let t1 = generated(&g, &[el(0, p), el(p * p, 0)]);
    let tj = sum(
        &generated(&g, &[el(p * p, 0)]),
        &GroupSubset::from_indices(&g, (0..p).map(|i| el(i * p, 0)))?,
    );
    let mut t = GroupSubset::empty(&g);
    for j in 0..p {
        let part = match j {
            0 => &t0,
            1 => &t1,
            _ => &tj,
        };
        t = union(&t, &part.translate(el(j, 0)));
    }
    let mut report = ConstructionReport::new("p3p2", &g, &[("p", p)]);
    for (k, s) in [("Omega", &omega), ("T", &t), ("T0", &t0), ("T1", &t1), ("Tj", &tj)] {
        report.add_set(k, s);
    }
    report.claim("Omega + T = G", tiles(&omega, &t), "convolution");
    report.claim("Omega is not periodic", Some(!is_periodic(&omega)), "stabilizer scan");
    report.claim("T is not periodic", Some(!is_periodic(&t)), "stabilizer scan");
    record_replacement_checks(&mut report, "no periodic set tiles with T", &[&t], config);
    Ok(report)
}

/// Witness that `Z_{p^2}^3` lacks the PT property, p odd.
pub fn build_p2cubed_witness(p: u64, config: &SearchConfig) -> Result<ConstructionReport> {
    require_primes(&[("p", p)])?;
    require_odd(p)?;
    let pp = checked_pow(p, 2)?;
    let g = checked_group(&[pp, pp, pp])?;
    let a = g.index_of(&[1, 0, 0])?;
    let b = g.index_of(&[0, 1, 0])?;
    let c = g.index_of(&[0, 0, 1])?;
    let (pa, pb, pc) = (g.scale(a, p as i64), g.scale(b, p as i64), g.scale(c, p as i64));
    let t = sum(&sum(&multiples(&g, a, p), &multiples(&g, b, p)), &multiples(&g, c, p));
    let base = generated(&g, &[pa, pb, pc]);
    let line = |gen: usize, shift: usize| generated(&g, &[gen]).translate(shift);
    let added = union(
        &union(&line(pa, g.add(pb, a)), &line(pb, g.add(pc, b))),
        &line(pc, g.add(pa, c)),
    );
    let removed = union(&union(&line(pa, pb), &line(pb, pc)), &line(pc, pa));
    let omega = union(&base, &added).difference(&removed)?;
    let mut report = ConstructionReport::new("p2cubed", &g, &[("p", p)]);
    report.add_set("Omega", &omega);
    report.add_set("T", &t);
    report.add_set("OmegaPrime", &base);
    report.claim("Omega' + T = G", tiles(&base, &t), "convolution");
    report.claim("Omega + T = G", tiles(&omega, &t), "convolution");
    report.claim("Omega is not periodic", Some(!is_periodic(&omega)), "stabilizer scan");
    record_replacement_checks(&mut report, "no periodic set tiles with Omega", &[&omega], config);
    Ok(report)
}

/// Lifts a failure of uniform periodicity in `G` to a failure of PT in
/// `G x Z_m`: `B = Omega x {0}` and `S` stacks the complements over `Z_m`.
pub fn build_nonpt_product_witness(
    omega: &GroupSubset,
    complements: &[GroupSubset],
    m: u64,
    config: &SearchConfig,
) -> Result<ConstructionReport> {
    let g = omega.group();
    let n = complements.len();
    if n < 2 {
        return Err(Error::Precondition("need at least two complements".into()));
    }
    if (m as usize) < n {
        return Err(Error::Precondition(format!("m = {m} is smaller than n = {n}")));
    }
    if gcd(m, g.order() as u64) != 1 {
        return Err(Error::Precondition(format!("gcd(m, |G|) != 1 for m = {m}")));
    }
    for (i, t) in complements.iter().enumerate() {
        omega.ensure_same(t)?;
        if !is_tiling_pair(omega, t, Route::Convolution)? {
            return Err(Error::Precondition(format!("T{i} does not tile with Omega")));
        }
        if complements[..i].contains(t) {
            return Err(Error::Precondition(format!("T{i} repeats an earlier complement")));
        }
    }
    let zm = Group::cyclic(m)?;
    let big = g.product(&zm)?;
    let b = GroupSubset::from_indices(&big, omega.iter().map(|x| g.pair_index(&zm, x, 0)))?;
    let mut s = GroupSubset::empty(&big);
    for i in 0..m as usize {
        let t = &complements[i.min(n - 1)];
        for x in t.iter() {
            s.insert(g.pair_index(&zm, x, i));
        }
    }
    let mut report = ConstructionReport::new("nonpt-product", &big, &[("m", m), ("n", n as u64)]);
    report.add_set("B", &b);
    report.add_set("S", &s);
    let refs: Vec<&GroupSubset> = complements.iter().collect();
    report.claim(
        "the T_i share no nonzero period",
        Some(no_common_period(&refs)),
        "stabilizer scan",
    );
    let mut budget = config.budget();
    report.claim(
        "no periodic set tiles with every T_i",
        no_periodic_common_complement_clique(&refs, &mut budget),
        "periodic clique search",
    );
    report.claim("B + S = G x Z_m", tiles(&b, &s), "convolution");
    report.claim("S is not periodic", Some(!is_periodic(&s)), "stabilizer scan");
    record_replacement_checks(&mut report, "no periodic set tiles with S", &[&s], config);
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Combiner {
    Plus,
    Circ,
}

/// One level of an ascending chain: `H_j`, coset representatives `D_j` of
/// `H_j` modulo the previous subgroup, and how `D_j` meets the inner set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainLevel {
    /// Elements of `H_j`, ascending.
    pub subgroup: Vec<usize>,
    pub reps: Vec<usize>,
    pub combiner: Combiner,
    /// Choice function `inner element -> representative`, for `Circ` levels.
    pub phi: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDecomposition {
    pub group: Group,
    /// Translation applied after recomposition.
    pub offset: usize,
    pub levels: Vec<ChainLevel>,
}

impl ChainDecomposition {
    /// Evaluates `D_1 op_1 (D_2 op_2 (... (D_m op_m {0})))` and translates.
    pub fn recompose(&self) -> Result<GroupSubset> {
        let g = &self.group;
        let mut inner = GroupSubset::zero(g);
        for level in self.levels.iter().rev() {
            let d = GroupSubset::from_indices(g, level.reps.iter().copied())?;
            inner = match level.combiner {
                Combiner::Plus => d.sumset(&inner)?,
                Combiner::Circ => {
                    let phi: BTreeMap<usize, usize> = level.phi.iter().copied().collect();
                    if inner.iter().any(|x| !phi.contains_key(&x)) {
                        return Err(Error::Precondition("phi is not total on the inner set".into()));
                    }
                    circ(&d, &inner, &phi)?
                }
            };
        }
        Ok(inner.translate(self.offset))
    }

    /// Checks the chain invariants: strictly ascending subgroups ending at
    /// `G`, and each `D_j` a transversal of `H_j` modulo `H_{j-1}` with 0.
    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        let mut prev = Subgroup::trivial(g);
        for (j, level) in self.levels.iter().enumerate() {
            let carrier = GroupSubset::from_indices(g, level.subgroup.iter().copied())?;
            let h = Subgroup::from_subset(&carrier)?;
            if !prev.is_subgroup_of(&h) || prev.order() == h.order() {
                return Err(Error::Precondition(format!("level {j} does not strictly grow")));
            }
            let q = Quotient::new(&prev)?;
            let mut classes: Vec<usize> = level.reps.iter().map(|&d| q.project(d)).collect();
            classes.sort_unstable();
            classes.dedup();
            if !level.reps.contains(&0)
                || level.reps.iter().any(|&d| !h.contains(d))
                || classes.len() != level.reps.len()
                || level.reps.len() * prev.order() != h.order()
            {
                return Err(Error::Precondition(format!("level {j} reps are not a transversal")));
            }
            prev = h;
        }
        if !prev.is_whole() {
            return Err(Error::Precondition("chain does not reach G".into()));
        }
        Ok(())
    }
}

/// Ascending chain decomposition of a tile. A periodic image contributes a
/// `Plus` level for its full period group; otherwise the periodic complement
/// with the largest period group gives a `Circ` level.
pub fn decompose_ascending_chain(omega: &GroupSubset, budget: &mut Budget) -> Result<ChainDecomposition> {
    let g = omega.group().clone();
    if omega.is_empty() || !g.order().is_multiple_of(omega.len()) {
        return Err(Error::Precondition(format!("{omega} cannot tile {g}")));
    }
    let offset = omega.iter().next().expect("nonempty");
    let base = omega.translate(g.neg(offset));

    let mut chain = vec![Subgroup::trivial(&g)];
    let mut combiners = Vec::new();
    let mut quotients = vec![Quotient::new(&chain[0])?];
    while !chain.last().expect("nonempty").is_whole() {
        let q = quotients.last().expect("nonempty");
        let x = q.project_set(&base);
        let qg = q.quotient_group();
        let (k, comb) = if x.len() == qg.order() || is_periodic(&x) {
            (periods(&x).subgroup().clone(), Combiner::Plus)
        } else {
            let t = widest_periodic_complement(&x, budget)?
                .ok_or_else(|| Error::NoPeriodicComplement(format!("image {x} in {qg}")))?;
            (periods(&t).subgroup().clone(), Combiner::Circ)
        };
        let h = q.preimage_subgroup(&k);
        quotients.push(Quotient::new(&h)?);
        chain.push(h);
        combiners.push(comb);
    }

    let m = combiners.len();
    let mut levels: Vec<ChainLevel> = Vec::with_capacity(m);
    let mut reps_all = Vec::with_capacity(m);
    for j in 1..=m {
        let qprev = &quotients[j - 1];
        let mut seen = HashMap::new();
        let mut reps = Vec::new();
        for x in chain[j].carrier().iter() {
            seen.entry(qprev.project(x)).or_insert_with(|| {
                reps.push(x);
                x
            });
        }
        reps_all.push((reps, seen));
    }
    // Bottom-up: inner set S_j, then S_{j-1} = D_j op_j S_j.
    let mut inner = GroupSubset::zero(&g);
    for j in (1..=m).rev() {
        let (reps, by_class) = &reps_all[j - 1];
        let d = GroupSubset::from_indices(&g, reps.iter().copied())?;
        let mut phi = Vec::new();
        let next = match combiners[j - 1] {
            Combiner::Plus => d.sumset(&inner)?,
            Combiner::Circ => {
                let qj = &quotients[j];
                let qprev = &quotients[j - 1];
                let mut over: HashMap<usize, usize> = HashMap::new();
                for w in base.iter() {
                    over.entry(qj.project(w)).or_insert(w);
                }
                let mut out = GroupSubset::empty(&g);
                for s in inner.iter() {
                    let w = *over
                        .get(&qj.project(s))
                        .ok_or_else(|| Error::Internal("inner set leaves the tile's image".into()))?;
                    let r = by_class[&qprev.project(g.sub(w, s))];
                    phi.push((s, r));
                    out.insert(g.add(r, s));
                }
                out
            }
        };
        levels.push(ChainLevel {
            subgroup: chain[j].carrier().to_vec(),
            reps: reps.clone(),
            combiner: combiners[j - 1],
            phi,
        });
        inner = next;
    }
    levels.reverse();
    let dec = ChainDecomposition {
        group: g,
        offset,
        levels,
    };
    if dec.recompose()? != *omega {
        return Err(Error::Internal("chain recomposition differs from the tile".into()));
    }
    Ok(dec)
}

/// A periodic complement whose period group is as large as possible:
/// candidate period subgroups are tried from the largest order down.
fn widest_periodic_complement(x: &GroupSubset, budget: &mut Budget) -> Result<Option<GroupSubset>> {
    let g = x.group();
    let size = g.order() / x.len();
    let forbidden = difference_set(x);
    let mut subs = all_subgroups(g);
    subs.retain(|k| !k.is_trivial() && size.is_multiple_of(k.order()));
    subs.sort_by_key(|k| std::cmp::Reverse(k.order()));
    for k in subs {
        if let Some(t) = periodic_avoiding_in(&k, &forbidden, size, budget)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// How a subgroup complement was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplementMethod {
    Chain,
    Exhaustive,
}

#[derive(Clone, Debug)]
pub struct SubgroupComplement {
    pub subgroup: Subgroup,
    pub method: ComplementMethod,
}

/// A subgroup `T` with `Omega + T = G` in an elementary p-group. The chain
/// recipe sums complements of `H_{j-1}` in `H_j` over the `Circ` levels;
/// when that fails every subgroup of the right order is tried.
pub fn subgroup_complement_elementary(omega: &GroupSubset, budget: &mut Budget) -> Result<Option<SubgroupComplement>> {
    let g = omega.group();
    let p = g.factors().first().copied().unwrap_or(1);
    if g.factors().iter().any(|&f| f != p) || (g.rank() > 0 && !is_prime(p)) {
        return Err(Error::Precondition(format!("{g} is not an elementary p-group")));
    }
    if omega.is_empty() || !g.order().is_multiple_of(omega.len()) {
        return Ok(None);
    }
    let target = g.order() / omega.len();
    if let Ok(dec) = decompose_ascending_chain(omega, budget) {
        let mut prev = Subgroup::trivial(g);
        let mut gens = Vec::new();
        for level in &dec.levels {
            let h = Subgroup::from_subset(&GroupSubset::from_indices(g, level.subgroup.iter().copied())?)?;
            if level.combiner == Combiner::Circ {
                gens.extend(complement_generators(&prev, &h));
            }
            prev = h;
        }
        let t = subgroup_generated_indices(g, &gens);
        if t.order() == target && is_tiling_pair(omega, t.carrier(), Route::Difference)? {
            return Ok(Some(SubgroupComplement {
                subgroup: t,
                method: ComplementMethod::Chain,
            }));
        }
    }
    for s in all_subgroups(g) {
        if s.order() == target && is_tiling_pair(omega, s.carrier(), Route::Difference)? {
            return Ok(Some(SubgroupComplement {
                subgroup: s,
                method: ComplementMethod::Exhaustive,
            }));
        }
    }
    Ok(None)
}

/// Generators of a complement of `k` inside `h` (elementary abelian case).
fn complement_generators(k: &Subgroup, h: &Subgroup) -> Vec<usize> {
    let g = h.group();
    let mut gens = Vec::new();
    let mut span = k.clone();
    for x in h.carrier().iter() {
        if span.order() == h.order() {
            break;
        }
        if !span.contains(x) {
            gens.push(x);
            span = span.join(&[x]);
        }
    }
    debug_assert!(gens.iter().all(|&x| g.order_of(x) > 1));
    gens
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
    fn circ_examples() {
        let z8 = parse_group("Z8").unwrap();
        let a = set(&z8, "{0,4}");
        let b = set(&z8, "{0,1,2,3}");
        let phi: BTreeMap<usize, usize> = [(3, 4)].into_iter().collect();
        assert_eq!(circ(&a, &b, &phi).unwrap(), set(&z8, "{0,1,2,7}"));
        assert_eq!(circ(&a, &b, &BTreeMap::new()).unwrap(), b);
        assert_eq!(circ(&a, &set(&z8, "{0}"), &BTreeMap::new()).unwrap(), set(&z8, "{0}"));
        let bad: BTreeMap<usize, usize> = [(0, 4)].into_iter().collect();
        assert!(circ(&a, &b, &bad).is_err());
    }

    #[test]
    fn product_extension_examples() {
        let z4 = parse_group("Z4").unwrap();
        let z3 = parse_group("Z3").unwrap();
        let e = extend_tile_product(&set(&z4, "{0,1}"), &set(&z4, "{0,2}"), &z3, &[(0, 0), (1, 1), (1, 2)]).unwrap();
        assert!(!e.output_periodic);
        let g = e.pair.group().clone();
        assert_eq!(*e.pair.t(), set(&g, "{(0,0),(2,0)}"));
        assert!(extend_tile_product(&set(&z4, "{0,1}"), &set(&z4, "{0,2}"), &z3, &[(0, 0), (1, 1)]).is_err());

        let z8 = parse_group("Z8").unwrap();
        let z2 = parse_group("Z2").unwrap();
        let e = extend_tile_product(&set(&z8, "{0,1,2,3}"), &set(&z8, "{0,4}"), &z2, &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(*e.pair.t(), set(e.pair.group(), "{(0,0),(4,0)}"));
    }

    #[test]
    fn cyclic_extension_examples() {
        let z4 = parse_group("Z4").unwrap();
        let e = extend_tile_cyclic(&set(&z4, "{0,1}"), &set(&z4, "{0,2}"), 0).unwrap();
        assert_eq!(e.pair.omega().to_vec(), vec![0, 1, 2, 3]);
        assert_eq!(e.pair.group().order(), 8);

        let z2 = parse_group("Z2").unwrap();
        let e = extend_tile_cyclic(&set(&z2, "{0,1}"), &set(&z2, "{0}"), 0).unwrap();
        assert_eq!(e.pair.omega().len(), 4);

        // A non-periodic tile of Z3xZ2 pushed to Z3xZ4 stays non-periodic.
        let z3 = parse_group("Z3").unwrap();
        let base = extend_tile_product(&set(&z3, "{0}"), &set(&z3, "{0,1,2}"), &z2, &[(0, 0), (1, 1)]).unwrap();
        let h = base.pair.group().clone();
        assert_eq!(h.factors(), &[3, 2]);
        let e = extend_tile_cyclic(base.pair.omega(), base.pair.t(), 0).unwrap();
        assert_eq!(e.input_periodic, is_periodic(base.pair.omega()));
        if !e.input_periodic {
            assert!(!e.output_periodic);
        }
    }

    #[test]
    fn p2q2_matches_published_sets() {
        let r = build_p2q2_witness(2, 3, &SearchConfig::default()).unwrap();
        let g = r.group.clone();
        assert_eq!(r.set("Omega").unwrap(), set(&g, "{0,4,8,9,13,17}"));
        assert_eq!(r.set("T1").unwrap(), set(&g, "{0,12,15,18,30,33}"));
        assert_eq!(r.set("T2").unwrap(), set(&g, "{0,10,12,22,24,34}"));
        assert_eq!(periods(&r.set("T1").unwrap()).elements(), vec![0, 18]);
        assert_eq!(periods(&r.set("T2").unwrap()).elements(), vec![0, 12, 24]);
        assert!(r.verified(), "{:#?}", r.claims);
        let r = build_p2q2_witness(3, 2, &SearchConfig::default()).unwrap();
        assert!(r.verified(), "{:#?}", r.claims);
    }

    #[test]
    fn p2p2_small() {
        let r = build_p2p2_witness(2, &SearchConfig::default()).unwrap();
        let g = r.group.clone();
        assert_eq!(r.set("Omega").unwrap(), set(&g, "{(0,0),(0,1),(1,2),(1,3)}"));
        assert!(r.verified(), "{:#?}", r.claims);
    }

    #[test]
    fn p3q2_z72() {
        let r = build_p3q2_witness(2, 3, &SearchConfig::default()).unwrap();
        assert_eq!(r.set("Omega").unwrap().len(), 6);
        assert_eq!(r.set("T").unwrap().len(), 12);
        assert!(r.verified(), "{:#?}", r.claims);
    }

    #[test]
    fn odd_prime_witnesses() {
        let cfg = SearchConfig::default();
        assert!(build_p3p2_witness(2, &cfg).is_err());
        assert!(build_p2cubed_witness(2, &cfg).is_err());
        let r = build_p3p2_witness(3, &cfg).unwrap();
        assert!(r.verified(), "{:#?}", r.claims);
        let r = build_p2cubed_witness(3, &cfg).unwrap();
        assert!(r.verified(), "{:#?}", r.claims);
    }

    #[test]
    fn product_witness() {
        let cfg = SearchConfig::default();
        let w = build_p2q2_witness(2, 3, &cfg).unwrap();
        let omega = w.set("Omega").unwrap();
        let (t1, t2) = (w.set("T1").unwrap(), w.set("T2").unwrap());
        let r = build_nonpt_product_witness(&omega, &[t1.clone(), t2], 5, &cfg).unwrap();
        assert_eq!(r.group.order(), 180);
        assert!(r.verified(), "{:#?}", r.claims);
        assert!(build_nonpt_product_witness(&omega, &[t1.clone(), t1], 2, &cfg).is_err());
        assert!(build_nonpt_product_witness(&omega, &[w.set("T1").unwrap(), w.set("T2").unwrap()], 6, &cfg).is_err());
    }

    #[test]
    fn chain_examples() {
        let mut b = Budget::default();
        let z8 = parse_group("Z8").unwrap();
        let d = decompose_ascending_chain(&set(&z8, "{0,1,2,3}"), &mut b).unwrap();
        assert_eq!(d.levels[0].subgroup, vec![0, 4]);
        assert_eq!(d.levels[0].combiner, Combiner::Circ);
        assert!(d.levels[0].phi.iter().all(|&(_, r)| r == 0));
        d.validate().unwrap();

        let h = set(&z8, "{0,2,4,6}");
        let d = decompose_ascending_chain(&h, &mut b).unwrap();
        assert_eq!(d.levels[0].combiner, Combiner::Plus);
        assert_eq!(d.recompose().unwrap(), h);

        let z36 = parse_group("Z36").unwrap();
        let d = decompose_ascending_chain(&set(&z36, "{0,4,8,9,13,17}"), &mut b).unwrap();
        assert_eq!(d.levels.len(), 2);
        assert_eq!(d.levels[0].subgroup, vec![0, 6, 12, 18, 24, 30]);
        d.validate().unwrap();

        let shifted = set(&z36, "{1,5,9,10,14,18}");
        assert_eq!(
            decompose_ascending_chain(&shifted, &mut b)
                .unwrap()
                .recompose()
                .unwrap(),
            shifted
        );
    }

    #[test]
    fn elementary_complements() {
        let mut b = Budget::default();
        let g = parse_group("Z3^3").unwrap();
        let omega = set(&g, "{(0,0,0),(1,0,0),(2,1,0)}");
        let t = subgroup_complement_elementary(&omega, &mut b).unwrap().unwrap();
        assert!(is_tiling_pair(&omega, t.subgroup.carrier(), Route::Convolution).unwrap());
        let plane = set(
            &g,
            "{(0,0,0),(0,1,0),(0,2,0),(0,0,1),(0,1,1),(0,2,1),(0,0,2),(0,1,2),(0,2,2)}",
        );
        assert!(is_tiling_pair(&omega, &plane, Route::Difference).unwrap());

        let full = GroupSubset::full(&g);
        let t = subgroup_complement_elementary(&full, &mut b).unwrap().unwrap();
        assert!(t.subgroup.is_trivial());
    }
}
