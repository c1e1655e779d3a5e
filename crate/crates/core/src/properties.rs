//! Exhaustive property deciders and closed-form classification tables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{factorize, gcd};
use crate::budget::{Budget, BudgetUsage, SearchConfig};
use crate::error::{Error, Result};
use crate::group::Group;
use crate::quotient::Quotient;
use crate::subgroup::Subgroup;
use crate::subset::GroupSubset;
use crate::tiling::{
    enumerate_complements_with, find_periodic_common_complement, for_each_tile, is_periodic, is_tiling_pair, periods,
    span_of_differences, Route, SweepOptions, TileClass,
};

/// Invariant factors `d_1 | d_2 | ...` of a group, without 1s.
pub fn invariant_factors(group: &Group) -> Vec<u64> {
    Quotient::new(&Subgroup::trivial(group))
        .expect("trivial quotient")
        .invariant_factors()
        .to_vec()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassificationWitness {
    CommonPeriod(usize),
    PeriodicReplacement(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileClassification {
    pub periodic: bool,
    pub uniformly_periodic: bool,
    pub dual_uniformly_periodic: bool,
    /// The common period when uniformly periodic, else the periodic tile
    /// that tiles with every complement when dual uniformly periodic.
    pub witness: Option<ClassificationWitness>,
    pub complement_count: usize,
}

pub fn classify_tile(omega: &GroupSubset, config: &SearchConfig) -> Result<TileClassification> {
    let mut budget = config.budget();
    let complements = enumerate_complements_with(omega, true, &mut budget)?;
    classify_with_complements(omega, &complements, &mut budget)
}

/// Classification from an already enumerated complement list.
pub fn classify_with_complements(
    omega: &GroupSubset,
    complements: &[GroupSubset],
    budget: &mut Budget,
) -> Result<TileClassification> {
    if complements.is_empty() {
        return Err(Error::Precondition(format!("{omega} is not a tile")));
    }
    let common = common_period(complements);
    let mut out = TileClassification {
        periodic: is_periodic(omega),
        uniformly_periodic: common.is_some(),
        dual_uniformly_periodic: false,
        witness: common.map(ClassificationWitness::CommonPeriod),
        complement_count: complements.len(),
    };
    if let Some(x) = find_periodic_common_complement(complements, omega.len(), budget)? {
        out.dual_uniformly_periodic = true;
        if out.witness.is_none() {
            out.witness = Some(ClassificationWitness::PeriodicReplacement(x.to_vec()));
        }
    }
    Ok(out)
}

/// Least nonzero element of the intersection of all period groups.
fn common_period(sets: &[GroupSubset]) -> Option<usize> {
    let mut acc = periods(sets.first()?).subgroup().carrier().bits().clone();
    for s in &sets[1..] {
        acc.intersect_with(periods(s).subgroup().carrier().bits());
    }
    acc.ones().find(|&g| g != 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Property {
    #[serde(rename = "PT")]
    Pt,
    #[serde(rename = "UPT")]
    Upt,
    Hajos,
    Redei,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Pt => "PT",
            Property::Upt => "UPT",
            Property::Hajos => "Hajos",
            Property::Redei => "Redei",
        })
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pt" => Ok(Property::Pt),
            "upt" => Ok(Property::Upt),
            "hajos" => Ok(Property::Hajos),
            "redei" => Ok(Property::Redei),
            other => Err(Error::Syntax(format!("unknown property {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A tile and complements that witness failure.
    Counterexample {
        omega: Vec<usize>,
        complements: Vec<Vec<usize>>,
        reason: String,
    },
    /// Every tile was examined.
    Exhausted { tiles: u64, pairs: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyVerdict {
    pub group: String,
    pub property: Property,
    /// `None` when the search budget ran out.
    pub holds: Option<bool>,
    pub certificate: Option<Certificate>,
    pub budget: BudgetUsage,
    pub citation: Option<String>,
}

struct Sweep {
    tiles: u64,
    pairs: u64,
    failure: Option<Certificate>,
}

fn run_sweep(
    group: &Group,
    property: Property,
    config: &SearchConfig,
    mut check: impl FnMut(&TileClass, &mut Budget) -> Result<Option<Certificate>>,
) -> Result<PropertyVerdict> {
    // Z1 has no nonzero period and no proper subgroup; all four hold by convention.
    if group.order() == 1 {
        return Ok(PropertyVerdict {
            group: group.to_string(),
            property,
            holds: Some(true),
            certificate: Some(Certificate::Exhausted { tiles: 1, pairs: 1 }),
            budget: BudgetUsage {
                limit: config.budget,
                used: 0,
            },
            citation: None,
        });
    }
    let mut budget = config.budget();
    let mut sweep = Sweep {
        tiles: 0,
        pairs: 0,
        failure: None,
    };
    let mut inner = Budget::new(config.budget);
    let res = for_each_tile(group, SweepOptions::default(), config, &mut budget, |class| {
        sweep.tiles += 1;
        sweep.pairs += (class.complements.len() * class.normalized_translates().len()) as u64;
        if let Some(c) = check(class, &mut inner)? {
            sweep.failure = Some(c);
            return Ok(ControlFlow::Break(()));
        }
        Ok(ControlFlow::Continue(()))
    });
    let used = BudgetUsage {
        limit: config.budget,
        used: (budget.used() + inner.used()).min(config.budget),
    };
    let base = PropertyVerdict {
        group: group.to_string(),
        property,
        holds: None,
        certificate: None,
        budget: used,
        citation: None,
    };
    match res {
        Err(e) if e.is_budget() => Ok(base),
        Err(e) => Err(e),
        Ok(_) => Ok(match sweep.failure {
            Some(c) => PropertyVerdict {
                holds: Some(false),
                certificate: Some(c),
                ..base
            },
            None => PropertyVerdict {
                holds: Some(true),
                certificate: Some(Certificate::Exhausted {
                    tiles: sweep.tiles,
                    pairs: sweep.pairs,
                }),
                ..base
            },
        }),
    }
}

fn counterexample(omega: &GroupSubset, complements: &[&GroupSubset], reason: &str) -> Certificate {
    Certificate::Counterexample {
        omega: omega.to_vec(),
        complements: complements.iter().map(|t| t.to_vec()).collect(),
        reason: reason.to_string(),
    }
}

#[allow(non_snake_case)]
pub fn check_PT(group: &Group, config: &SearchConfig) -> Result<PropertyVerdict> {
    run_sweep(group, Property::Pt, config, |class, budget| {
        if is_periodic(&class.omega) || class.complements.iter().any(is_periodic) {
            return Ok(None);
        }
        if crate::tiling::find_periodic_complement(&class.omega, budget)?.is_some() {
            return Ok(None);
        }
        Ok(Some(counterexample(
            &class.omega,
            &[&class.complements[0]],
            "tile is not periodic and has no periodic complement",
        )))
    })
}

#[allow(non_snake_case)]
pub fn check_UPT(group: &Group, config: &SearchConfig) -> Result<PropertyVerdict> {
    run_sweep(group, Property::Upt, config, |class, budget| {
        let c = classify_with_complements(&class.omega, &class.complements, budget)?;
        if c.uniformly_periodic || c.dual_uniformly_periodic {
            return Ok(None);
        }
        let witness = minimal_upt_witness(&class.omega, &class.complements, budget)?;
        Ok(Some(counterexample(
            &class.omega,
            &witness.iter().collect::<Vec<_>>(),
            "listed complements share no nonzero period and no periodic set tiles with all of them",
        )))
    })
}

/// Smallest sub-list (pairs, then triples, else all) that already defeats both notions.
fn minimal_upt_witness(
    omega: &GroupSubset,
    complements: &[GroupSubset],
    budget: &mut Budget,
) -> Result<Vec<GroupSubset>> {
    let defeats = |subset: &[GroupSubset], budget: &mut Budget| -> Result<bool> {
        Ok(common_period(subset).is_none() && find_periodic_common_complement(subset, omega.len(), budget)?.is_none())
    };
    let n = complements.len();
    for i in 0..n {
        for j in i + 1..n {
            let pair = [complements[i].clone(), complements[j].clone()];
            if defeats(&pair, budget)? {
                return Ok(pair.to_vec());
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let triple = [complements[i].clone(), complements[j].clone(), complements[k].clone()];
                if defeats(&triple, budget)? {
                    return Ok(triple.to_vec());
                }
            }
        }
    }
    Ok(complements.to_vec())
}

pub fn check_hajos(group: &Group, config: &SearchConfig) -> Result<PropertyVerdict> {
    run_sweep(group, Property::Hajos, config, |class, _| {
        if is_periodic(&class.omega) {
            return Ok(None);
        }
        Ok(class
            .complements
            .iter()
            .find(|t| !is_periodic(t))
            .map(|t| counterexample(&class.omega, &[t], "neither factor is periodic")))
    })
}

pub fn check_redei(group: &Group, config: &SearchConfig) -> Result<PropertyVerdict> {
    run_sweep(group, Property::Redei, config, |class, _| {
        if !span_of_differences(&class.omega).is_whole() {
            return Ok(None);
        }
        Ok(class
            .complements
            .iter()
            .find(|t| span_of_differences(t).is_whole())
            .map(|t| counterexample(&class.omega, &[t], "neither factor lies in a proper subgroup")))
    })
}

pub fn check_property(group: &Group, property: Property, config: &SearchConfig) -> Result<PropertyVerdict> {
    let mut v = match property {
        Property::Pt => check_PT(group, config),
        Property::Upt => check_UPT(group, config),
        Property::Hajos => check_hajos(group, config),
        Property::Redei => check_redei(group, config),
    }?;
    if property == Property::Pt {
        let k = known_classification(&invariant_factors(group))?;
        v.citation = Some(k.citation);
    }
    Ok(v)
}

/// Re-checks a counterexample from scratch, using complement enumeration
/// rather than the search that produced it.
pub fn verify_certificate(group: &Group, property: Property, cert: &Certificate) -> Result<bool> {
    let Certificate::Counterexample { omega, complements, .. } = cert else {
        return Ok(true);
    };
    let omega = GroupSubset::from_indices(group, omega.iter().copied())?;
    let ts = complements
        .iter()
        .map(|t| GroupSubset::from_indices(group, t.iter().copied()))
        .collect::<Result<Vec<_>>>()?;
    if ts.is_empty() {
        return Ok(false);
    }
    for t in &ts {
        if !is_tiling_pair(&omega, t, Route::Convolution)? {
            return Ok(false);
        }
    }
    let mut budget = Budget::default();
    Ok(match property {
        Property::Pt => {
            !is_periodic(&omega)
                && !enumerate_complements_with(&omega, true, &mut budget)?
                    .iter()
                    .any(is_periodic)
        }
        Property::Upt => {
            let mut common = periods(&ts[0]).elements();
            for t in &ts[1..] {
                let p = periods(t);
                common.retain(|&g| p.contains(g));
            }
            common == vec![0]
                && !enumerate_complements_with(&ts[0], true, &mut budget)?
                    .iter()
                    .filter(|x| is_periodic(x))
                    .any(|x| {
                        ts.iter()
                            .all(|t| is_tiling_pair(x, t, Route::Convolution).unwrap_or(false))
                    })
        }
        Property::Hajos => !is_periodic(&omega) && !is_periodic(&ts[0]),
        Property::Redei => span_of_differences(&omega).is_whole() && span_of_differences(&ts[0]).is_whole(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KnownStatus {
    #[serde(rename = "PT")]
    Pt,
    #[serde(rename = "NotPT")]
    NotPt,
    Unknown,
}

impl fmt::Display for KnownStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KnownStatus::Pt => "PT",
            KnownStatus::NotPt => "NotPT",
            KnownStatus::Unknown => "Unknown",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownClassification {
    pub status: KnownStatus,
    pub citation: String,
}

/// Exponent of `U` for unbounded parts such as `Z_{p^n}`.
const U: u32 = u32::MAX;

#[derive(Clone, Copy, Debug)]
enum PrimeSlot {
    Var,
    Fixed(u64),
}

/// A group type: per prime slot, a partition of exponents (descending).
#[derive(Clone, Copy, Debug)]
pub struct GroupPattern {
    pub name: &'static str,
    parts: &'static [(PrimeSlot, &'static [u32])],
}

use PrimeSlot::{Fixed, Var};

/// The classical list of groups with the Hajos property, plus `Z_2^n` for `n <= 5`.
/// `p, q, r, s` are distinct primes; a variable may equal an explicit prime.
pub const HAJOS_GROUPS: &[GroupPattern] = &[
    GroupPattern {
        name: "Z_{p^n q}",
        parts: &[(Var, &[U]), (Var, &[1])],
    },
    GroupPattern {
        name: "Z_{p^2 q^2}",
        parts: &[(Var, &[2]), (Var, &[2])],
    },
    GroupPattern {
        name: "Z_{p^2 q r}",
        parts: &[(Var, &[2]), (Var, &[1]), (Var, &[1])],
    },
    GroupPattern {
        name: "Z_{pqrs}",
        parts: &[(Var, &[1]), (Var, &[1]), (Var, &[1]), (Var, &[1])],
    },
    GroupPattern {
        name: "Z_{p^3} x Z_2^2",
        parts: &[(Var, &[3]), (Fixed(2), &[1, 1])],
    },
    GroupPattern {
        name: "Z_{p^2} x Z_2^3",
        parts: &[(Var, &[2]), (Fixed(2), &[1, 1, 1])],
    },
    GroupPattern {
        name: "Z_p x Z_4 x Z_2",
        parts: &[(Var, &[1]), (Fixed(2), &[2, 1])],
    },
    GroupPattern {
        name: "Z_p x Z_2^2",
        parts: &[(Var, &[1]), (Fixed(2), &[1, 1])],
    },
    GroupPattern {
        name: "Z_p x Z_q x Z_2^2",
        parts: &[(Var, &[1]), (Var, &[1]), (Fixed(2), &[1, 1])],
    },
    GroupPattern {
        name: "Z_p x Z_3^2",
        parts: &[(Var, &[1]), (Fixed(3), &[1, 1])],
    },
    GroupPattern {
        name: "Z_9 x Z_3",
        parts: &[(Fixed(3), &[2, 1])],
    },
    GroupPattern {
        name: "Z_{2^n} x Z_2",
        parts: &[(Fixed(2), &[U, 1])],
    },
    GroupPattern {
        name: "Z_4^2",
        parts: &[(Fixed(2), &[2, 2])],
    },
    GroupPattern {
        name: "Z_p^2",
        parts: &[(Var, &[1, 1])],
    },
    GroupPattern {
        name: "Z_2^5",
        parts: &[(Fixed(2), &[1, 1, 1, 1, 1])],
    },
];

/// p-groups with the uniform periodic tiling property; `H x Z_m` is PT for
/// their subgroups `H` and square-free `m` coprime to `|H|`.
pub const UPT_PGROUPS: &[GroupPattern] = &[
    GroupPattern {
        name: "Z_2^5",
        parts: &[(Fixed(2), &[1, 1, 1, 1, 1])],
    },
    GroupPattern {
        name: "Z_p^3",
        parts: &[(Var, &[1, 1, 1])],
    },
    GroupPattern {
        name: "Z_{p^n} x Z_p",
        parts: &[(Var, &[U, 1])],
    },
    GroupPattern {
        name: "Z_8 x Z_2^2",
        parts: &[(Fixed(2), &[3, 1, 1])],
    },
    GroupPattern {
        name: "Z_4 x Z_2^3",
        parts: &[(Fixed(2), &[2, 1, 1, 1])],
    },
];

type PrimeParts = BTreeMap<u64, Vec<u32>>;

fn prime_parts(factors: &[u64]) -> PrimeParts {
    let mut parts: PrimeParts = BTreeMap::new();
    for &d in factors {
        for (p, e) in factorize(d) {
            parts.entry(p).or_default().push(e);
        }
    }
    for v in parts.values_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
    }
    parts
}

/// `mu` embeds in `lambda` (both descending).
fn partition_le(mu: &[u32], lambda: &[u32]) -> bool {
    mu.len() <= lambda.len() && mu.iter().zip(lambda).all(|(a, b)| a <= b)
}

/// True when the group with these prime parts is isomorphic to a subgroup
/// of some instance of `pattern`. Variable primes are distinct from each
/// other but may coincide with a fixed prime, merging the two parts.
fn embeds_in(parts: &PrimeParts, pattern: &GroupPattern) -> bool {
    let primes: Vec<u64> = parts.keys().copied().collect();
    let vars: Vec<&[u32]> = pattern
        .parts
        .iter()
        .filter(|(s, _)| matches!(s, Var))
        .map(|(_, l)| *l)
        .collect();
    let fixed = |p: u64| -> Vec<u32> {
        pattern
            .parts
            .iter()
            .filter(|(s, _)| matches!(s, Fixed(q) if *q == p))
            .flat_map(|(_, l)| l.iter().copied())
            .collect()
    };
    // choice[k] = index into `primes`, or None for a fresh prime.
    fn search(
        k: usize,
        choice: &mut Vec<Option<usize>>,
        vars: &[&[u32]],
        primes: &[u64],
        parts: &PrimeParts,
        fixed: &dyn Fn(u64) -> Vec<u32>,
    ) -> bool {
        if k == vars.len() {
            return primes.iter().enumerate().all(|(i, p)| {
                let mut lambda = fixed(*p);
                for (v, c) in vars.iter().zip(choice.iter()) {
                    if *c == Some(i) {
                        lambda.extend_from_slice(v);
                    }
                }
                lambda.sort_unstable_by(|a, b| b.cmp(a));
                partition_le(&parts[p], &lambda)
            });
        }
        for c in std::iter::once(None).chain((0..primes.len()).map(Some)) {
            if c.is_some() && choice.contains(&c) {
                continue;
            }
            choice.push(c);
            if search(k + 1, choice, vars, primes, parts, fixed) {
                return true;
            }
            choice.pop();
        }
        false
    }
    search(0, &mut Vec::new(), &vars, &primes, parts, &fixed)
}

/// The first Hajos-list entry containing the group, if any.
pub fn hajos_listed(factors: &[u64]) -> Option<&'static str> {
    let parts = prime_parts(factors);
    HAJOS_GROUPS
        .iter()
        .find(|pat| embeds_in(&parts, pat))
        .map(|pat| pat.name)
}

fn cyclic_status(n: u64) -> KnownClassification {
    let fac = factorize(n);
    let squared: Vec<(u64, u32)> = fac.iter().copied().filter(|&(_, e)| e >= 2).collect();
    if squared.len() <= 1 {
        return KnownClassification {
            status: KnownStatus::Pt,
            citation: "cyclic of order p^n q r ... (at most one repeated prime)".into(),
        };
    }
    if fac.len() == 2 && squared.iter().all(|&(_, e)| e == 2) {
        return KnownClassification {
            status: KnownStatus::Pt,
            citation: "cyclic of order p^2 q^2".into(),
        };
    }
    let citation = if squared.iter().any(|&(_, e)| e >= 3) {
        "contains Z_{p^3 q^2}"
    } else {
        "contains Z_{p^2 q^2 r}"
    };
    KnownClassification {
        status: KnownStatus::NotPt,
        citation: citation.into(),
    }
}

/// Closed-form PT status from the invariant factors.
pub fn known_classification(factors: &[u64]) -> Result<KnownClassification> {
    for w in factors.windows(2) {
        if w[0] == 0 || w[1] % w[0] != 0 {
            return Err(Error::Precondition(format!("{factors:?} is not a divisibility chain")));
        }
    }
    if factors.contains(&1) || factors.contains(&0) {
        return Err(Error::Precondition(format!(
            "invariant factors must exceed 1: {factors:?}"
        )));
    }
    if factors.len() <= 1 {
        return Ok(cyclic_status(factors.first().copied().unwrap_or(1)));
    }
    let exponent = *factors.last().expect("nonempty");
    let cyc = cyclic_status(exponent);
    if cyc.status == KnownStatus::NotPt {
        return Ok(KnownClassification {
            status: KnownStatus::NotPt,
            citation: format!("cyclic subgroup Z_{exponent} is not PT ({})", cyc.citation),
        });
    }
    let parts = prime_parts(factors);
    for (&q, lam) in &parts {
        if q == 2 {
            continue;
        }
        if partition_le(&[3, 2], lam) {
            return Ok(not_pt("contains Z_{q^3} x Z_{q^2}, q odd"));
        }
        if partition_le(&[2, 2, 2], lam) {
            return Ok(not_pt("contains Z_{q^2}^3, q odd"));
        }
        for (&p, mu) in &parts {
            if p != q && partition_le(&[2, 2], mu) {
                return Ok(not_pt("contains Z_{p^2}^2 x Z_q, q odd"));
            }
        }
    }
    let heavy: Vec<u64> = parts
        .iter()
        .filter(|(_, v)| v.as_slice() != [1])
        .map(|(&p, _)| p)
        .collect();
    if heavy.len() == 1 {
        let p = heavy[0];
        let single: PrimeParts = [(p, parts[&p].clone())].into_iter().collect();
        let m: u64 = parts.keys().filter(|&&q| q != p).product();
        debug_assert_eq!(gcd(m, p), 1);
        if let Some(pat) = UPT_PGROUPS.iter().find(|pat| embeds_in(&single, pat)) {
            return Ok(KnownClassification {
                status: KnownStatus::Pt,
                citation: format!("H x Z_m with H a subgroup of {} and m = {m} square-free", pat.name),
            });
        }
    }
    if let Some(pat) = HAJOS_GROUPS.iter().find(|pat| embeds_in(&parts, pat)) {
        return Ok(KnownClassification {
            status: KnownStatus::Pt,
            citation: format!("Hajos property: subgroup of {}", pat.name),
        });
    }
    Ok(KnownClassification {
        status: KnownStatus::Unknown,
        citation: "no closed-form result applies".into(),
    })
}

fn not_pt(citation: &str) -> KnownClassification {
    KnownClassification {
        status: KnownStatus::NotPt,
        citation: citation.into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group;
    use crate::subset::parse_subset;

    #[test]
    fn known_examples() {
        let k = |f: &[u64]| known_classification(f).unwrap().status;
        assert_eq!(k(&[36]), KnownStatus::Pt);
        assert_eq!(k(&[72]), KnownStatus::NotPt);
        assert_eq!(known_classification(&[72]).unwrap().citation, "contains Z_{p^3 q^2}");
        assert_eq!(k(&[3, 3, 3]), KnownStatus::Pt);
        assert_eq!(k(&[9, 9, 9]), KnownStatus::NotPt);
        assert_eq!(k(&[180]), KnownStatus::NotPt);
        assert_eq!(k(&[4, 4]), KnownStatus::Pt);
        assert_eq!(k(&[2, 2, 2, 2, 2, 2]), KnownStatus::Unknown);
        assert_eq!(k(&[3, 3, 3, 3]), KnownStatus::Unknown);
        assert_eq!(k(&[]), KnownStatus::Pt);
        assert_eq!(k(&[2, 2, 6]), KnownStatus::Pt);
        assert_eq!(k(&[12, 12]), KnownStatus::NotPt);
        assert!(known_classification(&[4, 2]).is_err());
    }

    #[test]
    fn tables_never_conflict() {
        // A group matching a positive table must not also match an obstruction.
        for n in 2u64..=400 {
            let g = Group::cyclic(n).unwrap();
            let f = invariant_factors(&g);
            let _ = known_classification(&f).unwrap();
        }
        for spec in ["Z4xZ4", "Z9xZ3xZ5", "Z8xZ2xZ2xZ3", "Z25xZ5", "Z4xZ2x Z2x Z2xZ7"] {
            let g = parse_group(spec).unwrap();
            assert_eq!(
                known_classification(&invariant_factors(&g)).unwrap().status,
                KnownStatus::Pt,
                "{spec}"
            );
        }
    }

    #[test]
    fn classification_examples() {
        let cfg = SearchConfig::default();
        let z8 = parse_group("Z8").unwrap();
        let c = classify_tile(&parse_subset(&z8, "{0,1,2,3}").unwrap(), &cfg).unwrap();
        assert!(c.uniformly_periodic);
        assert_eq!(c.witness, Some(ClassificationWitness::CommonPeriod(4)));

        let z33 = parse_group("Z3^2").unwrap();
        let c = classify_tile(&parse_subset(&z33, "{(0,0),(1,0),(1,1)}").unwrap(), &cfg).unwrap();
        assert!(c.dual_uniformly_periodic);

        let z36 = parse_group("Z36").unwrap();
        let c = classify_tile(&parse_subset(&z36, "{0,4,8,9,13,17}").unwrap(), &cfg).unwrap();
        assert!(!c.uniformly_periodic && !c.dual_uniformly_periodic);
    }

    #[test]
    fn small_group_verdicts() {
        let cfg = SearchConfig::default();
        for spec in ["Z1", "Z8", "Z2^2", "Z4xZ2"] {
            let g = parse_group(spec).unwrap();
            assert_eq!(check_PT(&g, &cfg).unwrap().holds, Some(true), "{spec}");
            assert_eq!(check_hajos(&g, &cfg).unwrap().holds, Some(true), "{spec}");
            assert_eq!(check_redei(&g, &cfg).unwrap().holds, Some(true), "{spec}");
        }
        let z4 = parse_group("Z4").unwrap();
        assert_eq!(check_redei(&z4, &cfg).unwrap().holds, Some(true));
        // Every non-periodic 3-subset of Z3^3 is affinely {0,e1,e2}, whose
        // complements are all periodic, so the Hajos property holds here.
        let z333 = parse_group("Z3^3").unwrap();
        assert_eq!(check_hajos(&z333, &cfg).unwrap().holds, Some(true));
        let z9 = parse_group("Z9xZ3").unwrap();
        assert_eq!(check_hajos(&z9, &cfg).unwrap().holds, Some(true));
    }

    #[test]
    fn failing_verdicts_reverify() {
        let cfg = SearchConfig::default();
        let z36 = parse_group("Z36").unwrap();
        let z48 = parse_group("Z4xZ8").unwrap();
        let z44 = parse_group("Z4^2").unwrap();
        for (g, prop) in [(&z48, Property::Hajos), (&z44, Property::Upt), (&z36, Property::Upt)] {
            let v = check_property(g, prop, &cfg).unwrap();
            assert_eq!(v.holds, Some(false), "{prop}");
            assert!(
                verify_certificate(g, prop, v.certificate.as_ref().unwrap()).unwrap(),
                "{prop}"
            );
        }
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let cfg = SearchConfig {
            budget: 10,
            ..SearchConfig::default()
        };
        let g = parse_group("Z16").unwrap();
        let v = check_PT(&g, &cfg).unwrap();
        assert_eq!(v.holds, None);
        assert!(v.certificate.is_none());
    }
}
