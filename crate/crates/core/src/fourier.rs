//! Fourier zero-sets, periods forced by zeros, and spectra.
//!
//! The dual group is identified with `G` through the pairing, so zero-sets
//! and spectra are ordinary subsets of `G`.

use crate::arith::prime_power;
use crate::bitset::BitSet;
use crate::budget::Budget;
use crate::clique::cayley_clique;
use crate::cyclotomic::{is_vanishing_root_sum, ExponentMultiset};
use crate::error::{Error, Result};
use crate::group::{Group, GroupElement};
use crate::quotient::Quotient;
use crate::subgroup::subgroup_generated_indices;
use crate::subset::GroupSubset;
use crate::tiling::{find_periodic_complement, is_periodic, periods};

/// `{g : sum_{x in A} chi_g(x) = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroSet {
    subset: GroupSubset,
}

impl ZeroSet {
    pub fn subset(&self) -> &GroupSubset {
        &self.subset
    }

    pub fn into_subset(self) -> GroupSubset {
        self.subset
    }

    pub fn contains(&self, g: usize) -> bool {
        self.subset.contains(g)
    }
}

/// `1^_A(g) = 0`, decided exactly.
pub fn fourier_vanishes(a: &GroupSubset, g: usize) -> bool {
    let grp = a.group();
    let mut m = ExponentMultiset::zeros(grp.exponent());
    for x in a.iter() {
        m.add_exponent(grp.pairing(g, x));
    }
    is_vanishing_root_sum(&m)
}

pub fn zero_set(a: &GroupSubset) -> ZeroSet {
    let g = a.group();
    let mut bits = BitSet::new(g.order());
    for x in 0..g.order() {
        if fourier_vanishes(a, x) {
            bits.insert(x);
        }
    }
    ZeroSet {
        subset: GroupSubset::from_bits(g, bits),
    }
}

/// For `A` in `Z_{p^n} x H`: when `(1, h)` is a zero for every `h`, returns
/// the period `(p^(n-1), 0)` after checking it.
pub fn deduce_period_from_line_zeros(a: &GroupSubset) -> Result<Option<GroupElement>> {
    let g = a.group();
    let first = *g.factors().first().ok_or(Error::NotPrimePower(1))?;
    let (p, _) = prime_power(first).ok_or(Error::NotPrimePower(first))?;
    let stride = g.order() / first as usize;
    // Elements with first coordinate 1 are indices stride .. 2 * stride.
    let all_zero = (stride..2 * stride).all(|x| fourier_vanishes(a, x));
    if !all_zero {
        return Ok(None);
    }
    let period = (first / p) as usize * stride;
    let translated = a.translate(period);
    if translated != *a {
        return Err(Error::Internal(format!(
            "{a} has the line zeros but is not invariant under {}",
            g.element(period)?
        )));
    }
    Ok(Some(g.element(period)?))
}

pub fn is_spectral_pair(omega: &GroupSubset, lambda: &GroupSubset) -> Result<bool> {
    omega.ensure_same(lambda)?;
    if omega.len() != lambda.len() {
        return Ok(false);
    }
    let g = omega.group();
    let z = zero_set(omega);
    let l = lambda.to_vec();
    for (i, &x) in l.iter().enumerate() {
        for &y in &l[i + 1..] {
            if !z.contains(g.sub(x, y)) || !z.contains(g.sub(y, x)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lexicographically least spectrum containing 0.
pub fn find_spectrum(omega: &GroupSubset, budget: &mut Budget) -> Result<Option<GroupSubset>> {
    if omega.is_empty() {
        return Err(Error::Precondition("empty set has no spectrum".into()));
    }
    let g = omega.group();
    let z = zero_set(omega);
    Ok(cayley_clique(g, z.subset().bits(), omega.len(), budget)?.map(|b| GroupSubset::from_bits(g, b)))
}

/// A spectrum for a tile, built by descending through quotients.
///
/// Periodic tiles split off a prime-order period subgroup `K`; the quotient
/// spectrum is lifted and translated by representatives of `G / K^perp`.
/// Non-periodic tiles use a periodic complement with period subgroup `K`;
/// the tile embeds injectively in `G / K` and the lifted quotient spectrum
/// already has the right size.
pub fn spectrum_via_pt(omega: &GroupSubset, t: &GroupSubset, budget: &mut Budget) -> Result<GroupSubset> {
    omega.ensure_same(t)?;
    if !crate::tiling::is_tiling_pair(omega, t, crate::tiling::Route::Difference)? {
        return Err(Error::Precondition(format!("{omega} and {t} do not tile")));
    }
    let g = omega.group();
    let max_depth = (usize::BITS - g.order().leading_zeros()) as usize;
    let lambda = descend(omega, Some(t), budget, 0, max_depth)?;
    debug_assert!(is_spectral_pair(omega, &lambda).unwrap_or(false));
    Ok(lambda)
}

fn prime_order_element(g: &Group, x: usize) -> usize {
    let k = g.order_of(x);
    let p = crate::arith::factorize(k)[0].0;
    g.scale(x, (k / p) as i64)
}

fn descend(
    omega: &GroupSubset,
    t: Option<&GroupSubset>,
    budget: &mut Budget,
    depth: usize,
    max_depth: usize,
) -> Result<GroupSubset> {
    let g = omega.group();
    if depth > max_depth {
        return Err(Error::Internal("spectrum recursion exceeded log2 |G| levels".into()));
    }
    if omega.len() == 1 {
        return Ok(GroupSubset::zero(g));
    }
    if omega.len() == g.order() {
        return Ok(GroupSubset::full(g));
    }
    budget.tick()?;
    let per = periods(omega);
    if let Some(x) = per.subgroup().least_nonzero() {
        let k = subgroup_generated_indices(g, &[prime_order_element(g, x)]);
        let q = Quotient::new(&k)?;
        let omega_bar = q.project_set(omega);
        let t_bar = t.map(|t| q.project_set(t));
        let gamma = descend(&omega_bar, t_bar.as_ref(), budget, depth + 1, max_depth)?;
        let perp = k.annihilator();
        let perp_q = Quotient::new(&perp)?;
        let reps: Vec<usize> = (0..perp_q.quotient_group().order())
            .map(|c| perp_q.section(c))
            .collect();
        let mut out = GroupSubset::empty(g);
        for c in gamma.iter() {
            let l = q.lift_character(c);
            for &s in &reps {
                out.insert(g.add(l, s));
            }
        }
        return Ok(out);
    }
    let periodic_t = match t {
        Some(t) if is_periodic(t) => t.clone(),
        _ => find_periodic_complement(omega, budget)?
            .ok_or_else(|| Error::NoPeriodicComplement(format!("{omega} in {g}")))?,
    };
    let x = periods(&periodic_t)
        .subgroup()
        .least_nonzero()
        .expect("periodic complement");
    let k = subgroup_generated_indices(g, &[prime_order_element(g, x)]);
    let q = Quotient::new(&k)?;
    let omega_bar = q.project_set(omega);
    debug_assert_eq!(omega_bar.len(), omega.len());
    let t_bar = q.project_set(&periodic_t);
    let gamma = descend(&omega_bar, Some(&t_bar), budget, depth + 1, max_depth)?;
    GroupSubset::from_indices(g, gamma.iter().map(|c| q.lift_character(c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group;
    use crate::subset::parse_subset;

    fn numeric_zero(a: &GroupSubset, g: usize) -> bool {
        let grp = a.group();
        let n = grp.exponent() as f64;
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for x in a.iter() {
            let t = std::f64::consts::TAU * grp.pairing(g, x) as f64 / n;
            re += t.cos();
            im += t.sin();
        }
        re.hypot(im) < 1e-9
    }

    #[test]
    fn zero_set_examples() {
        let z4 = parse_group("Z4").unwrap();
        assert_eq!(
            zero_set(&parse_subset(&z4, "{0,1}").unwrap()).subset().to_vec(),
            vec![2]
        );
        let z8 = parse_group("Z8").unwrap();
        assert_eq!(
            zero_set(&parse_subset(&z8, "{0,1,2,3}").unwrap()).subset().to_vec(),
            vec![2, 4, 6]
        );
        let z33 = parse_group("Z3^2").unwrap();
        let a = parse_subset(&z33, "{(0,0),(1,0),(2,0)}").unwrap();
        let want: Vec<usize> = (0..9).filter(|&x| z33.coords(x)[0] != 0).collect();
        assert_eq!(zero_set(&a).subset().to_vec(), want);
    }

    #[test]
    fn zero_set_matches_numeric() {
        let g = parse_group("Z6xZ4").unwrap();
        for mask in [0b1011u64, 0b1100_0011, 0xF0F0F, 0x123456] {
            let a = GroupSubset::from_indices(&g, (0..24).filter(|i| mask >> i & 1 == 1)).unwrap();
            let z = zero_set(&a);
            for x in 0..24 {
                assert_eq!(z.contains(x), numeric_zero(&a, x));
            }
        }
    }

    #[test]
    fn line_zero_examples() {
        let z4 = parse_group("Z4").unwrap();
        let p = deduce_period_from_line_zeros(&GroupSubset::full(&z4)).unwrap();
        assert_eq!(p.unwrap().index(), 2);
        let z8 = parse_group("Z8").unwrap();
        let p = deduce_period_from_line_zeros(&parse_subset(&z8, "{0,1,4,5}").unwrap()).unwrap();
        assert_eq!(p.unwrap().index(), 4);
        assert!(deduce_period_from_line_zeros(&parse_subset(&z4, "{0,1}").unwrap())
            .unwrap()
            .is_none());
        let z6 = parse_group("Z6").unwrap();
        assert!(matches!(
            deduce_period_from_line_zeros(&GroupSubset::zero(&z6)),
            Err(Error::NotPrimePower(6))
        ));
        let g = parse_group("Z4xZ3").unwrap();
        let a = parse_subset(&g, "{(0,0),(2,0),(1,1),(3,1)}").unwrap();
        assert_eq!(deduce_period_from_line_zeros(&a).unwrap().unwrap().coords(), vec![2, 0]);
    }

    #[test]
    fn spectral_examples() {
        let z8 = parse_group("Z8").unwrap();
        let o = parse_subset(&z8, "{0,1,2,3}").unwrap();
        assert!(is_spectral_pair(&o, &parse_subset(&z8, "{0,2,4,6}").unwrap()).unwrap());
        let z4 = parse_group("Z4").unwrap();
        assert!(is_spectral_pair(&GroupSubset::zero(&z4), &GroupSubset::zero(&z4)).unwrap());
        let o4 = parse_subset(&z4, "{0,1}").unwrap();
        assert!(!is_spectral_pair(&o4, &o4).unwrap());

        let mut b = Budget::unlimited();
        assert_eq!(find_spectrum(&o, &mut b).unwrap().unwrap().to_vec(), vec![0, 2, 4, 6]);
        let s = find_spectrum(&parse_subset(&z4, "{0,2}").unwrap(), &mut b)
            .unwrap()
            .unwrap();
        assert_eq!(s.to_vec(), vec![0, 1]);
        let z36 = parse_group("Z36").unwrap();
        let o36 = parse_subset(&z36, "{0,4,8,9,13,17}").unwrap();
        let s = find_spectrum(&o36, &mut b).unwrap().unwrap();
        assert_eq!(s.len(), 6);
        assert!(is_spectral_pair(&o36, &s).unwrap());
    }

    #[test]
    fn spectrum_via_pt_examples() {
        let mut b = Budget::unlimited();
        let z8 = parse_group("Z8").unwrap();
        let o = parse_subset(&z8, "{0,1,2,3}").unwrap();
        let l = spectrum_via_pt(&o, &parse_subset(&z8, "{0,4}").unwrap(), &mut b).unwrap();
        assert_eq!(l.to_vec(), vec![0, 2, 4, 6]);

        let g = parse_group("Z3xZ2").unwrap();
        let l = spectrum_via_pt(&GroupSubset::full(&g), &GroupSubset::zero(&g), &mut b).unwrap();
        assert_eq!(l, GroupSubset::full(&g));

        let z33 = parse_group("Z3^2").unwrap();
        let o = parse_subset(&z33, "{(0,0),(1,0),(2,0)}").unwrap();
        let t = parse_subset(&z33, "{(0,0),(0,1),(0,2)}").unwrap();
        let l = spectrum_via_pt(&o, &t, &mut b).unwrap();
        assert!(is_spectral_pair(&o, &l).unwrap());
        assert_eq!(l, parse_subset(&z33, "{(0,0),(1,0),(2,0)}").unwrap());

        let z36 = parse_group("Z36").unwrap();
        let o = parse_subset(&z36, "{0,4,8,9,13,17}").unwrap();
        let t = parse_subset(&z36, "{0,12,15,18,30,33}").unwrap();
        let l = spectrum_via_pt(&o, &t, &mut b).unwrap();
        assert!(is_spectral_pair(&o, &l).unwrap());
    }
}
