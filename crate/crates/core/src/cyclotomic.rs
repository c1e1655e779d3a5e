//! Exact integer polynomials, cyclotomic polynomials and vanishing sums of
//! roots of unity.
//!
//! `sum c_e z^e` with `z` a primitive `N`-th root of unity is zero exactly when
//! `Phi_N` divides `sum c_e X^e`. Since `Phi_N` is monic the remainder stays
//! integral, so the test never touches floating point.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::arith::{divisors, factorize, prime_power};
use crate::error::{Error, Result};
use crate::subset::GroupSubset;

pub const DEFAULT_MAX_CYCLOTOMIC: u64 = 4096;

/// Integer polynomial, coefficient `i` of `X^i`, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

fn ck_add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow("polynomial arithmetic"))
}

fn ck_mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow("polynomial arithmetic"))
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![1] }
    }

    /// `X^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![0i64; n + 1];
        c[0] = -1;
        c[n] += 1;
        IntPolynomial::new(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> i64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn eval(&self, x: i64) -> Result<i64> {
        let mut acc = 0i64;
        for &c in self.coeffs.iter().rev() {
            acc = ck_add(ck_mul(acc, x)?, c)?;
        }
        Ok(acc)
    }

    pub fn mul(&self, other: &IntPolynomial) -> Result<IntPolynomial> {
        if self.is_zero() || other.is_zero() {
            return Ok(IntPolynomial::zero());
        }
        let mut out = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = ck_add(out[i + j], ck_mul(a, b)?)?;
            }
        }
        Ok(IntPolynomial::new(out))
    }

    pub fn add(&self, other: &IntPolynomial) -> Result<IntPolynomial> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0i64; n];
        for (i, o) in out.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *o = ck_add(a, b)?;
        }
        Ok(IntPolynomial::new(out))
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, divisor: &IntPolynomial) -> Result<(IntPolynomial, IntPolynomial)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Precondition("division by the zero polynomial".into()))?;
        if divisor.leading() != 1 {
            return Err(Error::Precondition("divisor must be monic".into()));
        }
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((IntPolynomial::zero(), self.clone()));
        }
        let mut quot = vec![0i64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k];
            if c == 0 {
                continue;
            }
            quot[k - dd] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                rem[idx] = ck_add(rem[idx], -ck_mul(c, d)?)?;
            }
        }
        rem.truncate(dd);
        Ok((IntPolynomial::new(quot), IntPolynomial::new(rem)))
    }

    /// True when the monic `divisor` divides `self`.
    pub fn divisible_by(&self, divisor: &IntPolynomial) -> Result<bool> {
        Ok(self.div_rem_monic(divisor)?.1.is_zero())
    }
}

impl fmt::Display for IntPolynomial {
    /// Sparse ascending form, e.g. `1+X^4+X^8`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if c < 0 {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, mag) {
                (0, m) => write!(f, "{m}")?,
                (_, 1) => {}
                (_, m) => write!(f, "{m}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

type Memo<T> = OnceLock<RwLock<HashMap<u64, Arc<T>>>>;

static CYCLOTOMIC: Memo<IntPolynomial> = OnceLock::new();
static RESIDUES: Memo<Vec<Vec<i64>>> = OnceLock::new();

fn memo_get<T>(memo: &Memo<T>, n: u64) -> Option<Arc<T>> {
    memo.get_or_init(Default::default)
        .read()
        .expect("memo lock")
        .get(&n)
        .cloned()
}

fn memo_put<T>(memo: &Memo<T>, n: u64, v: Arc<T>) -> Arc<T> {
    memo.get_or_init(Default::default)
        .write()
        .expect("memo lock")
        .entry(n)
        .or_insert(v)
        .clone()
}

/// `Phi_n`, by exact division of `X^n - 1` by `Phi_d` for the proper divisors `d`.
pub fn cyclotomic_poly(n: u64) -> Result<Arc<IntPolynomial>> {
    cyclotomic_poly_with_max(n, DEFAULT_MAX_CYCLOTOMIC)
}

pub fn cyclotomic_poly_with_max(n: u64, max: u64) -> Result<Arc<IntPolynomial>> {
    if n == 0 || n > max {
        return Err(Error::Precondition(format!(
            "cyclotomic index must lie in 1..={max}, got {n}"
        )));
    }
    if let Some(p) = memo_get(&CYCLOTOMIC, n) {
        return Ok(p);
    }
    let mut acc = IntPolynomial::x_pow_minus_one(n as usize);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let phi_d = cyclotomic_poly_with_max(d, max)?;
        let (q, r) = acc.div_rem_monic(&phi_d)?;
        if !r.is_zero() {
            return Err(Error::Internal(format!("Phi_{d} does not divide X^{n}-1")));
        }
        acc = q;
    }
    Ok(memo_put(&CYCLOTOMIC, n, Arc::new(acc)))
}

/// Row `e` is the coefficient vector of `X^e mod Phi_n`, for `0 <= e < n`.
fn residue_table(n: u64) -> Result<Arc<Vec<Vec<i64>>>> {
    if let Some(t) = memo_get(&RESIDUES, n) {
        return Ok(t);
    }
    let phi = cyclotomic_poly(n)?;
    let d = phi.degree().unwrap_or(0);
    let mut rows = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; d];
    if d > 0 {
        cur[0] = 1;
    }
    for _ in 0..n {
        rows.push(cur.clone());
        // Multiply by X and reduce with X^d = -(phi_0 + ... + phi_{d-1} X^{d-1}).
        let top = if d > 0 { cur[d - 1] } else { 0 };
        for i in (1..d).rev() {
            cur[i] = cur[i - 1];
        }
        if d > 0 {
            cur[0] = 0;
        }
        if top != 0 {
            for (c, &f) in cur.iter_mut().zip(phi.coeffs()).take(d) {
                *c = ck_add(*c, -ck_mul(top, f)?)?;
            }
        }
    }
    Ok(memo_put(&RESIDUES, n, Arc::new(rows)))
}

/// Nonnegative counts `c_e` of exponents `e` modulo `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentMultiset {
    modulus: u64,
    counts: Vec<u64>,
}

impl ExponentMultiset {
    pub fn new(modulus: u64, counts: Vec<u64>) -> Result<Self> {
        if modulus == 0 || counts.len() as u64 != modulus {
            return Err(Error::Precondition(format!(
                "need {modulus} counts for modulus {modulus}, got {}",
                counts.len()
            )));
        }
        Ok(ExponentMultiset { modulus, counts })
    }

    pub fn zeros(modulus: u64) -> Self {
        assert!(modulus >= 1);
        ExponentMultiset {
            modulus,
            counts: vec![0; modulus as usize],
        }
    }

    /// Counts from a list of exponents, reduced modulo `N`.
    pub fn from_exponents<I: IntoIterator<Item = u64>>(modulus: u64, exps: I) -> Self {
        let mut m = Self::zeros(modulus);
        for e in exps {
            m.counts[(e % modulus) as usize] += 1;
        }
        m
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn add_exponent(&mut self, e: u64) {
        self.counts[(e % self.modulus) as usize] += 1;
    }

    pub fn polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.counts.iter().map(|&c| c as i64).collect())
    }
}

/// `sum c_e z_N^e == 0`.
pub fn is_vanishing_root_sum(m: &ExponentMultiset) -> bool {
    if prime_power(m.modulus).is_some() {
        vanishes_by_congruence_classes(m).expect("prime-power modulus")
    } else {
        vanishes_by_reduction(m).expect("residue table within limits")
    }
}

/// Reduces `sum c_e X^e` modulo `Phi_N` through the cached residue table.
pub fn vanishes_by_reduction(m: &ExponentMultiset) -> Result<bool> {
    let table = residue_table(m.modulus)?;
    let d = table.first().map_or(0, |r| r.len());
    let mut acc = vec![0i64; d];
    for (e, &c) in m.counts.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let c = i64::try_from(c).map_err(|_| Error::Overflow("exponent count"))?;
        for (a, &r) in acc.iter_mut().zip(&table[e]) {
            if r != 0 {
                *a = ck_add(*a, ck_mul(c, r)?)?;
            }
        }
    }
    Ok(acc.iter().all(|&a| a == 0))
}

/// For `N = p^n`: the sum vanishes iff `c_i = c_j` whenever `i = j mod p^(n-1)`.
pub fn vanishes_by_congruence_classes(m: &ExponentMultiset) -> Result<bool> {
    let (p, n) = prime_power(m.modulus).ok_or(Error::NotPrimePower(m.modulus))?;
    let step = (m.modulus / p) as usize;
    debug_assert_eq!(step as u64, p.pow(n - 1));
    Ok((0..step).all(|r| {
        let c0 = m.counts[r];
        (1..p as usize).all(|k| m.counts[r + k * step] == c0)
    }))
}

fn cyclic_modulus(a: &GroupSubset) -> Result<u64> {
    let g = a.group();
    if g.rank() > 1 {
        return Err(Error::NotCyclic(g.to_string()));
    }
    Ok(g.order() as u64)
}

/// `A(X) = sum_{a in A} X^a` for `A` inside a cyclic group.
pub fn mask_polynomial(a: &GroupSubset) -> Result<IntPolynomial> {
    let n = cyclic_modulus(a)? as usize;
    let mut c = vec![0i64; n];
    for x in a.iter() {
        c[x] = 1;
    }
    Ok(IntPolynomial::new(c))
}

/// Outcome of the two divisibility conditions on a mask polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct T1T2Report {
    /// Prime powers dividing `N`.
    pub s_n: Vec<u64>,
    /// Those `s` in `s_n` with `Phi_s | A(X)`.
    pub s_a: Vec<u64>,
    pub t1: bool,
    pub t2: bool,
    /// First product `s_1 ... s_k` whose cyclotomic polynomial fails to divide `A(X)`.
    pub t2_failure: Option<u64>,
}

#[allow(non_snake_case)]
pub fn check_T1_T2(a: &GroupSubset) -> Result<T1T2Report> {
    let n = cyclic_modulus(a)?;
    let poly = mask_polynomial(a)?;
    let mut s_n = Vec::new();
    for (p, k) in factorize(n) {
        let mut q = 1u64;
        for _ in 0..k {
            q *= p;
            s_n.push(q);
        }
    }
    s_n.sort_unstable();
    let mut s_a = Vec::new();
    for &s in &s_n {
        if poly.divisible_by(&*cyclotomic_poly(s)?)? {
            s_a.push(s);
        }
    }
    // Phi_{p^k}(1) = p.
    let product: u64 = s_a.iter().map(|&s| prime_power(s).expect("prime power").0).product();
    let t1 = product == a.len() as u64;

    let mut by_prime: Vec<(u64, Vec<u64>)> = Vec::new();
    for &s in &s_a {
        let p = prime_power(s).expect("prime power").0;
        match by_prime.iter_mut().find(|(q, _)| *q == p) {
            Some((_, v)) => v.push(s),
            None => by_prime.push((p, vec![s])),
        }
    }
    let mut t2_failure = None;
    // Each prime contributes one of its prime powers or nothing.
    let mut choice = vec![0usize; by_prime.len()];
    'outer: loop {
        let picked: Vec<u64> = choice
            .iter()
            .zip(&by_prime)
            .filter(|(&c, _)| c > 0)
            .map(|(&c, (_, v))| v[c - 1])
            .collect();
        if picked.len() >= 2 {
            let s: u64 = picked.iter().product();
            if !poly.divisible_by(&*cyclotomic_poly(s)?)? {
                t2_failure = Some(s);
                break 'outer;
            }
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                break 'outer;
            }
            choice[i] += 1;
            if choice[i] <= by_prime[i].1.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
    Ok(T1T2Report {
        s_n,
        s_a,
        t1,
        t2: t2_failure.is_none(),
        t2_failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Group;

    fn numeric_vanishes(m: &ExponentMultiset) -> bool {
        let n = m.modulus() as f64;
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for (e, &c) in m.counts().iter().enumerate() {
            let t = std::f64::consts::TAU * e as f64 / n;
            re += c as f64 * t.cos();
            im += c as f64 * t.sin();
        }
        re.hypot(im) < 1e-9
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_poly(1).unwrap().coeffs(), &[-1, 1]);
        assert_eq!(cyclotomic_poly(4).unwrap().coeffs(), &[1, 0, 1]);
        let p36 = cyclotomic_poly(36).unwrap();
        let mut want = vec![0i64; 13];
        want[0] = 1;
        want[6] = -1;
        want[12] = 1;
        assert_eq!(p36.coeffs(), want.as_slice());
        assert_eq!(p36.to_string(), "1-X^6+X^12");
        assert!(cyclotomic_poly(0).is_err());
        assert!(cyclotomic_poly(5000).is_err());
    }

    #[test]
    fn phi_36_vanishes_at_primitive_root_numerically() {
        let p = cyclotomic_poly(36).unwrap();
        let t = std::f64::consts::TAU / 36.0;
        let (mut re, mut im) = (0.0, 0.0);
        for (i, &c) in p.coeffs().iter().enumerate() {
            re += c as f64 * (t * i as f64).cos();
            im += c as f64 * (t * i as f64).sin();
        }
        assert!(re.hypot(im) < 1e-9);
    }

    #[test]
    fn vanishing_examples() {
        let v = |n, e: &[u64]| is_vanishing_root_sum(&ExponentMultiset::from_exponents(n, e.iter().copied()));
        assert!(v(4, &[0, 2]));
        assert!(v(3, &[0, 1, 2]));
        assert!(v(8, &[0, 1, 4, 5]));
        assert!(!v(8, &[0, 1, 2]));
        assert!(v(6, &[0, 2, 4]));
        assert!(v(6, &[1, 4]));
        assert!(!v(6, &[0, 1]));
        assert!(v(1, &[]));
        assert!(!v(1, &[0]));
    }

    #[test]
    fn masks() {
        let z8 = Group::cyclic(8).unwrap();
        let a = GroupSubset::from_indices(&z8, [0, 1, 2, 3]).unwrap();
        assert_eq!(mask_polynomial(&a).unwrap().to_string(), "1+X+X^2+X^3");
        let z36 = Group::cyclic(36).unwrap();
        let b = GroupSubset::from_indices(&z36, [0, 4, 8, 9, 13, 17]).unwrap();
        assert_eq!(mask_polynomial(&b).unwrap().to_string(), "1+X^4+X^8+X^9+X^13+X^17");
        let g = crate::group::parse_group("Z2^2").unwrap();
        assert!(matches!(
            mask_polynomial(&GroupSubset::zero(&g)),
            Err(Error::NotCyclic(_))
        ));
    }

    #[test]
    fn t1_t2_examples() {
        let z8 = Group::cyclic(8).unwrap();
        let r = check_T1_T2(&GroupSubset::from_indices(&z8, [0, 1, 2, 3]).unwrap()).unwrap();
        assert_eq!(r.s_n, vec![2, 4, 8]);
        assert_eq!(r.s_a, vec![2, 4]);
        assert!(r.t1 && r.t2);

        let z4 = Group::cyclic(4).unwrap();
        let r = check_T1_T2(&GroupSubset::zero(&z4)).unwrap();
        assert!(r.s_a.is_empty() && r.t1 && r.t2);

        let z36 = Group::cyclic(36).unwrap();
        let r = check_T1_T2(&GroupSubset::from_indices(&z36, (0..6).map(|i| 6 * i)).unwrap()).unwrap();
        // A(X) = (X^36 - 1)/(X^6 - 1) is the product of Phi_d over d | 36 with d not dividing 6.
        assert_eq!(r.s_a, vec![4, 9]);
        assert!(r.t1 && r.t2);

        // {0,1,3} in Z6 is not a tile: A(1)=3 but no Phi_3-type factor.
        let z6 = Group::cyclic(6).unwrap();
        let r = check_T1_T2(&GroupSubset::from_indices(&z6, [0, 1, 3]).unwrap()).unwrap();
        assert!(!r.t1);
    }

    #[test]
    fn product_of_cyclotomics_is_x_n_minus_one() {
        for n in 1..=60u64 {
            let mut acc = IntPolynomial::one();
            for d in divisors(n) {
                acc = acc.mul(&cyclotomic_poly(d).unwrap()).unwrap();
            }
            assert_eq!(acc, IntPolynomial::x_pow_minus_one(n as usize), "n = {n}");
            assert_eq!(
                cyclotomic_poly(n).unwrap().degree(),
                Some(crate::arith::euler_phi(n) as usize)
            );
        }
    }

    #[test]
    fn congruence_criterion_matches_reduction_exhaustively() {
        for n in [4u64, 8, 9, 16] {
            for mask in 0u32..(1 << n) {
                let counts = (0..n).map(|e| ((mask >> e) & 1) as u64).collect();
                let m = ExponentMultiset::new(n, counts).unwrap();
                assert_eq!(
                    vanishes_by_congruence_classes(&m).unwrap(),
                    vanishes_by_reduction(&m).unwrap(),
                    "N={n} mask={mask:b}"
                );
            }
        }
    }

    #[test]
    fn reduction_matches_numeric_on_small_moduli() {
        for n in 1u64..=12 {
            for mask in 0u32..(1 << n) {
                let counts: Vec<u64> = (0..n).map(|e| ((mask >> e) & 1) as u64).collect();
                let m = ExponentMultiset::new(n, counts).unwrap();
                assert_eq!(vanishes_by_reduction(&m).unwrap(), numeric_vanishes(&m), "N={n}");
            }
        }
    }
}
