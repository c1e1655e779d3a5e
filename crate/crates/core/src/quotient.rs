//! Quotients `G/H` presented by their invariant factors.

use crate::error::{Error, Result};
use crate::group::Group;
use crate::snf::smith_normal_form;
use crate::subgroup::Subgroup;
use crate::subset::GroupSubset;

/// `G/H` with an explicit projection and section.
///
/// The quotient group is `Z_{d_1} x ... x Z_{d_r}` with `d_1 | ... | d_r`, the
/// nontrivial invariant factors. Cosets are labelled by quotient indices.
#[derive(Clone, Debug)]
pub struct Quotient {
    group: Group,
    subgroup: Subgroup,
    quotient: Group,
    invariant_factors: Vec<u64>,
    projection: Vec<usize>,
    section: Vec<usize>,
}

pub fn quotient(subgroup: &Subgroup) -> Result<Quotient> {
    Quotient::new(subgroup)
}

impl Quotient {
    pub fn new(subgroup: &Subgroup) -> Result<Self> {
        let g = subgroup.group().clone();
        if !crate::subgroup::is_subgroup(subgroup.carrier()) {
            return Err(Error::NotSubgroup);
        }
        let s = g.rank();
        let mut rows: Vec<Vec<i64>> = Vec::new();
        for (j, &n) in g.factors().iter().enumerate() {
            let mut r = vec![0i64; s];
            r[j] = n as i64;
            rows.push(r);
        }
        for &h in subgroup.generators() {
            rows.push(g.coords(h).into_iter().map(|c| c as i64).collect());
        }
        let (diag, v) = if s == 0 {
            (Vec::new(), Vec::new())
        } else {
            let smith = smith_normal_form(&rows, s)?;
            (smith.diagonal, smith.v)
        };
        // Every diagonal entry is positive since the factor rows give full rank.
        let keep: Vec<usize> = (0..diag.len()).filter(|&i| diag[i] > 1).collect();
        let invariant_factors: Vec<u64> = keep.iter().map(|&i| diag[i] as u64).collect();
        let quotient = Group::with_max_order(&invariant_factors, g.order() as u64)?;
        if quotient.order() * subgroup.order() != g.order() {
            return Err(Error::Internal(format!(
                "quotient order mismatch for {g} / {:?}",
                subgroup.carrier()
            )));
        }
        let mut projection = vec![0usize; g.order()];
        let mut section = vec![usize::MAX; quotient.order()];
        for (x, slot) in projection.iter_mut().enumerate() {
            let c = g.coords(x);
            let mut qc = Vec::with_capacity(keep.len());
            for &i in &keep {
                let mut acc: i128 = 0;
                for (j, &cj) in c.iter().enumerate() {
                    acc += cj as i128 * v[j][i] as i128;
                }
                qc.push(acc.rem_euclid(diag[i] as i128) as i64);
            }
            let q = quotient.index_of_reduced(&qc);
            *slot = q;
            if section[q] == usize::MAX {
                section[q] = x;
            }
        }
        Ok(Quotient {
            group: g,
            subgroup: subgroup.clone(),
            quotient,
            invariant_factors,
            projection,
            section,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// The quotient as a group in its own right.
    pub fn quotient_group(&self) -> &Group {
        &self.quotient
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    #[inline]
    pub fn project(&self, x: usize) -> usize {
        self.projection[x]
    }

    /// Least element of the coset labelled `q`.
    #[inline]
    pub fn section(&self, q: usize) -> usize {
        self.section[q]
    }

    pub fn project_set(&self, a: &GroupSubset) -> GroupSubset {
        GroupSubset::from_indices(&self.quotient, a.iter().map(|x| self.projection[x])).expect("projection in range")
    }

    /// Full preimage of a quotient subset.
    pub fn preimage(&self, a: &GroupSubset) -> GroupSubset {
        GroupSubset::from_indices(
            &self.group,
            (0..self.group.order()).filter(|&x| a.contains(self.projection[x])),
        )
        .expect("in range")
    }

    pub fn preimage_subgroup(&self, s: &Subgroup) -> Subgroup {
        Subgroup::from_subset(&self.preimage(s.carrier())).expect("preimage of a subgroup")
    }

    /// Minimal coset representatives of a quotient subset.
    pub fn section_set(&self, a: &GroupSubset) -> GroupSubset {
        GroupSubset::from_indices(&self.group, a.iter().map(|q| self.section[q])).expect("in range")
    }

    /// The character of `G` equal to `chi_gamma` composed with the projection.
    pub fn lift_character(&self, gamma: usize) -> usize {
        let g = &self.group;
        let nq = self.quotient.exponent();
        let mut coords = Vec::with_capacity(g.rank());
        for (j, &n) in g.factors().iter().enumerate() {
            let mut unit = vec![0u64; g.rank()];
            unit[j] = 1 % n;
            let ej = g.index_of(&unit).expect("unit vector");
            let e = self.quotient.pairing(gamma, self.projection[ej]);
            debug_assert_eq!((e * n) % nq, 0);
            coords.push(e * n / nq);
        }
        g.index_of(&coords).expect("lifted character in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::parse_group;
    use crate::subgroup::{all_subgroups, subgroup_generated_indices};

    #[test]
    fn examples() {
        let z8 = parse_group("Z8").unwrap();
        let q = quotient(&subgroup_generated_indices(&z8, &[4])).unwrap();
        assert_eq!(q.invariant_factors(), &[4]);

        let g = parse_group("Z4xZ2").unwrap();
        let h = subgroup_generated_indices(&g, &[g.index_of(&[2, 1]).unwrap()]);
        assert_eq!(quotient(&h).unwrap().invariant_factors(), &[4]);

        let g = parse_group("Z3^2").unwrap();
        let h = subgroup_generated_indices(&g, &[g.index_of(&[1, 1]).unwrap()]);
        assert_eq!(quotient(&h).unwrap().invariant_factors(), &[3]);
    }

    #[test]
    fn projection_is_homomorphism_with_subgroup_kernel() {
        let g = parse_group("Z6xZ4").unwrap();
        for h in all_subgroups(&g) {
            let q = quotient(&h).unwrap();
            let qg = q.quotient_group();
            for x in 0..g.order() {
                assert_eq!(q.project(x) == 0, h.contains(x));
                for y in [1, 5, 7] {
                    assert_eq!(q.project(g.add(x, y)), qg.add(q.project(x), q.project(y)));
                }
            }
            for c in 0..qg.order() {
                let s = q.section(c);
                assert_eq!(q.project(s), c);
                assert!((0..s).all(|x| q.project(x) != c));
                let lifted = q.lift_character(c);
                for x in 0..g.order() {
                    let lhs = g.pairing(lifted, x) * qg.exponent().max(1);
                    let rhs = qg.pairing(c, q.project(x)) * g.exponent();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
