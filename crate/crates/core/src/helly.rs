//! Families of subcomplexes of one ambient complex: intersections, Helly
//! numbers, and reduced-Betti-number audits.
//!
//! A [`SetFamily`] holds members `U₀…U_{n−1}`, each a subcomplex of a fixed
//! ambient complex, so every subfamily intersection is again a subcomplex
//! with computable GF(2) homology. Indices are 0-based throughout.
//!
//! The audit answers one question about a family: how large do the reduced
//! Betti numbers of proper subfamily intersections get in low dimensions?
//! That maximum is exactly the parameter relating such a family to a bound
//! on its Helly number.

use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::gf2::Gf2Vec;
use crate::homology::BoundaryComplex;
use crate::simplex::Simplex;

/// An ordered family of subcomplexes of an ambient complex.
#[derive(Clone, Debug)]
pub struct SetFamily {
    ambient: SimplicialComplex,
    /// All nonempty simplices of the ambient, sorted; the mask coordinate
    /// space.
    simplices: Vec<Simplex>,
    members: Vec<SimplicialComplex>,
    /// `masks[i]` has a bit per ambient simplex: membership in `Uᵢ`.
    masks: Vec<Gf2Vec>,
}

impl SetFamily {
    /// Build a family, checking every member is a subcomplex of the
    /// ambient.
    pub fn new(ambient: SimplicialComplex, members: Vec<SimplicialComplex>) -> Result<Self> {
        let simplices: Vec<Simplex> = ambient
            .all_simplices()
            .filter(|s| !s.is_empty())
            .cloned()
            .collect();
        let mut masks = Vec::with_capacity(members.len());
        for (index, m) in members.iter().enumerate() {
            if !m.is_subcomplex_of(&ambient) {
                return Err(Error::NotASubcomplex { index });
            }
            let mut mask = Gf2Vec::zeros(simplices.len());
            for (j, s) in simplices.iter().enumerate() {
                if m.contains(s) {
                    mask.set(j, true);
                }
            }
            masks.push(mask);
        }
        Ok(SetFamily {
            ambient,
            simplices,
            members,
            masks,
        })
    }

    pub fn n(&self) -> usize {
        self.members.len()
    }

    pub fn ambient(&self) -> &SimplicialComplex {
        &self.ambient
    }

    pub fn members(&self) -> &[SimplicialComplex] {
        &self.members
    }

    pub fn member(&self, i: usize) -> Result<&SimplicialComplex> {
        self.members.get(i).ok_or(Error::MemberIndex {
            index: i,
            len: self.members.len(),
        })
    }

    fn check_indices<'a>(&self, indices: impl IntoIterator<Item = &'a usize>) -> Result<()> {
        for &i in indices {
            if i >= self.n() {
                return Err(Error::MemberIndex {
                    index: i,
                    len: self.n(),
                });
            }
        }
        Ok(())
    }

    fn complex_from_mask(&self, mask: &Gf2Vec) -> SimplicialComplex {
        SimplicialComplex::from_simplices(mask.ones().map(|j| self.simplices[j].clone()))
    }

    fn intersection_mask(&self, subset: &BTreeSet<usize>) -> Gf2Vec {
        let mut mask = Gf2Vec::ones_vec(self.simplices.len());
        for &i in subset {
            mask.and_assign(&self.masks[i]);
        }
        mask
    }

    /// `∩_{i∈subset} Uᵢ`; the empty subset gives the ambient complex.
    pub fn intersection_of(&self, subset: &BTreeSet<usize>) -> Result<SimplicialComplex> {
        self.check_indices(subset)?;
        if subset.is_empty() {
            return Ok(self.ambient.clone());
        }
        Ok(self.complex_from_mask(&self.intersection_mask(subset)))
    }

    /// The complement-convention intersection: members *not* indexed by
    /// `exempt` are intersected. The full index set gives the ambient; the
    /// empty set gives `∩F`.
    pub fn u_set(&self, exempt: &BTreeSet<usize>) -> Result<SimplicialComplex> {
        self.check_indices(exempt)?;
        let rest: BTreeSet<usize> = (0..self.n()).filter(|i| !exempt.contains(i)).collect();
        self.intersection_of(&rest)
    }

    /// Intersection of the whole family.
    pub fn total_intersection(&self) -> SimplicialComplex {
        self.u_set(&BTreeSet::new())
            .expect("empty exempt set is always valid")
    }

    /// Compute the Helly number and the antichain of minimal
    /// empty-intersection subfamilies.
    ///
    /// Subsets are scanned smallest-first; any superset of a known empty
    /// subfamily is skipped, so each recorded subfamily is minimal. The
    /// Helly number is 1 when no subfamily has empty intersection,
    /// otherwise the largest minimal witness size.
    pub fn helly_number(&self, budget: &Budget) -> Result<HellyAnalysis> {
        budget.check_family(self.n())?;
        let mut empties: Vec<BTreeSet<usize>> = Vec::new();
        for size in 1..=self.n() {
            for subset in (0..self.n()).combinations(size) {
                let subset: BTreeSet<usize> = subset.into_iter().collect();
                if empties.iter().any(|e| e.is_subset(&subset)) {
                    continue;
                }
                if self.intersection_mask(&subset).is_zero() {
                    empties.push(subset);
                }
            }
        }
        let helly_number = empties.iter().map(|e| e.len()).max().unwrap_or(1);
        let mut minimal_empty_subfamilies: Vec<Vec<usize>> = empties
            .into_iter()
            .map(|e| e.into_iter().collect())
            .collect();
        minimal_empty_subfamilies.sort();
        Ok(HellyAnalysis {
            helly_number,
            minimal_empty_subfamilies,
        })
    }

    /// Audit the reduced Betti numbers `β̃ᵢ(∩G)` of all proper subfamilies
    /// `G ⊊ F` (including the empty subfamily, whose intersection is the
    /// ambient) for `0 ≤ i ≤ max_i`.
    pub fn hypothesis_audit_to(&self, max_i: isize, budget: &Budget) -> Result<HypothesisReport> {
        budget.check_family(self.n())?;
        let subsets: Vec<Vec<usize>> = (0..=self.n().saturating_sub(1))
            .flat_map(|size| (0..self.n()).combinations(size))
            .collect();
        let rows: Vec<AuditRow> = subsets
            .par_iter()
            .map(|subset| {
                let set: BTreeSet<usize> = subset.iter().copied().collect();
                let complex = if set.is_empty() {
                    self.ambient.clone()
                } else {
                    self.complex_from_mask(&self.intersection_mask(&set))
                };
                let chain = BoundaryComplex::from_simplicial(&complex);
                let reduced_betti: Vec<usize> =
                    (0..=max_i).map(|i| chain.betti(i as usize, true)).collect();
                AuditRow {
                    subset: subset.clone(),
                    reduced_betti,
                }
            })
            .collect();
        let max_betti = rows
            .iter()
            .flat_map(|r| r.reduced_betti.iter().copied())
            .max()
            .unwrap_or(0);
        let helly_number = self.helly_number(budget)?.helly_number;
        Ok(HypothesisReport {
            d: None,
            max_i,
            rows,
            max_betti,
            helly_number,
        })
    }

    /// Audit for an ambient dimension parameter `d`: the checked range is
    /// `0 ≤ i ≤ ⌈d/2⌉ − 1` (empty when `d = 0`).
    pub fn hypothesis_audit(&self, d: usize, budget: &Budget) -> Result<HypothesisReport> {
        let max_i = (d as isize + 1) / 2 - 1;
        let mut report = self.hypothesis_audit_to(max_i, budget)?;
        report.d = Some(d);
        Ok(report)
    }
}

/// Helly number plus the witnessing antichain.
#[derive(Clone, Debug, Serialize)]
pub struct HellyAnalysis {
    pub helly_number: usize,
    /// Every minimal subfamily with empty intersection, as sorted index
    /// lists, the list itself lexicographically sorted; empty iff the
    /// whole family intersects.
    pub minimal_empty_subfamilies: Vec<Vec<usize>>,
}

/// One audited subfamily: its member indices and reduced Betti numbers
/// `β̃₀ … β̃_{max_i}` of its intersection.
#[derive(Clone, Debug, Serialize)]
pub struct AuditRow {
    pub subset: Vec<usize>,
    pub reduced_betti: Vec<usize>,
}

/// Outcome of a Betti-number audit over all proper subfamilies.
#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    /// The dimension parameter the audit range was derived from, if any.
    pub d: Option<usize>,
    /// Largest homology degree audited (negative: no degrees audited).
    pub max_i: isize,
    pub rows: Vec<AuditRow>,
    /// Maximum audited reduced Betti number; the least `b` for which all
    /// audited values are `≤ b`.
    pub max_betti: usize,
    pub helly_number: usize,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gamma_family, interval_family, skeleton_family, tight_family};

    fn s(vs: &[usize]) -> Simplex {
        Simplex::new(vs.iter().copied()).unwrap()
    }

    fn budget() -> Budget {
        Budget::default()
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn member_validation() {
        let ambient = SimplicialComplex::from_simplices([s(&[0, 1])]);
        let bad = SimplicialComplex::from_simplices([s(&[1, 2])]);
        match SetFamily::new(ambient, vec![bad]) {
            Err(Error::NotASubcomplex { index: 0 }) => {}
            other => panic!("expected subcomplex error, got {other:?}"),
        }
    }

    #[test]
    fn u_set_conventions() {
        let f = gamma_family(1, 2).unwrap();
        assert_eq!(f.n(), 4);
        let all: BTreeSet<usize> = (0..4).collect();
        assert_eq!(&f.u_set(&all).unwrap(), f.ambient());
        assert_eq!(f.total_intersection(), SimplicialComplex::empty());
        // Exempting one member leaves its deleted vertex available.
        assert!(f.u_set(&set(&[0])).unwrap().num_vertices() > 0);
        assert!(f.u_set(&set(&[9])).is_err());
    }

    #[test]
    fn u_set_is_multiplicative() {
        let f = gamma_family(1, 2).unwrap();
        let n = f.n();
        for i_bits in 0..1u32 << n {
            for j_bits in 0..1u32 << n {
                let i: BTreeSet<usize> = (0..n).filter(|b| i_bits >> b & 1 == 1).collect();
                let j: BTreeSet<usize> = (0..n).filter(|b| j_bits >> b & 1 == 1).collect();
                let meet: BTreeSet<usize> = i.intersection(&j).copied().collect();
                assert_eq!(
                    f.u_set(&i).unwrap().intersect(&f.u_set(&j).unwrap()),
                    f.u_set(&meet).unwrap()
                );
            }
        }
    }

    #[test]
    fn helly_number_of_the_coned_sphere_family() {
        let f = gamma_family(1, 2).unwrap();
        let analysis = f.helly_number(&budget()).unwrap();
        assert_eq!(analysis.helly_number, 4);
        // The whole family is the unique minimal empty-intersection
        // subfamily.
        assert_eq!(analysis.minimal_empty_subfamilies, vec![vec![0, 1, 2, 3]]);
        let f2 = gamma_family(2, 2).unwrap();
        assert_eq!(f2.helly_number(&budget()).unwrap().helly_number, 8);
    }

    #[test]
    fn helly_number_of_skeleton_families() {
        let f = skeleton_family(6, 1).unwrap();
        assert_eq!(f.helly_number(&budget()).unwrap().helly_number, 6);
        let pts = skeleton_family(5, 0).unwrap();
        assert_eq!(pts.helly_number(&budget()).unwrap().helly_number, 5);
    }

    #[test]
    fn helly_number_of_interval_families() {
        for n in 1..=5 {
            let f = interval_family(n).unwrap();
            assert_eq!(
                f.helly_number(&budget()).unwrap().helly_number,
                n,
                "intervals n={n}"
            );
        }
    }

    #[test]
    fn helly_number_of_tight_families() {
        let f = tight_family(2, 2, 3).unwrap();
        assert_eq!(f.helly_number(&budget()).unwrap().helly_number, 3);
        let g = tight_family(3, 2, 5).unwrap();
        assert_eq!(g.helly_number(&budget()).unwrap().helly_number, 5);
    }

    #[test]
    fn helly_one_iff_family_intersects() {
        // All members share vertex 0.
        let ambient = SimplicialComplex::from_simplices([s(&[0, 1]), s(&[0, 2])]);
        let m1 = SimplicialComplex::from_simplices([s(&[0, 1])]);
        let m2 = SimplicialComplex::from_simplices([s(&[0, 2])]);
        let f = SetFamily::new(ambient, vec![m1, m2]).unwrap();
        assert!(!f.total_intersection().is_empty_complex());
        let analysis = f.helly_number(&budget()).unwrap();
        assert_eq!(analysis.helly_number, 1);
        assert!(analysis.minimal_empty_subfamilies.is_empty());
    }

    #[test]
    fn helly_respects_family_budget() {
        let f = skeleton_family(21, 0).unwrap();
        match f.helly_number(&budget()) {
            Err(Error::BudgetExceeded { .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn audit_reports_the_ambient_row() {
        // 1-skeleton of the 5-simplex: β̃₁ = C(5,2) = 10 on the ambient.
        let f = skeleton_family(6, 1).unwrap();
        let report = f.hypothesis_audit(4, &budget()).unwrap();
        assert_eq!(report.max_i, 1);
        let ambient_row = report
            .rows
            .iter()
            .find(|r| r.subset.is_empty())
            .expect("empty subfamily audited");
        assert_eq!(ambient_row.reduced_betti, vec![0, 10]);
        assert_eq!(report.max_betti, 10);
        assert_eq!(report.helly_number, 6);
    }

    #[test]
    fn audit_of_the_coned_sphere_family() {
        let f = gamma_family(1, 2).unwrap();
        // For the dimension parameter 2 only β̃₀ is audited: every proper
        // intersection is connected or empty.
        let report = f.hypothesis_audit(2, &budget()).unwrap();
        assert_eq!(report.max_i, 0);
        assert_eq!(report.max_betti, 0);
        // One degree up the single sphere appears.
        let wider = f.hypothesis_audit_to(1, &budget()).unwrap();
        assert_eq!(wider.max_betti, 1);
    }

    #[test]
    fn audit_of_tight_families_is_acyclic() {
        let f = tight_family(2, 2, 3).unwrap();
        let report = f.hypothesis_audit(2, &budget()).unwrap();
        assert_eq!(report.max_betti, 0);
        let wider = f.hypothesis_audit_to(1, &budget()).unwrap();
        assert_eq!(wider.max_betti, 0);
    }

    #[test]
    fn audit_of_interval_families() {
        let f = interval_family(3).unwrap();
        let report = f.hypothesis_audit_to(0, &budget()).unwrap();
        // β̃₀ of an intersection of k members stays below k.
        for row in &report.rows {
            assert!(
                row.reduced_betti[0] <= row.subset.len().max(1),
                "subset {:?} has β̃₀ = {}",
                row.subset,
                row.reduced_betti[0]
            );
        }
        // Path subcomplexes have no higher homology.
        let wider = f.hypothesis_audit_to(2, &budget()).unwrap();
        assert_eq!(wider.max_betti, report.max_betti);
    }

    #[test]
    fn audit_with_no_degrees_has_zero_max() {
        let f = gamma_family(1, 2).unwrap();
        let report = f.hypothesis_audit(0, &budget()).unwrap();
        assert_eq!(report.max_i, -1);
        assert_eq!(report.max_betti, 0);
        assert!(report.rows.iter().all(|r| r.reduced_betti.is_empty()));
    }
}
