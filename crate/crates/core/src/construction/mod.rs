//! Constrained chain maps: the data bundle, its auditor, and the direct
//! search pipeline that builds one from a favorable cover.
//!
//! A *constrained chain map* ties a chain map `γ : C(K) → C(ambient)` to a
//! set family `F` through a constraint map `Φ` assigning member-index sets
//! to simplices. The two laws — `Φ` commutes with intersections, and
//! `γ(σ)` is supported in the intersection of the members *not* named by
//! `Φ(σ)` — are exactly what makes disjointness in `K` translate into
//! disjoint supports downstairs, which is how these bundles certify
//! homological almost-embeddings.
//!
//! [`verify_constrained`] is a pure audit of a bundle. The `build_*`
//! functions assemble bundles by direct search, replacing the
//! Ramsey-number thresholds of the underlying argument: they succeed
//! whenever the family at hand is favorable and report insufficiency
//! otherwise.

mod build;
mod ramsey;
mod select;

pub use build::{
    alpha_map, build_constrained, build_dim0, build_dim1, build_step, psi_extend, BuildOutcome,
    BuildTrace, Insufficiency, PsiExtension, RecursiveBuilder,
};
pub use ramsey::ramsey_find;
pub(crate) use select::rescale_postconditions_hold;
pub use select::{rescale, selected_subset, RescaleOutcome, SelectionPattern};

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::chain_map::SimplicialChainMap;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::helly::SetFamily;
use crate::simplex::Simplex;

/// Assignment of member-index subsets to the simplices of a complex (and
/// to the empty simplex, which must get `∅`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintMap {
    map: BTreeMap<Simplex, BTreeSet<usize>>,
}

impl ConstraintMap {
    /// Build from an explicit table. The empty simplex is forced to `∅`;
    /// listing it with anything else is an error.
    pub fn new(map: BTreeMap<Simplex, BTreeSet<usize>>) -> Result<Self> {
        let empty = Simplex::empty();
        if let Some(v) = map.get(&empty) {
            if !v.is_empty() {
                return Err(Error::Input(
                    "the empty simplex must be assigned the empty index set".into(),
                ));
            }
        }
        let mut map = map;
        map.insert(empty, BTreeSet::new());
        Ok(ConstraintMap { map })
    }

    pub fn get(&self, s: &Simplex) -> Option<&BTreeSet<usize>> {
        self.map.get(s)
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.map.keys()
    }

    /// Pairs of assigned simplices violating
    /// `Φ(σ∩τ) = Φ(σ) ∩ Φ(τ)`.
    ///
    /// Pairs whose intersection has no assignment are also reported: the
    /// law is unverifiable for them.
    pub fn intersection_law_violations(&self) -> Vec<(Simplex, Simplex)> {
        let keys: Vec<&Simplex> = self.map.keys().collect();
        let mut bad = Vec::new();
        for (a, &s) in keys.iter().enumerate() {
            for &t in &keys[a..] {
                let meet = s.intersection(t);
                let lhs = self.map.get(&meet);
                let rhs: BTreeSet<usize> =
                    self.map[s].intersection(&self.map[t]).copied().collect();
                if lhs != Some(&rhs) {
                    bad.push((s.clone(), t.clone()));
                }
            }
        }
        bad
    }
}

/// One audit failure found in a [`ConstrainedChainMap`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ConstraintViolation {
    /// A simplex of the complex has no constraint assignment.
    MissingAssignment { simplex: String },
    /// `Φ(σ∩τ) ≠ Φ(σ) ∩ Φ(τ)` for this pair.
    IntersectionLaw { left: String, right: String },
    /// The chain-map law `∂γ(σ) = γ(∂σ)` fails at this simplex.
    ChainMapLaw { simplex: String },
    /// Some vertex image has even weight, so the map is trivial there.
    TrivialVertex { vertex: String },
    /// `γ(σ)` has support outside the designated intersection.
    SupportOutside { simplex: String },
}

/// Audit result: an empty violation list means the bundle checks out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintReport {
    pub violations: Vec<ConstraintViolation>,
}

impl ConstraintReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A chain map into a set family's ambient complex, constrained by `Φ`.
#[derive(Clone, Debug)]
pub struct ConstrainedChainMap {
    complex: SimplicialComplex,
    family: SetFamily,
    gamma: SimplicialChainMap,
    phi: ConstraintMap,
}

impl ConstrainedChainMap {
    /// Assemble a bundle. Shape errors (wrong source/target complexes)
    /// are rejected here; the semantic laws are checked by
    /// [`verify_constrained`].
    pub fn new(
        complex: SimplicialComplex,
        family: SetFamily,
        gamma: SimplicialChainMap,
        phi: ConstraintMap,
    ) -> Result<Self> {
        if gamma.source() != &complex {
            return Err(Error::Input("γ's source must be the bundle complex".into()));
        }
        if gamma.target() != family.ambient() {
            return Err(Error::Input(
                "γ's target must be the family's ambient complex".into(),
            ));
        }
        Ok(ConstrainedChainMap {
            complex,
            family,
            gamma,
            phi,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn gamma(&self) -> &SimplicialChainMap {
        &self.gamma
    }

    pub fn phi(&self) -> &ConstraintMap {
        &self.phi
    }
}

/// Audit a bundle against every law it claims: chain-map law and
/// nontriviality of `γ`, the `Φ` intersection law over all pairs, and the
/// support condition `supp γ(σ) ⊆ ⋂_{i ∉ Φ(σ)} Uᵢ` for every simplex.
pub fn verify_constrained(c: &ConstrainedChainMap) -> Result<ConstraintReport> {
    let mut violations = Vec::new();
    if let Err(bad) = c.gamma.verify() {
        for s in bad {
            violations.push(ConstraintViolation::ChainMapLaw {
                simplex: s.to_string(),
            });
        }
    }
    for v in c.complex.simplices_of_dim(0) {
        let image = c.gamma.image_of(v)?;
        if image.weight() % 2 == 0 {
            violations.push(ConstraintViolation::TrivialVertex {
                vertex: v.to_string(),
            });
        }
    }
    for (s, t) in c.phi.intersection_law_violations() {
        violations.push(ConstraintViolation::IntersectionLaw {
            left: s.to_string(),
            right: t.to_string(),
        });
    }
    for s in c.complex.all_simplices() {
        if s.is_empty() {
            continue;
        }
        let Some(indices) = c.phi.get(s) else {
            violations.push(ConstraintViolation::MissingAssignment {
                simplex: s.to_string(),
            });
            continue;
        };
        let allowed = c.family.u_set(indices)?;
        if !c.gamma.image_of(s)?.supported_in(&allowed) {
            violations.push(ConstraintViolation::SupportOutside {
                simplex: s.to_string(),
            });
        }
    }
    Ok(ConstraintReport { violations })
}

/// Decide homological almost-embedding for a verified bundle.
///
/// When the family's total intersection is empty, the constraint laws
/// force disjoint simplices to have disjoint image supports, so the
/// verdict must be positive — a negative answer there is an internal
/// contradiction and errors out. When the total intersection is nonempty
/// that guarantee lapses and the checker's raw verdict is returned.
pub fn almost_embedding_verdict(c: &ConstrainedChainMap) -> Result<bool> {
    let report = verify_constrained(c)?;
    if !report.is_ok() {
        return Err(Error::Unverified(format!(
            "bundle has {} constraint violations",
            report.violations.len()
        )));
    }
    let verdict = c.gamma.almost_embedding_verdict()?.holds();
    if c.family.total_intersection().is_empty_complex() && !verdict {
        return Err(Error::Invariant(
            "verified bundle over an empty-intersection family must be an almost-embedding".into(),
        ));
    }
    Ok(verdict)
}
