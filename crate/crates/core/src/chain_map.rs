//! Simplicial chain maps, homological almost-embeddings, and staircase
//! triangulations of products of simplices.
//!
//! A [`SimplicialChainMap`] assigns to each simplex of a source complex a
//! GF(2) chain of the same dimension in a target complex and extends
//! linearly. The almost-embedding check asks that vertex images have odd
//! weight and that vertex-disjoint source simplices have vertex-disjoint
//! image supports — the combinatorial shadow of mapping disjoint faces to
//! disjoint subsets of the target.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rayon::prelude::*;

use crate::complex::{SimplicialComplex, Subdivision};
use crate::error::{Error, Result};
use crate::homology::Chain;
use crate::simplex::Simplex;

/// A GF(2) chain map between simplicial complexes, given by the images of
/// all nonempty simplices of the source.
#[derive(Clone, Debug)]
pub struct SimplicialChainMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    assignment: BTreeMap<Simplex, Chain>,
}

/// Verdict of the almost-embedding check, carrying the first violation
/// found when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HaeVerdict {
    AlmostEmbedding,
    /// Some vertex maps to a 0-chain of even weight.
    EvenVertexImage(Simplex),
    /// Two vertex-disjoint source simplices whose image supports share the
    /// listed target vertices.
    OverlappingPair {
        left: Simplex,
        right: Simplex,
        shared: BTreeSet<usize>,
    },
}

impl HaeVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, HaeVerdict::AlmostEmbedding)
    }
}

impl SimplicialChainMap {
    /// Build a chain map from an explicit assignment.
    ///
    /// Every nonempty simplex of `source` needs an image chain of its own
    /// dimension supported in `target`; entries for unknown simplices are
    /// rejected. The chain-map law is *not* checked here — see
    /// [`SimplicialChainMap::verify`].
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        assignment: BTreeMap<Simplex, Chain>,
    ) -> Result<Self> {
        for s in assignment.keys() {
            if s.is_empty() || !source.contains(s) {
                return Err(Error::Input(format!(
                    "assignment names {s:?}, which is not a nonempty source simplex"
                )));
            }
        }
        for s in source.all_simplices() {
            if s.is_empty() {
                continue;
            }
            let image = assignment
                .get(s)
                .ok_or_else(|| Error::Input(format!("no image assigned to {s:?}")))?;
            if image.grade() != s.dim() {
                return Err(Error::GradeMismatch {
                    got: image.grade(),
                    expected: s.dim(),
                });
            }
            if !image.supported_in(&target) {
                return Err(Error::SupportOutsideComplex);
            }
        }
        Ok(SimplicialChainMap {
            source,
            target,
            assignment,
        })
    }

    /// The chain map induced by a nondegenerate simplicial vertex map.
    ///
    /// `f` must be defined on every source vertex, injective on each
    /// simplex, and must send each simplex to a simplex of `target`.
    pub fn induced(
        source: &SimplicialComplex,
        target: &SimplicialComplex,
        f: &BTreeMap<usize, usize>,
    ) -> Result<Self> {
        let mut assignment = BTreeMap::new();
        for s in source.all_simplices() {
            if s.is_empty() {
                continue;
            }
            let image = s.map_vertices(|v| f.get(&v).copied().ok_or(Error::UnknownVertex(v)))?;
            if !target.contains(&image) {
                return Err(Error::NotSimplicial(format!(
                    "image {image:?} of {s:?} is not a target simplex"
                )));
            }
            assignment.insert(s.clone(), Chain::single(image));
        }
        SimplicialChainMap::new(source.clone(), target.clone(), assignment)
    }

    /// The identity chain map of a complex.
    pub fn identity(k: &SimplicialComplex) -> Self {
        let f: BTreeMap<usize, usize> = k.vertex_set().iter().map(|&v| (v, v)).collect();
        SimplicialChainMap::induced(k, k, &f).expect("identity map is always simplicial")
    }

    /// The subdivision chain map `C(K) → C(sd K)`: each simplex goes to the
    /// sum of the top cells of its own subdivision.
    pub fn subdivision(k: &SimplicialComplex, sd: &Subdivision) -> Result<Self> {
        let mut assignment = BTreeMap::new();
        for s in k.all_simplices() {
            if s.is_empty() {
                continue;
            }
            let cells = sd.top_cells_within(s);
            assignment.insert(s.clone(), Chain::new(s.dim(), cells)?);
        }
        SimplicialChainMap::new(k.clone(), sd.complex.clone(), assignment)
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    /// The image chain of a single source simplex.
    pub fn image_of(&self, s: &Simplex) -> Result<&Chain> {
        self.assignment
            .get(s)
            .ok_or_else(|| Error::MissingSimplex(format!("{s:?}")))
    }

    /// Linear extension to chains.
    pub fn apply(&self, c: &Chain) -> Result<Chain> {
        let mut acc = Chain::zero(c.grade());
        for s in c.support() {
            acc = acc.add(self.image_of(s)?)?;
        }
        Ok(acc)
    }

    /// Check the chain-map law `∂(γ(σ)) = γ(∂σ)` on every simplex,
    /// returning the violating simplices.
    pub fn verify(&self) -> std::result::Result<(), Vec<Simplex>> {
        let mut bad = Vec::new();
        for (s, image) in &self.assignment {
            let lhs = image.boundary();
            let rhs = self
                .apply(&Chain::single(s.clone()).boundary())
                .expect("boundary simplices have assigned images");
            if lhs != rhs {
                bad.push(s.clone());
            }
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(bad)
        }
    }

    /// True iff every source vertex maps to a 0-chain of odd weight.
    pub fn is_nontrivial(&self) -> bool {
        self.source
            .simplices_of_dim(0)
            .iter()
            .all(|v| self.assignment[v].weight() % 2 == 1)
    }

    /// Decide whether the map is a homological almost-embedding:
    /// nontrivial, and vertex-disjoint source simplices have
    /// vertex-disjoint image supports.
    ///
    /// Errors if the chain-map law fails (the notion is only defined for
    /// chain maps).
    pub fn almost_embedding_verdict(&self) -> Result<HaeVerdict> {
        if self.verify().is_err() {
            return Err(Error::Input("chain-map law fails".into()));
        }
        for v in self.source.simplices_of_dim(0) {
            if self.assignment[v].weight().is_multiple_of(2) {
                return Ok(HaeVerdict::EvenVertexImage(v.clone()));
            }
        }
        let simplices: Vec<&Simplex> = self
            .source
            .all_simplices()
            .filter(|s| !s.is_empty())
            .collect();
        let supports: Vec<BTreeSet<usize>> = simplices
            .iter()
            .map(|s| self.assignment[*s].vertex_support())
            .collect();
        let pairs: Vec<(usize, usize)> = (0..simplices.len())
            .tuple_combinations()
            .filter(|&(i, j)| simplices[i].disjoint_from(simplices[j]))
            .collect();
        let violation = pairs
            .par_iter()
            .find_first(|&&(i, j)| !supports[i].is_disjoint(&supports[j]))
            .copied();
        match violation {
            None => Ok(HaeVerdict::AlmostEmbedding),
            Some((i, j)) => Ok(HaeVerdict::OverlappingPair {
                left: simplices[i].clone(),
                right: simplices[j].clone(),
                shared: supports[i].intersection(&supports[j]).copied().collect(),
            }),
        }
    }

    /// Composition `self ∘ inner` (apply `inner` first).
    pub fn compose(&self, inner: &SimplicialChainMap) -> Result<SimplicialChainMap> {
        if inner.target != self.source {
            return Err(Error::Input(
                "composition requires inner target = outer source".into(),
            ));
        }
        let mut assignment = BTreeMap::new();
        for (s, mid) in &inner.assignment {
            assignment.insert(s.clone(), self.apply(mid)?);
        }
        SimplicialChainMap::new(inner.source.clone(), self.target.clone(), assignment)
    }
}

/// The staircase triangulation of the product of a `p`-simplex and a
/// `q`-simplex.
///
/// Vertices are grid points `(i, j)` with `0 ≤ i ≤ p`, `0 ≤ j ≤ q`,
/// encoded as `i·(q+1) + j`; maximal simplices are the monotone staircases
/// from `(0,0)` to `(p,q)`, i.e. the maximal chains of the coordinatewise
/// partial order.
#[derive(Clone, Debug)]
pub struct StaircaseTriangulation {
    p: usize,
    q: usize,
    complex: SimplicialComplex,
}

impl StaircaseTriangulation {
    pub fn new(p: usize, q: usize) -> Self {
        let mut tops = Vec::new();
        // A staircase is determined by which of its p+q unit steps move in
        // the first coordinate.
        for right_steps in (0..p + q).combinations(p) {
            let rights: BTreeSet<usize> = right_steps.into_iter().collect();
            let mut i = 0usize;
            let mut j = 0usize;
            let mut verts = vec![Self::encode(q, i, j)];
            for step in 0..p + q {
                if rights.contains(&step) {
                    i += 1;
                } else {
                    j += 1;
                }
                verts.push(Self::encode(q, i, j));
            }
            tops.push(Simplex::new(verts).expect("distinct grid points"));
        }
        StaircaseTriangulation {
            p,
            q,
            complex: SimplicialComplex::from_simplices(tops),
        }
    }

    fn encode(q: usize, i: usize, j: usize) -> usize {
        i * (q + 1) + j
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Vertex id of the grid point `(i, j)`.
    pub fn vertex_id(&self, i: usize, j: usize) -> usize {
        assert!(i <= self.p && j <= self.q);
        Self::encode(self.q, i, j)
    }

    /// Grid point of a vertex id.
    pub fn grid_point(&self, id: usize) -> (usize, usize) {
        (id / (self.q + 1), id % (self.q + 1))
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// The staircase simplices (maximal, dimension `p+q`).
    pub fn staircases(&self) -> &[Simplex] {
        self.complex.simplices_of_dim((self.p + self.q) as isize)
    }

    /// Number of staircases; always `C(p+q, p)`.
    pub fn count(&self) -> usize {
        self.staircases().len()
    }

    /// The formal sum of all staircases: the product cell as a GF(2)
    /// chain.
    pub fn staircase_chain(&self) -> Chain {
        Chain::new(
            (self.p + self.q) as isize,
            self.staircases().iter().cloned(),
        )
        .expect("staircases all have dimension p+q")
    }

    /// Flip `(i,j) ↦ (j,i)`, re-encoded in the `(q,p)` grid.
    fn flip_simplex(&self, s: &Simplex) -> Simplex {
        s.map_vertices(|id| {
            let (i, j) = self.grid_point(id);
            Ok(j * (self.p + 1) + i)
        })
        .expect("flip is a bijection of grid points")
    }

    /// Check that flipping every staircase of `(p,q)` yields exactly the
    /// staircases of `(q,p)`.
    pub fn flip_check(&self) -> bool {
        let flipped: BTreeSet<Simplex> = self
            .staircases()
            .iter()
            .map(|s| self.flip_simplex(s))
            .collect();
        let other = StaircaseTriangulation::new(self.q, self.p);
        let expected: BTreeSet<Simplex> = other.staircases().iter().cloned().collect();
        flipped == expected
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::BoundaryComplex;

    fn s(vs: &[usize]) -> Simplex {
        Simplex::new(vs.iter().copied()).unwrap()
    }

    fn binomial(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn identity_is_a_chain_map_and_almost_embedding() {
        let k = SimplicialComplex::from_simplices([s(&[0, 1, 2]), s(&[2, 3])]);
        let id = SimplicialChainMap::identity(&k);
        assert!(id.verify().is_ok());
        assert!(id.is_nontrivial());
        assert!(id.almost_embedding_verdict().unwrap().holds());
    }

    #[test]
    fn broken_assignment_is_reported() {
        // Send the edge to an edge with the wrong endpoints.
        let edge = SimplicialComplex::from_simplices([s(&[0, 1])]);
        let target = SimplicialComplex::from_simplices([s(&[0, 1]), s(&[1, 2])]);
        let mut assignment = BTreeMap::new();
        assignment.insert(s(&[0]), Chain::single(s(&[0])));
        assignment.insert(s(&[1]), Chain::single(s(&[1])));
        assignment.insert(s(&[0, 1]), Chain::single(s(&[1, 2])));
        let f = SimplicialChainMap::new(edge, target, assignment).unwrap();
        assert_eq!(f.verify().unwrap_err(), vec![s(&[0, 1])]);
        assert!(f.almost_embedding_verdict().is_err());
    }

    #[test]
    fn induced_map_of_a_relabeling() {
        let k = SimplicialComplex::from_simplices([s(&[0, 1]), s(&[0, 2]), s(&[1, 2])]);
        let l = k
            .relabel(&[(0, 10), (1, 20), (2, 30)].into_iter().collect())
            .unwrap();
        let f =
            SimplicialChainMap::induced(&k, &l, &[(0, 10), (1, 20), (2, 30)].into_iter().collect())
                .unwrap();
        assert!(f.verify().is_ok());
        assert!(f.is_nontrivial());
        assert!(f.almost_embedding_verdict().unwrap().holds());
        assert_eq!(
            f.image_of(&s(&[0, 1])).unwrap(),
            &Chain::single(s(&[10, 20]))
        );
    }

    #[test]
    fn induced_map_rejects_degenerate_images() {
        let edge = SimplicialComplex::from_simplices([s(&[0, 1])]);
        let point = SimplicialComplex::from_simplices([s(&[5])]);
        let collapse: BTreeMap<usize, usize> = [(0, 5), (1, 5)].into_iter().collect();
        match SimplicialChainMap::induced(&edge, &point, &collapse) {
            Err(Error::DegenerateImage(_)) => {}
            other => panic!("expected degenerate-image error, got {other:?}"),
        }
    }

    #[test]
    fn induced_map_requires_images_in_target() {
        let edge = SimplicialComplex::from_simplices([s(&[0, 1])]);
        let points = SimplicialComplex::from_simplices([s(&[0]), s(&[1])]);
        let id: BTreeMap<usize, usize> = [(0, 0), (1, 1)].into_iter().collect();
        match SimplicialChainMap::induced(&edge, &points, &id) {
            Err(Error::NotSimplicial(_)) => {}
            other => panic!("expected non-simplicial error, got {other:?}"),
        }
    }

    #[test]
    fn nontriviality_follows_vertex_parity() {
        // One source vertex to three target vertices: a legal chain map
        // (no edges around), and nontrivial because three is odd.
        let v = SimplicialComplex::from_simplices([s(&[0])]);
        let three = SimplicialComplex::from_simplices([s(&[0]), s(&[1]), s(&[2])]);
        let mut assignment = BTreeMap::new();
        assignment.insert(s(&[0]), Chain::new(0, [s(&[0]), s(&[1]), s(&[2])]).unwrap());
        let f = SimplicialChainMap::new(v.clone(), three.clone(), assignment).unwrap();
        assert!(f.verify().is_ok());
        assert!(f.is_nontrivial());
        // The empty image chain is even: trivial.
        let mut assignment = BTreeMap::new();
        assignment.insert(s(&[0]), Chain::zero(0));
        let g = SimplicialChainMap::new(v, three, assignment).unwrap();
        assert!(!g.is_nontrivial());
        assert_eq!(
            g.almost_embedding_verdict().unwrap(),
            HaeVerdict::EvenVertexImage(s(&[0]))
        );
    }

    #[test]
    fn overlapping_images_are_detected_with_a_pair() {
        // Two disjoint edges mapped onto overlapping paths.
        let k = SimplicialComplex::from_simplices([s(&[0, 1]), s(&[2, 3])]);
        let t = SimplicialComplex::from_simplices([s(&[0, 1]), s(&[1, 2])]);
        let f: BTreeMap<usize, usize> = [(0, 0), (1, 1), (2, 1), (3, 2)].into_iter().collect();
        let map = SimplicialChainMap::induced(&k, &t, &f).unwrap();
        assert!(map.verify().is_ok());
        match map.almost_embedding_verdict().unwrap() {
            HaeVerdict::OverlappingPair {
                left,
                right,
                shared,
            } => {
                assert!(left.disjoint_from(&right));
                assert_eq!(shared, [1].into_iter().collect());
            }
            other => panic!("expected overlap, got {other:?}"),
        }
    }

    #[test]
    fn subdivision_chain_map_is_an_almost_embedding() {
        let k = SimplicialComplex::from_simplices([s(&[0, 1, 2])]);
        let sd = k.barycentric_subdivision();
        let f = SimplicialChainMap::subdivision(&k, &sd).unwrap();
        assert!(f.verify().is_ok());
        assert!(f.is_nontrivial());
        assert!(f.almost_embedding_verdict().unwrap().holds());
        assert_eq!(f.image_of(&s(&[0, 1, 2])).unwrap().weight(), 6);
        assert_eq!(f.image_of(&s(&[0, 1])).unwrap().weight(), 2);
    }

    #[test]
    fn composition_preserves_the_laws() {
        let k = SimplicialComplex::from_simplices([s(&[0, 1, 2])]);
        let sd = k.barycentric_subdivision();
        let f = SimplicialChainMap::subdivision(&k, &sd).unwrap();
        let sd2 = sd.complex.barycentric_subdivision();
        let g = SimplicialChainMap::subdivision(&sd.complex, &sd2).unwrap();
        let gf = g.compose(&f).unwrap();
        assert!(gf.verify().is_ok());
        assert!(gf.is_nontrivial());
        // Image of the triangle: 6 cells, each subdivided into 6.
        assert_eq!(gf.image_of(&s(&[0, 1, 2])).unwrap().weight(), 36);
        // Mismatched middles are rejected.
        assert!(f.compose(&g).is_err());
    }

    #[test]
    fn staircase_counts_match_binomials() {
        for p in 0..=4 {
            for q in 0..=4 {
                let t = StaircaseTriangulation::new(p, q);
                assert_eq!(t.count(), binomial(p + q, p), "count for ({p},{q})");
                // The product of two simplices is a ball.
                let betti = BoundaryComplex::from_simplicial(t.complex()).betti_vector(true);
                assert!(betti.iter().all(|&b| b == 0), "betti for ({p},{q})");
            }
        }
    }

    #[test]
    fn staircases_are_monotone_chains() {
        let t = StaircaseTriangulation::new(2, 3);
        for sim in t.staircases() {
            let pts: Vec<(usize, usize)> =
                sim.vertices().iter().map(|&v| t.grid_point(v)).collect();
            assert_eq!(pts.first(), Some(&(0, 0)));
            assert_eq!(pts.last(), Some(&(2, 3)));
            for w in pts.windows(2) {
                let di = w[1].0 - w[0].0;
                let dj = w[1].1 - w[0].1;
                assert_eq!(di + dj, 1, "unit steps only");
            }
        }
    }

    #[test]
    fn small_staircase_instances() {
        assert_eq!(StaircaseTriangulation::new(1, 1).count(), 2);
        assert_eq!(StaircaseTriangulation::new(2, 1).count(), 3);
        assert_eq!(StaircaseTriangulation::new(3, 0).count(), 1);
        assert_eq!(StaircaseTriangulation::new(0, 0).count(), 1);
        let t = StaircaseTriangulation::new(1, 1);
        assert_eq!(t.staircase_chain().weight(), 2);
    }

    #[test]
    fn flips_are_equivariant() {
        for (p, q) in [(1, 1), (2, 2), (3, 1), (2, 3), (4, 2)] {
            assert!(StaircaseTriangulation::new(p, q).flip_check(), "({p},{q})");
        }
    }
}
