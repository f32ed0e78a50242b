//! Finite abstract simplicial complexes.
//!
//! A complex is stored as its maximal simplices plus the full downward
//! closure, graded by dimension. All lists are sorted, so iteration order —
//! and hence every construction derived from it — is deterministic.
//! Complexes are immutable after construction; operations return new values.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::simplex::Simplex;

/// A finite abstract simplicial complex.
///
/// Invariants maintained by construction:
/// * the simplex set is downward closed,
/// * every vertex of the vertex set is a 0-simplex (isolated ids passed to
///   the constructor become isolated vertices),
/// * per-dimension simplex lists are sorted lexicographically.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: BTreeSet<usize>,
    maximal: Vec<Simplex>,
    by_dim: Vec<Vec<Simplex>>,
}

impl SimplicialComplex {
    /// The empty complex (no vertices, dimension −1).
    pub fn empty() -> Self {
        SimplicialComplex {
            vertices: BTreeSet::new(),
            maximal: Vec::new(),
            by_dim: Vec::new(),
        }
    }

    /// The downward closure of the given simplices.
    ///
    /// Empty simplices in the input are ignored (the empty simplex is a face
    /// of everything and is never stored). This is the fundamental
    /// constructor; the input does not need to be an antichain.
    pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        let mut closure: BTreeSet<Simplex> = BTreeSet::new();
        for s in simplices {
            if s.is_empty() {
                continue;
            }
            for face in s.nonempty_faces() {
                closure.insert(face);
            }
        }
        Self::from_closed_set(closure)
    }

    /// Like [`from_simplices`](Self::from_simplices) but with an explicit
    /// vertex set: ids not covered by any simplex become isolated vertices,
    /// and simplex vertices outside the given set are an error.
    pub fn with_vertices(
        vertices: impl IntoIterator<Item = usize>,
        simplices: impl IntoIterator<Item = Simplex>,
    ) -> Result<Self> {
        let vertex_set: BTreeSet<usize> = vertices.into_iter().collect();
        let simplices: Vec<Simplex> = simplices.into_iter().collect();
        for s in &simplices {
            for &v in s.vertices() {
                if !vertex_set.contains(&v) {
                    return Err(Error::UnknownVertex(v));
                }
            }
        }
        let isolated = vertex_set
            .iter()
            .map(|&v| Simplex::new([v]).expect("single vertex"));
        Ok(Self::from_simplices(simplices.into_iter().chain(isolated)))
    }

    /// Internal: build from an already-closed set of nonempty simplices.
    fn from_closed_set(closure: BTreeSet<Simplex>) -> Self {
        let dim = closure.iter().map(|s| s.dim()).max().unwrap_or(-1);
        let mut by_dim: Vec<Vec<Simplex>> = vec![Vec::new(); (dim + 1).max(0) as usize];
        for s in &closure {
            by_dim[s.dim() as usize].push(s.clone());
        }
        // BTreeSet iteration is sorted, so each graded list is sorted too.
        let mut vertices = BTreeSet::new();
        if !by_dim.is_empty() {
            for s in &by_dim[0] {
                vertices.insert(s.vertices()[0]);
            }
        }
        // A simplex is maximal iff no simplex one dimension up contains it.
        let mut maximal: Vec<Simplex> = Vec::new();
        for d in 0..by_dim.len() {
            let above: &[Simplex] = if d + 1 < by_dim.len() {
                &by_dim[d + 1]
            } else {
                &[]
            };
            for s in &by_dim[d] {
                if !above.iter().any(|t| t.contains(s)) {
                    maximal.push(s.clone());
                }
            }
        }
        maximal.sort();
        SimplicialComplex {
            vertices,
            maximal,
            by_dim,
        }
    }

    /// Dimension of the complex (−1 when empty).
    pub fn dim(&self) -> isize {
        self.by_dim.len() as isize - 1
    }

    /// The vertex set.
    pub fn vertex_set(&self) -> &BTreeSet<usize> {
        &self.vertices
    }

    /// Number of vertices.
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// The maximal simplices (an antichain), sorted lexicographically.
    pub fn maximal_simplices(&self) -> &[Simplex] {
        &self.maximal
    }

    /// The simplices of dimension `d`, sorted lexicographically.
    pub fn simplices_of_dim(&self, d: isize) -> &[Simplex] {
        if d < 0 || d >= self.by_dim.len() as isize {
            &[]
        } else {
            &self.by_dim[d as usize]
        }
    }

    /// All simplices, by increasing dimension then lexicographically.
    pub fn all_simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.by_dim.iter().flatten()
    }

    /// Total number of simplices.
    pub fn size(&self) -> usize {
        self.by_dim.iter().map(Vec::len).sum()
    }

    /// True if the complex has no simplices at all.
    pub fn is_empty_complex(&self) -> bool {
        self.size() == 0
    }

    /// Numbers of simplices per dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        self.by_dim.iter().map(Vec::len).collect()
    }

    /// True if `s` is a simplex of this complex. The empty simplex counts as
    /// a face of every nonempty complex.
    pub fn contains(&self, s: &Simplex) -> bool {
        if s.is_empty() {
            return self.size() > 0;
        }
        let d = s.dim();
        if d >= self.by_dim.len() as isize {
            return false;
        }
        self.by_dim[d as usize].binary_search(s).is_ok()
    }

    /// Position of `s` in the sorted list of its dimension.
    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        let d = s.dim();
        if d < 0 || d >= self.by_dim.len() as isize {
            return None;
        }
        self.by_dim[d as usize].binary_search(s).ok()
    }

    /// True if every simplex of `self` is a simplex of `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        // Checking the maximal simplices suffices: closures follow.
        self.maximal.iter().all(|s| other.contains(s))
    }

    /// The full simplex on vertices `0..=n` restricted to dimension `k`:
    /// its `k`-skeleton, with all faces.
    ///
    /// Requires `k <= n`.
    pub fn simplex_skeleton(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::SkeletonDimension { k, n });
        }
        let maximal = (0..=n)
            .combinations(k + 1)
            .map(|vs| Simplex::new(vs).expect("combinations are duplicate-free"));
        Ok(Self::from_simplices(maximal))
    }

    /// The `k`-skeleton of this complex (all simplices of dimension ≤ `k`).
    pub fn skeleton(&self, k: isize) -> Self {
        if k >= self.dim() {
            return self.clone();
        }
        if k < 0 {
            return Self::empty();
        }
        let keep = self.by_dim.iter().take((k + 1) as usize).flatten().cloned();
        Self::from_simplices(keep)
    }

    /// The cone: a fresh apex vertex joined to every simplex.
    ///
    /// The apex id is one past the largest existing vertex id (0 for the
    /// empty complex, whose cone is a single point).
    pub fn cone(&self) -> Self {
        let apex = self.vertices.iter().next_back().map_or(0, |&v| v + 1);
        if self.size() == 0 {
            return Self::from_simplices([Simplex::new([apex]).expect("vertex")]);
        }
        let coned = self.maximal.iter().map(|s| s.with_vertex(apex));
        Self::from_simplices(coned)
    }

    /// The subcomplex induced on the vertex set `w`: all simplices whose
    /// vertices lie in `w`. Ids in `w` that are not vertices are ignored.
    pub fn induced_subcomplex(&self, w: &BTreeSet<usize>) -> Self {
        let kept = self
            .all_simplices()
            .filter(|s| s.vertices().iter().all(|v| w.contains(v)))
            .cloned();
        // The filtered set is already downward closed; from_simplices only
        // re-grades it.
        Self::from_simplices(kept)
    }

    /// The intersection with another complex: simplices present in both.
    pub fn intersect(&self, other: &SimplicialComplex) -> Self {
        let common = self.all_simplices().filter(|s| other.contains(s)).cloned();
        Self::from_simplices(common)
    }

    /// Apply an injective vertex relabeling to the whole complex.
    pub fn relabel(&self, f: &BTreeMap<usize, usize>) -> Result<Self> {
        let mut image_check = BTreeSet::new();
        for &v in &self.vertices {
            let &w = f.get(&v).ok_or(Error::UnknownVertex(v))?;
            if !image_check.insert(w) {
                return Err(Error::NotSimplicial(format!(
                    "relabeling is not injective at image {w}"
                )));
            }
        }
        let mapped: Result<Vec<Simplex>> = self.maximal.iter().map(|s| s.relabel(f)).collect();
        Ok(Self::from_simplices(mapped?))
    }

    /// The barycentric subdivision, together with the labeling of its
    /// vertices by faces of this complex.
    pub fn barycentric_subdivision(&self) -> Subdivision {
        let faces: Vec<Simplex> = self.all_simplices().cloned().sorted().collect();
        let face_ids: BTreeMap<Simplex, usize> = faces
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        // Maximal simplices of the subdivision = saturated flags of faces
        // ending at a maximal simplex; one flag per vertex ordering.
        let mut maximal_chains: Vec<Simplex> = Vec::new();
        for top in &self.maximal {
            let vs = top.vertices();
            for perm in vs.iter().copied().permutations(vs.len()) {
                let mut prefix: Vec<usize> = Vec::with_capacity(vs.len());
                let mut chain_ids: Vec<usize> = Vec::with_capacity(vs.len());
                for v in perm {
                    prefix.push(v);
                    let face = Simplex::new(prefix.iter().copied()).expect("prefix is a set");
                    chain_ids.push(face_ids[&face]);
                }
                maximal_chains.push(Simplex::new(chain_ids).expect("flag faces are distinct"));
            }
        }
        let complex = SimplicialComplex::from_simplices(maximal_chains);
        Subdivision {
            complex,
            faces,
            face_ids,
        }
    }
}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SimplicialComplex(dim {}, f-vector {:?}, maximal {:?})",
            self.dim(),
            self.f_vector(),
            self.maximal
        )
    }
}

/// A barycentric subdivision together with its vertex labeling.
///
/// Vertex `i` of the subdivision corresponds to the face `faces[i]` of the
/// original complex; simplices of the subdivision are chains of faces under
/// strict inclusion.
#[derive(Clone, Debug)]
pub struct Subdivision {
    /// The subdivided complex.
    pub complex: SimplicialComplex,
    /// Face of the original complex for each subdivision vertex id.
    pub faces: Vec<Simplex>,
    /// Inverse of `faces`.
    face_ids: BTreeMap<Simplex, usize>,
}

impl Subdivision {
    /// The subdivision vertex corresponding to a face of the original
    /// complex.
    pub fn vertex_for_face(&self, face: &Simplex) -> Option<usize> {
        self.face_ids.get(face).copied()
    }

    /// The face of the original complex labeling subdivision vertex `id`.
    pub fn face_for_vertex(&self, id: usize) -> Option<&Simplex> {
        self.faces.get(id)
    }

    /// Subdivision vertices lying inside the face `s`: the ids of all
    /// nonempty faces of `s`. Sorted ascending.
    pub fn vertices_within(&self, s: &Simplex) -> Vec<usize> {
        s.nonempty_faces()
            .iter()
            .filter_map(|f| self.vertex_for_face(f))
            .sorted()
            .collect()
    }

    /// The top-dimensional simplices of the subdivision of the face `s`:
    /// full flags through `s`, as simplices of the subdivided complex.
    ///
    /// A face of dimension q has (q+1)! of them.
    pub fn top_cells_within(&self, s: &Simplex) -> Vec<Simplex> {
        let vs = s.vertices();
        let mut out = Vec::new();
        for perm in vs.iter().copied().permutations(vs.len()) {
            let mut prefix: Vec<usize> = Vec::with_capacity(vs.len());
            let mut chain_ids: Vec<usize> = Vec::with_capacity(vs.len());
            for v in perm {
                prefix.push(v);
                let face = Simplex::new(prefix.iter().copied()).expect("prefix is a set");
                match self.vertex_for_face(&face) {
                    Some(id) => chain_ids.push(id),
                    None => return Vec::new(),
                }
            }
            out.push(Simplex::new(chain_ids).expect("flag faces are distinct"));
        }
        out.sort();
        out
    }
}
