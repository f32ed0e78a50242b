//! Abstract simplices: finite sets of vertex ids in canonical sorted form.

use std::fmt;

use crate::error::{Error, Result};

/// An abstract simplex: a finite set of vertex ids.
///
/// The canonical form is a strictly increasing vertex list; two simplices are
/// equal exactly when their vertex sets are. The empty simplex (dimension
/// −1) is representable — it participates in boundary/augmentation algebra —
/// but complexes never store it.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex {
    vertices: Vec<usize>,
}

impl Simplex {
    /// Build a simplex from vertices in any order.
    ///
    /// Fails with [`Error::DuplicateVertex`] if a vertex repeats.
    pub fn new(vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut vs: Vec<usize> = vertices.into_iter().collect();
        vs.sort_unstable();
        for pair in vs.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateVertex(pair[0]));
            }
        }
        Ok(Simplex { vertices: vs })
    }

    /// The empty simplex (dimension −1).
    pub fn empty() -> Self {
        Simplex {
            vertices: Vec::new(),
        }
    }

    /// The vertices in increasing order.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    /// True for the empty simplex.
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dimension: number of vertices minus one (−1 for the empty simplex).
    pub fn dim(&self) -> isize {
        self.vertices.len() as isize - 1
    }

    /// True if `v` is a vertex of this simplex.
    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// True if `other`'s vertices are a subset of this simplex's.
    pub fn contains(&self, other: &Simplex) -> bool {
        other.vertices.iter().all(|&v| self.contains_vertex(v))
    }

    /// True if the two simplices share no vertex.
    pub fn disjoint_from(&self, other: &Simplex) -> bool {
        self.vertices.iter().all(|&v| !other.contains_vertex(v))
    }

    /// The intersection of the two vertex sets, as a simplex.
    pub fn intersection(&self, other: &Simplex) -> Simplex {
        Simplex {
            vertices: self
                .vertices
                .iter()
                .copied()
                .filter(|&v| other.contains_vertex(v))
                .collect(),
        }
    }

    /// The union of the two vertex sets, as a simplex.
    pub fn union(&self, other: &Simplex) -> Simplex {
        let mut vs = self.vertices.clone();
        vs.extend(
            other
                .vertices
                .iter()
                .copied()
                .filter(|&v| !self.contains_vertex(v)),
        );
        vs.sort_unstable();
        Simplex { vertices: vs }
    }

    /// The simplex with vertex `v` added (no-op if already present).
    pub fn with_vertex(&self, v: usize) -> Simplex {
        if self.contains_vertex(v) {
            return self.clone();
        }
        let mut vs = self.vertices.clone();
        vs.push(v);
        vs.sort_unstable();
        Simplex { vertices: vs }
    }

    /// The simplex with vertex `v` removed (no-op if absent).
    pub fn without_vertex(&self, v: usize) -> Simplex {
        Simplex {
            vertices: self.vertices.iter().copied().filter(|&u| u != v).collect(),
        }
    }

    /// The codimension-1 faces, in lexicographic order.
    ///
    /// A vertex has one facet, the empty simplex; the empty simplex has none.
    pub fn facets(&self) -> Vec<Simplex> {
        self.vertices
            .iter()
            .map(|&v| self.without_vertex(v))
            .collect()
    }

    /// All nonempty faces (including the simplex itself), in lexicographic
    /// order.
    pub fn nonempty_faces(&self) -> Vec<Simplex> {
        let n = self.vertices.len();
        let mut out = Vec::with_capacity((1usize << n).saturating_sub(1));
        for mask in 1u64..(1u64 << n) {
            let vs: Vec<usize> = (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| self.vertices[i])
                .collect();
            out.push(Simplex { vertices: vs });
        }
        out.sort();
        out
    }

    /// Apply a vertex relabeling. Fails if the map fails on some vertex or
    /// collapses two vertices together.
    pub fn map_vertices(&self, mut f: impl FnMut(usize) -> Result<usize>) -> Result<Simplex> {
        let mut vs = Vec::with_capacity(self.vertices.len());
        for &v in &self.vertices {
            vs.push(f(v)?);
        }
        let img = Simplex::new(vs).map_err(|_| Error::DegenerateImage(self.to_string()))?;
        Ok(img)
    }

    /// Apply a vertex relabeling given as a lookup table.
    pub fn relabel(&self, f: &std::collections::BTreeMap<usize, usize>) -> Result<Simplex> {
        self.map_vertices(|v| f.get(&v).copied().ok_or(Error::UnknownVertex(v)))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn s(vs: &[usize]) -> Simplex {
        Simplex::new(vs.iter().copied()).unwrap()
    }

    #[test]
    fn canonical_form_sorts() {
        assert_eq!(s(&[2, 0, 1]), s(&[0, 1, 2]));
        assert_eq!(s(&[2, 0, 1]).vertices(), &[0, 1, 2]);
    }

    #[test]
    fn duplicates_rejected() {
        assert_eq!(
            Simplex::new([1, 1, 2]).unwrap_err(),
            Error::DuplicateVertex(1)
        );
    }

    #[test]
    fn dimensions() {
        assert_eq!(Simplex::empty().dim(), -1);
        assert_eq!(s(&[7]).dim(), 0);
        assert_eq!(s(&[0, 1, 2]).dim(), 2);
    }

    #[test]
    fn facets_of_triangle() {
        let t = s(&[0, 1, 2]);
        assert_eq!(t.facets(), vec![s(&[1, 2]), s(&[0, 2]), s(&[0, 1])]);
        assert_eq!(s(&[4]).facets(), vec![Simplex::empty()]);
        assert!(Simplex::empty().facets().is_empty());
    }

    #[test]
    fn faces_enumeration() {
        let t = s(&[0, 1]);
        assert_eq!(t.nonempty_faces(), vec![s(&[0]), s(&[0, 1]), s(&[1])]);
        assert_eq!(s(&[0, 1, 2]).nonempty_faces().len(), 7);
    }

    #[test]
    fn set_operations() {
        let a = s(&[0, 1, 2]);
        let b = s(&[2, 3]);
        assert!(!a.disjoint_from(&b));
        assert!(a.disjoint_from(&s(&[3, 4])));
        assert_eq!(a.intersection(&b), s(&[2]));
        assert_eq!(a.union(&b), s(&[0, 1, 2, 3]));
        assert_eq!(a.without_vertex(1), s(&[0, 2]));
        assert_eq!(a.with_vertex(5), s(&[0, 1, 2, 5]));
    }

    #[test]
    fn relabeling() {
        use std::collections::BTreeMap;
        let f: BTreeMap<usize, usize> = [(0, 5), (1, 3)].into_iter().collect();
        assert_eq!(s(&[0, 1]).relabel(&f).unwrap(), s(&[3, 5]));
        let g: BTreeMap<usize, usize> = [(0, 5), (1, 5)].into_iter().collect();
        assert!(matches!(
            s(&[0, 1]).relabel(&g),
            Err(Error::DegenerateImage(_))
        ));
        assert!(matches!(
            s(&[0, 2]).relabel(&f),
            Err(Error::UnknownVertex(2))
        ));
    }
}
