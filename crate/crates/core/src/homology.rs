//! Chains and homology over GF(2).
//!
//! [`Chain`] is a formal sum of simplices of one dimension; it is a set
//! under symmetric difference and knows its own boundary, independent of any
//! particular complex. [`BoundaryComplex`] is the matrix form of a graded
//! GF(2) chain complex; both simplicial complexes and the cell complexes of
//! products quotient to it, and all rank/solve computations happen there.

use std::collections::BTreeSet;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Gf2Vec, IncrementalSpan};
use crate::simplex::Simplex;

/// A GF(2) chain: a finite set of simplices of a single dimension.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Chain {
    grade: isize,
    support: BTreeSet<Simplex>,
}

impl Chain {
    /// The zero chain of the given grade.
    pub fn zero(grade: isize) -> Self {
        Chain {
            grade,
            support: BTreeSet::new(),
        }
    }

    /// A chain from its support. Every simplex must have dimension `grade`.
    pub fn new(grade: isize, support: impl IntoIterator<Item = Simplex>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for s in support {
            if s.dim() != grade {
                return Err(Error::GradeMismatch {
                    got: s.dim(),
                    expected: grade,
                });
            }
            // Adding a simplex twice cancels it, matching GF(2) addition.
            if !set.remove(&s) {
                set.insert(s);
            }
        }
        Ok(Chain {
            grade,
            support: set,
        })
    }

    /// The chain consisting of a single simplex.
    pub fn single(s: Simplex) -> Self {
        Chain {
            grade: s.dim(),
            support: [s].into_iter().collect(),
        }
    }

    pub fn grade(&self) -> isize {
        self.grade
    }

    pub fn support(&self) -> &BTreeSet<Simplex> {
        &self.support
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// Number of simplices in the support.
    pub fn weight(&self) -> usize {
        self.support.len()
    }

    /// GF(2) sum (symmetric difference). Grades must agree unless one side
    /// is zero.
    pub fn add(&self, other: &Chain) -> Result<Chain> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.grade != other.grade {
            return Err(Error::GradeMismatch {
                got: other.grade,
                expected: self.grade,
            });
        }
        let support: BTreeSet<Simplex> = self
            .support
            .symmetric_difference(&other.support)
            .cloned()
            .collect();
        Ok(Chain {
            grade: self.grade,
            support,
        })
    }

    /// The boundary chain: symmetric difference of all facets.
    ///
    /// The boundary of a 0-chain is the zero chain of grade −1 (the
    /// augmentation is handled separately by reduced Betti numbers).
    pub fn boundary(&self) -> Chain {
        let mut support = BTreeSet::new();
        for s in &self.support {
            for f in s.facets() {
                if f.is_empty() {
                    continue;
                }
                if !support.remove(&f) {
                    support.insert(f);
                }
            }
        }
        Chain {
            grade: self.grade - 1,
            support,
        }
    }

    /// Union of the vertex sets of the support simplices.
    pub fn vertex_support(&self) -> BTreeSet<usize> {
        self.support
            .iter()
            .flat_map(|s| s.vertices().iter().copied())
            .collect()
    }

    /// True if every support simplex belongs to `k`.
    pub fn supported_in(&self, k: &SimplicialComplex) -> bool {
        self.support.iter().all(|s| k.contains(s))
    }

    /// Encode as a coordinate vector over the `grade`-simplices of `k`.
    pub fn to_vec(&self, k: &SimplicialComplex) -> Result<Gf2Vec> {
        let cells = k.simplices_of_dim(self.grade);
        let mut v = Gf2Vec::zeros(cells.len());
        for s in &self.support {
            let idx = k.index_of(s).ok_or(Error::SupportOutsideComplex)?;
            v.set(idx, true);
        }
        Ok(v)
    }

    /// Decode from a coordinate vector over the `grade`-simplices of `k`.
    pub fn from_vec(k: &SimplicialComplex, grade: isize, v: &Gf2Vec) -> Chain {
        let cells = k.simplices_of_dim(grade);
        assert_eq!(cells.len(), v.len(), "vector length != number of cells");
        Chain {
            grade,
            support: v.ones().map(|i| cells[i].clone()).collect(),
        }
    }
}

/// The boundary matrix `∂_d` of a simplicial complex: rows are
/// `(d−1)`-simplices, columns are `d`-simplices, in sorted order.
pub fn boundary_matrix(k: &SimplicialComplex, d: isize) -> Gf2Matrix {
    let rows = k.simplices_of_dim(d - 1);
    let cols = k.simplices_of_dim(d);
    let mut m = Gf2Matrix::zeros(rows.len(), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for f in s.facets() {
            if f.is_empty() {
                continue;
            }
            let i = k
                .index_of(&f)
                .expect("facet of a complex simplex is in the complex");
            m.set(i, j, true);
        }
    }
    m
}

/// A graded GF(2) chain complex in matrix form.
///
/// `sizes[d]` is the number of `d`-cells; `boundary[d-1]` is `∂_d` for
/// `d = 1..=dim`. The constructor checks `∂∘∂ = 0`.
#[derive(Clone, Debug)]
pub struct BoundaryComplex {
    sizes: Vec<usize>,
    boundary: Vec<Gf2Matrix>,
}

impl BoundaryComplex {
    /// Assemble from per-dimension cell counts and boundary matrices.
    ///
    /// Panics if shapes are inconsistent or `∂∘∂ ≠ 0`: both would be
    /// construction bugs, not input errors.
    pub fn new(sizes: Vec<usize>, boundary: Vec<Gf2Matrix>) -> Self {
        assert_eq!(
            boundary.len(),
            sizes.len().saturating_sub(1),
            "need one boundary matrix per dimension 1..=dim"
        );
        for (d, m) in boundary.iter().enumerate() {
            assert_eq!(m.nrows(), sizes[d], "boundary {} row count", d + 1);
            assert_eq!(m.ncols(), sizes[d + 1], "boundary {} column count", d + 1);
        }
        for pair in boundary.windows(2) {
            assert!(
                pair[0].mat_mul(&pair[1]).is_zero(),
                "boundary of a boundary must vanish"
            );
        }
        BoundaryComplex { sizes, boundary }
    }

    /// The chain complex of a simplicial complex.
    pub fn from_simplicial(k: &SimplicialComplex) -> Self {
        let sizes = k.f_vector();
        let boundary = (1..sizes.len() as isize)
            .map(|d| boundary_matrix(k, d))
            .collect();
        BoundaryComplex::new(sizes, boundary)
    }

    /// Dimension (−1 when there are no cells at all).
    pub fn dim(&self) -> isize {
        self.sizes.len() as isize - 1
    }

    /// Number of `d`-cells.
    pub fn size(&self, d: isize) -> usize {
        if d < 0 || d >= self.sizes.len() as isize {
            0
        } else {
            self.sizes[d as usize]
        }
    }

    /// The boundary matrix `∂_d` (rows: `(d−1)`-cells, columns: `d`-cells).
    /// Outside `1..=dim` the appropriate zero-shaped matrix is returned.
    pub fn boundary_op(&self, d: isize) -> Gf2Matrix {
        if d >= 1 && d <= self.boundary.len() as isize {
            self.boundary[(d - 1) as usize].clone()
        } else {
            Gf2Matrix::zeros(self.size(d - 1), self.size(d))
        }
    }

    /// Betti number in dimension `i`.
    ///
    /// With `reduced` set, the augmented complex is used: the augmentation
    /// sends every 0-cell to the generator of a formal (−1)-dimensional
    /// GF(2) line, which lowers `β₀` by one for nonempty complexes. The
    /// empty complex reports 0 in every dimension in both modes.
    pub fn betti(&self, i: usize, reduced: bool) -> usize {
        if self.sizes.is_empty() || i >= self.sizes.len() {
            return 0;
        }
        let kernel_dim = if i == 0 {
            let aug_rank = if reduced && self.sizes[0] > 0 { 1 } else { 0 };
            self.sizes[0] - aug_rank
        } else {
            self.sizes[i] - self.boundary_op(i as isize).rank()
        };
        let image_rank = self.boundary_op(i as isize + 1).rank();
        kernel_dim - image_rank
    }

    /// All Betti numbers for dimensions `0..=dim`.
    pub fn betti_vector(&self, reduced: bool) -> Vec<usize> {
        (0..self.sizes.len())
            .map(|i| self.betti(i, reduced))
            .collect()
    }

    /// Euler characteristic (alternating sum of cell counts).
    pub fn euler_characteristic(&self) -> isize {
        self.sizes
            .iter()
            .enumerate()
            .map(|(d, &n)| {
                if d % 2 == 0 {
                    n as isize
                } else {
                    -(n as isize)
                }
            })
            .sum()
    }

    /// Decide whether the `i`-cochain `c` is a coboundary `δν`, returning a
    /// cochain witness or, when it is not, a certificate: an `i`-cycle `y`
    /// with `<c, y> = 1` (coboundaries pair to zero with every cycle).
    ///
    /// Errors if `c` is not a cocycle.
    pub fn is_coboundary(&self, i: usize, c: &Gf2Vec) -> Result<CoboundaryOutcome> {
        assert_eq!(c.len(), self.size(i as isize), "cochain length mismatch");
        if !self.boundary_op(i as isize + 1).left_mul(c).is_zero() {
            return Err(Error::NotACocycle);
        }
        // δν = c over the (i−1)-cochains means (∂_i)^T ν = c.
        let a = self.boundary_op(i as isize).transpose();
        match a.solve_with_certificate(c) {
            Ok(nu) => Ok(CoboundaryOutcome::Coboundary(nu)),
            Err(y) => {
                debug_assert!(self.boundary_op(i as isize).mul_vec(&y).is_zero());
                debug_assert!(y.dot(c));
                Ok(CoboundaryOutcome::NotACoboundary { certificate: y })
            }
        }
    }
}

/// Result of a coboundary test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoboundaryOutcome {
    /// A cochain `ν` with `δν` equal to the queried cocycle.
    Coboundary(Gf2Vec),
    /// No such `ν`; the certificate is a cycle pairing to 1 with the
    /// queried cocycle.
    NotACoboundary { certificate: Gf2Vec },
}

impl CoboundaryOutcome {
    pub fn is_coboundary(&self) -> bool {
        matches!(self, CoboundaryOutcome::Coboundary(_))
    }
}

/// Result of a filling query: either a chain whose boundary is the queried
/// cycle, or the statement that none exists in the given complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Filling {
    Bounds(Chain),
    NotABoundary,
}

impl Filling {
    pub fn bounds(&self) -> bool {
        matches!(self, Filling::Bounds(_))
    }
}

/// Decide whether the cycle `z` bounds in `k`, producing a filling chain
/// when it does.
///
/// The solver sets free variables to zero with columns in sorted-simplex
/// order, so the filling is canonical. Errors if `z` is supported outside
/// `k` or is not a cycle.
pub fn is_boundary(z: &Chain, k: &SimplicialComplex) -> Result<Filling> {
    if !z.supported_in(k) {
        return Err(Error::SupportOutsideComplex);
    }
    if !z.boundary().is_zero() {
        return Err(Error::NotACycle);
    }
    let grade = z.grade();
    let target = z.to_vec(k)?;
    let d_up = boundary_matrix(k, grade + 1);
    match d_up.solve(&target) {
        Some(x) => Ok(Filling::Bounds(Chain::from_vec(k, grade + 1, &x))),
        None => Ok(Filling::NotABoundary),
    }
}

/// A frozen basis of the degree-`grade` GF(2) homology of a simplicial
/// complex, with a deterministic coordinate map on cycles.
pub struct HomologyBasis {
    complex: SimplicialComplex,
    grade: isize,
    reps: Vec<Chain>,
    span: IncrementalSpan,
    rep_offer_indices: Vec<usize>,
}

impl HomologyBasis {
    /// Compute a homology basis of `k` in degree `grade` (non-reduced).
    pub fn new(k: &SimplicialComplex, grade: isize) -> Self {
        let n = k.simplices_of_dim(grade).len();
        let d_down = boundary_matrix(k, grade);
        let d_up = boundary_matrix(k, grade + 1);
        let cycles = if grade == 0 {
            // Every 0-chain is a cycle.
            (0..n).map(|j| Gf2Vec::from_indices(n, [j])).collect()
        } else {
            d_down.kernel_basis()
        };
        let capacity = d_up.ncols() + cycles.len();
        let mut span = IncrementalSpan::new(n, capacity);
        for j in 0..d_up.ncols() {
            span.add(&d_up.col(j));
        }
        let mut reps = Vec::new();
        let mut rep_offer_indices = Vec::new();
        for (offset, z) in cycles.iter().enumerate() {
            if span.add(z) {
                reps.push(Chain::from_vec(k, grade, z));
                rep_offer_indices.push(d_up.ncols() + offset);
            }
        }
        HomologyBasis {
            complex: k.clone(),
            grade,
            reps,
            span,
            rep_offer_indices,
        }
    }

    pub fn grade(&self) -> isize {
        self.grade
    }

    /// The Betti number this basis realizes.
    pub fn rank(&self) -> usize {
        self.reps.len()
    }

    /// Cycle representatives of the basis classes.
    pub fn representatives(&self) -> &[Chain] {
        &self.reps
    }

    /// Coordinates of the class of the cycle `z` in this basis.
    ///
    /// Errors if `z` is supported outside the complex or is not a cycle.
    /// The zero vector means `z` bounds.
    pub fn class_of(&self, z: &Chain) -> Result<Gf2Vec> {
        if z.grade() != self.grade {
            return Err(Error::GradeMismatch {
                got: z.grade(),
                expected: self.grade,
            });
        }
        if !z.supported_in(&self.complex) {
            return Err(Error::SupportOutsideComplex);
        }
        if !z.boundary().is_zero() {
            return Err(Error::NotACycle);
        }
        let v = z.to_vec(&self.complex)?;
        let combo = self
            .span
            .express(&v)
            .ok_or_else(|| Error::Invariant("cycle not in span of boundaries and basis".into()))?;
        let mut class = Gf2Vec::zeros(self.reps.len());
        for (r, &idx) in self.rep_offer_indices.iter().enumerate() {
            if combo.get(idx) {
                class.set(r, true);
            }
        }
        Ok(class)
    }
}
