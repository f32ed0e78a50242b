//! Cellwise products of simplices, deleted products, and quotients by a
//! free cellular involution.
//!
//! The deleted product of a simplicial complex `K` is the cell complex
//! whose `d`-cells are ordered pairs `σ×τ` of nonempty, vertex-disjoint
//! simplices of `K` with `dim σ + dim τ = d`. Coordinate swap is a free
//! cellular involution on it; the quotient identifies `σ×τ` with `τ×σ`.

use std::collections::BTreeMap;
use std::fmt;

use crate::budget::Budget;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::homology::BoundaryComplex;
use crate::simplex::Simplex;

/// An ordered pair of nonempty, vertex-disjoint simplices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ProductCell {
    left: Simplex,
    right: Simplex,
}

impl ProductCell {
    pub fn new(left: Simplex, right: Simplex) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::Input(
                "product cells require nonempty factors".into(),
            ));
        }
        if !left.disjoint_from(&right) {
            return Err(Error::Input(format!(
                "product cell factors must be vertex-disjoint, got {left} and {right}"
            )));
        }
        Ok(ProductCell { left, right })
    }

    pub fn left(&self) -> &Simplex {
        &self.left
    }

    pub fn right(&self) -> &Simplex {
        &self.right
    }

    /// Cell dimension: `dim left + dim right`.
    pub fn dim(&self) -> usize {
        (self.left.dim() + self.right.dim()) as usize
    }

    /// The coordinate-swapped cell `τ×σ`.
    pub fn swapped(&self) -> ProductCell {
        ProductCell {
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }
}

impl fmt::Display for ProductCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}x{{{}}}", self.left, self.right)
    }
}

/// Name of a cell in a [`CellComplex`]: either a product cell itself or the
/// orbit of one under the swap involution (named by its smaller member).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum CellLabel {
    Product(ProductCell),
    Orbit(ProductCell),
}

impl CellLabel {
    /// The underlying product cell (the orbit representative for orbits).
    pub fn product(&self) -> &ProductCell {
        match self {
            CellLabel::Product(p) | CellLabel::Orbit(p) => p,
        }
    }

    pub fn dim(&self) -> usize {
        self.product().dim()
    }
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellLabel::Product(p) => write!(f, "{p}"),
            CellLabel::Orbit(p) => write!(f, "[{p}]"),
        }
    }
}

/// A finite GF(2) cell complex with labeled cells.
///
/// Cells are graded by dimension and sorted by label within each dimension;
/// `boundary[d-1]` is the matrix of `∂_d` in that ordering.
#[derive(Clone, Debug)]
pub struct CellComplex {
    cells: Vec<Vec<CellLabel>>,
    boundary: Vec<Gf2Matrix>,
}

impl CellComplex {
    fn new(cells: Vec<Vec<CellLabel>>, boundary: Vec<Gf2Matrix>) -> Self {
        let sizes: Vec<usize> = cells.iter().map(|c| c.len()).collect();
        // Shape and ∂∘∂ checks live in BoundaryComplex::new.
        BoundaryComplex::new(sizes, boundary.clone());
        for dim_cells in &cells {
            debug_assert!(dim_cells.windows(2).all(|w| w[0] < w[1]));
        }
        CellComplex { cells, boundary }
    }

    /// Dimension (−1 for the empty complex).
    pub fn dim(&self) -> isize {
        self.cells.len() as isize - 1
    }

    /// Number of `d`-cells.
    pub fn size(&self, d: isize) -> usize {
        if d < 0 || d >= self.cells.len() as isize {
            0
        } else {
            self.cells[d as usize].len()
        }
    }

    /// Total number of cells over all dimensions.
    pub fn total_size(&self) -> usize {
        self.cells.iter().map(|c| c.len()).sum()
    }

    /// The labels of the `d`-cells, sorted.
    pub fn cells_of_dim(&self, d: isize) -> &[CellLabel] {
        if d < 0 || d >= self.cells.len() as isize {
            &[]
        } else {
            &self.cells[d as usize]
        }
    }

    /// Index of a label among the cells of its dimension.
    pub fn index_of(&self, label: &CellLabel) -> Option<usize> {
        let d = label.dim();
        self.cells.get(d)?.binary_search(label).ok()
    }

    /// The boundary matrix `∂_d`.
    pub fn boundary_op(&self, d: isize) -> Gf2Matrix {
        if d >= 1 && d <= self.boundary.len() as isize {
            self.boundary[(d - 1) as usize].clone()
        } else {
            Gf2Matrix::zeros(self.size(d - 1), self.size(d))
        }
    }

    /// Forget labels, keeping the graded matrix complex.
    pub fn to_boundary_complex(&self) -> BoundaryComplex {
        BoundaryComplex::new(
            self.cells.iter().map(|c| c.len()).collect(),
            self.boundary.clone(),
        )
    }

    /// Betti numbers of the complex (see [`BoundaryComplex::betti`]).
    pub fn betti_vector(&self, reduced: bool) -> Vec<usize> {
        self.to_boundary_complex().betti_vector(reduced)
    }
}

/// Build the deleted product of `k`.
///
/// Errors with [`Error::BudgetExceeded`] if the number of cells would pass
/// the cell budget.
pub fn deleted_product(k: &SimplicialComplex, budget: &Budget) -> Result<CellComplex> {
    let simplices: Vec<&Simplex> = k.all_simplices().filter(|s| !s.is_empty()).collect();
    let mut by_dim: Vec<Vec<CellLabel>> = Vec::new();
    let mut total = 0usize;
    for &sigma in &simplices {
        for &tau in &simplices {
            if !sigma.disjoint_from(tau) {
                continue;
            }
            total += 1;
            budget.check_cells(total)?;
            let cell = ProductCell::new(sigma.clone(), tau.clone())?;
            let d = cell.dim();
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, Vec::new);
            }
            by_dim[d].push(CellLabel::Product(cell));
        }
    }
    for dim_cells in &mut by_dim {
        dim_cells.sort();
    }
    let index: Vec<BTreeMap<&CellLabel, usize>> = by_dim
        .iter()
        .map(|cells| cells.iter().enumerate().map(|(i, c)| (c, i)).collect())
        .collect();
    let mut boundary = Vec::new();
    for d in 1..by_dim.len() {
        let mut m = Gf2Matrix::zeros(by_dim[d - 1].len(), by_dim[d].len());
        for (j, label) in by_dim[d].iter().enumerate() {
            let cell = label.product();
            for f in cell.left().facets() {
                if f.is_empty() {
                    continue;
                }
                let face = CellLabel::Product(ProductCell::new(f, cell.right().clone())?);
                m.set(index[d - 1][&face], j, true);
            }
            for f in cell.right().facets() {
                if f.is_empty() {
                    continue;
                }
                let face = CellLabel::Product(ProductCell::new(cell.left().clone(), f)?);
                m.set(index[d - 1][&face], j, true);
            }
        }
        boundary.push(m);
    }
    drop(index);
    Ok(CellComplex::new(by_dim, boundary))
}

/// A cellular involution of a [`CellComplex`], stored as one permutation of
/// cell indices per dimension.
#[derive(Clone, Debug)]
pub struct Involution {
    maps: Vec<Vec<usize>>,
}

impl Involution {
    /// The coordinate-swap involution of a deleted product.
    ///
    /// Errors if some cell's swap is missing, i.e. the complex is not
    /// closed under swapping.
    pub fn swap(dp: &CellComplex) -> Result<Involution> {
        let mut maps = Vec::new();
        for d in 0..=dp.dim() {
            let mut map = Vec::with_capacity(dp.size(d));
            for label in dp.cells_of_dim(d) {
                let swapped = CellLabel::Product(label.product().swapped());
                let idx = dp.index_of(&swapped).ok_or_else(|| {
                    Error::Invariant(format!("swap of cell {label} is not a cell"))
                })?;
                map.push(idx);
            }
            maps.push(map);
        }
        let inv = Involution { maps };
        debug_assert!(inv.is_involution());
        debug_assert!(inv.commutes_with_boundary(dp));
        Ok(inv)
    }

    /// The identity map (never free on a nonempty complex).
    pub fn identity(c: &CellComplex) -> Involution {
        Involution {
            maps: (0..=c.dim()).map(|d| (0..c.size(d)).collect()).collect(),
        }
    }

    /// Image of the `i`-th `d`-cell.
    pub fn apply(&self, d: usize, i: usize) -> usize {
        self.maps[d][i]
    }

    /// True if applying twice is the identity.
    pub fn is_involution(&self) -> bool {
        self.maps
            .iter()
            .all(|map| map.iter().enumerate().all(|(i, &j)| map[j] == i))
    }

    /// True if no cell is fixed.
    pub fn is_free(&self) -> bool {
        self.maps
            .iter()
            .all(|map| map.iter().enumerate().all(|(i, &j)| i != j))
    }

    /// True if the induced chain maps commute with the boundary operators.
    pub fn commutes_with_boundary(&self, c: &CellComplex) -> bool {
        for d in 1..=c.dim() {
            let del = c.boundary_op(d);
            let p_up = self.permutation_matrix(d as usize);
            let p_down = self.permutation_matrix(d as usize - 1);
            if del.mat_mul(&p_up) != p_down.mat_mul(&del) {
                return false;
            }
        }
        true
    }

    fn permutation_matrix(&self, d: usize) -> Gf2Matrix {
        let n = self.maps[d].len();
        let mut m = Gf2Matrix::zeros(n, n);
        for (i, &j) in self.maps[d].iter().enumerate() {
            m.set(j, i, true);
        }
        m
    }
}

/// A quotient complex together with the cell-level projection data.
#[derive(Debug)]
pub struct Quotient {
    /// The quotient cell complex; cells are labeled by orbit
    /// representatives.
    pub complex: CellComplex,
    /// `projection[d][i]` is the quotient index of the `i`-th `d`-cell.
    pub projection: Vec<Vec<usize>>,
    /// `reps[d][q]` is the index upstairs of the representative of the
    /// `q`-th orbit of `d`-cells.
    pub reps: Vec<Vec<usize>>,
}

/// Quotient a cell complex by a free cellular involution.
///
/// Each orbit `{c, ι(c)}` becomes one cell, labeled by its smaller member;
/// the quotient boundary is the orbit image of the representative's
/// boundary, with pairs that fall into a common orbit cancelling mod 2.
/// Errors with [`Error::NotFree`] if some cell is fixed.
pub fn quotient_by_involution(c: &CellComplex, inv: &Involution) -> Result<Quotient> {
    assert!(inv.is_involution(), "map must be an involution");
    assert!(
        inv.commutes_with_boundary(c),
        "involution must be cellular (commute with the boundary)"
    );
    let mut cells = Vec::new();
    let mut boundary = Vec::new();
    let mut projection: Vec<Vec<usize>> = Vec::new();
    let mut reps: Vec<Vec<usize>> = Vec::new();
    for d in 0..=c.dim() {
        let du = d as usize;
        let n = c.size(d);
        let mut proj = vec![usize::MAX; n];
        let mut rep_rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n {
            let j = inv.apply(du, i);
            if i == j {
                return Err(Error::NotFree { dim: du });
            }
            if i < j {
                // Cells are sorted by label, so the smaller index carries
                // the smaller label and names the orbit.
                proj[i] = rep_rows.len();
                proj[j] = rep_rows.len();
                rep_rows.push(i);
                labels.push(CellLabel::Orbit(c.cells_of_dim(d)[i].product().clone()));
            }
        }
        if d >= 1 {
            let del = c.boundary_op(d);
            let mut m = Gf2Matrix::zeros(reps[du - 1].len(), rep_rows.len());
            for (q, &rep) in rep_rows.iter().enumerate() {
                for r in del.col(rep).ones() {
                    let row = projection[du - 1][r];
                    m.set(row, q, !m.get(row, q));
                }
            }
            boundary.push(m);
        }
        cells.push(labels);
        projection.push(proj);
        reps.push(rep_rows);
    }
    Ok(Quotient {
        complex: CellComplex::new(cells, boundary),
        projection,
        reps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(vs: &[usize]) -> Simplex {
        Simplex::new(vs.iter().copied()).unwrap()
    }

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn product_cell_constraints() {
        assert!(ProductCell::new(s(&[0, 1]), s(&[2])).is_ok());
        assert!(ProductCell::new(s(&[0, 1]), s(&[1, 2])).is_err());
        assert!(ProductCell::new(Simplex::empty(), s(&[2])).is_err());
        let c = ProductCell::new(s(&[0, 1]), s(&[2])).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(c.swapped().swapped(), c);
    }

    #[test]
    fn deleted_product_of_an_edge_is_two_points() {
        let edge = SimplicialComplex::from_simplices([s(&[0, 1])]);
        let dp = deleted_product(&edge, &budget()).unwrap();
        assert_eq!(dp.dim(), 0);
        assert_eq!(dp.size(0), 2);
        assert_eq!(dp.betti_vector(false), vec![2]);
        let inv = Involution::swap(&dp).unwrap();
        assert!(inv.is_free());
        let q = quotient_by_involution(&dp, &inv).unwrap();
        assert_eq!(q.complex.size(0), 1);
        assert_eq!(q.complex.betti_vector(false), vec![1]);
    }

    #[test]
    fn deleted_product_of_a_path_has_two_contractible_pieces() {
        let path = SimplicialComplex::from_simplices([s(&[0, 1]), s(&[1, 2])]);
        let dp = deleted_product(&path, &budget()).unwrap();
        assert_eq!(dp.size(0), 6);
        assert_eq!(dp.size(1), 4);
        assert_eq!(dp.betti_vector(false), vec![2, 0]);
    }

    #[test]
    fn deleted_product_of_a_triangle_is_a_hexagon() {
        let circle = SimplicialComplex::from_simplices([s(&[0, 1]), s(&[0, 2]), s(&[1, 2])]);
        let dp = deleted_product(&circle, &budget()).unwrap();
        assert_eq!(dp.size(0), 6);
        assert_eq!(dp.size(1), 6);
        assert_eq!(dp.betti_vector(false), vec![1, 1]);
        // The swap quotient is again a circle, now on 3 cells per dimension.
        let inv = Involution::swap(&dp).unwrap();
        let q = quotient_by_involution(&dp, &inv).unwrap();
        assert_eq!(q.complex.size(0), 3);
        assert_eq!(q.complex.size(1), 3);
        assert_eq!(q.complex.betti_vector(false), vec![1, 1]);
    }

    #[test]
    fn deleted_product_of_a_coned_triangle_is_an_annulus() {
        // Cone over the triangle circle: a disk on 4 vertices.
        let circle = SimplicialComplex::from_simplices([s(&[0, 1]), s(&[0, 2]), s(&[1, 2])]);
        let disk = circle.cone();
        let dp = deleted_product(&disk, &budget()).unwrap();
        assert_eq!((dp.size(0), dp.size(1), dp.size(2)), (12, 24, 12));
        assert_eq!(dp.betti_vector(false), vec![1, 1, 0]);
        // Quotient by the swap: a Möbius band, whose GF(2) Betti numbers
        // are those of a circle with nothing in degree 2.
        let inv = Involution::swap(&dp).unwrap();
        let q = quotient_by_involution(&dp, &inv).unwrap();
        assert_eq!(
            (q.complex.size(0), q.complex.size(1), q.complex.size(2)),
            (6, 12, 6)
        );
        assert_eq!(q.complex.betti_vector(false), vec![1, 1, 0]);
    }

    #[test]
    fn deleted_product_of_k5_is_a_genus_six_surface() {
        let k5 = SimplicialComplex::simplex_skeleton(4, 1).unwrap();
        let dp = deleted_product(&k5, &budget()).unwrap();
        assert_eq!((dp.size(0), dp.size(1), dp.size(2)), (20, 60, 30));
        assert_eq!(dp.betti_vector(false), vec![1, 12, 1]);
        let inv = Involution::swap(&dp).unwrap();
        assert!(inv.is_free());
        assert!(inv.commutes_with_boundary(&dp));
        let q = quotient_by_involution(&dp, &inv).unwrap();
        assert_eq!(
            (q.complex.size(0), q.complex.size(1), q.complex.size(2)),
            (10, 30, 15)
        );
        // Closed non-orientable surface with Euler characteristic −5.
        assert_eq!(q.complex.betti_vector(false), vec![1, 7, 1]);
    }

    #[test]
    fn quotient_requires_freeness() {
        let edge = SimplicialComplex::from_simplices([s(&[0, 1])]);
        let dp = deleted_product(&edge, &budget()).unwrap();
        let id = Involution::identity(&dp);
        assert!(id.is_involution());
        assert!(!id.is_free());
        match quotient_by_involution(&dp, &id) {
            Err(Error::NotFree { dim: 0 }) => {}
            other => panic!("expected a freeness error, got {other:?}"),
        }
    }

    #[test]
    fn quotient_projection_is_consistent() {
        let circle = SimplicialComplex::from_simplices([s(&[0, 1]), s(&[0, 2]), s(&[1, 2])]);
        let dp = deleted_product(&circle, &budget()).unwrap();
        let inv = Involution::swap(&dp).unwrap();
        let q = quotient_by_involution(&dp, &inv).unwrap();
        for d in 0..=dp.dim() as usize {
            // Projection is surjective, two-to-one, and swap-invariant.
            assert_eq!(q.reps[d].len() * 2, dp.size(d as isize));
            for i in 0..dp.size(d as isize) {
                assert_eq!(q.projection[d][i], q.projection[d][inv.apply(d, i)]);
            }
            for (orbit, &rep) in q.reps[d].iter().enumerate() {
                assert_eq!(q.projection[d][rep], orbit);
                // The orbit label is the representative's label.
                let lab = &q.complex.cells_of_dim(d as isize)[orbit];
                assert_eq!(lab.product(), dp.cells_of_dim(d as isize)[rep].product());
            }
        }
    }

    #[test]
    fn deleted_product_respects_the_cell_budget() {
        let k5 = SimplicialComplex::simplex_skeleton(4, 1).unwrap();
        let tight = Budget {
            cells: 50,
            ..Budget::default()
        };
        match deleted_product(&k5, &tight) {
            Err(Error::BudgetExceeded { .. }) => {}
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn empty_and_single_point_deleted_products() {
        let empty = SimplicialComplex::empty();
        let dp = deleted_product(&empty, &budget()).unwrap();
        assert_eq!(dp.dim(), -1);
        assert_eq!(dp.total_size(), 0);
        let point = SimplicialComplex::from_simplices([s(&[0])]);
        let dp = deleted_product(&point, &budget()).unwrap();
        assert_eq!(dp.total_size(), 0);
    }
}
