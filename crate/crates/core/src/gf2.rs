//! Bit-packed linear algebra over GF(2).
//!
//! Vectors and matrices pack 64 coordinates per machine word. Elimination
//! always scans columns left to right and rows top to bottom, and solvers
//! set free variables to zero, so every routine here is deterministic: the
//! same matrix yields the same rank profile, the same solution, the same
//! kernel basis, on every run.

use std::fmt;

/// A fixed-length vector over GF(2).
///
/// Invariant: bits at positions `>= len` are always zero, so equality and
/// hashing can operate on the raw words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Vec {
    len: usize,
    words: Vec<u64>,
}

impl Gf2Vec {
    /// The zero vector of length `len`.
    pub fn zeros(len: usize) -> Self {
        Gf2Vec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// A vector of length `len` with ones exactly at `indices`.
    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Gf2Vec::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    /// Number of coordinates.
    pub fn len(&self) -> usize {
        self.len
    }

    /// True if the vector has length zero.
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Coordinate at `i`.
    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    /// Set coordinate `i`.
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    /// Flip coordinate `i`.
    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "index {i} out of range for length {}",
            self.len
        );
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    /// Add (XOR) `other` into `self`. Lengths must agree.
    pub fn xor_assign(&mut self, other: &Gf2Vec) {
        assert_eq!(self.len, other.len, "length mismatch in xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Coordinatewise AND (set intersection of supports).
    pub fn and_assign(&mut self, other: &Gf2Vec) {
        assert_eq!(self.len, other.len, "length mismatch in and");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    /// The all-ones vector.
    pub fn ones_vec(len: usize) -> Gf2Vec {
        let mut v = Gf2Vec::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    /// True if every coordinate is zero.
    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the first nonzero coordinate, if any.
    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Number of nonzero coordinates.
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of the nonzero coordinates, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// Inner product `<self, other>` over GF(2).
    pub fn dot(&self, other: &Gf2Vec) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in dot");
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }
}

impl fmt::Debug for Gf2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vec[")?;
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { 1 } else { 0 })?;
        }
        write!(f, "]")
    }
}

/// A dense matrix over GF(2), stored row-major with bit-packed rows.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gf2Vec>,
}

impl Gf2Matrix {
    /// The zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows,
            cols,
            data: vec![Gf2Vec::zeros(cols); rows],
        }
    }

    /// The identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Build a matrix from an entry predicate.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Gf2Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value);
    }

    /// Borrow row `i` as a vector.
    pub fn row(&self, i: usize) -> &Gf2Vec {
        &self.data[i]
    }

    /// Copy column `j` into a vector.
    pub fn col(&self, j: usize) -> Gf2Vec {
        Gf2Vec::from_indices(self.rows, (0..self.rows).filter(|&i| self.get(i, j)))
    }

    /// The transpose.
    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.data[i].ones() {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix-vector product `A x`.
    pub fn mul_vec(&self, x: &Gf2Vec) -> Gf2Vec {
        assert_eq!(self.cols, x.len(), "shape mismatch in mul_vec");
        Gf2Vec::from_indices(self.rows, (0..self.rows).filter(|&i| self.data[i].dot(x)))
    }

    /// Row-vector-matrix product `y^T A` (returned as a column-indexed vector).
    pub fn left_mul(&self, y: &Gf2Vec) -> Gf2Vec {
        assert_eq!(self.rows, y.len(), "shape mismatch in left_mul");
        let mut acc = Gf2Vec::zeros(self.cols);
        for i in y.ones() {
            acc.xor_assign(&self.data[i]);
        }
        acc
    }

    /// Matrix product `A B`.
    pub fn mat_mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in mat_mul");
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in self.data[i].ones() {
                out.data[i].xor_assign(&other.data[k]);
            }
        }
        out
    }

    /// True if every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Gf2Vec::is_zero)
    }

    /// Rank over GF(2).
    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..work.len()).find(|&r| work[r].get(col)) else {
                continue;
            };
            work.swap(rank, pivot);
            let pivot_row = work[rank].clone();
            for (r, row) in work.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            rank += 1;
            if rank == work.len() {
                break;
            }
        }
        rank
    }

    /// Solve `A x = b`, setting all free variables to zero.
    ///
    /// Pivot columns are chosen left to right, so the solution is the
    /// lexicographically canonical one for the given column order. Returns
    /// `None` when the system is inconsistent.
    pub fn solve(&self, b: &Gf2Vec) -> Option<Gf2Vec> {
        self.solve_with_certificate(b).ok()
    }

    /// Solve `A x = b`; on failure return a certificate `y` of
    /// unsolvability, i.e. a vector with `y^T A = 0` and `<y, b> = 1`.
    pub fn solve_with_certificate(&self, b: &Gf2Vec) -> std::result::Result<Gf2Vec, Gf2Vec> {
        assert_eq!(self.rows, b.len(), "shape mismatch in solve");
        let mut work = self.data.clone();
        let mut rhs = b.clone();
        // Left multiplier: tracker[i] holds the combination of original rows
        // currently sitting in row i, so inconsistent rows yield certificates.
        let mut tracker: Vec<Gf2Vec> = (0..self.rows)
            .map(|i| Gf2Vec::from_indices(self.rows, [i]))
            .collect();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..work.len()).find(|&r| work[r].get(col)) else {
                continue;
            };
            work.swap(rank, pivot);
            tracker.swap(rank, pivot);
            if rhs.get(rank) != rhs.get(pivot) && rank != pivot {
                // swap the rhs bits alongside the rows
                let tmp = rhs.get(rank);
                rhs.set(rank, rhs.get(pivot));
                rhs.set(pivot, tmp);
            }
            let pivot_row = work[rank].clone();
            let pivot_track = tracker[rank].clone();
            let pivot_rhs = rhs.get(rank);
            for r in 0..work.len() {
                if r != rank && work[r].get(col) {
                    work[r].xor_assign(&pivot_row);
                    tracker[r].xor_assign(&pivot_track);
                    if pivot_rhs {
                        rhs.flip(r);
                    }
                }
            }
            pivot_cols.push(col);
            rank += 1;
            if rank == work.len() {
                break;
            }
        }
        // Any row that reduced to zero but has a nonzero right-hand side
        // witnesses unsolvability.
        for r in rank..self.rows {
            if rhs.get(r) {
                debug_assert!(work[r].is_zero());
                return Err(tracker[r].clone());
            }
        }
        let mut x = Gf2Vec::zeros(self.cols);
        for (r, &col) in pivot_cols.iter().enumerate() {
            if rhs.get(r) {
                x.set(col, true);
            }
        }
        Ok(x)
    }

    /// A deterministic basis of the kernel `{x : A x = 0}`.
    ///
    /// One basis vector per free column, ordered by free-column index.
    pub fn kernel_basis(&self) -> Vec<Gf2Vec> {
        let mut work = self.data.clone();
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(pivot) = (rank..work.len()).find(|&r| work[r].get(col)) else {
                continue;
            };
            work.swap(rank, pivot);
            let pivot_row = work[rank].clone();
            for (r, row) in work.iter_mut().enumerate() {
                if r != rank && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivot_cols.push(col);
            rank += 1;
            if rank == work.len() {
                break;
            }
        }
        let pivot_set: std::collections::BTreeSet<usize> = pivot_cols.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = Gf2Vec::zeros(self.cols);
            v.set(free, true);
            for (r, &pc) in pivot_cols.iter().enumerate() {
                if work[r].get(free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

/// An incremental row-echelon accumulator over GF(2).
///
/// Vectors are added one at a time; the span keeps reduced representatives
/// and, for each, the combination of added generators that produced it.
/// This supports membership tests and expressing a vector as a combination
/// of the generators added so far.
pub struct IncrementalSpan {
    dim: usize,
    /// (pivot index, reduced vector, combination over added generators)
    rows: Vec<(usize, Gf2Vec, Gf2Vec)>,
    /// Number of generators offered so far (accepted or not).
    offered: usize,
    /// Maximum number of generators that will ever be offered.
    capacity: usize,
}

impl IncrementalSpan {
    /// An empty span of vectors of length `dim`, accepting at most
    /// `capacity` generator offers.
    pub fn new(dim: usize, capacity: usize) -> Self {
        IncrementalSpan {
            dim,
            rows: Vec::new(),
            offered: 0,
            capacity,
        }
    }

    /// Current rank of the span.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &Gf2Vec) -> (Gf2Vec, Gf2Vec) {
        let mut v = v.clone();
        let mut combo = Gf2Vec::zeros(self.capacity);
        for (pivot, row, c) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign(row);
                combo.xor_assign(c);
            }
        }
        (v, combo)
    }

    /// Offer a generator. Returns true if it enlarged the span.
    pub fn add(&mut self, v: &Gf2Vec) -> bool {
        assert_eq!(v.len(), self.dim, "dimension mismatch in span");
        assert!(self.offered < self.capacity, "span capacity exhausted");
        let idx = self.offered;
        self.offered += 1;
        let (reduced, mut combo) = self.reduce(v);
        combo.flip(idx);
        match reduced.first_one() {
            None => false,
            Some(pivot) => {
                // Keep stored rows fully reduced against the new pivot so
                // reduce() stays a single forward pass.
                for (_, row, c) in self.rows.iter_mut() {
                    if row.get(pivot) {
                        row.xor_assign(&reduced);
                        c.xor_assign(&combo);
                    }
                }
                let pos = self
                    .rows
                    .binary_search_by_key(&pivot, |(p, _, _)| *p)
                    .unwrap_err();
                self.rows.insert(pos, (pivot, reduced, combo));
                true
            }
        }
    }

    /// True if `v` lies in the current span.
    pub fn contains(&self, v: &Gf2Vec) -> bool {
        self.reduce(v).0.is_zero()
    }

    /// Express `v` as a combination of the generators offered so far.
    ///
    /// The result has one coordinate per offered generator (in offer order);
    /// `None` if `v` is outside the span.
    pub fn express(&self, v: &Gf2Vec) -> Option<Gf2Vec> {
        let (reduced, combo) = self.reduce(v);
        if reduced.is_zero() {
            Some(combo)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec_of(len: usize, ones: &[usize]) -> Gf2Vec {
        Gf2Vec::from_indices(len, ones.iter().copied())
    }

    #[test]
    fn vector_basics() {
        let mut v = Gf2Vec::zeros(70);
        assert!(v.is_zero());
        v.set(0, true);
        v.set(69, true);
        assert_eq!(v.count_ones(), 2);
        assert_eq!(v.first_one(), Some(0));
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 69]);
        let w = vec_of(70, &[0, 3]);
        v.xor_assign(&w);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![3, 69]);
        assert!(v.dot(&vec_of(70, &[3])));
        assert!(!v.dot(&vec_of(70, &[4])));
    }

    #[test]
    fn rank_examples() {
        let id = Gf2Matrix::identity(5);
        assert_eq!(id.rank(), 5);
        let zero = Gf2Matrix::zeros(4, 7);
        assert_eq!(zero.rank(), 0);
        // Two equal rows plus an independent one.
        let mut m = Gf2Matrix::zeros(3, 3);
        m.set(0, 0, true);
        m.set(0, 1, true);
        m.set(1, 0, true);
        m.set(1, 1, true);
        m.set(2, 2, true);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn solve_unique_and_canonical() {
        // x0 + x1 = 1, x1 = 1 -> x = (0, 1)
        let mut m = Gf2Matrix::zeros(2, 2);
        m.set(0, 0, true);
        m.set(0, 1, true);
        m.set(1, 1, true);
        let b = vec_of(2, &[0, 1]);
        let x = m.solve(&b).unwrap();
        assert_eq!(x.ones().collect::<Vec<_>>(), vec![1]);
        assert_eq!(m.mul_vec(&x), b);

        // Underdetermined: x0 + x1 = 1 -> canonical solution picks x0 = 1 (x1 free = 0).
        let mut u = Gf2Matrix::zeros(1, 2);
        u.set(0, 0, true);
        u.set(0, 1, true);
        let x = u.solve(&vec_of(1, &[0])).unwrap();
        assert_eq!(x.ones().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn solve_inconsistent_yields_certificate() {
        // x0 = 1 and x0 = 0 cannot both hold.
        let mut m = Gf2Matrix::zeros(2, 1);
        m.set(0, 0, true);
        m.set(1, 0, true);
        let b = vec_of(2, &[0]);
        let y = m.solve_with_certificate(&b).unwrap_err();
        assert!(m.left_mul(&y).is_zero());
        assert!(y.dot(&b));
        assert!(m.solve(&b).is_none());
    }

    #[test]
    fn certificate_on_bigger_system() {
        // Rows: r0 = e0+e1, r1 = e1+e2, r2 = e0+e2 (their sum is 0).
        let mut m = Gf2Matrix::zeros(3, 3);
        m.set(0, 0, true);
        m.set(0, 1, true);
        m.set(1, 1, true);
        m.set(1, 2, true);
        m.set(2, 0, true);
        m.set(2, 2, true);
        // b chosen so that total parity is odd -> unsolvable.
        let b = vec_of(3, &[0]);
        let y = m.solve_with_certificate(&b).unwrap_err();
        assert!(m.left_mul(&y).is_zero());
        assert!(y.dot(&b));
    }

    #[test]
    fn kernel_basis_properties() {
        // Matrix with kernel of dimension 2 in GF(2)^3: the all-zero matrix row.
        let m = Gf2Matrix::zeros(1, 3);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 3);

        let mut m = Gf2Matrix::zeros(2, 3);
        m.set(0, 0, true);
        m.set(0, 1, true);
        m.set(1, 1, true);
        m.set(1, 2, true);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 1);
        assert!(m.mul_vec(&basis[0]).is_zero());
        assert_eq!(basis[0].ones().collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn transpose_and_products() {
        let mut m = Gf2Matrix::zeros(2, 3);
        m.set(0, 1, true);
        m.set(1, 2, true);
        let t = m.transpose();
        assert_eq!(t.nrows(), 3);
        assert!(t.get(1, 0));
        assert!(t.get(2, 1));
        let prod = m.mat_mul(&t);
        assert_eq!(prod.nrows(), 2);
        assert_eq!(prod.ncols(), 2);
        assert!(prod.get(0, 0));
        assert!(prod.get(1, 1));
        assert!(!prod.get(0, 1));
    }

    #[test]
    fn incremental_span_tracks_combinations() {
        let mut span = IncrementalSpan::new(4, 5);
        let a = vec_of(4, &[0, 1]);
        let b = vec_of(4, &[1, 2]);
        let c = vec_of(4, &[0, 2]); // = a + b
        assert!(span.add(&a));
        assert!(span.add(&b));
        assert!(!span.add(&c));
        assert_eq!(span.rank(), 2);
        assert!(span.contains(&c));
        let combo = span.express(&c).unwrap();
        assert_eq!(combo.ones().collect::<Vec<_>>(), vec![0, 1]);
        assert!(!span.contains(&vec_of(4, &[3])));
        assert!(span.express(&vec_of(4, &[3])).is_none());
    }

    #[test]
    fn solve_wide_random_consistency() {
        // A x = A e for random-ish A must always be solvable and reproduce A e.
        let m = Gf2Matrix::from_fn(5, 9, |i, j| (i * 7 + j * 3) % 4 == 1);
        for j in 0..9 {
            let e = Gf2Vec::from_indices(9, [j]);
            let b = m.mul_vec(&e);
            let x = m.solve(&b).expect("consistent system");
            assert_eq!(m.mul_vec(&x), b);
        }
    }
}
