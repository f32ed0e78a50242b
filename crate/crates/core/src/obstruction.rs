//! The GF(2) embedding-obstruction pipeline.
//!
//! A complex `K` with `dim K ≤ d` is mapped generically into `ℝ^d` by
//! placing its vertices on the moment curve `t ↦ (t, t², …, t^d)` at
//! distinct integer parameters. For each `d`-cell `σ×τ` of the deleted
//! product, the parity of intersections between the open images of `σ` and
//! `τ` is an exact rational computation; the parities assemble into an
//! equivariant cocycle whose class in the swap quotient does not depend on
//! the map. The complex admits no almost-embedding-like map to `ℝ^d` when
//! that class is nonzero, i.e. when the cocycle is not a coboundary on the
//! quotient.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, Signed, Zero};
use rayon::prelude::*;

use crate::budget::Budget;
use crate::cell::{deleted_product, quotient_by_involution, CellComplex, Involution, Quotient};
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::gf2::Gf2Vec;
use crate::homology::CoboundaryOutcome;
use crate::simplex::Simplex;

/// Exact rational coordinates for the vertices of a complex, in general
/// position on the moment curve.
#[derive(Clone, Debug)]
pub struct GenericPointConfig {
    d: usize,
    points: BTreeMap<usize, Vec<BigRational>>,
}

impl GenericPointConfig {
    /// Place `vertices` (in increasing order) at the given distinct
    /// integer parameters of the moment curve in `ℝ^d`.
    pub fn moment_curve(
        d: usize,
        vertices: impl IntoIterator<Item = usize>,
        params: &[i64],
    ) -> Result<Self> {
        let vertices: Vec<usize> = vertices.into_iter().collect();
        if vertices.len() != params.len() {
            return Err(Error::InvalidConfig(format!(
                "{} vertices but {} parameters",
                vertices.len(),
                params.len()
            )));
        }
        let mut seen = std::collections::BTreeSet::new();
        for &t in params {
            if !seen.insert(t) {
                return Err(Error::InvalidConfig(format!("duplicate parameter {t}")));
            }
        }
        let points = vertices
            .into_iter()
            .zip(params)
            .map(|(v, &t)| {
                let t = BigRational::from_integer(BigInt::from(t));
                let mut coords = Vec::with_capacity(d);
                let mut power = BigRational::from_integer(BigInt::from(1));
                for _ in 0..d {
                    power *= &t;
                    coords.push(power.clone());
                }
                (v, coords)
            })
            .collect();
        Ok(GenericPointConfig { d, points })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn point(&self, v: usize) -> Result<&[BigRational]> {
        self.points
            .get(&v)
            .map(Vec::as_slice)
            .ok_or(Error::UnknownVertex(v))
    }
}

/// Outcome of an exact square linear solve.
enum SolveOutcome {
    Unique(Vec<BigRational>),
    Inconsistent,
    Underdetermined,
}

/// Gauss–Jordan elimination over ℚ on a square augmented system.
fn solve_exact(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> SolveOutcome {
    let n = b.len();
    debug_assert!(a.iter().all(|row| row.len() == n));
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        b.swap(row, p);
        let inv = a[row][col].recip();
        for x in &mut a[row] {
            *x *= &inv;
        }
        b[row] *= &inv;
        let pivot_row = a[row].clone();
        for r in 0..n {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for (cell, p) in a[r].iter_mut().zip(&pivot_row) {
                    *cell -= p * &factor;
                }
                let t = &b[row] * &factor;
                b[r] -= t;
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    if b[row..].iter().any(|x| !x.is_zero()) {
        return SolveOutcome::Inconsistent;
    }
    if pivot_cols.len() < n {
        return SolveOutcome::Underdetermined;
    }
    let mut x = vec![BigRational::zero(); n];
    for (r, &col) in pivot_cols.iter().enumerate() {
        x[col] = b[r].clone();
    }
    SolveOutcome::Unique(x)
}

/// Parity of intersections between the open linear images of two
/// vertex-disjoint simplices with `dim σ + dim τ = d`.
///
/// The affine system for a common point is square; generically it has a
/// unique candidate, which counts iff all its barycentric coordinates are
/// strictly positive in both simplices. A singular-but-inconsistent system
/// means parallel disjoint affine hulls: parity 0. A singular consistent
/// system, or a zero barycentric coordinate, is a degenerate configuration
/// and demands different parameters.
pub fn intersection_parity(
    sigma: &Simplex,
    tau: &Simplex,
    cfg: &GenericPointConfig,
) -> Result<bool> {
    if sigma.is_empty() || tau.is_empty() || !sigma.disjoint_from(tau) {
        return Err(Error::InvalidConfig(
            "parity needs nonempty vertex-disjoint simplices".into(),
        ));
    }
    let d = cfg.d();
    if (sigma.dim() + tau.dim()) as usize != d {
        return Err(Error::InvalidConfig(format!(
            "dimensions {}+{} must sum to {d}",
            sigma.dim(),
            tau.dim()
        )));
    }
    let p = sigma.len();
    let q = tau.len();
    let n = p + q; // = d + 2 unknowns: λ₀…λ_{p−1}, μ₀…μ_{q−1}
    let mut a = vec![vec![BigRational::zero(); n]; n];
    let mut b = vec![BigRational::zero(); n];
    for (c, row) in a.iter_mut().take(d).enumerate() {
        for (i, &v) in sigma.vertices().iter().enumerate() {
            row[i] = cfg.point(v)?[c].clone();
        }
        for (j, &w) in tau.vertices().iter().enumerate() {
            row[p + j] = -cfg.point(w)?[c].clone();
        }
    }
    let one = BigRational::from_integer(BigInt::from(1));
    a[d][..p].fill(one.clone());
    a[d + 1][p..p + q].fill(one.clone());
    b[d] = one.clone();
    b[d + 1] = one;
    match solve_exact(a, b) {
        SolveOutcome::Inconsistent => Ok(false),
        SolveOutcome::Underdetermined => Err(Error::Degenerate(format!(
            "affine hulls of {sigma} and {tau} meet non-transversally"
        ))),
        SolveOutcome::Unique(x) => {
            if x.iter().any(|c| c.is_zero()) {
                return Err(Error::Degenerate(format!(
                    "boundary incidence between {sigma} and {tau}"
                )));
            }
            Ok(x.iter().all(|c| c.is_positive()))
        }
    }
}

/// The result of an obstruction computation: the quotient cocycle values,
/// the verdict, and a checkable witness either way.
#[derive(Clone, Debug)]
pub struct ObstructionAnalysis {
    pub d: usize,
    /// True iff the quotient cocycle is not a coboundary.
    pub nonzero: bool,
    /// Cocycle values on the quotient `d`-cells, in cell order.
    pub cocycle: Gf2Vec,
    pub witness: ObstructionWitness,
}

/// Witness accompanying the verdict.
#[derive(Clone, Debug)]
pub enum ObstructionWitness {
    /// A quotient `(d−1)`-cochain whose coboundary is the cocycle
    /// (obstruction zero).
    FillingCochain(Gf2Vec),
    /// A quotient `d`-cycle pairing to 1 with the cocycle (obstruction
    /// nonzero: coboundaries pair to 0 with every cycle).
    CertificateCycle(Gf2Vec),
}

/// Evaluate the parity cocycle on the `d`-cells of a deleted product for
/// one parameter choice.
fn evaluate_cocycle(dp: &CellComplex, d: usize, cfg: &GenericPointConfig) -> Result<Gf2Vec> {
    let cells = dp.cells_of_dim(d as isize);
    let bits: Vec<bool> = cells
        .par_iter()
        .map(|label| {
            let cell = label.product();
            intersection_parity(cell.left(), cell.right(), cfg)
        })
        .collect::<Result<Vec<bool>>>()?;
    let mut o = Gf2Vec::zeros(cells.len());
    for (i, bit) in bits.into_iter().enumerate() {
        if bit {
            o.set(i, true);
        }
    }
    Ok(o)
}

/// Retry offsets for degenerate configurations: the base parameters are
/// shifted by successive primes, at most five retries.
const RETRY_OFFSETS: [i64; 6] = [0, 2, 3, 5, 7, 11];

fn cocycle_with_retries(
    k: &SimplicialComplex,
    dp: &CellComplex,
    d: usize,
    base: &[i64],
) -> Result<Gf2Vec> {
    let vertices: Vec<usize> = k.vertex_set().iter().copied().collect();
    let mut last = None;
    for off in RETRY_OFFSETS {
        let params: Vec<i64> = base.iter().map(|t| t + off).collect();
        let cfg = GenericPointConfig::moment_curve(d, vertices.iter().copied(), &params)?;
        match evaluate_cocycle(dp, d, &cfg) {
            Ok(o) => return Ok(o),
            Err(Error::Degenerate(msg)) => last = Some(msg),
            Err(e) => return Err(e),
        }
    }
    Err(Error::Degenerate(format!(
        "all retry offsets degenerate; last: {}",
        last.unwrap_or_default()
    )))
}

/// Check equivariance and the cocycle law, then descend to the quotient.
fn descend_cocycle(
    dp: &CellComplex,
    inv: &Involution,
    quotient: &Quotient,
    d: usize,
    o: &Gf2Vec,
) -> Result<Gf2Vec> {
    for i in 0..dp.size(d as isize) {
        if o.get(i) != o.get(inv.apply(d, i)) {
            return Err(Error::Invariant(format!(
                "cocycle not swap-equivariant at cell {}",
                dp.cells_of_dim(d as isize)[i]
            )));
        }
    }
    if !dp.boundary_op(d as isize + 1).left_mul(o).is_zero() {
        return Err(Error::Invariant(
            "parity cochain is not a cocycle upstairs".into(),
        ));
    }
    let size = quotient.complex.size(d as isize);
    let mut down = Gf2Vec::zeros(size);
    if size > 0 {
        for (q, &rep) in quotient.reps[d].iter().enumerate() {
            if o.get(rep) {
                down.set(q, true);
            }
        }
    }
    Ok(down)
}

/// First `n` primes, for the independent second parameter set.
fn first_primes(n: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(n);
    let mut candidate: i64 = 2;
    while out.len() < n {
        if (2..candidate)
            .take_while(|p| p * p <= candidate)
            .all(|p| candidate % p != 0)
        {
            out.push(candidate);
        }
        candidate += 1;
    }
    out
}

fn analyze_with_base(
    k: &SimplicialComplex,
    d: usize,
    dp: &CellComplex,
    inv: &Involution,
    quotient: &Quotient,
    base: &[i64],
) -> Result<ObstructionAnalysis> {
    let o = cocycle_with_retries(k, dp, d, base)?;
    let down = descend_cocycle(dp, inv, quotient, d, &o)?;
    let chain = quotient.complex.to_boundary_complex();
    let outcome = chain.is_coboundary(d, &down)?;
    Ok(match outcome {
        CoboundaryOutcome::Coboundary(nu) => ObstructionAnalysis {
            d,
            nonzero: false,
            cocycle: down,
            witness: ObstructionWitness::FillingCochain(nu),
        },
        CoboundaryOutcome::NotACoboundary { certificate } => ObstructionAnalysis {
            d,
            nonzero: true,
            cocycle: down,
            witness: ObstructionWitness::CertificateCycle(certificate),
        },
    })
}

/// Decide whether the obstruction class of `K` in dimension `d` is
/// nonzero.
///
/// Builds the deleted product, evaluates the intersection-parity cocycle
/// for two independent parameter sets (consecutive integers and primes),
/// verifies equivariance and the cocycle law exactly, descends to the swap
/// quotient, and runs the coboundary test there. The two parameter sets
/// must agree on the verdict; a persistent disagreement would falsify the
/// map-independence of the class and is reported as an error.
pub fn obstruction_nonzero(
    k: &SimplicialComplex,
    d: usize,
    budget: &Budget,
) -> Result<ObstructionAnalysis> {
    if k.dim() > d as isize {
        return Err(Error::InvalidConfig(format!(
            "complex of dimension {} cannot map generically to dimension {d}",
            k.dim()
        )));
    }
    let dp = deleted_product(k, budget)?;
    let inv = Involution::swap(&dp)?;
    let quotient = quotient_by_involution(&dp, &inv)?;
    let n = k.num_vertices();
    let consecutive: Vec<i64> = (1..=n as i64).collect();
    let analysis = analyze_with_base(k, d, &dp, &inv, &quotient, &consecutive)?;
    let primes = first_primes(n);
    let second = analyze_with_base(k, d, &dp, &inv, &quotient, &primes)?;
    if second.nonzero != analysis.nonzero {
        return Err(Error::Unverified(format!(
            "parameter sets disagree on the verdict for d={d}"
        )));
    }
    Ok(analysis)
}

/// Evaluate the obstruction for `K` at `d` and for its cone at `d+1`.
///
/// From double dimension upward (`d ≥ 2·dim K`), a nonzero obstruction
/// for `K` forces a nonzero obstruction for the cone one dimension up;
/// below that the cone can kill the class.
pub fn cone_obstruction_check(
    k: &SimplicialComplex,
    d: usize,
    budget: &Budget,
) -> Result<(bool, bool)> {
    let base = obstruction_nonzero(k, d, budget)?.nonzero;
    let coned = obstruction_nonzero(&k.cone(), d + 1, budget)?.nonzero;
    Ok((base, coned))
}

/// Betti vector of the deleted product of the boundary of the
/// `(d+1)`-simplex; it carries the homology of the `d`-sphere.
pub fn sphere_check_deleted_boundary(d: usize, budget: &Budget) -> Result<Vec<usize>> {
    if d > 3 {
        return Err(Error::InvalidConfig(
            "sphere check supported for d ≤ 3".into(),
        ));
    }
    let k = SimplicialComplex::simplex_skeleton(d + 1, d)?;
    let dp = deleted_product(&k, budget)?;
    Ok(dp.betti_vector(false))
}
