//! Independent brute-force oracles.
//!
//! These recompute key quantities by exhaustive enumeration, sharing no
//! algorithmic machinery with the fast paths they cross-check: Betti
//! numbers by enumerating every GF(2) vector, Helly numbers by direct
//! intersection of member complexes over every subfamily, and staircase
//! tilings by walking the grid poset. They are deliberately slow and only
//! accept small inputs.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::gf2::Gf2Vec;
use crate::helly::SetFamily;
use crate::homology::BoundaryComplex;
use crate::simplex::Simplex;

/// Largest chain-group dimension the enumeration oracles accept.
const MAX_ENUM_CELLS: usize = 20;

fn vec_from_mask(mask: u32, len: usize) -> Gf2Vec {
    let mut v = Gf2Vec::zeros(len);
    for i in 0..len {
        if mask >> i & 1 == 1 {
            v.set(i, true);
        }
    }
    v
}

/// Betti number by enumerating all chains: counts the kernel of the
/// boundary one degree down and the image of the boundary one degree up.
pub fn brute_betti(c: &BoundaryComplex, i: usize, reduced: bool) -> Result<usize> {
    let n = c.size(i as isize);
    let n_up = c.size(i as isize + 1);
    if n > MAX_ENUM_CELLS || n_up > MAX_ENUM_CELLS {
        return Err(Error::InvalidConfig(format!(
            "enumeration oracle limited to {MAX_ENUM_CELLS} cells per dimension, got {n}/{n_up}"
        )));
    }
    let down = c.boundary_op(i as isize);
    let mut kernel_count: u64 = 0;
    for mask in 0..1u64 << n {
        if down.mul_vec(&vec_from_mask(mask as u32, n)).is_zero() {
            kernel_count += 1;
        }
    }
    let up = c.boundary_op(i as isize + 1);
    let mut image = HashSet::new();
    for mask in 0..1u64 << n_up {
        image.insert(up.mul_vec(&vec_from_mask(mask as u32, n_up)));
    }
    let kernel_dim = kernel_count.trailing_zeros() as usize;
    let rank = (image.len() as u64).trailing_zeros() as usize;
    let mut betti = kernel_dim - rank;
    if reduced && i == 0 && n > 0 {
        betti -= 1;
    }
    Ok(betti)
}

/// Result of the exhaustive Helly oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteHelly {
    pub helly_number: usize,
    /// Every inclusion-minimal subfamily with empty intersection, each
    /// sorted, the list sorted.
    pub minimal_empty_subfamilies: Vec<Vec<usize>>,
}

/// Helly number by intersecting member complexes directly over every
/// nonempty subfamily.
pub fn brute_helly(family: &SetFamily) -> Result<BruteHelly> {
    let n = family.n();
    if n > 12 {
        return Err(Error::InvalidConfig(format!(
            "exhaustive Helly oracle limited to 12 members, got {n}"
        )));
    }
    let mut empty_masks: Vec<u32> = Vec::new();
    for mask in 1..1u32 << n {
        let mut acc: Option<crate::complex::SimplicialComplex> = None;
        for i in 0..n {
            if mask >> i & 1 == 1 {
                let m = family.member(i)?.clone();
                acc = Some(match acc {
                    None => m,
                    Some(prev) => prev.intersect(&m),
                });
            }
        }
        if acc.expect("nonempty mask").is_empty_complex() {
            empty_masks.push(mask);
        }
    }
    let minimal: Vec<u32> = empty_masks
        .iter()
        .copied()
        .filter(|&m| {
            !empty_masks
                .iter()
                .any(|&other| other != m && other & m == other)
        })
        .collect();
    let mut minimal_empty_subfamilies: Vec<Vec<usize>> = minimal
        .into_iter()
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    minimal_empty_subfamilies.sort();
    let helly_number = minimal_empty_subfamilies
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(1);
    Ok(BruteHelly {
        helly_number,
        minimal_empty_subfamilies,
    })
}

/// All maximal chains of the grid poset `{0..p} × {0..q}`, encoded with
/// the staircase vertex numbering `(i,j) ↦ i·(q+1)+j`.
///
/// A maximal chain steps from `(0,0)` to `(p,q)`, increasing one
/// coordinate by one at a time; the walk below enumerates them directly,
/// independent of any triangulation code.
pub fn grid_maximal_chains(p: usize, q: usize) -> BTreeSet<Simplex> {
    let mut out = BTreeSet::new();
    let mut path = vec![(0usize, 0usize)];
    walk_chains(p, q, &mut path, &mut out);
    out
}

fn walk_chains(p: usize, q: usize, path: &mut Vec<(usize, usize)>, out: &mut BTreeSet<Simplex>) {
    let &(i, j) = path.last().expect("path starts at the origin");
    if (i, j) == (p, q) {
        let s = Simplex::new(path.iter().map(|&(a, b)| a * (q + 1) + b))
            .expect("grid points are distinct");
        out.insert(s);
        return;
    }
    if i < p {
        path.push((i + 1, j));
        walk_chains(p, q, path, out);
        path.pop();
    }
    if j < q {
        path.push((i, j + 1));
        walk_chains(p, q, path, out);
        path.pop();
    }
}
