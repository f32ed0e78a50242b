//! Generators for the example families: coned spheres, skeleton families,
//! interval families, and the tight low-dimensional cases.

use std::collections::BTreeMap;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::helly::SetFamily;
use crate::simplex::Simplex;

/// The cone over the boundary of a `d`-simplex: a `d`-dimensional ball on
/// `d+2` vertices (apex `d+1`) whose vertex deletions are all acyclic or a
/// single `(d−1)`-sphere.
pub fn gamma_complex(d: usize) -> Result<SimplicialComplex> {
    if d < 1 {
        return Err(Error::InvalidConfig(
            "cone over a sphere needs dimension ≥ 1".into(),
        ));
    }
    Ok(SimplicialComplex::simplex_skeleton(d, d - 1)?.cone())
}

/// The family of vertex deletions of an ambient complex: one member per
/// vertex (in increasing id order), each the induced subcomplex on the
/// remaining vertices.
pub fn vertex_deletion_family(ambient: SimplicialComplex) -> Result<SetFamily> {
    let members: Vec<SimplicialComplex> = ambient
        .vertex_set()
        .iter()
        .map(|&v| {
            let keep: std::collections::BTreeSet<usize> = ambient
                .vertex_set()
                .iter()
                .copied()
                .filter(|&w| w != v)
                .collect();
            ambient.induced_subcomplex(&keep)
        })
        .collect();
    SetFamily::new(ambient, members)
}

/// `b` disjoint copies of the coned `(d−1)`-sphere, with one member per
/// vertex deleting that vertex. The family has `b(d+2)` members, empty
/// total intersection, and every proper subfamily intersecting — its Helly
/// number is exactly `b(d+2)`.
pub fn gamma_family(b: usize, d: usize) -> Result<SetFamily> {
    if b < 1 || d < 2 {
        return Err(Error::InvalidConfig(format!(
            "need b ≥ 1 and d ≥ 2, got b={b}, d={d}"
        )));
    }
    let core = gamma_complex(d)?;
    let stride = d + 2;
    let mut tops = Vec::new();
    for c in 0..b {
        let shift: BTreeMap<usize, usize> = (0..stride).map(|v| (v, v + c * stride)).collect();
        let copy = core.relabel(&shift)?;
        tops.extend(copy.maximal_simplices().iter().cloned());
    }
    vertex_deletion_family(SimplicialComplex::from_simplices(tops))
}

/// A 6-vertex, 8-tetrahedron complex whose nonempty induced subcomplexes
/// are all connected with homology at most one class in degree 2 — a
/// 3-dimensional sharpening of the coned-sphere example.
pub fn gamma3_prime() -> SimplicialComplex {
    let tets: [[usize; 4]; 8] = [
        [0, 1, 3, 4],
        [0, 1, 2, 4],
        [0, 2, 3, 5],
        [1, 2, 3, 5],
        [0, 2, 4, 5],
        [0, 3, 4, 5],
        [1, 2, 4, 5],
        [1, 3, 4, 5],
    ];
    SimplicialComplex::from_simplices(
        tets.iter()
            .map(|t| Simplex::new(t.iter().copied()).expect("distinct vertices")),
    )
}

/// The `k`-skeleton of the `(n−1)`-simplex with its vertex-deletion
/// family; every proper subfamily intersection is a full smaller skeleton.
pub fn skeleton_family(n: usize, k: usize) -> Result<SetFamily> {
    if n < 1 {
        return Err(Error::InvalidConfig("need at least one vertex".into()));
    }
    vertex_deletion_family(SimplicialComplex::simplex_skeleton(n - 1, k)?)
}

/// The interval family on an integer grid: ambient is the path on
/// `{0, …, 10n}` and member `i` (for `i = 1..n`) is the induced subcomplex
/// on `{v : v ≤ 10i−11 or v ≥ 10i+1}` — the complement of an open
/// interval, scaled by 10 to avoid fractions.
pub fn interval_family(n: usize) -> Result<SetFamily> {
    if n < 1 {
        return Err(Error::InvalidConfig("need at least one interval".into()));
    }
    let top = 10 * n;
    let path = SimplicialComplex::from_simplices(
        (0..top).map(|v| Simplex::new([v, v + 1]).expect("adjacent grid points")),
    );
    let members: Vec<SimplicialComplex> = (1..=n)
        .map(|i| {
            let lo = 10 * i as isize - 11;
            let hi = 10 * i as isize + 1;
            let keep: std::collections::BTreeSet<usize> = (0..=top)
                .filter(|&v| (v as isize) <= lo || (v as isize) >= hi)
                .collect();
            path.induced_subcomplex(&keep)
        })
        .collect();
    SetFamily::new(path, members)
}

/// A sliding-window family over a path: the ambient complex is the path
/// on `{0, …, members−1+span}` and member `i` covers the vertex interval
/// `[i, i+span]`. Every subfamily intersection is a shorter path, so all
/// intersections are connected; the total intersection is the interval
/// `[members−1, span]`, nonempty iff `span ≥ members−1`.
pub fn sliding_path_family(members: usize, span: usize) -> Result<SetFamily> {
    if members < 1 || span < 1 {
        return Err(Error::InvalidConfig(format!(
            "need ≥ 1 members and span ≥ 1, got members={members}, span={span}"
        )));
    }
    let path = |lo: usize, hi: usize| {
        SimplicialComplex::from_simplices(
            (lo..hi).map(|j| Simplex::new([j, j + 1]).expect("adjacent grid points")),
        )
    };
    let ambient = path(0, members - 1 + span);
    let windows = (0..members).map(|i| path(i, i + span)).collect();
    SetFamily::new(ambient, windows)
}

/// The two certified-tight parameter cases of the skeleton family:
/// `(k, n) = (d, d+1)` and `(k, n) = (d−1, d+2)`. Both have Helly number
/// `n` while every audited reduced Betti number vanishes.
pub fn tight_family(d: usize, k: usize, n: usize) -> Result<SetFamily> {
    let ok = (k == d && n == d + 1) || (d >= 1 && k == d - 1 && n == d + 2);
    if !ok {
        return Err(Error::InvalidConfig(format!(
            "(k,n) must be (d,d+1) or (d-1,d+2); got d={d}, k={k}, n={n}"
        )));
    }
    skeleton_family(n, k)
}
