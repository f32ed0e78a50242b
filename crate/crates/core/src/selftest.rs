//! The self-check suite: nine independent checks covering the library's
//! headline computations, each reporting one pass/fail line.
//!
//! Every check is deterministic — randomized checks use a fixed seed, and
//! failure details are truncated at a fixed count — so serializing the
//! report twice yields byte-identical output. A failed check carries its
//! witnesses in the detail string rather than panicking, which lets the
//! suite double as a command-line self-test.

use std::collections::BTreeSet;
use std::time::Instant;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::budget::Budget;
use crate::chain_map::StaircaseTriangulation;
use crate::complex::SimplicialComplex;
use crate::construction::{
    almost_embedding_verdict, alpha_map, build_constrained, build_dim0, build_dim1, rescale,
    rescale_postconditions_hold, verify_constrained, BuildOutcome, SelectionPattern,
};
use crate::error::Result;
use crate::families::{
    gamma3_prime, gamma_family, interval_family, skeleton_family, sliding_path_family, tight_family,
};
use crate::homology::{BoundaryComplex, Chain};
use crate::obstruction::{obstruction_nonzero, sphere_check_deleted_boundary};
use crate::oracle::{brute_betti, brute_helly, grid_maximal_chains};
use crate::simplex::Simplex;

/// One self-check: a stable name, a verdict, and a deterministic detail
/// line (a summary when passing, the witnesses when failing).
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// The whole suite, in fixed order.
#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub criteria: Vec<CriterionReport>,
    pub all_passed: bool,
}

/// Run all nine checks.
pub fn run_selftest(budget: &Budget) -> SelftestReport {
    let criteria = vec![
        skeleton_betti_formula(),
        helly_numbers(budget),
        betti_bound_audits(budget),
        eight_tetrahedron_profile(),
        obstruction_catalog(budget),
        staircase_triangulations(),
        rescale_property_suite(),
        construction_pipeline(budget),
        oracle_agreement(budget),
    ];
    let all_passed = criteria.iter().all(|c| c.passed);
    SelftestReport {
        criteria,
        all_passed,
    }
}

const SHOWN_FAILURES: usize = 6;

fn finish(name: &'static str, failures: Vec<String>, ok_detail: String) -> CriterionReport {
    if failures.is_empty() {
        return CriterionReport {
            name,
            passed: true,
            detail: ok_detail,
        };
    }
    let shown = failures.iter().take(SHOWN_FAILURES).join("; ");
    let detail = if failures.len() > SHOWN_FAILURES {
        format!(
            "{shown}; … {} further failures",
            failures.len() - SHOWN_FAILURES
        )
    } else {
        shown
    };
    CriterionReport {
        name,
        passed: false,
        detail,
    }
}

fn choose(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Reduced Betti numbers of simplex skeleta match the binomial formula:
/// `β̃_k` of the `k`-skeleton of the `(m−1)`-simplex is `C(m−1, k+1)`.
pub fn skeleton_betti_formula() -> CriterionReport {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for m in 2..=8usize {
        for k in 0..=3usize {
            let complex = SimplicialComplex::simplex_skeleton(m - 1, k.min(m - 1))
                .expect("skeleton dimension clamped to the simplex dimension");
            let got = BoundaryComplex::from_simplicial(&complex).betti(k, true);
            let want = choose(m - 1, k + 1);
            checked += 1;
            if got != want {
                failures.push(format!("m={m}, k={k}: β̃ = {got}, binomial says {want}"));
            }
        }
    }
    finish(
        "skeleton-betti-formula",
        failures,
        format!("{checked} skeleton Betti numbers match C(m−1, k+1)"),
    )
}

/// Helly numbers of the four generated family types match their
/// closed-form values.
pub fn helly_numbers(budget: &Budget) -> CriterionReport {
    let mut failures = Vec::new();
    let mut cases: Vec<(String, Result<crate::helly::SetFamily>, usize)> = Vec::new();
    for (b, d) in [(1usize, 2usize), (2, 2), (1, 3)] {
        cases.push((
            format!("coned-sphere family b={b}, d={d}"),
            gamma_family(b, d),
            b * (d + 2),
        ));
    }
    for n in 1..=7usize {
        for k in 0..=2usize.min(n - 1) {
            cases.push((
                format!("skeleton family n={n}, k={k}"),
                skeleton_family(n, k),
                n,
            ));
        }
    }
    for n in 1..=6usize {
        cases.push((format!("interval family n={n}"), interval_family(n), n));
    }
    cases.push(("tight family (2,2,3)".into(), tight_family(2, 2, 3), 3));
    cases.push(("tight family (3,2,5)".into(), tight_family(3, 2, 5), 5));

    let total = cases.len();
    for (label, family, want) in cases {
        match family.and_then(|f| f.helly_number(budget)) {
            Ok(analysis) if analysis.helly_number == want => {}
            Ok(analysis) => failures.push(format!(
                "{label}: Helly number {} ≠ {want}",
                analysis.helly_number
            )),
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    }
    finish(
        "helly-numbers",
        failures,
        format!("{total} Helly numbers match their closed forms"),
    )
}

/// Betti-number audits: coned-sphere families stay within bound `b`,
/// tight families audit all-zero, and interval-family intersections of
/// `k` members have at most `k+1` components.
pub fn betti_bound_audits(budget: &Budget) -> CriterionReport {
    let mut failures = Vec::new();
    let mut audits = 0usize;
    for d in 2..=4usize {
        for b in 1..=2usize {
            audits += 1;
            match gamma_family(b, d).and_then(|f| f.hypothesis_audit(d, budget)) {
                Ok(report) if report.max_betti <= b => {}
                Ok(report) => failures.push(format!(
                    "coned-sphere family b={b}, d={d}: max β̃ = {} exceeds {b}",
                    report.max_betti
                )),
                Err(e) => failures.push(format!("coned-sphere family b={b}, d={d}: {e}")),
            }
        }
    }
    for (d, k, n) in [(2usize, 2usize, 3usize), (3, 2, 5)] {
        audits += 1;
        match tight_family(d, k, n).and_then(|f| f.hypothesis_audit(d, budget)) {
            Ok(report) if report.max_betti == 0 => {}
            Ok(report) => failures.push(format!(
                "tight family ({d},{k},{n}): max β̃ = {} ≠ 0",
                report.max_betti
            )),
            Err(e) => failures.push(format!("tight family ({d},{k},{n}): {e}")),
        }
    }
    for n in 1..=6usize {
        audits += 1;
        let family = match interval_family(n) {
            Ok(f) => f,
            Err(e) => {
                failures.push(format!("interval family n={n}: {e}"));
                continue;
            }
        };
        for size in 1..=n {
            for subset in (0..n).combinations(size) {
                let set: BTreeSet<usize> = subset.iter().copied().collect();
                match family.intersection_of(&set) {
                    Ok(meet) => {
                        let comps = BoundaryComplex::from_simplicial(&meet).betti(0, true);
                        if comps > size {
                            failures.push(format!(
                                "interval family n={n}, members {subset:?}: β̃₀ = {comps} > {size}"
                            ));
                        }
                    }
                    Err(e) => failures.push(format!("interval family n={n}: {e}")),
                }
            }
        }
    }
    finish(
        "betti-bound-audits",
        failures,
        format!("{audits} family audits stay within their Betti bounds"),
    )
}

/// Every nonempty induced subcomplex of the 8-tetrahedron complex is
/// connected with `β̃ᵢ = 0` for `i ≠ 2` and `β̃₂ ≤ 1`.
pub fn eight_tetrahedron_profile() -> CriterionReport {
    let complex = gamma3_prime();
    let vertices: Vec<usize> = complex.vertex_set().iter().copied().collect();
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for size in 1..=vertices.len() {
        for subset in vertices.iter().copied().combinations(size) {
            checked += 1;
            let keep: BTreeSet<usize> = subset.iter().copied().collect();
            let induced = complex.induced_subcomplex(&keep);
            let chain = BoundaryComplex::from_simplicial(&induced);
            for i in 0..=3usize {
                let betti = chain.betti(i, true);
                let bound = if i == 2 { 1 } else { 0 };
                if betti > bound {
                    failures.push(format!("induced {subset:?}: β̃_{i} = {betti} > {bound}"));
                }
            }
        }
    }
    finish(
        "eight-tetrahedron-profile",
        failures,
        format!("{checked} induced subcomplexes connected with β̃ concentrated in degree 2"),
    )
}

/// The embedding-obstruction catalog: nonzero and zero cases, plus the
/// sphere homology of deleted products of simplex boundaries, within 60 s.
pub fn obstruction_catalog(budget: &Budget) -> CriterionReport {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cases: Vec<(String, Result<SimplicialComplex>, usize, bool)> = vec![(
        "complete graph on 5 vertices at d=2".into(),
        SimplicialComplex::simplex_skeleton(4, 1),
        2,
        true,
    )];
    for d in 1..=3usize {
        cases.push((
            format!("boundary of the {}-simplex at d={d}", d + 1),
            SimplicialComplex::simplex_skeleton(d + 1, d),
            d,
            true,
        ));
    }
    cases.push((
        "coned hollow triangle at d=2".into(),
        SimplicialComplex::simplex_skeleton(2, 1).map(|k| k.cone()),
        2,
        true,
    ));
    for d in 1..=2usize {
        cases.push((
            format!("solid {d}-simplex at d={d}"),
            SimplicialComplex::simplex_skeleton(d, d),
            d,
            false,
        ));
    }
    let total = cases.len() + 4;
    for (label, complex, d, want) in cases {
        match complex.and_then(|k| obstruction_nonzero(&k, d, budget)) {
            Ok(analysis) if analysis.nonzero == want => {}
            Ok(analysis) => failures.push(format!(
                "{label}: expected nonzero={want}, computed nonzero={}",
                analysis.nonzero
            )),
            Err(e) => failures.push(format!("{label}: {e}")),
        }
    }
    for d in 0..=3usize {
        let mut want = vec![0usize; d + 1];
        want[0] = if d == 0 { 2 } else { 1 };
        if d > 0 {
            want[d] = 1;
        }
        match sphere_check_deleted_boundary(d, budget) {
            Ok(got) if got == want => {}
            Ok(got) => failures.push(format!(
                "deleted product of the {}-simplex boundary: Betti {got:?} ≠ {want:?}",
                d + 1
            )),
            Err(e) => failures.push(format!("sphere check d={d}: {e}")),
        }
    }
    if start.elapsed().as_secs() >= 60 {
        failures.push("exceeded the 60 s time budget".into());
    }
    finish(
        "obstruction-catalog",
        failures,
        format!("{total} obstruction verdicts and sphere checks agree, within the time budget"),
    )
}

/// Staircase triangulations of products of simplices: simplex count,
/// flip equivariance, and the partition of grid-poset maximal chains.
pub fn staircase_triangulations() -> CriterionReport {
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for p in 0..=4usize {
        for q in 0..=4usize {
            checked += 1;
            let st = StaircaseTriangulation::new(p, q);
            let want = choose(p + q, p);
            if st.count() != want {
                failures.push(format!(
                    "(p,q)=({p},{q}): {} staircases ≠ {want}",
                    st.count()
                ));
            }
            if !st.flip_check() {
                failures.push(format!("(p,q)=({p},{q}): flip is not equivariant"));
            }
            let as_set: BTreeSet<Simplex> = st.staircases().iter().cloned().collect();
            if as_set.len() != st.count() || as_set != grid_maximal_chains(p, q) {
                failures.push(format!(
                    "(p,q)=({p},{q}): staircases do not partition the maximal grid chains"
                ));
            }
        }
    }
    finish(
        "staircase-triangulations",
        failures,
        format!("{checked} triangulations tile their grids with C(p+q,p) simplices"),
    )
}

/// A thousand seeded random rescaling instances satisfy all three
/// postconditions: order-preserving injection, pattern selection of each
/// planted subset, and window meets tracking subset meets.
pub fn rescale_property_suite() -> CriterionReport {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1e);
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for instance in 0..1000usize {
        let q = rng.gen_range(1..=5usize);
        let w = rng.gen_range(q..=5usize);
        let r = rng.gen_range(0..=5usize);
        let y_len = rng.gen_range(q..=q + 4);
        let mut y = BTreeSet::new();
        while y.len() < y_len {
            y.insert(rng.gen_range(0..30usize));
        }
        let y_vec: Vec<usize> = y.iter().copied().collect();
        let subsets: Vec<BTreeSet<usize>> = (0..r)
            .map(|_| {
                rand::seq::index::sample(&mut rng, y_len, q)
                    .iter()
                    .map(|i| y_vec[i])
                    .collect()
            })
            .collect();
        let slack = rng.gen_range(0..=3usize);
        let z: BTreeSet<usize> =
            rand::seq::index::sample(&mut rng, 200, y_len + r * (w - q) + slack)
                .iter()
                .collect();
        let positions: Vec<usize> = rand::seq::index::sample(&mut rng, w, q)
            .iter()
            .map(|p| p + 1)
            .collect();
        checked += 1;
        let outcome = SelectionPattern::new(positions, w)
            .and_then(|pattern| rescale(&pattern, &y, &z, &subsets).map(|out| (pattern, out)));
        match outcome {
            Ok((pattern, out)) => {
                if !rescale_postconditions_hold(&pattern, &y, &subsets, &out) {
                    failures.push(format!(
                        "instance {instance} (q={q}, w={w}, r={r}): postconditions violated"
                    ));
                }
            }
            Err(e) => failures.push(format!("instance {instance} (q={q}, w={w}, r={r}): {e}")),
        }
    }
    finish(
        "rescale-postconditions",
        failures,
        format!("{checked} seeded instances satisfy the injection, selection, and meet laws"),
    )
}

fn alpha_identity_holds(k: &SimplicialComplex) -> Result<bool> {
    let dim = k.dim();
    let alpha = alpha_map(k, dim as usize)?;
    let sd = k.barycentric_subdivision();
    for sigma in k.simplices_of_dim(dim) {
        let lhs = alpha.apply(&Chain::single(sigma.clone()).boundary())?;
        let mut rhs = Chain::zero(dim - 1);
        for tau in sd.top_cells_within(sigma) {
            rhs = rhs.add(&Chain::single(tau).boundary())?;
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// End-to-end construction pipeline on the crafted corpora: verified
/// bundles in dimensions 0, 1, and 2; almost-embedding verdicts on
/// empty-intersection families; the subdivision boundary identity and
/// even summand parity; all within 120 s.
pub fn construction_pipeline(budget: &Budget) -> CriterionReport {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut stages = 0usize;

    let require_built = |label: &str,
                         out: Result<BuildOutcome>,
                         expect_hae: Option<bool>,
                         failures: &mut Vec<String>|
     -> Option<crate::construction::BuildTrace> {
        match out {
            Ok(BuildOutcome::Built { bundle, trace }) => {
                match verify_constrained(&bundle) {
                    Ok(report) if report.is_ok() => {}
                    Ok(report) => {
                        failures.push(format!(
                            "{label}: bundle fails verification ({} violations)",
                            report.violations.len()
                        ));
                        return None;
                    }
                    Err(e) => {
                        failures.push(format!("{label}: {e}"));
                        return None;
                    }
                }
                if let Some(want) = expect_hae {
                    match almost_embedding_verdict(&bundle) {
                        Ok(got) if got == want => {}
                        Ok(got) => failures.push(format!(
                            "{label}: almost-embedding verdict {got}, expected {want}"
                        )),
                        Err(e) => failures.push(format!("{label}: {e}")),
                    }
                }
                Some(trace)
            }
            Ok(BuildOutcome::Insufficient(i)) => {
                failures.push(format!(
                    "{label}: insufficient at {}: {}",
                    i.stage, i.detail
                ));
                None
            }
            Err(e) => {
                failures.push(format!("{label}: {e}"));
                None
            }
        }
    };

    // Dimension 0: three isolated vertices over the four-interval family
    // (empty total intersection, so the almost-embedding criterion bites).
    stages += 1;
    let dim0 = interval_family(4).and_then(|family| {
        let k = SimplicialComplex::from_simplices([
            Simplex::new([0])?,
            Simplex::new([3])?,
            Simplex::new([7])?,
        ]);
        build_dim0(&k, &family).map(|bundle| BuildOutcome::Built {
            bundle: Box::new(bundle),
            trace: crate::construction::BuildTrace::default(),
        })
    });
    require_built("dimension-0 corpus", dim0, Some(true), &mut failures);

    // Dimension 1 over the sliding-path family (nonempty intersection:
    // verification only).
    stages += 1;
    let path_out = sliding_path_family(12, 13).and_then(|family| {
        let k = SimplicialComplex::from_simplices([Simplex::new([0, 1])?, Simplex::new([1, 2])?]);
        build_dim1(&k, &family, 1, budget)
    });
    require_built("dimension-1 path corpus", path_out, None, &mut failures);

    // Dimension 1, complete graph over the 15-member skeleton family
    // (empty intersection: must be an almost-embedding).
    stages += 1;
    let k5_out = skeleton_family(15, 1).and_then(|family| {
        let k5 = SimplicialComplex::simplex_skeleton(4, 1)?;
        build_dim1(&k5, &family, 1, budget)
    });
    require_built(
        "dimension-1 complete-graph corpus",
        k5_out,
        Some(true),
        &mut failures,
    );

    // Dimension 2 via the general step over the 28-member skeleton family.
    stages += 1;
    let step_out = skeleton_family(28, 2).and_then(|family| {
        let triangle = SimplicialComplex::from_simplices([Simplex::new([0, 1, 2])?]);
        build_constrained(&triangle, &family, 1, budget)
    });
    if let Some(trace) = require_built(
        "dimension-2 triangle corpus",
        step_out,
        Some(true),
        &mut failures,
    ) {
        if trace.subdivision_summands.iter().any(|c| c % 2 != 0) {
            failures.push(format!(
                "dimension-2 triangle corpus: odd summand count in {:?}",
                trace.subdivision_summands
            ));
        }
    }

    // The subdivision boundary identity on a segment, a triangle, and a
    // tetrahedron.
    for (label, complex) in [
        ("segment", SimplicialComplex::simplex_skeleton(1, 1)),
        ("triangle", SimplicialComplex::simplex_skeleton(2, 2)),
        ("tetrahedron", SimplicialComplex::simplex_skeleton(3, 3)),
    ] {
        stages += 1;
        match complex.and_then(|k| alpha_identity_holds(&k)) {
            Ok(true) => {}
            Ok(false) => failures.push(format!(
                "subdivision boundary identity fails on the {label}"
            )),
            Err(e) => failures.push(format!("subdivision identity on the {label}: {e}")),
        }
    }

    if start.elapsed().as_secs() >= 120 {
        failures.push("exceeded the 120 s time budget".into());
    }
    finish(
        "construction-pipeline",
        failures,
        format!("{stages} pipeline stages verified, within the time budget"),
    )
}

/// Betti numbers and Helly numbers agree with independent brute-force
/// oracles on a catalog of small complexes and families.
pub fn oracle_agreement(budget: &Budget) -> CriterionReport {
    let mut failures = Vec::new();
    let mut betti_checked = 0usize;

    let complexes: Vec<(String, Result<SimplicialComplex>)> = vec![
        (
            "empty complex".into(),
            Ok(SimplicialComplex::from_simplices(Vec::<Simplex>::new())),
        ),
        (
            "single vertex".into(),
            SimplicialComplex::simplex_skeleton(0, 0),
        ),
        (
            "two vertices".into(),
            SimplicialComplex::simplex_skeleton(1, 0),
        ),
        (
            "solid segment".into(),
            SimplicialComplex::simplex_skeleton(1, 1),
        ),
        (
            "hollow triangle".into(),
            SimplicialComplex::simplex_skeleton(2, 1),
        ),
        (
            "boundary of the 3-simplex".into(),
            SimplicialComplex::simplex_skeleton(3, 2),
        ),
        (
            "solid 3-simplex".into(),
            SimplicialComplex::simplex_skeleton(3, 3),
        ),
        (
            "1-skeleton of the 4-simplex".into(),
            SimplicialComplex::simplex_skeleton(4, 1),
        ),
        (
            "2-skeleton of the 4-simplex".into(),
            SimplicialComplex::simplex_skeleton(4, 2),
        ),
        (
            "coned hollow triangle".into(),
            SimplicialComplex::simplex_skeleton(2, 1).map(|k| k.cone()),
        ),
        (
            "two disjoint hollow triangles".into(),
            (|| {
                Ok(SimplicialComplex::from_simplices([
                    Simplex::new([0, 1])?,
                    Simplex::new([1, 2])?,
                    Simplex::new([0, 2])?,
                    Simplex::new([3, 4])?,
                    Simplex::new([4, 5])?,
                    Simplex::new([3, 5])?,
                ]))
            })(),
        ),
    ];
    for (label, complex) in complexes {
        let k = match complex {
            Ok(k) => k,
            Err(e) => {
                failures.push(format!("{label}: {e}"));
                continue;
            }
        };
        let chain = BoundaryComplex::from_simplicial(&k);
        let top = (k.dim().max(0) as usize) + 1;
        for i in 0..=top {
            for reduced in [false, true] {
                betti_checked += 1;
                match brute_betti(&chain, i, reduced) {
                    Ok(brute) => {
                        let fast = chain.betti(i, reduced);
                        if brute != fast {
                            failures.push(format!(
                                "{label}, degree {i} (reduced={reduced}): rank method {fast} ≠ enumeration {brute}"
                            ));
                        }
                    }
                    Err(e) => failures.push(format!("{label}, degree {i}: {e}")),
                }
            }
        }
    }

    let mut helly_checked = 0usize;
    let families: Vec<(String, Result<crate::helly::SetFamily>)> = vec![
        ("interval family n=1".into(), interval_family(1)),
        ("interval family n=3".into(), interval_family(3)),
        ("interval family n=4".into(), interval_family(4)),
        ("skeleton family (4,1)".into(), skeleton_family(4, 1)),
        ("skeleton family (5,1)".into(), skeleton_family(5, 1)),
        ("skeleton family (5,2)".into(), skeleton_family(5, 2)),
        ("skeleton family (6,2)".into(), skeleton_family(6, 2)),
        ("skeleton family (7,1)".into(), skeleton_family(7, 1)),
        ("coned-sphere family (1,2)".into(), gamma_family(1, 2)),
        ("coned-sphere family (1,3)".into(), gamma_family(1, 3)),
        ("coned-sphere family (2,2)".into(), gamma_family(2, 2)),
        ("tight family (2,2,3)".into(), tight_family(2, 2, 3)),
        ("tight family (3,2,5)".into(), tight_family(3, 2, 5)),
        (
            "sliding-path family (4,5)".into(),
            sliding_path_family(4, 5),
        ),
        (
            "sliding-path family (5,3)".into(),
            sliding_path_family(5, 3),
        ),
    ];
    for (label, family) in families {
        helly_checked += 1;
        let f = match family {
            Ok(f) => f,
            Err(e) => {
                failures.push(format!("{label}: {e}"));
                continue;
            }
        };
        match (f.helly_number(budget), brute_helly(&f)) {
            (Ok(fast), Ok(brute)) => {
                if fast.helly_number != brute.helly_number
                    || fast.minimal_empty_subfamilies != brute.minimal_empty_subfamilies
                {
                    failures.push(format!(
                        "{label}: analysis ({}, {:?}) ≠ brute force ({}, {:?})",
                        fast.helly_number,
                        fast.minimal_empty_subfamilies,
                        brute.helly_number,
                        brute.minimal_empty_subfamilies
                    ));
                }
            }
            (Err(e), _) | (_, Err(e)) => failures.push(format!("{label}: {e}")),
        }
    }
    finish(
        "oracle-agreement",
        failures,
        format!(
            "{betti_checked} Betti values and {helly_checked} Helly analyses agree with brute force"
        ),
    )
}
