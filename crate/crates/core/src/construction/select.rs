//! Position-based selection in ordered sets, and the rescaling trick that
//! plants prescribed windows around given subsets.

use std::collections::{BTreeMap, BTreeSet};

use num::{BigInt, BigRational, One};
use serde::Serialize;

use crate::error::{Error, Result};

/// A set of 1-based positions inside a window of size `w`.
///
/// Applied to an ordered set of `w` elements, the pattern picks the
/// elements sitting at its positions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelectionPattern {
    positions: BTreeSet<usize>,
    window: usize,
}

impl SelectionPattern {
    pub fn new(positions: impl IntoIterator<Item = usize>, window: usize) -> Result<Self> {
        let positions: BTreeSet<usize> = positions.into_iter().collect();
        if positions.is_empty() {
            return Err(Error::InvalidConfig("selection needs ≥ 1 position".into()));
        }
        if let Some(&p) = positions.iter().find(|&&p| p == 0 || p > window) {
            return Err(Error::InvalidConfig(format!(
                "position {p} outside 1..={window}"
            )));
        }
        Ok(SelectionPattern { positions, window })
    }

    pub fn positions(&self) -> &BTreeSet<usize> {
        &self.positions
    }

    pub fn window(&self) -> usize {
        self.window
    }

    /// Number of selected positions.
    pub fn q(&self) -> usize {
        self.positions.len()
    }
}

/// The subset selected by the pattern in the ordered set `w_set`.
pub fn selected_subset<T: Ord + Copy>(
    pattern: &SelectionPattern,
    w_set: &BTreeSet<T>,
) -> Result<BTreeSet<T>> {
    if w_set.len() != pattern.window() {
        return Err(Error::InvalidConfig(format!(
            "pattern expects a window of {}, got {}",
            pattern.window(),
            w_set.len()
        )));
    }
    let elems: Vec<T> = w_set.iter().copied().collect();
    Ok(pattern.positions().iter().map(|&p| elems[p - 1]).collect())
}

/// The output of [`rescale`]: a strictly increasing injection and one
/// window per input subset.
#[derive(Clone, Debug)]
pub struct RescaleOutcome {
    /// Strictly increasing injection of the source into the target.
    pub pi: BTreeMap<usize, usize>,
    /// `windows[i]` has size `w`, and the pattern selects `π(Aᵢ)` in it.
    pub windows: Vec<BTreeSet<usize>>,
}

/// Inject `y` into `z` so that each given `q`-subset `Aᵢ` of `y` sits at
/// the pattern's positions inside a window `Wᵢ ⊆ z`, with
/// `Wᵢ ∩ Wⱼ = π(Aᵢ ∩ Aⱼ)` for `i ≠ j`.
///
/// The construction works on a rational blueprint: `y` is first
/// identified with `1..=|y|`; each subset then receives its own dummy
/// rationals placed in the open unit gaps around its elements so that the
/// pattern's positions come out right. Dummies get offsets `2^{-j}` above
/// an integer, with `j` drawn from one global counter, which keeps all
/// dummy sets pairwise disjoint. The blueprint (integers and dummies
/// together) is finally mapped monotonically onto the smallest elements
/// of `z`.
pub fn rescale(
    pattern: &SelectionPattern,
    y: &BTreeSet<usize>,
    z: &BTreeSet<usize>,
    subsets: &[BTreeSet<usize>],
) -> Result<RescaleOutcome> {
    let q = pattern.q();
    let w = pattern.window();
    let r = subsets.len();
    if z.len() < y.len() + r * (w - q) {
        return Err(Error::InvalidConfig(format!(
            "target has {} elements but {} are needed",
            z.len(),
            y.len() + r * (w - q)
        )));
    }
    for (i, a) in subsets.iter().enumerate() {
        if a.len() != q {
            return Err(Error::InvalidConfig(format!(
                "subset {i} has {} elements, pattern selects {q}",
                a.len()
            )));
        }
        if !a.is_subset(y) {
            return Err(Error::InvalidConfig(format!(
                "subset {i} is not contained in the source set"
            )));
        }
    }

    // Blueprint: y ↦ 1..=|y| monotonically.
    let rank: BTreeMap<usize, usize> = y.iter().enumerate().map(|(j, &v)| (v, j + 1)).collect();
    let positions: Vec<usize> = pattern.positions().iter().copied().collect();
    let mut blueprint: Vec<(BigRational, Origin)> = y
        .iter()
        .map(|&v| (int(rank[&v]), Origin::Source(v)))
        .collect();
    let mut dummy_exponent = 1u32;
    let mut place =
        |gap_base: usize, count: usize, run: usize, out: &mut Vec<(BigRational, Origin)>| {
            for _ in 0..count {
                let offset = BigRational::new(BigInt::one(), BigInt::from(2u32) << dummy_exponent);
                dummy_exponent += 1;
                out.push((int(gap_base) + offset, Origin::Dummy(run)));
            }
        };
    for (i, a) in subsets.iter().enumerate() {
        let anchors: Vec<usize> = a.iter().map(|v| rank[v]).collect();
        // Dummies needed strictly before the first anchor, between
        // consecutive anchors, and after the last one, so that anchors
        // land exactly at the pattern's positions.
        place(anchors[0] - 1, positions[0] - 1, i, &mut blueprint);
        for j in 1..q {
            place(
                anchors[j - 1],
                positions[j] - positions[j - 1] - 1,
                i,
                &mut blueprint,
            );
        }
        place(anchors[q - 1], w - positions[q - 1], i, &mut blueprint);
    }
    blueprint.sort_by(|a, b| a.0.cmp(&b.0));

    // Monotone re-embedding into the smallest elements of z.
    let targets: Vec<usize> = z.iter().copied().take(blueprint.len()).collect();
    let mut pi = BTreeMap::new();
    let mut windows = vec![BTreeSet::new(); r];
    for (slot, (_, origin)) in blueprint.iter().enumerate() {
        match *origin {
            Origin::Source(v) => {
                pi.insert(v, targets[slot]);
            }
            Origin::Dummy(run) => {
                windows[run].insert(targets[slot]);
            }
        }
    }
    for (i, a) in subsets.iter().enumerate() {
        for v in a {
            windows[i].insert(pi[v]);
        }
    }
    Ok(RescaleOutcome { pi, windows })
}

#[derive(Clone, Copy, Debug)]
enum Origin {
    Source(usize),
    Dummy(usize),
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Check the three rescale postconditions directly; used by tests and the
/// pipeline's self-audit.
pub(crate) fn rescale_postconditions_hold(
    pattern: &SelectionPattern,
    y: &BTreeSet<usize>,
    subsets: &[BTreeSet<usize>],
    outcome: &RescaleOutcome,
) -> bool {
    // π strictly increasing on y.
    let images: Vec<usize> = y.iter().map(|v| outcome.pi[v]).collect();
    if images.windows(2).any(|p| p[0] >= p[1]) {
        return false;
    }
    // The pattern selects π(Aᵢ) in Wᵢ.
    for (a, w_set) in subsets.iter().zip(&outcome.windows) {
        let selected = match selected_subset(pattern, w_set) {
            Ok(s) => s,
            Err(_) => return false,
        };
        let image: BTreeSet<usize> = a.iter().map(|v| outcome.pi[v]).collect();
        if selected != image {
            return false;
        }
    }
    // Wᵢ ∩ Wⱼ = π(Aᵢ ∩ Aⱼ) for i ≠ j.
    for i in 0..subsets.len() {
        for j in i + 1..subsets.len() {
            let meet: BTreeSet<usize> = outcome.windows[i]
                .intersection(&outcome.windows[j])
                .copied()
                .collect();
            let expected: BTreeSet<usize> = subsets[i]
                .intersection(&subsets[j])
                .map(|v| outcome.pi[v])
                .collect();
            if meet != expected {
                return false;
            }
        }
    }
    true
}
