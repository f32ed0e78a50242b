//! Direct search for monochromatic sub-hypergraphs.
//!
//! Instead of invoking worst-case Ramsey numbers, the pipeline looks for
//! the monochromatic structure it needs in the instance at hand. The
//! search is exhaustive within the given vertex set, so `None` means the
//! instance really contains no such subset — the set may simply be
//! smaller than the relevant Ramsey threshold.

use std::collections::HashMap;

use crate::budget::Budget;
use crate::error::{Error, Result};

/// Find a `z`-subset of `vertices` all of whose `x`-subsets share one
/// color, together with that color.
///
/// The coloring may return `None` for an `x`-subset, which disqualifies
/// every candidate containing it. Candidates are explored in
/// lexicographic order and colorings are memoized, so the first (hence
/// lexicographically least) monochromatic subset is returned. The budget
/// bounds the number of distinct coloring evaluations.
pub fn ramsey_find<C, F>(
    vertices: &[usize],
    x: usize,
    z: usize,
    budget: &Budget,
    coloring: F,
) -> Result<Option<(Vec<usize>, C)>>
where
    C: Clone + Eq,
    F: Fn(&[usize]) -> Option<C>,
{
    if x == 0 || z < x {
        return Err(Error::InvalidConfig(format!(
            "need 1 ≤ x ≤ z, got x={x}, z={z}"
        )));
    }
    if vertices.len() < z {
        return Ok(None);
    }
    let mut memo: HashMap<Vec<usize>, Option<C>> = HashMap::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(z);
    let mut search = Search {
        vertices,
        x,
        z,
        budget,
        coloring: &coloring,
        memo: &mut memo,
    };
    let mut color: Option<C> = None;
    if search.extend(&mut chosen, 0, &mut color)? {
        let c = color.expect("a full candidate fixes the color");
        Ok(Some((chosen, c)))
    } else {
        Ok(None)
    }
}

struct Search<'a, C, F> {
    vertices: &'a [usize],
    x: usize,
    z: usize,
    budget: &'a Budget,
    coloring: &'a F,
    memo: &'a mut HashMap<Vec<usize>, Option<C>>,
}

impl<C, F> Search<'_, C, F>
where
    C: Clone + Eq,
    F: Fn(&[usize]) -> Option<C>,
{
    fn color_of(&mut self, subset: &[usize]) -> Result<Option<C>> {
        if let Some(c) = self.memo.get(subset) {
            return Ok(c.clone());
        }
        self.budget.check_cells(self.memo.len() + 1)?;
        let c = (self.coloring)(subset);
        self.memo.insert(subset.to_vec(), c.clone());
        Ok(c)
    }

    /// Try to grow `chosen` into a monochromatic `z`-subset, considering
    /// vertices from index `from` on. `color` is the color forced so far
    /// (set once the first `x`-subset is complete).
    fn extend(
        &mut self,
        chosen: &mut Vec<usize>,
        from: usize,
        color: &mut Option<C>,
    ) -> Result<bool> {
        if chosen.len() == self.z {
            return Ok(true);
        }
        let remaining = self.z - chosen.len();
        for idx in from..self.vertices.len() {
            if self.vertices.len() - idx < remaining {
                break;
            }
            let v = self.vertices[idx];
            chosen.push(v);
            let saved = color.clone();
            if self.new_subsets_ok(chosen, color)? && self.extend(chosen, idx + 1, color)? {
                return Ok(true);
            }
            *color = saved;
            chosen.pop();
        }
        Ok(false)
    }

    /// Check every `x`-subset of `chosen` that contains the newly added
    /// last vertex; extend or compare the forced color.
    fn new_subsets_ok(&mut self, chosen: &[usize], color: &mut Option<C>) -> Result<bool> {
        if chosen.len() < self.x {
            return Ok(true);
        }
        let last = *chosen.last().expect("nonempty candidate");
        let pool = &chosen[..chosen.len() - 1];
        let mut subset = Vec::with_capacity(self.x);
        self.check_combinations(pool, last, 0, &mut subset, color)
    }

    fn check_combinations(
        &mut self,
        pool: &[usize],
        last: usize,
        from: usize,
        subset: &mut Vec<usize>,
        color: &mut Option<C>,
    ) -> Result<bool> {
        if subset.len() == self.x - 1 {
            let mut full = subset.clone();
            full.push(last);
            let Some(c) = self.color_of(&full)? else {
                return Ok(false);
            };
            return Ok(match color {
                Some(existing) => *existing == c,
                None => {
                    *color = Some(c);
                    true
                }
            });
        }
        let needed = self.x - 1 - subset.len();
        for idx in from..pool.len() {
            if pool.len() - idx < needed {
                break;
            }
            subset.push(pool[idx]);
            let ok = self.check_combinations(pool, last, idx + 1, subset, color)?;
            subset.pop();
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn constant_coloring_returns_first_subset() {
        let vs: Vec<usize> = (0..6).collect();
        let found = ramsey_find(&vs, 2, 3, &budget(), |_s| Some(0u8))
            .unwrap()
            .unwrap();
        assert_eq!(found.0, vec![0, 1, 2]);
        assert_eq!(found.1, 0);
    }

    #[test]
    fn six_vertices_always_contain_a_monochromatic_triangle() {
        // Exhaustive over all 2-colorings of the 15 pairs on 6 vertices.
        let vs: Vec<usize> = (0..6).collect();
        let pairs: Vec<(usize, usize)> = vs.iter().copied().tuple_combinations().collect();
        for mask in 0u32..1 << 15 {
            let coloring = |s: &[usize]| {
                let idx = pairs
                    .iter()
                    .position(|&(a, b)| [a, b] == [s[0], s[1]])
                    .unwrap();
                Some(mask >> idx & 1)
            };
            assert!(
                ramsey_find(&vs, 2, 3, &budget(), coloring)
                    .unwrap()
                    .is_some(),
                "mask {mask:#x}"
            );
        }
    }

    #[test]
    fn pentagon_coloring_avoids_monochromatic_triangles() {
        // Color pairs of Z₅ by whether their difference is ±1 (pentagon)
        // or ±2 (pentagram); neither class contains a triangle.
        let vs: Vec<usize> = (0..5).collect();
        let coloring = |s: &[usize]| {
            let d = (s[1] + 5 - s[0]) % 5;
            Some(usize::from(d == 1 || d == 4))
        };
        assert!(ramsey_find(&vs, 2, 3, &budget(), coloring)
            .unwrap()
            .is_none());
    }

    #[test]
    fn none_colors_disqualify() {
        // Triples containing vertex 0 are uncolorable, so the answer must
        // avoid vertex 0 entirely.
        let vs: Vec<usize> = (0..7).collect();
        let found = ramsey_find(&vs, 3, 4, &budget(), |s: &[usize]| {
            if s.contains(&0) {
                None
            } else {
                Some(1u8)
            }
        })
        .unwrap()
        .unwrap();
        assert_eq!(found.0, vec![1, 2, 3, 4]);
    }

    #[test]
    fn undersized_vertex_sets_give_none() {
        let vs: Vec<usize> = (0..3).collect();
        assert!(ramsey_find(&vs, 2, 4, &budget(), |_s| Some(0u8))
            .unwrap()
            .is_none());
    }

    #[test]
    fn parameter_validation_and_budget() {
        let vs: Vec<usize> = (0..6).collect();
        assert!(ramsey_find(&vs, 0, 3, &budget(), |_s| Some(0u8)).is_err());
        assert!(ramsey_find(&vs, 4, 3, &budget(), |_s| Some(0u8)).is_err());
        let tiny = Budget {
            cells: 3,
            ..Budget::default()
        };
        assert!(ramsey_find(&vs, 2, 6, &tiny, |_s| Some(0u8)).is_err());
    }
}
