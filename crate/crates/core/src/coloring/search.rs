//! Exhaustive search for perfect seeds inside a patch of blocks.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::lattice::{apply_symmetry, tiles_in_window, LatticeSymmetry, TileId, Window};

use super::classify::forced_within;
use super::color::{validate_seed, Color, Seed};

/// Canonical representative of a coloured seed under the validated point
/// group, even block translations and colour permutations.
///
/// Every image is translated so its smallest tile lies in block `(0, 0)` or
/// `(1, 0)` and recoloured by first appearance in tile order; the
/// lexicographically smallest image wins.
pub fn canonical_seed(s: &Seed) -> Seed {
    canonical_with(s, &LatticeSymmetry::point_group())
}

fn canonical_with(s: &Seed, group: &[LatticeSymmetry]) -> Seed {
    let mut best: Option<Vec<(TileId, Color)>> = None;
    for &g in group {
        let mut img: Vec<(TileId, Color)> =
            s.iter().map(|(t, c)| (apply_symmetry(t, g), c)).collect();
        img.sort();
        let Some(&(m, _)) = img.first() else {
            return Seed::new();
        };
        let di = if (m.i + m.j).rem_euclid(2) == 0 { m.i } else { m.i - 1 };
        let dj = m.j;
        let mut relabel: [Option<Color>; 4] = [None; 4];
        let mut next = 0;
        for (t, c) in img.iter_mut() {
            *t = t.translate(-di, -dj);
            let slot = &mut relabel[c.index()];
            *c = *slot.get_or_insert_with(|| {
                next += 1;
                Color::from_index(next - 1)
            });
        }
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
    }
    best.unwrap_or_default().into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximum number of symmetry classes to test.
    pub max_classes: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_classes: 5_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Perfect seeds as found in patch coordinates, one per symmetry class,
    /// ordered by canonical form.
    pub seeds: Vec<Seed>,
    /// Number of symmetry classes tested.
    pub classes: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("k must be at least 1")]
    EmptySeed,
    #[error("k = {k} exceeds the {tiles} tiles of the patch")]
    PatchTooSmall { k: usize, tiles: usize },
    #[error("budget exhausted: {classes} symmetry classes exceed the limit of {limit}")]
    BudgetExhausted { classes: u64, limit: u64 },
}

/// Every `k`-subset of patch tiles with every colouring, reduced modulo
/// symmetry and colour permutation, filtered by "forcing colours the window
/// of radius `r_test` around the patch centre".
pub fn search_perfect_seeds(
    k: usize,
    patch: Window,
    r_test: u32,
    budget: SearchBudget,
) -> Result<SearchOutcome, SearchError> {
    if k == 0 {
        return Err(SearchError::EmptySeed);
    }
    let tiles = tiles_in_window(patch);
    if k > tiles.len() {
        return Err(SearchError::PatchTooSmall {
            k,
            tiles: tiles.len(),
        });
    }
    let group = LatticeSymmetry::point_group();

    let subsets = combinations(tiles.len(), k);
    let mut classes: Vec<(Seed, Seed)> = subsets
        .par_iter()
        .flat_map_iter(|idx| {
            let mut out = Vec::new();
            for colors in restricted_growth(k) {
                let s: Seed = idx
                    .iter()
                    .zip(&colors)
                    .map(|(&t, &c)| (tiles[t], Color::from_index(c)))
                    .collect();
                if validate_seed(&s).is_ok() {
                    out.push((canonical_with(&s, &group), s));
                }
            }
            out
        })
        .collect();
    // Keep the first occurrence of each class in (canonical, seed) order.
    classes.par_sort_unstable();
    classes.dedup_by(|a, b| a.0 == b.0);

    let limit = budget.max_classes;
    if classes.len() as u64 > limit {
        return Err(SearchError::BudgetExhausted {
            classes: classes.len() as u64,
            limit,
        });
    }

    let w = Window::new(patch.center, r_test);
    let seeds = classes
        .par_iter()
        .filter(|(_, s)| forced_within(s, w))
        .map(|(_, s)| s.clone())
        .collect();
    Ok(SearchOutcome {
        seeds,
        classes: classes.len() as u64,
    })
}

/// All canonical representatives found by a search, for class comparisons.
pub fn class_set(seeds: &[Seed]) -> BTreeSet<Seed> {
    seeds.iter().map(canonical_seed).collect()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(p) = (0..k).rev().find(|&p| idx[p] < n - k + p) else {
            return out;
        };
        idx[p] += 1;
        for q in p + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// Colour index strings where each new colour is the next unused one, so
/// every colouring appears once up to permutation.
fn restricted_growth(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(k: usize, used: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in 0..(used + 1).min(4) {
            cur.push(c);
            go(k, used.max(c + 1), cur, out);
            cur.pop();
        }
    }
    go(k, 0, &mut cur, &mut out);
    out
}
