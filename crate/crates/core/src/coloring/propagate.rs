use crate::lattice::{full_neighbors, Window, FULL_DEGREE};

use super::color::{Color, ColorSet, PartialColoring, Seed};

pub(crate) const OUTSIDE: u32 = u32::MAX;

/// Full adjacency restricted to a window, by dense tile index.
#[derive(Clone, Debug)]
pub struct WindowGraph {
    window: Window,
    adj: Vec<[u32; FULL_DEGREE]>,
}

impl WindowGraph {
    pub fn new(window: Window) -> Self {
        let adj = (0..window.len())
            .map(|k| {
                full_neighbors(window.tile_at(k))
                    .map(|u| window.index_of(u).map_or(OUTSIDE, |x| x as u32))
            })
            .collect();
        WindowGraph { window, adj }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// In-window neighbours of tile `k`.
    pub fn neighbors(&self, k: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[k]
            .iter()
            .filter(|&&u| u != OUTSIDE)
            .map(|&u| u as usize)
    }

    /// Seed colours by dense index. Tiles outside the window are dropped.
    pub fn seed_colors(&self, s: &Seed) -> Vec<Option<Color>> {
        let mut colors = vec![None; self.len()];
        for (t, c) in s.iter() {
            if let Some(k) = self.window.index_of(t) {
                colors[k] = Some(c);
            }
        }
        colors
    }
}

/// Outcome of forcing, with the round in which every tile got its colour
/// (0 for seed tiles).
#[derive(Clone, Debug)]
pub struct Propagation {
    pub coloring: PartialColoring,
    pub rounds: Vec<Option<u32>>,
    /// Number of rounds that coloured at least one tile.
    pub round_count: u32,
}

/// Forcing fixpoint on a window: an uncoloured tile whose coloured
/// neighbours show exactly three colours receives the fourth; one whose
/// neighbours show all four sets the contradiction flag. Rounds are
/// synchronous, so the result does not depend on processing order.
/// Seed tiles outside the window are ignored.
pub fn propagate(s: &Seed, w: Window) -> PartialColoring {
    propagate_rounds(s, &WindowGraph::new(w)).coloring
}

pub fn propagate_rounds(s: &Seed, g: &WindowGraph) -> Propagation {
    let mut colors = g.seed_colors(s);
    let mut rounds: Vec<Option<u32>> = colors.iter().map(|c| c.map(|_| 0)).collect();
    let mut contradiction = (0..g.len()).any(|k| {
        colors[k].is_some_and(|c| g.neighbors(k).any(|u| colors[u] == Some(c)))
    });

    let seen_colors = |colors: &[Option<Color>], k: usize| -> ColorSet {
        g.neighbors(k).filter_map(|u| colors[u]).collect()
    };

    let mut candidates: Vec<usize> = (0..g.len())
        .filter(|&k| colors[k].is_some())
        .flat_map(|k| g.neighbors(k))
        .filter(|&u| colors[u].is_none())
        .collect();
    let mut round = 0;
    let mut round_count = 0;
    let mut mark = vec![false; g.len()];

    while !contradiction && !candidates.is_empty() {
        round += 1;
        candidates.sort_unstable();
        candidates.dedup();
        let mut forced = Vec::new();
        for &k in &candidates {
            if colors[k].is_some() {
                continue;
            }
            let seen = seen_colors(&colors, k);
            match seen.len() {
                4 => {
                    contradiction = true;
                    break;
                }
                3 => forced.push((k, seen.complement().as_single().expect("one colour left"))),
                _ => {}
            }
        }
        if contradiction || forced.is_empty() {
            break;
        }
        round_count = round;
        for &(k, c) in &forced {
            colors[k] = Some(c);
            rounds[k] = Some(round);
            mark[k] = true;
        }
        // Two tiles forced in the same round may clash with each other.
        contradiction = forced.iter().any(|&(k, c)| {
            g.neighbors(k).any(|u| mark[u] && u != k && colors[u] == Some(c))
        });
        for &(k, _) in &forced {
            mark[k] = false;
        }
        candidates = forced
            .iter()
            .flat_map(|&(k, _)| g.neighbors(k))
            .filter(|&u| colors[u].is_none())
            .collect();
    }

    Propagation {
        coloring: PartialColoring::from_parts(g.window(), colors, contradiction),
        rounds,
        round_count,
    }
}
