//! Exact reasoning over proper window colourings.
//!
//! Counting is backtracking over colour bit sets. Fixing a tile removes its
//! colour from every neighbour; a neighbour left with one colour is fixed in
//! turn, which is the forcing rule seen from the candidate side. Branching
//! tries colours in the order R, B, Y, G.
//!
//! Candidate sets and satisfiability go through a SAT solver instead: the
//! constraints are global enough that backtracking stalls on windows of
//! radius 6 once the seed is small.

use crate::lattice::{TileId, Window};

use super::color::{Color, ColorSet, PartialColoring, Seed};
use super::propagate::{propagate_rounds, WindowGraph};
use super::sat::SatColoring;

/// Result of a capped enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumeration {
    /// Exact number of colourings when `count < cap`, otherwise `cap`.
    pub count: u64,
    pub cap: u64,
    /// Up to two witnesses, in search order.
    pub witnesses: Vec<PartialColoring>,
}

impl Enumeration {
    pub fn reached_cap(&self) -> bool {
        self.count >= self.cap
    }
}

/// Candidate colours per tile of a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateMap {
    window: Window,
    sets: Vec<ColorSet>,
}

impl CandidateMap {
    pub fn new(window: Window, sets: Vec<ColorSet>) -> Self {
        assert_eq!(window.len(), sets.len());
        CandidateMap { window, sets }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn get(&self, t: TileId) -> Option<ColorSet> {
        self.window.index_of(t).map(|k| self.sets[k])
    }

    pub fn sets(&self) -> &[ColorSet] {
        &self.sets
    }

    /// Tiles whose candidate set is a singleton.
    pub fn forced(&self) -> PartialColoring {
        let colors = self.sets.iter().map(|s| s.as_single()).collect();
        PartialColoring::from_parts(self.window, colors, false)
    }

    pub fn is_barren(&self) -> bool {
        self.sets.iter().any(|s| s.is_empty())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("seed admits no proper colouring of the window of radius {0}")]
    WindowBarren(u32),
}

pub(crate) struct Solver<'g> {
    graph: &'g WindowGraph,
}

impl<'g> Solver<'g> {
    pub(crate) fn new(graph: &'g WindowGraph) -> Self {
        Solver { graph }
    }

    /// Initial domains for a seed plus extra fixed tiles, after unit
    /// propagation. `None` if a domain empties.
    pub(crate) fn root(&self, fixed: &[Option<Color>]) -> Option<Vec<ColorSet>> {
        let mut domains = vec![ColorSet::FULL; self.graph.len()];
        let mut queue = Vec::new();
        for (k, c) in fixed.iter().enumerate() {
            if let Some(c) = *c {
                domains[k] = ColorSet::single(c);
                queue.push(k);
            }
        }
        self.settle(&mut domains, queue).then_some(domains)
    }

    /// Unit propagation from the tiles in `queue`, whose domains have just
    /// become singletons.
    fn settle(&self, domains: &mut [ColorSet], mut queue: Vec<usize>) -> bool {
        while let Some(k) = queue.pop() {
            let c = match domains[k].as_single() {
                Some(c) => c,
                None => return false,
            };
            for u in self.graph.neighbors(k) {
                if domains[u].contains(c) {
                    domains[u].remove(c);
                    match domains[u].len() {
                        0 => return false,
                        1 => queue.push(u),
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Fewest candidates first, then most decided neighbours, then lowest
    /// index. The second key keeps the decided region connected.
    fn pick(&self, domains: &[ColorSet]) -> Option<usize> {
        let mut best: Option<(u32, usize, usize)> = None;
        for (k, d) in domains.iter().enumerate() {
            let n = d.len();
            if n < 2 || best.is_some_and(|(m, _, _)| n > m) {
                continue;
            }
            let decided = self
                .graph
                .neighbors(k)
                .filter(|&u| domains[u].len() == 1)
                .count();
            if best.is_none_or(|(m, f, _)| n < m || decided > f) {
                best = Some((n, decided, k));
            }
        }
        best.map(|(_, _, k)| k)
    }

    /// Depth-first enumeration; `visit` returns `false` to stop.
    pub(crate) fn search(
        &self,
        domains: Vec<ColorSet>,
        visit: &mut dyn FnMut(&[ColorSet]) -> bool,
    ) -> bool {
        let Some(k) = self.pick(&domains) else {
            return visit(&domains);
        };
        for c in domains[k].iter() {
            let mut next = domains.clone();
            next[k] = ColorSet::single(c);
            if self.settle(&mut next, vec![k]) && !self.search(next, visit) {
                return false;
            }
        }
        true
    }
}

fn to_colors(domains: &[ColorSet]) -> Vec<Color> {
    domains
        .iter()
        .map(|d| d.as_single().expect("solution domains are singletons"))
        .collect()
}

/// Counts proper colourings of `w` extending `s`, stopping at `cap`.
pub fn enumerate(s: &Seed, w: Window, cap: u64) -> Enumeration {
    assert!(cap >= 1, "cap must be at least 1");
    let graph = WindowGraph::new(w);
    let solver = Solver::new(&graph);
    let mut count = 0u64;
    let mut witnesses = Vec::new();
    if let Some(root) = solver.root(&graph.seed_colors(s)) {
        solver.search(root, &mut |d| {
            count += 1;
            if witnesses.len() < 2 {
                let colors = to_colors(d).into_iter().map(Some).collect();
                witnesses.push(PartialColoring::from_parts(w, colors, false));
            }
            count < cap
        });
    }
    Enumeration {
        count,
        cap,
        witnesses,
    }
}

/// Domains left by forcing inside the window: forced tiles are singletons,
/// other tiles lose the colours of their forced neighbours. `None` on a
/// contradiction.
fn forced_domains(s: &Seed, graph: &WindowGraph) -> Option<Vec<ColorSet>> {
    let p = propagate_rounds(s, graph);
    if p.coloring.has_contradiction() {
        return None;
    }
    let colors = p.coloring.colors();
    Some(
        (0..graph.len())
            .map(|k| match colors[k] {
                Some(c) => ColorSet::single(c),
                None => graph.neighbors(k).filter_map(|u| colors[u]).collect::<ColorSet>().complement(),
            })
            .collect(),
    )
}

fn sat_instance(s: &Seed, w: Window) -> Option<SatColoring> {
    let graph = WindowGraph::new(w);
    forced_domains(s, &graph).map(|d| SatColoring::new(&graph, &d))
}

/// Colour `c` is kept for tile `t` iff some proper window colouring
/// extending `s` gives `t` that colour. Forcing settles most tiles; the
/// rest are decided by a CDCL solver, one query per pair not yet witnessed
/// by an earlier model.
pub fn exact_candidates(s: &Seed, w: Window) -> Result<CandidateMap, FieldError> {
    sat_instance(s, w)
        .and_then(|mut sat| sat.supports())
        .map(|sets| CandidateMap::new(w, sets))
        .ok_or(FieldError::WindowBarren(w.radius))
}

/// Some proper colouring of `w` extending `s`.
pub fn find_coloring(s: &Seed, w: Window) -> Option<PartialColoring> {
    sat_instance(s, w)?
        .solve_any()
        .map(|colors| PartialColoring::from_parts(w, colors.into_iter().map(Some).collect(), false))
}

/// Window field: tiles whose colour is the same in every proper window
/// colouring extending `s`.
pub fn field(s: &Seed, w: Window) -> Result<PartialColoring, FieldError> {
    sat_instance(s, w)
        .and_then(|mut sat| sat.backbone())
        .map(|colors| PartialColoring::from_parts(w, colors, false))
        .ok_or(FieldError::WindowBarren(w.radius))
}
