//! Grey-growth automaton.
//!
//! Seed tiles start grey. At every tick the white tiles with exactly three
//! grey neighbours (yellow) and exactly four grey neighbours (violet) are
//! found against the current grey set, then all of them turn grey at once.

use std::fmt;

use crate::lattice::{neighbors, AdjacencyKind, TileId, Window};

/// Neighbour thresholds for the yellow and violet classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rule {
    pub kind: AdjacencyKind,
    pub yellow: u8,
    pub violet: u8,
}

impl Default for Rule {
    fn default() -> Self {
        Rule {
            kind: AdjacencyKind::Full,
            yellow: 3,
            violet: 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepReport {
    /// Tick at which the sets were evaluated.
    pub time: u32,
    pub yellow: Vec<TileId>,
    pub violet: Vec<TileId>,
}

impl StepReport {
    pub fn y(&self) -> usize {
        self.yellow.len()
    }

    pub fn v(&self) -> usize {
        self.violet.len()
    }

    pub fn c(&self) -> usize {
        self.y() + self.v()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AutomatonError {
    #[error("growth reached the boundary of the working region (radius {radius}) at tick {time}")]
    RegionTooSmall { radius: u32, time: u32 },
}

/// Grey set on a fixed working region, plus the tick counter.
#[derive(Clone, Debug)]
pub struct AutomatonState {
    rule: Rule,
    region: Window,
    adj: Vec<Vec<u32>>,
    /// Tick at which each tile turned grey; 0 for seed tiles.
    painted: Vec<Option<u32>>,
    grey_neighbors: Vec<u8>,
    /// White tiles whose grey-neighbour count changed in the last tick.
    dirty: Vec<usize>,
    time: u32,
    grey_count: usize,
}

impl AutomatonState {
    /// Seed tiles outside the region are dropped.
    pub fn new(seed: impl IntoIterator<Item = TileId>, region: Window, rule: Rule) -> Self {
        let adj = (0..region.len())
            .map(|k| {
                neighbors(region.tile_at(k), rule.kind)
                    .into_iter()
                    .filter_map(|u| region.index_of(u).map(|x| x as u32))
                    .collect()
            })
            .collect();
        let mut st = AutomatonState {
            rule,
            region,
            adj,
            painted: vec![None; region.len()],
            grey_neighbors: vec![0; region.len()],
            dirty: Vec::new(),
            time: 1,
            grey_count: 0,
        };
        let seed: Vec<usize> = seed.into_iter().filter_map(|t| region.index_of(t)).collect();
        for k in seed {
            if st.painted[k].is_none() {
                st.paint(k, 0);
            }
        }
        st
    }

    /// Working region sized so that `ticks` steps cannot reach its rim.
    pub fn for_run(seed: &[TileId], ticks: u32, rule: Rule) -> Self {
        AutomatonState::new(seed.iter().copied(), run_region(seed, ticks), rule)
    }

    fn paint(&mut self, k: usize, time: u32) {
        self.painted[k] = Some(time);
        self.grey_count += 1;
        for idx in 0..self.adj[k].len() {
            let u = self.adj[k][idx] as usize;
            self.grey_neighbors[u] += 1;
            if self.painted[u].is_none() {
                self.dirty.push(u);
            }
        }
    }

    pub fn time(&self) -> u32 {
        self.time
    }

    pub fn region(&self) -> Window {
        self.region
    }

    pub fn rule(&self) -> Rule {
        self.rule
    }

    pub fn is_grey(&self, t: TileId) -> bool {
        self.paint_time(t).is_some()
    }

    /// Tick at which `t` turned grey (0 for seed tiles).
    pub fn paint_time(&self, t: TileId) -> Option<u32> {
        self.region.index_of(t).and_then(|k| self.painted[k])
    }

    pub fn grey_count(&self) -> usize {
        self.grey_count
    }

    /// Grey tiles in region order.
    pub fn grey(&self) -> impl Iterator<Item = TileId> + '_ {
        self.painted
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_some())
            .map(|(k, _)| self.region.tile_at(k))
    }

    fn touches_rim(&self) -> bool {
        self.grey().any(|t| self.region.on_boundary(t))
    }

    /// One tick. Fails once a grey tile sits on the rim of the region,
    /// since counts beyond it would be wrong from then on.
    pub fn step(&mut self) -> Result<StepReport, AutomatonError> {
        let mut dirty = std::mem::take(&mut self.dirty);
        dirty.sort_unstable();
        dirty.dedup();
        let mut yellow = Vec::new();
        let mut violet = Vec::new();
        for k in dirty {
            if self.painted[k].is_some() {
                continue;
            }
            let n = self.grey_neighbors[k];
            if n == self.rule.yellow {
                yellow.push(k);
            } else if n == self.rule.violet {
                violet.push(k);
            }
        }
        let time = self.time;
        for &k in yellow.iter().chain(&violet) {
            self.paint(k, time);
        }
        self.time += 1;
        let tiles = |v: Vec<usize>| v.into_iter().map(|k| self.region.tile_at(k)).collect();
        let report = StepReport {
            time,
            yellow: tiles(yellow),
            violet: tiles(violet),
        };
        let rim = report
            .yellow
            .iter()
            .chain(&report.violet)
            .any(|&t| self.region.on_boundary(t));
        if rim {
            return Err(AutomatonError::RegionTooSmall {
                radius: self.region.radius,
                time,
            });
        }
        Ok(report)
    }
}

/// Region of radius `seed radius + ticks + 2` around the seed's bounding
/// window. Every tick extends the grey set by at most one block.
pub fn run_region(seed: &[TileId], ticks: u32) -> Window {
    let bw = bounding(seed);
    Window::new(bw.center, bw.radius + ticks + 2)
}

fn bounding(seed: &[TileId]) -> Window {
    let Some(first) = seed.first() else {
        return Window::centered(0);
    };
    let (mut i0, mut i1, mut j0, mut j1) = (first.i, first.i, first.j, first.j);
    for t in seed {
        i0 = i0.min(t.i);
        i1 = i1.max(t.i);
        j0 = j0.min(t.j);
        j1 = j1.max(t.j);
    }
    let c = ((i0 + i1).div_euclid(2), (j0 + j1).div_euclid(2));
    let r = (c.0 - i0).max(i1 - c.0).max(c.1 - j0).max(j1 - c.1);
    Window::new(c, r as u32)
}

/// `V(s)`, `Y(s)` and `C(s)` for `s = 1..=T`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Sequences {
    pub v: Vec<usize>,
    pub y: Vec<usize>,
    pub c: Vec<usize>,
}

impl Sequences {
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    fn push(&mut self, r: &StepReport) {
        self.v.push(r.v());
        self.y.push(r.y());
        self.c.push(r.c());
    }

    /// CSV with header `s,V,Y,C`, `\n` line endings.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,V,Y,C\n");
        for k in 0..self.len() {
            out.push_str(&format!("{},{},{},{}\n", k + 1, self.v[k], self.y[k], self.c[k]));
        }
        out
    }
}

/// Runs `ticks` steps from grey seed tiles on an eagerly sized region.
pub fn run(seed: &[TileId], ticks: u32) -> Result<(Sequences, AutomatonState), AutomatonError> {
    run_with(AutomatonState::for_run(seed, ticks, Rule::default()), ticks, |_, _| {})
}

/// Runs `ticks` steps, calling `observe` after each one with the report
/// and the state after painting.
pub fn run_with(
    mut st: AutomatonState,
    ticks: u32,
    mut observe: impl FnMut(&StepReport, &AutomatonState),
) -> Result<(Sequences, AutomatonState), AutomatonError> {
    if st.touches_rim() {
        return Err(AutomatonError::RegionTooSmall {
            radius: st.region.radius,
            time: st.time,
        });
    }
    let mut seq = Sequences::default();
    for _ in 0..ticks {
        let r = st.step()?;
        seq.push(&r);
        observe(&r, &st);
    }
    Ok((seq, st))
}

/// Smallest period of a difference sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Period {
    pub len: usize,
    /// `seq(s+1) - seq(s)` for `s = burn_in .. burn_in + len`.
    pub values: Vec<i64>,
}

impl fmt::Display for Period {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "period {}: ({})", self.len, vals.join(", "))
    }
}

/// Finds the smallest `p` such that the differences `seq(s+1) - seq(s)`
/// are `p`-periodic for every `s >= burn_in` in the data. Terms are indexed
/// from 1 (`seq[0]` is `seq(1)`). Periods longer than a third of the
/// available differences are not reported.
pub fn detect_period(seq: &[i64], burn_in: usize) -> Option<Period> {
    assert!(burn_in >= 1 && burn_in < seq.len(), "burn_in out of range");
    let diffs: Vec<i64> = seq[burn_in - 1..].windows(2).map(|w| w[1] - w[0]).collect();
    let max_p = diffs.len() / 3;
    (1..=max_p)
        .find(|&p| (p..diffs.len()).all(|k| diffs[k] == diffs[k - p]))
        .map(|p| Period {
            len: p,
            values: diffs[..p].to_vec(),
        })
}

/// Side/circumradius of a regular octagon, `2·sin(π/8) = √(2−√2)`.
pub const OCTAGON_RATIO: f64 = 0.765_366_864_730_179_6;

/// Hull edges shorter than this fraction of the perimeter are corner
/// chamfers, not sides.
const SIDE_FRACTION: f64 = 1.0 / 40.0;

#[derive(Clone, Debug, PartialEq)]
pub struct ShapeMetrics {
    /// Convex hull of the grey tile centres, counterclockwise.
    pub hull: Vec<(f64, f64)>,
    /// Intersections of consecutive long sides.
    pub corners: Vec<(f64, f64)>,
    /// Distances between consecutive corners.
    pub sides: Vec<f64>,
    /// Mean of odd-numbered sides over mean of even-numbered sides.
    pub alternating_ratio: f64,
    /// Mean side over mean corner distance from the corner centroid; only
    /// for eight-sided shapes.
    pub estimate: Option<f64>,
}

impl ShapeMetrics {
    pub fn relative_error(&self) -> Option<f64> {
        self.estimate.map(|e| (e - OCTAGON_RATIO).abs() / OCTAGON_RATIO)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShapeError {
    #[error("convex hull of {points} points is degenerate")]
    Degenerate { points: usize },
}

pub fn shape_metrics(st: &AutomatonState) -> Result<ShapeMetrics, ShapeError> {
    shape_of_points(st.grey().map(|t| t.center()))
}

/// Shape metrics of a finite point set on the half-integer grid.
pub fn shape_of_points(points: impl IntoIterator<Item = (f64, f64)>) -> Result<ShapeMetrics, ShapeError> {
    // Doubled coordinates are integers, so orientation tests are exact.
    let mut p: Vec<(i64, i64)> = points
        .into_iter()
        .map(|(x, y)| ((2.0 * x).round() as i64, (2.0 * y).round() as i64))
        .collect();
    p.sort_unstable();
    p.dedup();
    let hull = convex_hull(&p);
    if hull.len() < 3 {
        return Err(ShapeError::Degenerate { points: p.len() });
    }
    let hull: Vec<(f64, f64)> = hull.iter().map(|&(x, y)| (x as f64 / 2.0, y as f64 / 2.0)).collect();

    let n = hull.len();
    let edge = |k: usize| (hull[k], hull[(k + 1) % n]);
    let len = |(a, b): ((f64, f64), (f64, f64))| (b.0 - a.0).hypot(b.1 - a.1);
    let perimeter: f64 = (0..n).map(|k| len(edge(k))).sum();
    let long: Vec<_> = (0..n)
        .map(edge)
        .filter(|&e| len(e) >= SIDE_FRACTION * perimeter)
        .collect();
    let m = long.len();
    if m < 3 {
        return Err(ShapeError::Degenerate { points: p.len() });
    }
    let corners: Vec<(f64, f64)> = (0..m)
        .map(|k| intersect(long[(k + m - 1) % m], long[k]))
        .collect();
    let sides: Vec<f64> = (0..m).map(|k| len((corners[k], corners[(k + 1) % m]))).collect();
    let mean = |v: &mut dyn Iterator<Item = f64>| {
        let (s, c) = v.fold((0.0, 0usize), |(s, c), x| (s + x, c + 1));
        s / c as f64
    };
    let odd = mean(&mut sides.iter().copied().skip(1).step_by(2));
    let even = mean(&mut sides.iter().copied().step_by(2));
    let estimate = (m == 8).then(|| {
        let cx = mean(&mut corners.iter().map(|c| c.0));
        let cy = mean(&mut corners.iter().map(|c| c.1));
        let radius = mean(&mut corners.iter().map(|c| (c.0 - cx).hypot(c.1 - cy)));
        mean(&mut sides.iter().copied()) / radius
    });
    Ok(ShapeMetrics {
        hull,
        corners,
        sides,
        alternating_ratio: odd / even,
        estimate,
    })
}

/// Monotone chain over sorted, distinct points; collinear points dropped.
fn convex_hull(p: &[(i64, i64)]) -> Vec<(i64, i64)> {
    if p.len() < 3 {
        return p.to_vec();
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut hull: Vec<(i64, i64)> = Vec::with_capacity(2 * p.len());
    for pass in [p.to_vec(), p.iter().rev().copied().collect()] {
        let start = hull.len();
        for q in pass {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], q) <= 0 {
                hull.pop();
            }
            hull.push(q);
        }
        hull.pop();
    }
    hull
}

type Segment = ((f64, f64), (f64, f64));

fn intersect((a, b): Segment, (c, d): Segment) -> (f64, f64) {
    let r = (b.0 - a.0, b.1 - a.1);
    let s = (d.0 - c.0, d.1 - c.1);
    let den = r.0 * s.1 - r.1 * s.0;
    if den.abs() < 1e-12 {
        return b;
    }
    let t = ((c.0 - a.0) * s.1 - (c.1 - a.1) * s.0) / den;
    (a.0 + t * r.0, a.1 + t * r.1)
}
