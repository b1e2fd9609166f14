//! Crystal decomposition of coloured windows.
//!
//! A super-tile is the pinwheel of four dominoes meeting at a block corner
//! `(2a, 2b)`. Corners with `a + b` of one parity carry super-tiles and
//! partition the plane; the other parity gives the second partition. The
//! colour pattern reads the dominoes covering the squares NE, NW, SW and
//! SE of the corner, in that order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::coloring::{Color, PartialColoring};
use crate::lattice::{squares_of_tile, tile_of_square, TileId, UnitSquare};

/// Anchor offset whose partition shows five patterns on the perfect
/// seed's field. The offsets `(0, 1)` and `(1, 0)` give the same partition,
/// as do `(0, 0)` and `(1, 1)`.
pub const CANONICAL_ANCHOR: (i32, i32) = (1, 0);

/// Translation vectors are searched within this many super-tile steps.
pub const MERGE_RADIUS: i32 = 3;

/// A translation counts as validated when a super-tile repeats this many
/// times along it inside one component.
pub const MIN_REPEATS: i32 = 3;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperTile {
    /// Block corner `(a, b)`; the pinwheel centre is the point `(2a, 2b)`.
    pub anchor: (i32, i32),
    pub members: [TileId; 4],
    pub pattern: [Color; 4],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternId(pub u32);

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnalysisError {
    #[error("colouring is incomplete: {uncolored} tiles have no colour")]
    Incomplete { uncolored: usize },
    #[error("colouring contains a contradiction")]
    Contradiction,
}

fn on_anchor(a: i32, b: i32, anchor: (i32, i32)) -> bool {
    (a - anchor.0 + b - anchor.1).rem_euclid(2) == 0
}

/// The four dominoes around block corner `(a, b)`, in reading order.
pub fn pinwheel(a: i32, b: i32) -> [TileId; 4] {
    let (x, y) = (2 * a, 2 * b);
    [(x, y), (x - 1, y), (x - 1, y - 1), (x, y - 1)]
        .map(|(x, y)| tile_of_square(UnitSquare::new(x, y)))
}

/// Corner of the super-tile containing `t` in the partition of `anchor`.
pub fn supertile_of(t: TileId, anchor: (i32, i32)) -> (i32, i32) {
    squares_of_tile(t)
        .into_iter()
        .map(|s| (s.x + s.x.rem_euclid(2), s.y + s.y.rem_euclid(2)))
        .map(|(x, y)| (x / 2, y / 2))
        .find(|&(a, b)| on_anchor(a, b, anchor))
        .expect("the two squares of a domino touch corners of both parities")
}

/// Super-tiles lying inside the window of a complete colouring, scanned
/// row by row from the bottom left.
pub fn partition_supertiles(
    c: &PartialColoring,
    anchor: (i32, i32),
) -> Result<Vec<SuperTile>, AnalysisError> {
    check_complete(c)?;
    Ok(partition_region(c, anchor))
}

fn check_complete(c: &PartialColoring) -> Result<(), AnalysisError> {
    if c.has_contradiction() {
        return Err(AnalysisError::Contradiction);
    }
    let uncolored = c.window().len() - c.colored_count();
    if uncolored > 0 {
        return Err(AnalysisError::Incomplete { uncolored });
    }
    Ok(())
}

/// Super-tiles inside the window whose four dominoes are all coloured.
fn partition_region(c: &PartialColoring, anchor: (i32, i32)) -> Vec<SuperTile> {
    let w = c.window();
    let (i0, j0) = w.min_block();
    let (i1, j1) = w.max_block();
    let mut out = Vec::new();
    for b in j0 + 1..=j1 {
        for a in i0 + 1..=i1 {
            if !on_anchor(a, b, anchor) {
                continue;
            }
            let members = pinwheel(a, b);
            let colors: Option<Vec<Color>> = members.iter().map(|&t| c.get(t)).collect();
            if let Some(colors) = colors {
                out.push(SuperTile {
                    anchor: (a, b),
                    members,
                    pattern: [colors[0], colors[1], colors[2], colors[3]],
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recoloring {
    /// Pattern of each super-tile, aligned with the input slice.
    pub ids: Vec<PatternId>,
    /// Colour pattern of each id.
    pub patterns: Vec<[Color; 4]>,
}

impl Recoloring {
    /// Number of super-tiles per pattern id.
    pub fn census(&self) -> Vec<usize> {
        let mut n = vec![0; self.patterns.len()];
        for id in &self.ids {
            n[id.0 as usize] += 1;
        }
        n
    }
}

/// Numbers the distinct patterns in order of first appearance.
pub fn recolor(supertiles: &[SuperTile]) -> Recoloring {
    let mut patterns: Vec<[Color; 4]> = Vec::new();
    let ids = supertiles
        .iter()
        .map(|s| {
            let k = match patterns.iter().position(|p| *p == s.pattern) {
                Some(k) => k,
                None => {
                    patterns.push(s.pattern);
                    patterns.len() - 1
                }
            };
            PatternId(k as u32)
        })
        .collect();
    Recoloring { ids, patterns }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dimension {
    /// Repeats along a single direction.
    One,
    /// Repeats along two independent directions.
    Two,
    /// Too small to show any validated repeat.
    Unresolved,
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dimension::One => "1D",
            Dimension::Two => "2D",
            Dimension::Unresolved => "0D",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub dimension: Dimension,
    /// Distinct pattern ids, ascending.
    pub patterns: Vec<PatternId>,
    /// Translation basis in block units: one vector for 1D, two for 2D.
    pub vectors: Vec<(i32, i32)>,
    /// Number of super-tiles.
    pub area: usize,
    /// Components with the same dimension and pattern inventory share a
    /// crystal.
    pub crystal: usize,
}

#[derive(Clone, Debug)]
pub struct CrystalDecomposition {
    pub anchor: (i32, i32),
    pub supertiles: Vec<SuperTile>,
    pub recoloring: Recoloring,
    /// Component index of every super-tile.
    pub component_of: Vec<usize>,
    pub components: Vec<Component>,
    /// Super-tiles whose own piece was too small to classify and that were
    /// handed to a neighbouring component.
    pub flagged: Vec<bool>,
    adjacency: Vec<Vec<usize>>,
}

impl CrystalDecomposition {
    pub fn crystal_count(&self) -> usize {
        self.components.iter().map(|c| c.crystal + 1).max().unwrap_or(0)
    }

    pub fn component_at(&self, anchor: (i32, i32)) -> Option<usize> {
        self.supertiles
            .iter()
            .position(|s| s.anchor == anchor)
            .map(|k| self.component_of[k])
    }

    /// Edge-adjacent super-tile indices of super-tile `k`.
    pub fn neighbors(&self, k: usize) -> &[usize] {
        &self.adjacency[k]
    }

    /// Number of super-tile edges between each adjacent component pair.
    pub fn contacts(&self) -> BTreeMap<(usize, usize), usize> {
        contacts(&self.adjacency, &self.component_of)
    }

    /// One line per component, then one per relation.
    pub fn report(&self) -> String {
        let mut out = String::new();
        for (id, c) in self.components.iter().enumerate() {
            let pats: Vec<String> = c.patterns.iter().map(|p| p.to_string()).collect();
            let vecs: Vec<String> = c.vectors.iter().map(|v| format!("({},{})", v.0, v.1)).collect();
            out.push_str(&format!(
                "component {id}: {} crystal {} patterns [{}] vectors [{}] area {}\n",
                c.dimension,
                c.crystal,
                pats.join(","),
                vecs.join(" "),
                c.area
            ));
        }
        for r in classify_relations(self) {
            out.push_str(&format!("{r}\n"));
        }
        out
    }
}

/// Decomposition of a complete colouring on the canonical partition.
pub fn decompose(c: &PartialColoring) -> Result<CrystalDecomposition, AnalysisError> {
    check_complete(c)?;
    Ok(decompose_region(c))
}

/// Decomposition of the fully coloured super-tiles of a possibly partial
/// colouring.
pub fn decompose_region(c: &PartialColoring) -> CrystalDecomposition {
    let anchor = CANONICAL_ANCHOR;
    let supertiles = partition_region(c, anchor);
    let recoloring = recolor(&supertiles);
    let index: HashMap<(i32, i32), usize> = supertiles
        .iter()
        .enumerate()
        .map(|(k, s)| (s.anchor, k))
        .collect();
    let adjacency = supertile_adjacency(&supertiles, &index, anchor);
    let pattern = &recoloring.ids;

    // Same-pattern pieces.
    let n = supertiles.len();
    let mut piece = vec![usize::MAX; n];
    let mut pieces: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if piece[start] != usize::MAX {
            continue;
        }
        let id = pieces.len();
        let mut members = vec![start];
        piece[start] = id;
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            for &y in &adjacency[x] {
                if piece[y] == usize::MAX && pattern[y] == pattern[x] {
                    piece[y] = id;
                    members.push(y);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        pieces.push(members);
    }

    let basis_of = |members: &[usize]| translation_basis(members, &supertiles, &index, pattern);
    let bases: Vec<Vec<(i32, i32)>> = pieces.iter().map(|m| basis_of(m)).collect();

    let mut uf = UnionFind::new(pieces.len());
    let mut flagged = vec![false; n];

    // Unresolved pieces join the resolved neighbour they touch most.
    let piece_contacts = contacts(&adjacency, &piece);
    for (p, members) in pieces.iter().enumerate() {
        if !bases[p].is_empty() {
            continue;
        }
        let best = piece_contacts
            .iter()
            .filter_map(|(&(x, y), &m)| match (x == p, y == p) {
                (true, _) => Some((y, m)),
                (_, true) => Some((x, m)),
                _ => None,
            })
            .filter(|&(q, _)| !bases[q].is_empty())
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)));
        if let Some((q, _)) = best {
            uf.union(q, p);
            for &x in members {
                flagged[x] = true;
            }
        }
    }

    // Touching 1D classes with a common direction form one band.
    loop {
        let class: Vec<usize> = (0..n).map(|x| uf.find(piece[x])).collect();
        let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (x, &c) in class.iter().enumerate() {
            members.entry(c).or_default().push(x);
        }
        let dirs: BTreeMap<usize, Option<(i32, i32)>> = members
            .iter()
            .map(|(&c, m)| {
                let b = basis_of(m);
                (c, (b.len() == 1).then(|| direction(b[0])))
            })
            .collect();
        let pair = contacts(&adjacency, &class).into_keys().find(|(p, q)| {
            dirs[p].is_some() && dirs[p] == dirs[q]
        });
        match pair {
            Some((p, q)) => uf.union(p, q),
            None => break,
        }
    }

    // Final components, numbered by their first super-tile.
    let mut root_id: BTreeMap<usize, usize> = BTreeMap::new();
    let mut component_of = vec![0; n];
    let mut members_of: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        let r = uf.find(piece[x]);
        let id = *root_id.entry(r).or_insert_with(|| {
            members_of.push(Vec::new());
            members_of.len() - 1
        });
        component_of[x] = id;
        members_of[id].push(x);
    }

    let mut crystals: Vec<(Dimension, Vec<PatternId>)> = Vec::new();
    let components = members_of
        .iter()
        .map(|members| {
            let vectors = basis_of(members);
            let dimension = match vectors.len() {
                0 => Dimension::Unresolved,
                1 => Dimension::One,
                _ => Dimension::Two,
            };
            let mut patterns: Vec<PatternId> = members.iter().map(|&x| pattern[x]).collect();
            patterns.sort_unstable();
            patterns.dedup();
            let key = (dimension, patterns.clone());
            let crystal = match crystals.iter().position(|k| *k == key) {
                Some(k) => k,
                None => {
                    crystals.push(key);
                    crystals.len() - 1
                }
            };
            Component {
                dimension,
                patterns,
                vectors,
                area: members.len(),
                crystal,
            }
        })
        .collect();

    CrystalDecomposition {
        anchor,
        supertiles,
        recoloring,
        component_of,
        components,
        flagged,
        adjacency,
    }
}

fn supertile_adjacency(
    supertiles: &[SuperTile],
    index: &HashMap<(i32, i32), usize>,
    anchor: (i32, i32),
) -> Vec<Vec<usize>> {
    supertiles
        .iter()
        .enumerate()
        .map(|(k, s)| {
            let mut out: Vec<usize> = s
                .members
                .iter()
                .flat_map(|&t| squares_of_tile(t))
                .flat_map(|q| {
                    [(1, 0), (-1, 0), (0, 1), (0, -1)]
                        .map(|(dx, dy)| UnitSquare::new(q.x + dx, q.y + dy))
                })
                .filter_map(|q| index.get(&supertile_of(tile_of_square(q), anchor)).copied())
                .filter(|&u| u != k)
                .collect();
            out.sort_unstable();
            out.dedup();
            out
        })
        .collect()
}

fn contacts(adjacency: &[Vec<usize>], label: &[usize]) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    for (x, ns) in adjacency.iter().enumerate() {
        for &y in ns {
            let (a, b) = (label[x], label[y]);
            if a < b {
                *out.entry((a, b)).or_insert(0) += 1;
            }
        }
    }
    out
}

/// Shortest validated translation, then the shortest one independent of it.
fn translation_basis(
    members: &[usize],
    supertiles: &[SuperTile],
    index: &HashMap<(i32, i32), usize>,
    pattern: &[PatternId],
) -> Vec<(i32, i32)> {
    let inside: std::collections::HashSet<usize> = members.iter().copied().collect();
    let mut valid: Vec<(i32, i32)> = Vec::new();
    for du in 0..=MERGE_RADIUS {
        for dv in -MERGE_RADIUS..=MERGE_RADIUS {
            if du == 0 && dv <= 0 {
                continue;
            }
            // Super-tile steps in block units.
            let tau = (du + dv, du - dv);
            let repeats = members.iter().any(|&x| {
                let (a, b) = supertiles[x].anchor;
                (1..=MIN_REPEATS).all(|k| {
                    index
                        .get(&(a + k * tau.0, b + k * tau.1))
                        .is_some_and(|&y| inside.contains(&y) && pattern[y] == pattern[x])
                })
            });
            if repeats {
                valid.push(normalize(tau));
            }
        }
    }
    valid.sort_by_key(|&(x, y)| (x * x + y * y, x, y));
    let Some(&first) = valid.first() else {
        return Vec::new();
    };
    match valid.iter().find(|v| v.0 * first.1 - v.1 * first.0 != 0) {
        Some(&second) => vec![first, second],
        None => vec![first],
    }
}

fn normalize(v: (i32, i32)) -> (i32, i32) {
    if v.0 < 0 || (v.0 == 0 && v.1 < 0) {
        (-v.0, -v.1)
    } else {
        v
    }
}

fn direction(v: (i32, i32)) -> (i32, i32) {
    fn gcd(a: i32, b: i32) -> i32 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let g = gcd(v.0, v.1).max(1);
    normalize((v.0 / g, v.1 / g))
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    /// The smaller root survives, so results do not depend on merge order.
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        let (lo, hi) = (a.min(b), a.max(b));
        self.0[hi] = lo;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationKind {
    /// The two components share a super-tile edge.
    Adjoined,
    /// A 1D component runs between two components of different crystals.
    SeparatedByInterface,
    /// A 1D component runs between two components of one crystal.
    GrainBoundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    pub kind: RelationKind,
    pub a: usize,
    pub b: usize,
    /// The separating 1D component.
    pub via: Option<usize>,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({}, {})", self.kind, self.a, self.b)?;
        if let Some(l) = self.via {
            write!(f, " via {l}")?;
        }
        Ok(())
    }
}

/// Every adjacent pair is `Adjoined`. Each 1D component additionally
/// relates the 2D components it touches most on either side.
pub fn classify_relations(d: &CrystalDecomposition) -> Vec<Relation> {
    let mut out: Vec<Relation> = d
        .contacts()
        .keys()
        .map(|&(a, b)| Relation {
            kind: RelationKind::Adjoined,
            a,
            b,
            via: None,
        })
        .collect();

    for (l, comp) in d.components.iter().enumerate() {
        if comp.dimension != Dimension::One {
            continue;
        }
        let dir = comp.vectors[0];
        // Contact counts per (side, 2D component).
        let mut sides: [BTreeMap<usize, usize>; 2] = Default::default();
        for (x, &cx) in d.component_of.iter().enumerate() {
            if cx != l {
                continue;
            }
            let (xa, xb) = d.supertiles[x].anchor;
            for &y in &d.adjacency[x] {
                let cy = d.component_of[y];
                if d.components[cy].dimension != Dimension::Two {
                    continue;
                }
                let (ya, yb) = d.supertiles[y].anchor;
                let cross = dir.0 * (yb - xb) - dir.1 * (ya - xa);
                if cross != 0 {
                    *sides[(cross < 0) as usize].entry(cy).or_insert(0) += 1;
                }
            }
        }
        let major = |m: &BTreeMap<usize, usize>| {
            m.iter()
                .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
                .map(|(&c, _)| c)
        };
        if let (Some(p), Some(q)) = (major(&sides[0]), major(&sides[1])) {
            let kind = if d.components[p].crystal == d.components[q].crystal {
                RelationKind::GrainBoundary
            } else {
                RelationKind::SeparatedByInterface
            };
            out.push(Relation {
                kind,
                a: p.min(q),
                b: p.max(q),
                via: Some(l),
            });
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{tiles_in_window, Window};

    fn uniform(w: Window) -> PartialColoring {
        // Constant along the pinwheel lattice: colour by pinwheel slot.
        let mut c = PartialColoring::empty(w);
        for t in tiles_in_window(w) {
            let (a, b) = supertile_of(t, CANONICAL_ANCHOR);
            let slot = pinwheel(a, b).iter().position(|&u| u == t).unwrap();
            c.set(t, Color::from_index(slot));
        }
        c
    }

    #[test]
    fn pinwheels_partition_the_plane() {
        for anchor in [(0, 0), (1, 0)] {
            let w = Window::centered(3);
            let mut owner: HashMap<TileId, (i32, i32)> = HashMap::new();
            for a in -4..=4 {
                for b in -4..=4 {
                    if !on_anchor(a, b, anchor) {
                        continue;
                    }
                    for t in pinwheel(a, b) {
                        assert_eq!(supertile_of(t, anchor), (a, b));
                        assert!(owner.insert(t, (a, b)).is_none(), "{t} covered twice");
                    }
                }
            }
            for t in tiles_in_window(w) {
                assert!(owner.contains_key(&t));
            }
        }
    }

    #[test]
    fn anchors_one_step_apart_give_the_same_partition() {
        assert!(on_anchor(3, 2, (1, 0)) && on_anchor(3, 2, (0, 1)));
        assert!(!on_anchor(3, 2, (0, 0)));
    }

    #[test]
    fn interior_is_covered_once() {
        let w = Window::new((2, -1), 2);
        let c = uniform(w);
        let st = partition_supertiles(&c, CANONICAL_ANCHOR).unwrap();
        let mut seen = std::collections::HashSet::new();
        for s in &st {
            for t in s.members {
                assert!(w.contains(t));
                assert!(seen.insert(t));
            }
        }
        for t in tiles_in_window(Window::new((2, -1), 1)) {
            assert!(seen.contains(&t), "{t} not covered");
        }
    }

    #[test]
    fn uniform_colouring_is_one_2d_crystal() {
        let c = uniform(Window::centered(8));
        let rc = recolor(&partition_supertiles(&c, CANONICAL_ANCHOR).unwrap());
        assert_eq!(rc.patterns.len(), 1);
        let d = decompose(&c).unwrap();
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].dimension, Dimension::Two);
        assert!(classify_relations(&d).is_empty());
    }

    #[test]
    fn incomplete_colouring_is_rejected() {
        let c = PartialColoring::empty(Window::centered(2));
        assert_eq!(
            decompose(&c).unwrap_err(),
            AnalysisError::Incomplete { uncolored: 50 }
        );
    }
}
