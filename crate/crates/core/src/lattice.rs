//! Coordinate model of the basketweave domino tiling.
//!
//! The plane is cut into 2×2 blocks `B(i, j)` covering the unit squares
//! `{2i, 2i+1} × {2j, 2j+1}`. Blocks with `i + j` even hold two horizontal
//! dominoes (slot 0 is the bottom row), blocks with `i + j` odd hold two
//! vertical dominoes (slot 0 is the left column).

use std::collections::HashSet;
use std::fmt;

/// Unit square `[x, x+1] × [y, y+1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitSquare {
    pub x: i32,
    pub y: i32,
}

impl UnitSquare {
    pub const fn new(x: i32, y: i32) -> Self {
        UnitSquare { x, y }
    }
}

/// A domino, addressed by its block and slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TileId {
    pub i: i32,
    pub j: i32,
    pub slot: u8,
}

impl TileId {
    pub const fn new(i: i32, j: i32, slot: u8) -> Self {
        TileId { i, j, slot }
    }

    /// True when the tile lies in a block of horizontal dominoes.
    pub fn is_horizontal(self) -> bool {
        (self.i + self.j).rem_euclid(2) == 0
    }

    pub fn translate(self, di: i32, dj: i32) -> TileId {
        TileId::new(self.i + di, self.j + dj, self.slot)
    }

    /// Centre of the domino in unit-square coordinates.
    pub fn center(self) -> (f64, f64) {
        let [a, b] = squares_of_tile(self);
        (
            (a.x + b.x) as f64 / 2.0 + 0.5,
            (a.y + b.y) as f64 / 2.0 + 0.5,
        )
    }

    /// Closed rectangle `(x0, y0, x1, y1)` covered by the domino.
    pub fn rect(self) -> (i32, i32, i32, i32) {
        let [a, b] = squares_of_tile(self);
        (a.x.min(b.x), a.y.min(b.y), a.x.max(b.x) + 1, a.y.max(b.y) + 1)
    }
}

impl fmt::Display for TileId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({},{},{})", self.i, self.j, self.slot)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdjacencyKind {
    /// Tiles sharing at least one point.
    Full,
    /// Tiles sharing a boundary segment of positive length.
    EdgeOnly,
}

impl fmt::Display for AdjacencyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdjacencyKind::Full => f.write_str("full"),
            AdjacencyKind::EdgeOnly => f.write_str("edge"),
        }
    }
}

/// The domino covering `s`.
pub fn tile_of_square(s: UnitSquare) -> TileId {
    let i = s.x.div_euclid(2);
    let j = s.y.div_euclid(2);
    let slot = if (i + j).rem_euclid(2) == 0 {
        s.y - 2 * j
    } else {
        s.x - 2 * i
    };
    TileId::new(i, j, slot as u8)
}

/// The two unit squares covered by `t`, in ascending order.
pub fn squares_of_tile(t: TileId) -> [UnitSquare; 2] {
    let (x0, y0, s) = (2 * t.i, 2 * t.j, t.slot as i32);
    if t.is_horizontal() {
        [UnitSquare::new(x0, y0 + s), UnitSquare::new(x0 + 1, y0 + s)]
    } else {
        [UnitSquare::new(x0 + s, y0), UnitSquare::new(x0 + s, y0 + 1)]
    }
}

// Neighbour offsets `(di, dj, slot)` relative to the tile's own block, one
// table per (orientation, slot) case. The first five entries of every row
// share an edge with the tile; the last two touch it at a corner only.
const OFFSETS: [[(i32, i32, u8); 7]; 4] = [
    // horizontal, bottom row
    [(0, 0, 1), (0, -1, 0), (0, -1, 1), (-1, 0, 1), (1, 0, 0), (-1, -1, 1), (1, -1, 1)],
    // horizontal, top row
    [(0, 0, 0), (0, 1, 0), (0, 1, 1), (-1, 0, 1), (1, 0, 0), (-1, 1, 0), (1, 1, 0)],
    // vertical, left column
    [(0, 0, 1), (-1, 0, 0), (-1, 0, 1), (0, -1, 1), (0, 1, 0), (-1, -1, 1), (-1, 1, 1)],
    // vertical, right column
    [(0, 0, 0), (1, 0, 0), (1, 0, 1), (0, -1, 1), (0, 1, 0), (1, -1, 0), (1, 1, 0)],
];

pub const EDGE_DEGREE: usize = 5;
pub const FULL_DEGREE: usize = 7;

fn offset_row(t: TileId) -> &'static [(i32, i32, u8); 7] {
    let case = if t.is_horizontal() { 0 } else { 2 } + t.slot as usize;
    &OFFSETS[case]
}

/// Neighbours of `t` under the given adjacency, in a fixed order.
pub fn neighbors(t: TileId, kind: AdjacencyKind) -> Vec<TileId> {
    let row = offset_row(t);
    let n = match kind {
        AdjacencyKind::Full => FULL_DEGREE,
        AdjacencyKind::EdgeOnly => EDGE_DEGREE,
    };
    row[..n]
        .iter()
        .map(|&(di, dj, slot)| TileId::new(t.i + di, t.j + dj, slot))
        .collect()
}

/// Full neighbours without allocation.
pub fn full_neighbors(t: TileId) -> [TileId; FULL_DEGREE] {
    let row = offset_row(t);
    row.map(|(di, dj, slot)| TileId::new(t.i + di, t.j + dj, slot))
}

/// Square window of blocks around a centre block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Window {
    pub center: (i32, i32),
    pub radius: u32,
}

impl Window {
    pub const fn new(center: (i32, i32), radius: u32) -> Self {
        Window { center, radius }
    }

    pub const fn centered(radius: u32) -> Self {
        Window::new((0, 0), radius)
    }

    /// Number of blocks along one side.
    pub fn side(&self) -> usize {
        2 * self.radius as usize + 1
    }

    pub fn len(&self) -> usize {
        2 * self.side() * self.side()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min_block(&self) -> (i32, i32) {
        let r = self.radius as i32;
        (self.center.0 - r, self.center.1 - r)
    }

    pub fn max_block(&self) -> (i32, i32) {
        let r = self.radius as i32;
        (self.center.0 + r, self.center.1 + r)
    }

    pub fn contains(&self, t: TileId) -> bool {
        self.index_of(t).is_some()
    }

    /// Position of `t` in [`tiles_in_window`] order.
    pub fn index_of(&self, t: TileId) -> Option<usize> {
        let (i0, j0) = self.min_block();
        let (di, dj) = (t.i - i0, t.j - j0);
        let side = self.side() as i32;
        if di < 0 || dj < 0 || di >= side || dj >= side || t.slot > 1 {
            return None;
        }
        Some(((dj * side + di) * 2 + t.slot as i32) as usize)
    }

    pub fn tile_at(&self, index: usize) -> TileId {
        let side = self.side();
        let (i0, j0) = self.min_block();
        let block = index / 2;
        TileId::new(
            i0 + (block % side) as i32,
            j0 + (block / side) as i32,
            (index % 2) as u8,
        )
    }

    /// Chebyshev distance in blocks from the window centre.
    pub fn block_distance(&self, t: TileId) -> u32 {
        (t.i - self.center.0)
            .unsigned_abs()
            .max((t.j - self.center.1).unsigned_abs())
    }

    /// True when `t` lies in the outermost ring of blocks.
    pub fn on_boundary(&self, t: TileId) -> bool {
        self.block_distance(t) == self.radius
    }
}

/// Tiles of the window, row-major by block and slot ascending.
pub fn tiles_in_window(w: Window) -> Vec<TileId> {
    (0..w.len()).map(|k| w.tile_at(k)).collect()
}

/// Counts of tiles at graph distance exactly `s` from `t0`, for `s = 0..=s_max`.
pub fn coordination_sequence(t0: TileId, kind: AdjacencyKind, s_max: usize) -> Vec<usize> {
    let mut seen: HashSet<TileId> = HashSet::from([t0]);
    let mut frontier = vec![t0];
    let mut counts = vec![1];
    for _ in 0..s_max {
        let mut next = Vec::new();
        for &t in &frontier {
            for u in neighbors(t, kind) {
                if seen.insert(u) {
                    next.push(u);
                }
            }
        }
        counts.push(next.len());
        frontier = next;
    }
    counts
}

/// One of the eight isometries of the square fixing the origin, acting on
/// unit-square centres.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointOp {
    Identity,
    Rot90,
    Rot180,
    Rot270,
    /// `x ↦ -x`
    FlipX,
    /// `y ↦ -y`
    FlipY,
    /// `(x, y) ↦ (y, x)`
    Transpose,
    /// `(x, y) ↦ (-y, -x)`
    AntiTranspose,
}

impl PointOp {
    pub const ALL: [PointOp; 8] = [
        PointOp::Identity,
        PointOp::Rot90,
        PointOp::Rot180,
        PointOp::Rot270,
        PointOp::FlipX,
        PointOp::FlipY,
        PointOp::Transpose,
        PointOp::AntiTranspose,
    ];

    fn matrix(self) -> [[i32; 2]; 2] {
        match self {
            PointOp::Identity => [[1, 0], [0, 1]],
            PointOp::Rot90 => [[0, -1], [1, 0]],
            PointOp::Rot180 => [[-1, 0], [0, -1]],
            PointOp::Rot270 => [[0, 1], [-1, 0]],
            PointOp::FlipX => [[-1, 0], [0, 1]],
            PointOp::FlipY => [[1, 0], [0, -1]],
            PointOp::Transpose => [[0, 1], [1, 0]],
            PointOp::AntiTranspose => [[0, -1], [-1, 0]],
        }
    }

    /// Image of a unit square (its centre is mapped about the origin).
    pub fn apply_square(self, s: UnitSquare) -> UnitSquare {
        let m = self.matrix();
        let (cx, cy) = (2 * s.x + 1, 2 * s.y + 1);
        let (nx, ny) = (m[0][0] * cx + m[0][1] * cy, m[1][0] * cx + m[1][1] * cy);
        UnitSquare::new((nx - 1) / 2, (ny - 1) / 2)
    }
}

/// Point isometry followed by a translation of `shift` blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LatticeSymmetry {
    pub op: PointOp,
    pub shift: (i32, i32),
}

impl LatticeSymmetry {
    pub const IDENTITY: LatticeSymmetry = LatticeSymmetry {
        op: PointOp::Identity,
        shift: (0, 0),
    };

    pub const fn translation(a: i32, b: i32) -> Self {
        LatticeSymmetry {
            op: PointOp::Identity,
            shift: (a, b),
        }
    }

    /// Maps both squares of every tile in `probe` and checks that each
    /// image pair is again a single domino. For an isometry this is exactly
    /// the condition of being a tiling automorphism.
    pub fn is_automorphism_on(&self, probe: Window) -> bool {
        tiles_in_window(probe).into_iter().all(|t| {
            let [a, b] = squares_of_tile(t);
            tile_of_square(self.apply_square(a)) == tile_of_square(self.apply_square(b))
        })
    }

    pub fn is_automorphism(&self) -> bool {
        self.is_automorphism_on(Window::centered(3))
    }

    pub fn apply_square(&self, s: UnitSquare) -> UnitSquare {
        let p = self.op.apply_square(s);
        UnitSquare::new(p.x + 2 * self.shift.0, p.y + 2 * self.shift.1)
    }

    /// Validated point symmetries: for every [`PointOp`] the smallest
    /// shift in `{(0,0), (1,0)}` making it an automorphism, if any.
    pub fn point_group() -> Vec<LatticeSymmetry> {
        PointOp::ALL
            .iter()
            .filter_map(|&op| {
                [(0, 0), (1, 0)]
                    .into_iter()
                    .map(|shift| LatticeSymmetry { op, shift })
                    .find(LatticeSymmetry::is_automorphism)
            })
            .collect()
    }
}

/// Image of a tile under a symmetry. `g` must be an automorphism.
pub fn apply_symmetry(t: TileId, g: LatticeSymmetry) -> TileId {
    let [a, _] = squares_of_tile(t);
    tile_of_square(g.apply_square(a))
}
