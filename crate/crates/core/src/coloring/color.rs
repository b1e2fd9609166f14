use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::lattice::{full_neighbors, TileId, Window};

/// One of the four tile colours.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Color {
    R,
    B,
    Y,
    G,
}

impl Color {
    /// Fixed colour order used everywhere (backtracking, canonical forms).
    pub const ALL: [Color; 4] = [Color::R, Color::B, Color::Y, Color::G];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(k: usize) -> Color {
        Color::ALL[k]
    }

    pub fn letter(self) -> char {
        match self {
            Color::R => 'R',
            Color::B => 'B',
            Color::Y => 'Y',
            Color::G => 'G',
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown colour {0:?} (expected one of R, B, Y, G)")]
pub struct ParseColorError(pub String);

impl FromStr for Color {
    type Err = ParseColorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "R" => Ok(Color::R),
            "B" => Ok(Color::B),
            "Y" => Ok(Color::Y),
            "G" => Ok(Color::G),
            _ => Err(ParseColorError(s.to_string())),
        }
    }
}

/// A permutation of the four colours, stored as images of `R, B, Y, G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ColorPermutation(pub [Color; 4]);

impl ColorPermutation {
    pub const IDENTITY: ColorPermutation = ColorPermutation(Color::ALL);

    pub fn apply(&self, c: Color) -> Color {
        self.0[c.index()]
    }

    pub fn compose(&self, then: &ColorPermutation) -> ColorPermutation {
        ColorPermutation(Color::ALL.map(|c| then.apply(self.apply(c))))
    }

    /// All 24 permutations in lexicographic order of their image tuples.
    pub fn all() -> Vec<ColorPermutation> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let img = [a, b, c, d];
                        let mut seen = [false; 4];
                        if img.iter().all(|&k| !std::mem::replace(&mut seen[k], true)) {
                            out.push(ColorPermutation(img.map(Color::from_index)));
                        }
                    }
                }
            }
        }
        out
    }
}

/// Bit set of colours; bit `k` stands for `Color::ALL[k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ColorSet(u8);

impl ColorSet {
    pub const EMPTY: ColorSet = ColorSet(0);
    pub const FULL: ColorSet = ColorSet(0b1111);

    pub fn single(c: Color) -> ColorSet {
        ColorSet(1 << c.index())
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn contains(self, c: Color) -> bool {
        self.0 & (1 << c.index()) != 0
    }

    pub fn insert(&mut self, c: Color) {
        self.0 |= 1 << c.index();
    }

    pub fn remove(&mut self, c: Color) {
        self.0 &= !(1 << c.index());
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn complement(self) -> ColorSet {
        ColorSet(!self.0 & 0b1111)
    }

    /// The only member, if the set is a singleton.
    pub fn as_single(self) -> Option<Color> {
        (self.len() == 1).then(|| Color::from_index(self.0.trailing_zeros() as usize))
    }

    pub fn iter(self) -> impl Iterator<Item = Color> {
        Color::ALL.into_iter().filter(move |&c| self.contains(c))
    }
}

impl fmt::Display for ColorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, c) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<Color> for ColorSet {
    fn from_iter<I: IntoIterator<Item = Color>>(iter: I) -> Self {
        let mut s = ColorSet::EMPTY;
        for c in iter {
            s.insert(c);
        }
        s
    }
}

/// A finite set of tiles with assigned colours. May violate adjacency.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seed {
    tiles: BTreeMap<TileId, Color>,
}

impl Seed {
    pub fn new() -> Self {
        Seed::default()
    }

    /// Inserts a tile, returning the previous colour if it was present.
    pub fn insert(&mut self, t: TileId, c: Color) -> Option<Color> {
        self.tiles.insert(t, c)
    }

    pub fn remove(&mut self, t: TileId) -> Option<Color> {
        self.tiles.remove(&t)
    }

    pub fn get(&self, t: TileId) -> Option<Color> {
        self.tiles.get(&t).copied()
    }

    pub fn len(&self) -> usize {
        self.tiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tiles.is_empty()
    }

    /// Tiles in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = (TileId, Color)> + '_ {
        self.tiles.iter().map(|(&t, &c)| (t, c))
    }

    pub fn tiles(&self) -> impl Iterator<Item = TileId> + '_ {
        self.tiles.keys().copied()
    }

    pub fn permute_colors(&self, p: &ColorPermutation) -> Seed {
        self.iter().map(|(t, c)| (t, p.apply(c))).collect()
    }

    pub fn map_tiles(&self, f: impl Fn(TileId) -> TileId) -> Seed {
        self.iter().map(|(t, c)| (f(t), c)).collect()
    }

    /// Smallest block-centred window containing every seed tile.
    pub fn bounding_window(&self) -> Window {
        let Some(first) = self.tiles.keys().next() else {
            return Window::centered(0);
        };
        let (mut i0, mut i1, mut j0, mut j1) = (first.i, first.i, first.j, first.j);
        for t in self.tiles.keys() {
            i0 = i0.min(t.i);
            i1 = i1.max(t.i);
            j0 = j0.min(t.j);
            j1 = j1.max(t.j);
        }
        let center = ((i0 + i1).div_euclid(2), (j0 + j1).div_euclid(2));
        let radius = (center.0 - i0)
            .max(i1 - center.0)
            .max(center.1 - j0)
            .max(j1 - center.1);
        Window::new(center, radius as u32)
    }

    /// Window of the given radius around the seed's bounding window centre.
    pub fn window(&self, radius: u32) -> Window {
        Window::new(self.bounding_window().center, radius)
    }
}

impl FromIterator<(TileId, Color)> for Seed {
    fn from_iter<I: IntoIterator<Item = (TileId, Color)>>(iter: I) -> Self {
        Seed {
            tiles: iter.into_iter().collect(),
        }
    }
}

/// Every Full-adjacent pair of seed tiles with equal colours, each pair
/// listed once with the smaller tile first.
pub fn validate_seed(s: &Seed) -> Result<(), Vec<(TileId, TileId)>> {
    let mut violations = Vec::new();
    for (t, c) in s.iter() {
        for u in full_neighbors(t) {
            if t < u && s.get(u) == Some(c) {
                violations.push((t, u));
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Colours on a window, with a contradiction flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialColoring {
    window: Window,
    colors: Vec<Option<Color>>,
    contradiction: bool,
}

impl PartialColoring {
    pub fn empty(window: Window) -> Self {
        PartialColoring {
            window,
            colors: vec![None; window.len()],
            contradiction: false,
        }
    }

    pub(crate) fn from_parts(window: Window, colors: Vec<Option<Color>>, contradiction: bool) -> Self {
        debug_assert_eq!(colors.len(), window.len());
        PartialColoring {
            window,
            colors,
            contradiction,
        }
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn get(&self, t: TileId) -> Option<Color> {
        self.window.index_of(t).and_then(|k| self.colors[k])
    }

    /// Sets a colour. Tiles outside the window are ignored.
    pub fn set(&mut self, t: TileId, c: Color) {
        if let Some(k) = self.window.index_of(t) {
            self.colors[k] = Some(c);
        }
    }

    pub fn colors(&self) -> &[Option<Color>] {
        &self.colors
    }

    pub fn has_contradiction(&self) -> bool {
        self.contradiction
    }

    pub fn colored_count(&self) -> usize {
        self.colors.iter().filter(|c| c.is_some()).count()
    }

    pub fn is_complete(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// Coloured tiles in window order.
    pub fn iter(&self) -> impl Iterator<Item = (TileId, Color)> + '_ {
        self.colors
            .iter()
            .enumerate()
            .filter_map(|(k, c)| c.map(|c| (self.window.tile_at(k), c)))
    }

    /// True if every coloured tile here is coloured identically in `other`.
    pub fn is_subset_of(&self, other: &PartialColoring) -> bool {
        self.iter().all(|(t, c)| other.get(t) == Some(c))
    }

    /// Restriction to a smaller (or equal) window.
    pub fn restrict(&self, w: Window) -> PartialColoring {
        let mut out = PartialColoring::empty(w);
        out.contradiction = self.contradiction;
        for (k, slot) in out.colors.iter_mut().enumerate() {
            *slot = self.get(w.tile_at(k));
        }
        out
    }

    /// Same colours as a set of `(tile, colour)` pairs, independent of the window.
    pub fn to_seed(&self) -> Seed {
        self.iter().collect()
    }

    /// True if no two Full-adjacent coloured tiles share a colour.
    pub fn is_proper(&self) -> bool {
        self.iter().all(|(t, c)| {
            full_neighbors(t)
                .into_iter()
                .all(|u| self.get(u) != Some(c))
        })
    }

    pub fn permute_colors(&self, p: &ColorPermutation) -> PartialColoring {
        PartialColoring {
            window: self.window,
            colors: self.colors.iter().map(|c| c.map(|c| p.apply(c))).collect(),
            contradiction: self.contradiction,
        }
    }
}
