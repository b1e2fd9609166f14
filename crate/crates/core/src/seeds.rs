//! Named seeds used throughout the tests and the command line.

use crate::coloring::{Color, Seed};
use crate::lattice::TileId;

/// Five-tile seed whose forcing closure is the whole plane.
pub const PERFECT: [(TileId, Color); 5] = [
    (TileId::new(-1, -1, 0), Color::R),
    (TileId::new(-1, 0, 0), Color::Y),
    (TileId::new(0, 0, 0), Color::G),
    (TileId::new(1, -1, 0), Color::B),
    (TileId::new(1, 1, 0), Color::R),
];

/// Four-tile seed whose field is a diagonal strip bounded by R and G tiles.
pub const STRIP: [(TileId, Color); 4] = [
    (TileId::new(-1, -1, 0), Color::Y),
    (TileId::new(0, 1, 1), Color::B),
    (TileId::new(1, -1, 1), Color::Y),
    (TileId::new(1, 0, 1), Color::R),
];

/// Tile next to the strip whose colour can be either B or Y.
pub const STRIP_OPEN_TILE: TileId = TileId::new(-2, -2, 0);

pub fn perfect() -> Seed {
    PERFECT.into_iter().collect()
}

pub fn strip() -> Seed {
    STRIP.into_iter().collect()
}
