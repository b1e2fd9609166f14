#![allow(dead_code)]

use std::collections::BTreeSet;

use basketweave::coloring::{Color, Seed};
use basketweave::lattice::{TileId, Window};

/// Domino covering unit square `(x, y)`, from the block rule alone.
pub fn tile_at(x: i32, y: i32) -> TileId {
    let (i, j) = (x.div_euclid(2), y.div_euclid(2));
    let (dx, dy) = (x - 2 * i, y - 2 * j);
    let slot = if (i + j) % 2 == 0 { dy } else { dx };
    TileId::new(i, j, slot as u8)
}

pub fn squares(t: TileId) -> [(i32, i32); 2] {
    let (x, y, s) = (2 * t.i, 2 * t.j, t.slot as i32);
    if (t.i + t.j) % 2 == 0 {
        [(x, y + s), (x + 1, y + s)]
    } else {
        [(x + s, y), (x + s, y + 1)]
    }
}

/// Neighbours found by scanning squares around the tile. `edge` keeps only
/// squares sharing a side.
pub fn raster_neighbors(t: TileId, edge: bool) -> BTreeSet<TileId> {
    let mut out = BTreeSet::new();
    for (x, y) in squares(t) {
        for dx in -1..=1 {
            for dy in -1..=1 {
                if edge && dx != 0 && dy != 0 {
                    continue;
                }
                let u = tile_at(x + dx, y + dy);
                if u != t {
                    out.insert(u);
                }
            }
        }
    }
    out
}

pub fn window_tiles(w: Window) -> Vec<TileId> {
    let r = w.radius as i32;
    let mut out = Vec::new();
    for i in w.center.0 - r..=w.center.0 + r {
        for j in w.center.1 - r..=w.center.1 + r {
            out.push(TileId::new(i, j, 0));
            out.push(TileId::new(i, j, 1));
        }
    }
    out
}

/// Every proper colouring of the window extending `s`, by plain
/// depth-first search in a fixed tile order.
pub fn list_colorings(s: &Seed, w: Window) -> Vec<Vec<Color>> {
    let tiles = window_tiles(w);
    let idx = |t: TileId| tiles.iter().position(|&u| u == t);
    let adj: Vec<Vec<usize>> = tiles
        .iter()
        .map(|&t| raster_neighbors(t, false).into_iter().filter_map(idx).collect())
        .collect();
    let mut out = Vec::new();
    let mut cur: Vec<Option<Color>> = vec![None; tiles.len()];
    fn go(
        k: usize,
        tiles: &[TileId],
        adj: &[Vec<usize>],
        s: &Seed,
        cur: &mut Vec<Option<Color>>,
        out: &mut Vec<Vec<Color>>,
    ) {
        if k == tiles.len() {
            out.push(cur.iter().map(|c| c.unwrap()).collect());
            return;
        }
        let choices: Vec<Color> = match s.get(tiles[k]) {
            Some(c) => vec![c],
            None => Color::ALL.to_vec(),
        };
        for c in choices {
            if adj[k].iter().all(|&u| cur[u] != Some(c)) {
                cur[k] = Some(c);
                go(k + 1, tiles, adj, s, cur, out);
                cur[k] = None;
            }
        }
    }
    go(0, &tiles, &adj, s, &mut cur, &mut out);
    out
}

/// Forcing by repeated sweeps over a window, contradictions ignored.
pub fn naive_forcing(s: &Seed, w: Window) -> Vec<Option<Color>> {
    let tiles = window_tiles(w);
    let mut col: Vec<Option<Color>> = tiles.iter().map(|&t| s.get(t)).collect();
    loop {
        let mut next = col.clone();
        for (k, &t) in tiles.iter().enumerate() {
            if col[k].is_some() {
                continue;
            }
            let used: BTreeSet<Color> = raster_neighbors(t, false)
                .into_iter()
                .filter_map(|u| tiles.iter().position(|&v| v == u).and_then(|x| col[x]))
                .collect();
            if used.len() == 3 {
                next[k] = Color::ALL.into_iter().find(|c| !used.contains(c));
            }
        }
        if next == col {
            return col;
        }
        col = next;
    }
}
