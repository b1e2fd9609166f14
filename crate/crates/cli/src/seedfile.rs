//! Plain-text seed files: one `i j slot colour` line per tile, `#` starts a
//! comment, blank lines separate seeds.

use std::fmt::Write as _;

use basketweave::coloring::{Color, Seed};
use basketweave::lattice::TileId;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeedFileError {
    #[error("line {line}: expected `i j slot colour`, found {found:?}")]
    Malformed { line: usize, found: String },
    #[error("line {line}: {msg}")]
    BadField { line: usize, msg: String },
    #[error("line {line}: tile {tile} already listed on line {first}")]
    Duplicate {
        line: usize,
        first: usize,
        tile: TileId,
    },
}

/// Every seed block in the text, in order. Empty blocks are skipped.
pub fn parse_blocks(text: &str) -> Result<Vec<Seed>, SeedFileError> {
    parse(text, true)
}

fn parse(text: &str, split: bool) -> Result<Vec<Seed>, SeedFileError> {
    let mut blocks = Vec::new();
    let mut current: Vec<(usize, TileId, Color)> = Vec::new();
    let flush = |current: &mut Vec<(usize, TileId, Color)>, blocks: &mut Vec<Seed>| {
        if !current.is_empty() {
            blocks.push(current.drain(..).map(|(_, t, c)| (t, c)).collect());
        }
    };
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            if split && raw.trim().is_empty() {
                flush(&mut current, &mut blocks);
            }
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let [i, j, slot, color] = fields[..] else {
            return Err(SeedFileError::Malformed {
                line,
                found: body.to_string(),
            });
        };
        let bad = |msg: String| SeedFileError::BadField { line, msg };
        let i: i32 = i.parse().map_err(|_| bad(format!("bad block index {i:?}")))?;
        let j: i32 = j.parse().map_err(|_| bad(format!("bad block index {j:?}")))?;
        let slot: u8 = match slot {
            "0" => 0,
            "1" => 1,
            _ => return Err(bad(format!("slot must be 0 or 1, found {slot:?}"))),
        };
        let color: Color = color.parse().map_err(|e| bad(format!("{e}")))?;
        let tile = TileId::new(i, j, slot);
        if let Some(&(first, _, _)) = current.iter().find(|(_, t, _)| *t == tile) {
            return Err(SeedFileError::Duplicate { line, first, tile });
        }
        current.push((line, tile, color));
    }
    flush(&mut current, &mut blocks);
    Ok(blocks)
}

/// All tiles of the file as one seed; blank lines are ignored.
pub fn parse_seed(text: &str) -> Result<Seed, SeedFileError> {
    Ok(parse(text, false)?.pop().unwrap_or_default())
}

/// Seed lines in tile order.
pub fn format_seed(s: &Seed) -> String {
    let mut out = String::new();
    for (t, c) in s.iter() {
        writeln!(out, "{} {} {} {}", t.i, t.j, t.slot, c).unwrap();
    }
    out
}
