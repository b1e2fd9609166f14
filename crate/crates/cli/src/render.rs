//! SVG pictures of windows. Output depends only on the inputs: tiles are
//! drawn in window order with a fixed palette and integer coordinates.

use std::fmt::Write as _;

use basketweave::analysis::CrystalDecomposition;
use basketweave::automaton::{AutomatonState, StepReport};
use basketweave::coloring::{CandidateMap, Color, PartialColoring, Seed};
use basketweave::lattice::{tiles_in_window, TileId, Window};

pub const RED: &str = "#d62728";
pub const BLUE: &str = "#1f77b4";
pub const YELLOW: &str = "#e8c547";
pub const GREEN: &str = "#2ca02c";
pub const GREY: &str = "#bbbbbb";
pub const VIOLET: &str = "#9467bd";
pub const WHITE: &str = "#ffffff";
pub const PATTERN_PALETTE: [&str; 5] = ["#8c564b", "#e377c2", "#17becf", "#bcbd22", "#ff7f0e"];
pub const COMPONENT_PALETTE: [&str; 8] = [
    "#aec7e8", "#ffbb78", "#98df8a", "#ff9896", "#c5b0d5", "#c49c94", "#f7b6d2", "#dbdb8d",
];

const LEGEND_HEIGHT: u32 = 24;

pub fn color_fill(c: Color) -> &'static str {
    match c {
        Color::R => RED,
        Color::B => BLUE,
        Color::Y => YELLOW,
        Color::G => GREEN,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum View {
    Field,
    Candidates,
    Components,
    Patterns,
    AutomatonFrame,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    pub view: View,
    pub window: Window,
    /// Pixels per unit square.
    pub cell: u32,
    pub legend: bool,
}

impl RenderSpec {
    pub fn new(view: View, window: Window) -> Self {
        RenderSpec {
            view,
            window,
            cell: 12,
            legend: false,
        }
    }
}

struct Canvas {
    spec: RenderSpec,
    out: String,
}

impl Canvas {
    fn new(spec: RenderSpec) -> Self {
        let side = 2 * spec.window.side() as u32 * spec.cell;
        let height = side + if spec.legend { LEGEND_HEIGHT } else { 0 };
        let mut out = String::new();
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{side}" height="{height}" viewBox="0 0 {side} {height}">"#
        )
        .unwrap();
        writeln!(out, r#"<rect width="{side}" height="{height}" fill="{WHITE}"/>"#).unwrap();
        Canvas { spec, out }
    }

    /// Pixel rectangle of a tile, y pointing down.
    fn rect(&self, t: TileId) -> (i64, i64, i64, i64) {
        let (x0, y0, x1, y1) = t.rect();
        let (bi, _) = self.spec.window.min_block();
        let (_, bj) = self.spec.window.max_block();
        let (ox, top) = (2 * bi as i64, 2 * (bj as i64 + 1));
        let c = self.spec.cell as i64;
        (
            (x0 as i64 - ox) * c,
            (top - y1 as i64) * c,
            (x1 - x0) as i64 * c,
            (y1 - y0) as i64 * c,
        )
    }

    fn tile(&mut self, t: TileId, fill: &str) {
        let (x, y, w, h) = self.rect(t);
        writeln!(
            self.out,
            r##"<rect x="{x}" y="{y}" width="{w}" height="{h}" fill="{fill}" stroke="#444444" stroke-width="1"/>"##
        )
        .unwrap();
    }

    fn label(&mut self, t: TileId, text: &str) {
        let (x, y, w, h) = self.rect(t);
        let size = self.spec.cell;
        writeln!(
            self.out,
            r##"<text x="{}" y="{}" font-family="monospace" font-size="{size}" text-anchor="middle" dominant-baseline="central" fill="#000000">{text}</text>"##,
            x + w / 2,
            y + h / 2
        )
        .unwrap();
    }

    fn legend(&mut self, entries: &[(&str, String)]) {
        if !self.spec.legend {
            return;
        }
        let y0 = 2 * self.spec.window.side() as u32 * self.spec.cell;
        for (k, (fill, name)) in entries.iter().enumerate() {
            let x = 4 + 90 * k as u32;
            writeln!(
                self.out,
                r##"<rect x="{x}" y="{}" width="14" height="14" fill="{fill}" stroke="#444444" stroke-width="1"/>"##,
                y0 + 5
            )
            .unwrap();
            writeln!(
                self.out,
                r##"<text x="{}" y="{}" font-family="monospace" font-size="12" fill="#000000">{name}</text>"##,
                x + 18,
                y0 + 17
            )
            .unwrap();
        }
    }

    fn finish(mut self) -> String {
        self.out.push_str("</svg>\n");
        self.out
    }
}

fn color_legend() -> Vec<(&'static str, String)> {
    Color::ALL
        .iter()
        .map(|&c| (color_fill(c), c.to_string()))
        .collect()
}

/// Coloured tiles in their colour, the rest white.
pub fn render_field(spec: RenderSpec, c: &PartialColoring) -> String {
    let mut cv = Canvas::new(spec);
    for t in tiles_in_window(spec.window) {
        cv.tile(t, c.get(t).map_or(WHITE, color_fill));
    }
    cv.legend(&color_legend());
    cv.finish()
}

/// Singletons filled, other tiles white with their candidate letters.
pub fn render_candidates(spec: RenderSpec, m: &CandidateMap) -> String {
    let mut cv = Canvas::new(spec);
    for t in tiles_in_window(spec.window) {
        let set = m.get(t);
        match set.and_then(|s| s.as_single()) {
            Some(c) => cv.tile(t, color_fill(c)),
            None => {
                cv.tile(t, WHITE);
                if let Some(s) = set {
                    let letters: String = s.iter().map(|c| c.letter()).collect();
                    cv.label(t, &letters);
                }
            }
        }
    }
    cv.legend(&color_legend());
    cv.finish()
}

fn supertile_fill(d: &CrystalDecomposition, k: usize, by_pattern: bool) -> &'static str {
    if by_pattern {
        let id = d.recoloring.ids[k].0 as usize;
        PATTERN_PALETTE[id % PATTERN_PALETTE.len()]
    } else {
        COMPONENT_PALETTE[d.component_of[k] % COMPONENT_PALETTE.len()]
    }
}

fn render_supertiles(spec: RenderSpec, d: &CrystalDecomposition, by_pattern: bool) -> Canvas {
    let mut cv = Canvas::new(spec);
    let mut fill: Vec<Option<&str>> = vec![None; spec.window.len()];
    for (k, s) in d.supertiles.iter().enumerate() {
        for t in s.members {
            if let Some(x) = spec.window.index_of(t) {
                fill[x] = Some(supertile_fill(d, k, by_pattern));
            }
        }
    }
    for (x, f) in fill.into_iter().enumerate() {
        cv.tile(spec.window.tile_at(x), f.unwrap_or(WHITE));
    }
    cv
}

/// Super-tiles coloured by component.
pub fn render_components(spec: RenderSpec, d: &CrystalDecomposition) -> String {
    let mut cv = render_supertiles(spec, d, false);
    let entries: Vec<(&str, String)> = d
        .components
        .iter()
        .enumerate()
        .map(|(k, c)| (COMPONENT_PALETTE[k % COMPONENT_PALETTE.len()], format!("{k} {}", c.dimension)))
        .collect();
    cv.legend(&entries);
    cv.finish()
}

/// Super-tiles coloured by pattern, seed tiles marked with `x`.
pub fn render_patterns(spec: RenderSpec, d: &CrystalDecomposition, seed: &Seed) -> String {
    let mut cv = render_supertiles(spec, d, true);
    for t in seed.tiles() {
        if spec.window.contains(t) {
            cv.label(t, "x");
        }
    }
    let entries: Vec<(&str, String)> = d
        .recoloring
        .patterns
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let name: String = p.iter().map(|c| c.letter()).collect();
            (PATTERN_PALETTE[k % PATTERN_PALETTE.len()], name)
        })
        .collect();
    cv.legend(&entries);
    cv.finish()
}

/// Grey tiles, with the tiles painted in `report`'s step in yellow or
/// violet.
pub fn render_frame(spec: RenderSpec, st: &AutomatonState, report: &StepReport) -> String {
    let mut cv = Canvas::new(spec);
    let mut fill: Vec<&str> = vec![WHITE; spec.window.len()];
    for t in st.grey() {
        if let Some(x) = spec.window.index_of(t) {
            fill[x] = GREY;
        }
    }
    for (tiles, f) in [(&report.yellow, YELLOW), (&report.violet, VIOLET)] {
        for &t in tiles {
            if let Some(x) = spec.window.index_of(t) {
                fill[x] = f;
            }
        }
    }
    for (x, f) in fill.into_iter().enumerate() {
        cv.tile(spec.window.tile_at(x), f);
    }
    cv.legend(&[
        (GREY, "grey".to_string()),
        (YELLOW, "3 grey".to_string()),
        (VIOLET, "4 grey".to_string()),
    ]);
    cv.finish()
}
