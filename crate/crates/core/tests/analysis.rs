use std::collections::BTreeSet;

use basketweave::analysis::{
    classify_relations, decompose, decompose_region, partition_supertiles, pinwheel, recolor,
    supertile_of, AnalysisError, Dimension, RelationKind, CANONICAL_ANCHOR,
};
use basketweave::coloring::{
    field, propagate_with_margin, ColorPermutation, PartialColoring, Seed,
};
use basketweave::lattice::{tiles_in_window, TileId, Window};
use basketweave::seeds;
use proptest::prelude::*;

fn perfect_field(r: u32) -> PartialColoring {
    let s = seeds::perfect();
    propagate_with_margin(&s, s.window(r))
}

proptest! {
    #[test]
    fn every_tile_has_one_supertile_per_parity(i in -50i32..50, j in -50i32..50, slot in 0u8..2) {
        let t = TileId::new(i, j, slot);
        for anchor in [(0, 0), (1, 0)] {
            let mut hits = Vec::new();
            for a in i - 2..=i + 3 {
                for b in j - 2..=j + 3 {
                    if (a - anchor.0 + b - anchor.1).rem_euclid(2) == 0 && pinwheel(a, b).contains(&t) {
                        hits.push((a, b));
                    }
                }
            }
            prop_assert_eq!(hits, vec![supertile_of(t, anchor)]);
        }
    }
}

#[test]
fn pinwheel_members_are_distinct_and_touch_the_corner() {
    for (a, b) in [(0, 0), (1, 0), (-3, 2), (4, -5)] {
        let m = pinwheel(a, b);
        assert_eq!(m.iter().collect::<BTreeSet<_>>().len(), 4);
        for t in m {
            let (x0, y0, x1, y1) = t.rect();
            assert!(x0 <= 2 * a && 2 * a <= x1 && y0 <= 2 * b && 2 * b <= y1);
        }
    }
}

#[test]
fn perfect_field_has_seven_components_and_five_crystals() {
    let d = decompose(&perfect_field(20)).unwrap();
    assert_eq!(d.recoloring.patterns.len(), 5);
    assert_eq!(d.components.len(), 7);
    assert_eq!(d.crystal_count(), 5);
    let dims: Vec<Dimension> = d.components.iter().map(|c| c.dimension).collect();
    assert_eq!(dims.iter().filter(|&&x| x == Dimension::One).count(), 3);
    assert_eq!(dims.iter().filter(|&&x| x == Dimension::Two).count(), 4);
    let area: usize = d.components.iter().map(|c| c.area).sum();
    assert_eq!(area, d.supertiles.len());
}

#[test]
fn decomposition_commutes_with_even_translations() {
    let base = decompose(&perfect_field(16)).unwrap().report();
    for (di, dj) in [(1, 1), (2, 0), (-3, 1)] {
        let s: Seed = seeds::perfect().map_tiles(|t| t.translate(di, dj));
        let c = propagate_with_margin(&s, s.window(16));
        assert_eq!(decompose(&c).unwrap().report(), base, "shift ({di}, {dj})");
    }
}

#[test]
fn census_ignores_colour_names() {
    let c = perfect_field(16);
    let d = decompose(&c).unwrap();
    let mut census = d.recoloring.census();
    census.sort_unstable();
    for p in ColorPermutation::all() {
        let e = decompose(&c.permute_colors(&p)).unwrap();
        assert_eq!(e.component_of, d.component_of);
        let mut other = e.recoloring.census();
        other.sort_unstable();
        assert_eq!(other, census);
    }
}

#[test]
fn anchors_of_equal_parity_agree() {
    let c = perfect_field(20);
    let count = |anchor| recolor(&partition_supertiles(&c, anchor).unwrap()).patterns.len();
    assert_eq!(count(CANONICAL_ANCHOR), 5);
    assert_eq!(count((0, 1)), 5);
    assert_eq!(count((0, 0)), count((1, 1)));
    let st = partition_supertiles(&c, CANONICAL_ANCHOR).unwrap();
    let covered: BTreeSet<TileId> = st.iter().flat_map(|s| s.members).collect();
    assert_eq!(covered.len(), 4 * st.len());
}

#[test]
fn relations_name_existing_components() {
    let d = decompose(&perfect_field(20)).unwrap();
    let rel = classify_relations(&d);
    for r in &rel {
        assert!(r.a < d.components.len() && r.b < d.components.len() && r.a != r.b);
        match r.kind {
            RelationKind::Adjoined => assert_eq!(r.via, None),
            _ => {
                let l = r.via.unwrap();
                assert_eq!(d.components[l].dimension, Dimension::One);
            }
        }
        if r.kind == RelationKind::GrainBoundary {
            assert_eq!(d.components[r.a].crystal, d.components[r.b].crystal);
        }
        if r.kind == RelationKind::SeparatedByInterface {
            assert_ne!(d.components[r.a].crystal, d.components[r.b].crystal);
        }
    }
}

#[test]
fn strip_field_is_one_dimensional() {
    let s = seeds::strip();
    for r in [6, 8] {
        let d = decompose_region(&field(&s, s.window(r)).unwrap());
        assert_eq!(d.components.len(), 1);
        assert_eq!(d.components[0].dimension, Dimension::One);
    }
}

#[test]
fn partial_colourings_are_rejected() {
    let w = Window::centered(3);
    let mut c = PartialColoring::empty(w);
    let full = perfect_field(3);
    for t in tiles_in_window(w).into_iter().skip(1) {
        c.set(t, full.get(t).unwrap());
    }
    assert_eq!(decompose(&c).unwrap_err(), AnalysisError::Incomplete { uncolored: 1 });
}
