mod common;

use std::collections::BTreeSet;

use basketweave::lattice::{
    apply_symmetry, coordination_sequence, neighbors, AdjacencyKind, LatticeSymmetry, TileId,
    EDGE_DEGREE, FULL_DEGREE,
};
use common::raster_neighbors;
use proptest::prelude::*;

fn tile() -> impl Strategy<Value = TileId> {
    (-1000i32..1000, -1000i32..1000, 0u8..2).prop_map(|(i, j, s)| TileId::new(i, j, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn degrees_match_rasterisation(t in tile()) {
        let full: BTreeSet<TileId> = neighbors(t, AdjacencyKind::Full).into_iter().collect();
        let edge: BTreeSet<TileId> = neighbors(t, AdjacencyKind::EdgeOnly).into_iter().collect();
        prop_assert_eq!(full.len(), FULL_DEGREE);
        prop_assert_eq!(edge.len(), EDGE_DEGREE);
        prop_assert_eq!(&full, &raster_neighbors(t, false));
        prop_assert_eq!(&edge, &raster_neighbors(t, true));
    }
}

proptest! {
    #[test]
    fn adjacency_is_symmetric(t in tile()) {
        for kind in [AdjacencyKind::Full, AdjacencyKind::EdgeOnly] {
            for u in neighbors(t, kind) {
                prop_assert!(neighbors(u, kind).contains(&t));
            }
        }
    }

    #[test]
    fn symmetries_preserve_adjacency(t in tile(), g in 0usize..8) {
        let group = LatticeSymmetry::point_group();
        let g = group[g % group.len()];
        let img: BTreeSet<TileId> = neighbors(t, AdjacencyKind::Full)
            .into_iter()
            .map(|u| apply_symmetry(u, g))
            .collect();
        let expected: BTreeSet<TileId> =
            neighbors(apply_symmetry(t, g), AdjacencyKind::Full).into_iter().collect();
        prop_assert_eq!(img, expected);
    }
}

#[test]
fn coordination_sequences_from_every_tile_type() {
    let full = [1, 7, 15, 24, 32, 40, 48, 56, 64, 72, 80, 88];
    let edge = [1, 5, 11, 16, 21, 27, 32, 37, 43, 48, 53];
    for t in [
        TileId::new(0, 0, 0),
        TileId::new(0, 0, 1),
        TileId::new(1, 0, 0),
        TileId::new(-3, 4, 1),
    ] {
        assert_eq!(coordination_sequence(t, AdjacencyKind::Full, 11), full);
        assert_eq!(coordination_sequence(t, AdjacencyKind::EdgeOnly, 10), edge);
    }
}

#[test]
fn full_sequence_is_multiples_of_eight_later_on() {
    let seq = coordination_sequence(TileId::new(0, 0, 0), AdjacencyKind::Full, 40);
    for (s, &n) in seq.iter().enumerate().skip(4) {
        assert_eq!(n, 8 * s, "s = {s}");
    }
}

#[test]
fn point_group_has_all_eight_operations() {
    let group = LatticeSymmetry::point_group();
    assert_eq!(group.len(), 8);
    for g in &group {
        assert!(g.is_automorphism_on(basketweave::lattice::Window::centered(6)));
    }
}
