//! Property tests for the graph layer: serialization round trips, the
//! handshake identity, and the neighborhood size bound.

mod common;

use common::random_left_regular;
use expander_core::graph::{io, BipartiteGraph, Side, VertexSet, WeightedGraph};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bipartite_round_trip_preserves_adjacency(
        n_left in 1usize..12,
        n_right in 1usize..12,
        seed in 0u64..1000,
        density in 0.0f64..1.0,
    ) {
        let mut rng = expander_core::seed::rng_from_seed(seed);
        let adjacency: Vec<Vec<u32>> = (0..n_left)
            .map(|_| {
                (0..n_right as u32)
                    .filter(|_| rand::Rng::random_bool(&mut rng, density))
                    .collect()
            })
            .collect();
        let g = BipartiteGraph::new(n_left, n_right, adjacency).unwrap();
        let text = io::bipartite_to_string(&g);
        let back = io::parse_bipartite(&text).unwrap();
        prop_assert_eq!(&g, &back);
        // canonical: write∘read∘write is byte-stable
        prop_assert_eq!(text, io::bipartite_to_string(&back));
    }

    #[test]
    fn weighted_round_trip(seed in 0u64..1000, n in 2usize..10) {
        let mut rng = expander_core::seed::rng_from_seed(seed);
        let mut g = WeightedGraph::new(n).unwrap();
        for u in 0..n {
            for v in (u + 1)..n {
                let w: u64 = rand::Rng::random_range(&mut rng, 0..4);
                g.add_weight(u, v, w).unwrap();
            }
        }
        let text = io::weighted_to_string(&g);
        prop_assert_eq!(io::parse_weighted(&text).unwrap(), g);
    }

    #[test]
    fn handshake_and_neighborhood_bound(
        seed in 0u64..1000,
        d in 1usize..5,
        size in 1usize..8,
    ) {
        let g = random_left_regular(10, 8, d.min(8), seed);
        let left_sum: usize = g.adjacency().iter().map(Vec::len).sum();
        prop_assert_eq!(left_sum, g.right_degrees().iter().sum::<usize>());
        prop_assert_eq!(left_sum, g.edge_count());

        let s = common::random_left_set(10, size, seed ^ 0x55);
        let nb = g.neighborhood(&s).unwrap();
        prop_assert!(nb.len() <= g.right_count().min(d * s.len()));
    }
}

#[test]
fn neighborhood_matches_per_edge_scan() {
    // independent oracle: scan every edge and mark endpoints with a source
    // in S
    let g = random_left_regular(10, 8, 3, 7);
    let s = VertexSet::new(Side::Left, vec![1, 4, 9]);
    let mut expect: Vec<usize> = g
        .edges()
        .filter(|(w, _)| s.contains(*w))
        .map(|(_, v)| v)
        .collect();
    expect.sort_unstable();
    expect.dedup();
    assert_eq!(g.neighborhood(&s).unwrap().indices(), expect.as_slice());
}

#[test]
fn content_hash_is_stable_and_sensitive() {
    let g = random_left_regular(8, 6, 2, 1);
    let h = random_left_regular(8, 6, 2, 1);
    assert_eq!(g.content_hash(), h.content_hash());
    let different = random_left_regular(8, 6, 2, 2);
    assert_ne!(g.content_hash(), different.content_hash());
}
