//! Heavy-vertex decomposition against an independent recount, and the
//! accounting identities over random triples.

mod common;

use common::{random_left_set, recount_heavy};
use expander_core::compose::compose;
use expander_core::diagnostics::{expansion_accounting, heavy_decomposition};
use expander_core::gadget::certify_lossless_exact;
use expander_core::graph::{BipartiteGraph, Side, VertexSet};
use expander_core::plan::{generate_random_biregular, SamplerMethod};

#[test]
fn heavy_decomposition_matches_recount_oracle() {
    let mut cases = 0;
    for (k, big_d0) in [(3usize, 8usize), (2, 4), (4, 8)] {
        for seed in 0..6u64 {
            let n_left = big_d0 * 15; // e.g. 120 for D0=8
            let outer =
                generate_random_biregular(n_left, k, big_d0, seed + 40, SamplerMethod::SwapRepair)
                    .unwrap();
            let s = random_left_set(n_left, 12, seed * 3 + 1);
            for mu0 in [0.2, 0.25, 0.5] {
                let h = heavy_decomposition(&outer, &s, mu0).unwrap();
                let (heavy, counts_left, counts_in_s) = recount_heavy(&outer, &s, mu0);
                assert_eq!(h.heavy.indices(), heavy.as_slice());
                assert_eq!(h.counts_left, counts_left);
                assert_eq!(h.counts_in_s, counts_in_s);
                assert_eq!(h.counts_left.iter().sum::<usize>(), n_left);
                assert_eq!(h.counts_in_s.iter().sum::<usize>(), s.len());
                cases += 1;
            }
        }
    }
    assert!(cases >= 50);
}

#[test]
fn accounting_chain_on_hand_built_composition() {
    // 4x6 example: outer K_{4,3}, gadget K_{4,2}
    let outer = BipartiteGraph::complete(4, 3);
    let gadget = BipartiteGraph::complete(4, 2);
    let comp = compose(&outer, &gadget).unwrap();
    let cert = certify_lossless_exact(&gadget, 0.25, 0.25).unwrap();
    assert!(cert.passed);

    // H empty: every line applies and the bound is assertable
    let s = VertexSet::new(Side::Left, vec![0]);
    let ledger = expansion_accounting(&comp, &s, 0.5, 0.25, 0.5, Some(&cert)).unwrap();
    assert_eq!(ledger.exact_neighborhood, 6);
    assert_eq!(ledger.cluster_sum, 6);
    assert!(ledger.heavy.heavy.is_empty());
    assert!(ledger.certificate_applies);
    assert!(ledger.lower_bound_verified);
    assert!(ledger.nonheavy_contribution as f64 >= ledger.nonheavy_lower_bound);
    assert!((ledger.nonheavy_lower_bound - 0.75 * 2.0 * 3.0).abs() < 1e-12);

    // adversarial set concentrated on every port of every cluster
    let s_all = VertexSet::new(Side::Left, vec![0, 1, 2, 3]);
    let ledger = expansion_accounting(&comp, &s_all, 0.5, 0.25, 0.5, Some(&cert)).unwrap();
    assert_eq!(ledger.heavy.heavy.len(), 3);
    assert_eq!(ledger.nonheavy_contribution, 0);
    assert_eq!(ledger.exact_neighborhood, 6);
    assert!(!ledger.final_target_met); // 6 < 0.5·6·4
}

#[test]
fn accounting_identities_over_random_triples() {
    let mut lower_bound_cases = 0;
    for seed in 0..10u64 {
        let (k, big_d0, n_left) = (3usize, 8usize, 96usize);
        let outer =
            generate_random_biregular(n_left, k, big_d0, seed + 70, SamplerMethod::SwapRepair)
                .unwrap();
        // gadget with full right side and a certificate at sizes <= 2
        let gadget = expander_core::gadget::generate_random_gadget(
            &expander_core::gadget::GadgetSpec {
                n: big_d0,
                beta0: 1.0,
                d0: 2,
                mu0: 2.0 / big_d0 as f64,
                eps0: 0.5,
            },
            seed + 500,
        )
        .unwrap();
        let cert = certify_lossless_exact(&gadget, 2.0 / big_d0 as f64, 0.5).unwrap();
        assert!(cert.passed, "pairs overlap at most 2·ε₀·d₀ = 2 trivially");
        let comp = compose(&outer, &gadget).unwrap();

        for t in 0..5u64 {
            let size = 2 + (t as usize) * 2;
            let s = random_left_set(n_left, size, seed * 100 + t);
            // threshold 2.5: non-heavy intersections are <= 2, covered
            let mu0 = 2.5 / big_d0 as f64;
            let ledger = expansion_accounting(&comp, &s, mu0, 0.5, 0.5, Some(&cert)).unwrap();
            assert_eq!(ledger.cluster_sum, ledger.exact_neighborhood);
            assert!(ledger.nonheavy_contribution <= ledger.exact_neighborhood);
            assert!(ledger.certificate_applies);
            assert!(ledger.lower_bound_verified);
            if ledger.heavy.heavy.is_empty() {
                lower_bound_cases += 1;
                assert!(ledger.nonheavy_contribution as f64 >= ledger.nonheavy_lower_bound - 1e-9);
                assert_eq!(ledger.nonheavy_edge_sum, size * k);
            }
        }
    }
    assert!(lower_bound_cases > 0, "some triples must have empty H");
}
