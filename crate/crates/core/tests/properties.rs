mod common;

use bond_core::cw::{eval_w_expression, is_irredundant, make_irredundant, parse_w_expression};
use bond_core::decomposition::{
    heuristic_tree_decomposition, make_nice, validate_nice, validate_tree_decomposition,
};
use bond_core::generators::{random_connected, random_partial_ktree};
use bond_core::io::{parse_edge_list, parse_td, write_edge_list, write_td};
use bond_core::oracle::{enumerate_bonds, largest_bond_bf};
use bond_core::twdp::{largest_bond, solve_largest_bond};
use bond_core::{verify_bond, Graph, VertexSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn seeded_graph(seed: u64, n: usize, extra: usize) -> Graph {
    random_connected(n, extra, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_list_round_trip(seed in any::<u64>(), n in 1usize..30, extra in 0usize..40) {
        let g = seeded_graph(seed, n, extra);
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn weighted_round_trip(weights in proptest::collection::vec(0u32..2, 1..12)) {
        let mut g = Graph::with_flags(weights.len() + 1, true, true);
        for (i, &w) in weights.iter().enumerate() {
            g.add_weighted_edge(i, i + 1, w).unwrap();
            g.add_weighted_edge(i, i + 1, 1 - w).unwrap();
        }
        prop_assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn decompositions_are_valid(seed in any::<u64>(), n in 2usize..40, w in 1usize..5) {
        let g = random_partial_ktree(n, w, 0.5, &mut ChaCha8Rng::seed_from_u64(seed));
        let td = heuristic_tree_decomposition(&g);
        prop_assert_eq!(validate_tree_decomposition(&g, &td), Ok(()));
        let back = parse_td(&write_td(&td, n)).unwrap();
        prop_assert_eq!(validate_tree_decomposition(&g, &back), Ok(()));
        let ntd = make_nice(&td, &g).unwrap();
        prop_assert_eq!(validate_nice(&ntd, &g), Ok(()));
        prop_assert_eq!(ntd.width(), td.width());
    }

    #[test]
    fn decision_is_monotone(seed in any::<u64>(), n in 2usize..9, extra in 0usize..10) {
        let g = seeded_graph(seed, n, extra);
        let opt = largest_bond(&g).unwrap().size;
        for k in 0..=opt + 1 {
            let sol = solve_largest_bond(&g, k).unwrap();
            prop_assert_eq!(sol.yes, k <= opt);
            prop_assert!(verify_bond(&g, &sol.bond.side).is_ok());
            if sol.yes {
                prop_assert!(sol.bond.size >= k);
            }
        }
    }

    #[test]
    fn oracle_witness_is_a_bond(seed in any::<u64>(), n in 2usize..10, extra in 0usize..12) {
        let g = seeded_graph(seed, n, extra);
        let best = largest_bond_bf(&g).unwrap();
        let checked = verify_bond(&g, &best.side).unwrap();
        prop_assert_eq!(checked.size, best.size);
        prop_assert_eq!(best.size, best.crossing_edges.len());
    }

    #[test]
    fn random_expressions_become_irredundant(seed in any::<u64>()) {
        let e = common::random_expression(&mut ChaCha8Rng::seed_from_u64(seed), 8, 4);
        let clean = make_irredundant(&e);
        prop_assert!(is_irredundant(&clean));
        prop_assert_eq!(eval_w_expression(&clean).graph.num_edges(), eval_w_expression(&e).graph.num_edges());
        prop_assert!(clean.width() <= e.width());
        let reparsed = parse_w_expression(&e.to_string()).unwrap();
        prop_assert_eq!(eval_w_expression(&reparsed), eval_w_expression(&e));
    }
}

#[test]
fn enumerated_bonds_are_exactly_the_connected_bipartitions() {
    for g in common::connected_graphs(5) {
        let bonds = enumerate_bonds(&g).unwrap();
        let expected = (1u64..(1 << 5) - 1)
            .filter(|mask| mask & 1 == 1)
            .filter(|&mask| verify_bond(&g, &VertexSet::from_mask(5, mask)).is_ok())
            .count();
        assert_eq!(bonds.len(), expected);
    }
}
