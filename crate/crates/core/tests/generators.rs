mod common;

use bond_core::generators::{
    binary_to_unweighted, extract_cut, is_nice, is_uniform, make_nice_bond, make_uniform_bond, psi, w1_instance,
    xi_power,
};
use bond_core::graph::named;
use bond_core::oracle::{enumerate_bonds, largest_bond_bf, largest_bond_side_size_bf, max_cut_bf};
use bond_core::{verify_bond, Graph, VertexSet};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn has_independent_set(h: &Graph, k: usize) -> bool {
    let n = h.num_vertices();
    (0u32..1 << n).any(|mask| {
        mask.count_ones() as usize == k && h.edges().iter().all(|e| mask >> e.u & 1 == 0 || mask >> e.v & 1 == 0)
    })
}

#[test]
fn w1_matches_independent_sets_on_four_vertices() {
    let regular: Vec<Graph> = common::connected_graphs(4)
        .into_iter()
        .chain([Graph::new(4)])
        .chain([[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]].map(|m| named::from_pairs(4, &m)))
        .filter(|g| (0..4).all(|v| g.degree(v) == g.degree(0)))
        .collect();
    // Empty, three perfect matchings, three 4-cycles, K_4.
    assert_eq!(regular.len(), 8);
    for h in &regular {
        for k in 1..=2 {
            let w = w1_instance(h, k).unwrap();
            let found = largest_bond_side_size_bf(&w.graph, w.expected_side)
                .unwrap()
                .is_some_and(|b| b.size >= w.expected_bond);
            assert_eq!(found, has_independent_set(h, k), "{h:?} k={k}");
        }
    }
}

#[test]
fn psi_sizes_follow_the_formula() {
    for g in (1..=4).flat_map(common::connected_graphs) {
        let n = g.num_vertices();
        let p = psi(&g);
        assert_eq!(p.num_vertices(), n * n + 2);
        assert_eq!(p.num_edges(), n * g.num_edges() + 2 * n * n + 1);
    }
}

#[test]
fn xi_vertex_counts_follow_the_recursion() {
    for p in [named::complete(2), named::path(3), named::complete(3), named::cycle(4), named::star(3)] {
        let (pv, pe) = (p.num_vertices(), p.num_edges());
        let (mut vertices, mut heavy) = (2, 1);
        for h in 0..=3 {
            let Ok(x) = xi_power(&p, h) else { break };
            assert_eq!(x.graph.num_vertices(), vertices);
            assert_eq!(x.graph.total_weight(), heavy);
            assert_eq!(x.levels.len(), x.graph.num_edges());
            for i in x.split_edges() {
                let e = &x.edges[i];
                let expected: usize = (1..=x.height - e.level).map(|d| pv * pe.pow(d as u32 - 1)).sum();
                assert_eq!(e.descendants.len(), expected);
            }
            vertices += heavy * pv;
            heavy *= pe;
        }
    }
}

#[test]
fn normalization_on_sampled_bonds() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (pattern, h) in [(named::complete(3), 2), (named::cycle(4), 1), (named::star(3), 2)] {
        let x = xi_power(&pattern, h).unwrap();
        let (k, _) = max_cut_bf(&pattern).unwrap();
        let mut bonds = enumerate_bonds(&x.graph).unwrap();
        bonds.shuffle(&mut rng);
        for f in bonds.iter().take(100) {
            let nice = make_nice_bond(&x, f).unwrap();
            assert!(is_nice(&x, &nice));
            assert_eq!(nice.weight, f.weight);
            let (u, l) = make_uniform_bond(&x, f).unwrap();
            assert!(l <= k && u.weight >= f.weight && is_uniform(&x, &u, l));
            assert_eq!(extract_cut(&x, &u, l).unwrap().len(), l);
        }
    }
}

#[test]
fn unweighted_simulation_obeys_the_bound() {
    let x = xi_power(&named::path(3), 1).unwrap();
    let u = binary_to_unweighted(&x.graph).unwrap();
    assert_eq!(u.zero_edges, 6);
    assert!(!u.graph.is_multigraph() && !u.graph.is_weighted());
    assert_eq!(u.graph.num_vertices(), 5 + 6 + 2 * 6);
    let best = largest_bond_bf(&u.graph).unwrap();
    let back = u.map_back(&x.graph, &best).unwrap();
    assert!(back.weight * u.zero_edges + u.zero_edges >= best.size, "{} from {}", back.weight, best.size);
    assert_eq!(back.weight, 2);

    // A bond of weight-0 edges only maps to at most m crossing edges.
    let zero_side = VertexSet::from_vertices(5, [0]);
    let light = verify_bond(&x.graph, &zero_side).unwrap();
    assert_eq!(light.weight, 0);
    let lifted_side = VertexSet::from_vertices(u.graph.num_vertices(), [0]);
    let lifted = verify_bond(&u.graph, &lifted_side).unwrap();
    assert!(lifted.size <= u.zero_edges);
}
