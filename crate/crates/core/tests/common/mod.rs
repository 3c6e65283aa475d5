#![allow(dead_code)]

use bond_core::cw::{eval_w_expression, Label, WExpression};
use bond_core::generators::random_connected;
use bond_core::Graph;
use rand::Rng;

/// Every labelled connected simple graph on `n` vertices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    (0u64..1 << pairs.len())
        .filter_map(|mask| {
            let edges: Vec<(usize, usize)> =
                pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
            let g = Graph::from_edges(n, &edges);
            g.is_connected().then_some(g)
        })
        .collect()
}

/// Random connected graph with a random number of extra edges.
pub fn random_graph<R: Rng>(rng: &mut R, lo: usize, hi: usize) -> Graph {
    let n = rng.gen_range(lo..=hi);
    let spare = n * (n - 1) / 2 - (n - 1);
    let extra = rng.gen_range(0..=spare);
    random_connected(n, extra, rng)
}

fn build<R: Rng>(e: &mut WExpression, rng: &mut R, vertices: &[usize], labels: Label) -> usize {
    if vertices.len() == 1 {
        return e.create(rng.gen_range(1..=labels), vertices[0]);
    }
    let cut = rng.gen_range(1..vertices.len());
    let a = build(e, rng, &vertices[..cut], labels);
    let b = build(e, rng, &vertices[cut..], labels);
    let mut x = e.union(a, b);
    for _ in 0..rng.gen_range(0..=2) {
        let i = rng.gen_range(1..=labels);
        let j = rng.gen_range(1..=labels);
        if i != j {
            x = e.join(i, j, x);
        }
    }
    if labels > 1 && rng.gen_bool(0.3) {
        let from = rng.gen_range(1..=labels);
        let to = rng.gen_range(1..=labels);
        if from != to {
            x = e.relabel(from, to, x);
        }
    }
    x
}

/// Random expression on `2..=max_n` vertices whose graph is connected.
pub fn random_expression<R: Rng>(rng: &mut R, max_n: usize, max_labels: Label) -> WExpression {
    loop {
        let n = rng.gen_range(2..=max_n);
        let labels = rng.gen_range(2..=max_labels);
        let mut e = WExpression::new();
        let vertices: Vec<usize> = (0..n).collect();
        e.root = build(&mut e, rng, &vertices, labels);
        if eval_w_expression(&e).graph.is_connected() {
            return e;
        }
    }
}
