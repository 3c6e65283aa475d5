//! Seedable random connected graphs for corpora and stress tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, Vertex};

/// A random spanning tree (each vertex attaches to a uniformly chosen
/// earlier vertex) plus `extra` further edges between distinct non-adjacent
/// pairs, capped by the number of available pairs. Ids are shuffled.
pub fn random_connected<R: Rng + ?Sized>(n: usize, extra: usize, rng: &mut R) -> Graph {
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    let mut g = Graph::new(n);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        g.add_edge(perm[i], perm[j]).expect("tree edge is new");
    }
    let mut missing: Vec<(Vertex, Vertex)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| !g.has_edge(u, v)).collect();
    missing.shuffle(rng);
    for &(u, v) in missing.iter().take(extra) {
        g.add_edge(u, v).expect("pair was missing");
    }
    g
}

/// A random connected subgraph of a random `w`-tree on `n` vertices: every
/// vertex after the first `w + 1` attaches to a random `w`-clique, and each
/// edge outside a spanning tree is kept with probability `keep`. Treewidth
/// is at most `w`.
pub fn random_partial_ktree<R: Rng + ?Sized>(n: usize, w: usize, keep: f64, rng: &mut R) -> Graph {
    let w = w.max(1);
    let base = n.min(w + 1);
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut cliques: Vec<Vec<Vertex>> = Vec::new();
    for u in 0..base {
        for v in u + 1..base {
            edges.push((u, v));
        }
    }
    if base == w + 1 {
        for skip in 0..base {
            cliques.push((0..base).filter(|&x| x != skip).collect());
        }
    }
    // Vertex attachment in the tree, so that a spanning tree survives pruning.
    let mut tree: Vec<(Vertex, Vertex)> = (1..base).map(|v| (0, v)).collect();
    for v in base..n {
        let clique = cliques.choose(rng).expect("cliques exist past the base").clone();
        tree.push((clique[rng.gen_range(0..clique.len())], v));
        for &u in &clique {
            edges.push((u, v));
        }
        for skip in 0..clique.len() {
            let mut c: Vec<Vertex> = clique.iter().copied().enumerate().filter(|&(i, _)| i != skip).map(|(_, x)| x).collect();
            c.push(v);
            cliques.push(c);
        }
    }
    let mut perm: Vec<Vertex> = (0..n).collect();
    perm.shuffle(rng);
    let mut g = Graph::new(n);
    for &(u, v) in &tree {
        g.add_edge(perm[u], perm[v]).expect("tree edge is new");
    }
    for &(u, v) in &edges {
        if !g.has_edge(perm[u], perm[v]) && rng.gen_bool(keep.clamp(0.0, 1.0)) {
            g.add_edge(perm[u], perm[v]).expect("checked above");
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::heuristic_tree_decomposition;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn connected_and_sized() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..9 {
            let g = random_connected(n, 3, &mut rng);
            assert!(g.is_connected());
            assert_eq!(g.num_edges(), (n - 1 + 3).min(n * (n - 1) / 2));
        }
    }

    #[test]
    fn partial_ktrees_have_small_width() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g = random_partial_ktree(40, 3, 0.6, &mut rng);
            assert!(g.is_connected());
            assert!(heuristic_tree_decomposition(&g).width() <= 3);
        }
    }
}
