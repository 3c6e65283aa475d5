//! Tree decompositions, nice tree decompositions, K_{2,k} minor models and the
//! preprocessing that either certifies a large bond or bounds the width.

mod minor;
mod nice;
mod winwin;

use std::collections::{BTreeSet, HashSet, VecDeque};

use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub use minor::{absorb_uncovered, bond_from_minor, find_k2k_minor, st_bond_from_minor, MinorError, MinorModel};
pub use nice::{make_nice, validate_nice, NiceKind, NiceNode, NiceTreeDecomposition, NiceViolation};
pub use winwin::{st_preprocess, st_reduce, winwin_preprocess, ReducedInstance, StPreprocess, WinWin};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    /// Sorted vertex lists.
    pub bags: Vec<Vec<Vertex>>,
    /// Tree edges between bag indices.
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TdViolation {
    #[error("bag {bag} mentions vertex {vertex} outside the graph")]
    VertexOutOfRange { bag: usize, vertex: Vertex },
    #[error("bags and tree edges do not form a tree")]
    NotATree,
    #[error("edge {edge} ({u}-{v}) is not contained in any bag")]
    EdgeUncovered { edge: usize, u: Vertex, v: Vertex },
    #[error("vertex {0} is not contained in any bag")]
    VertexUncovered(Vertex),
    #[error("bags containing vertex {0} do not form a connected subtree")]
    VertexNotConnected(Vertex),
}

impl TreeDecomposition {
    pub fn new(mut bags: Vec<Vec<Vertex>>, edges: Vec<(usize, usize)>) -> Self {
        for bag in &mut bags {
            bag.sort_unstable();
            bag.dedup();
        }
        TreeDecomposition { bags, edges }
    }

    /// Maximum bag size minus one (0 for an empty decomposition).
    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1)
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.bags.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Contracts tree edges whose endpoint bags are nested, keeping the larger
    /// bag. The result is still a valid decomposition of the same graph.
    pub fn simplify(&self) -> TreeDecomposition {
        let b = self.bags.len();
        let mut adj: Vec<HashSet<usize>> = vec![HashSet::new(); b];
        for &(x, y) in &self.edges {
            adj[x].insert(y);
            adj[y].insert(x);
        }
        let mut alive = vec![true; b];
        let subset = |x: &Vec<Vertex>, y: &Vec<Vertex>| x.iter().all(|v| y.binary_search(v).is_ok());
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..b {
                if !alive[x] {
                    continue;
                }
                let mut nbrs: Vec<usize> = adj[x].iter().copied().collect();
                nbrs.sort_unstable();
                if let Some(&y) = nbrs.iter().find(|&&y| subset(&self.bags[x], &self.bags[y])) {
                    alive[x] = false;
                    for z in nbrs {
                        adj[z].remove(&x);
                        if z != y {
                            adj[z].insert(y);
                            adj[y].insert(z);
                        }
                    }
                    adj[x].clear();
                    changed = true;
                }
            }
        }
        let mut index = vec![usize::MAX; b];
        let mut bags = Vec::new();
        for x in 0..b {
            if alive[x] {
                index[x] = bags.len();
                bags.push(self.bags[x].clone());
            }
        }
        let mut edges = Vec::new();
        for x in 0..b {
            if alive[x] {
                let mut ys: Vec<usize> = adj[x].iter().copied().filter(|&y| y > x).collect();
                ys.sort_unstable();
                edges.extend(ys.into_iter().map(|y| (index[x], index[y])));
            }
        }
        TreeDecomposition { bags, edges }
    }
}

/// Checks the tree shape and the three decomposition axioms, reporting the
/// first violation found (shape, then edges, then vertices, then
/// connectivity).
pub fn validate_tree_decomposition(g: &Graph, td: &TreeDecomposition) -> Result<(), TdViolation> {
    let n = g.num_vertices();
    for (bag_id, bag) in td.bags.iter().enumerate() {
        if let Some(&vertex) = bag.iter().find(|&&v| v >= n) {
            return Err(TdViolation::VertexOutOfRange { bag: bag_id, vertex });
        }
    }
    let b = td.bags.len();
    if b == 0 {
        return if n == 0 { Ok(()) } else { Err(TdViolation::VertexUncovered(0)) };
    }
    if td.edges.len() != b - 1 || td.edges.iter().any(|&(x, y)| x >= b || y >= b || x == y) {
        return Err(TdViolation::NotATree);
    }
    let adj = td.neighbors();
    let mut seen = vec![false; b];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(TdViolation::NotATree);
    }

    let mut bags_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            bags_of[v].push(i);
        }
    }
    for (id, e) in g.edges().iter().enumerate() {
        if !bags_of[e.u].iter().any(|&i| td.bags[i].binary_search(&e.v).is_ok()) {
            return Err(TdViolation::EdgeUncovered { edge: id, u: e.u, v: e.v });
        }
    }
    if let Some(v) = (0..n).find(|&v| bags_of[v].is_empty()) {
        return Err(TdViolation::VertexUncovered(v));
    }
    let mut mark = vec![false; b];
    for v in 0..n {
        for &i in &bags_of[v] {
            mark[i] = true;
        }
        let start = bags_of[v][0];
        let mut reached = 1;
        let mut stack = vec![start];
        mark[start] = false;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if mark[y] {
                    mark[y] = false;
                    reached += 1;
                    stack.push(y);
                }
            }
        }
        for &i in &bags_of[v] {
            mark[i] = false;
        }
        if reached != bags_of[v].len() {
            return Err(TdViolation::VertexNotConnected(v));
        }
    }
    Ok(())
}

/// Decomposition from a min-fill elimination ordering (ties broken by degree,
/// then by vertex id). Valid for any graph; disconnected graphs get their
/// component trees chained together.
pub fn heuristic_tree_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.num_vertices();
    if n == 0 {
        return TreeDecomposition { bags: vec![Vec::new()], edges: Vec::new() };
    }
    let mut adj: Vec<BTreeSet<Vertex>> = g.simple_adjacency().into_iter().map(|v| v.into_iter().collect()).collect();
    let fill_of = |adj: &Vec<BTreeSet<Vertex>>, v: Vertex| {
        let nb: Vec<Vertex> = adj[v].iter().copied().collect();
        let mut missing = 0;
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if !adj[a].contains(&b) {
                    missing += 1;
                }
            }
        }
        missing
    };
    let mut fill: Vec<usize> = (0..n).map(|v| fill_of(&adj, v)).collect();
    let mut eliminated = vec![false; n];
    let mut position = vec![0; n];
    let mut order = Vec::with_capacity(n);
    let mut bags: Vec<Vec<Vertex>> = vec![Vec::new(); n];

    for step in 0..n {
        let v = (0..n)
            .filter(|&v| !eliminated[v])
            .min_by_key(|&v| (fill[v], adj[v].len(), v))
            .expect("vertices remain");
        let nb: Vec<Vertex> = adj[v].iter().copied().collect();
        let mut bag = nb.clone();
        bag.push(v);
        bag.sort_unstable();
        bags[v] = bag;
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
            adj[a].remove(&v);
        }
        adj[v].clear();
        eliminated[v] = true;
        position[v] = step;
        order.push(v);
        let mut touched: BTreeSet<Vertex> = nb.iter().copied().collect();
        for &a in &nb {
            touched.extend(adj[a].iter().copied());
        }
        for x in touched {
            fill[x] = fill_of(&adj, x);
        }
    }

    // Bag of v hangs below the bag of its earliest-eliminated later neighbor.
    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for &v in &order {
        let parent = bags[v].iter().copied().filter(|&u| u != v).min_by_key(|&u| position[u]);
        match parent {
            Some(p) => edges.push((v, p)),
            None => roots.push(v),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    TreeDecomposition { bags, edges }.simplify()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn heuristic_widths() {
        let tree = Graph::from_edges(5, &[(0, 1), (1, 2), (1, 3), (3, 4)]);
        let td = heuristic_tree_decomposition(&tree);
        assert_eq!(td.width(), 1);
        assert_eq!(validate_tree_decomposition(&tree, &td), Ok(()));

        let td = heuristic_tree_decomposition(&cycle(5));
        assert_eq!(td.width(), 2);
        assert_eq!(validate_tree_decomposition(&cycle(5), &td), Ok(()));

        let td = heuristic_tree_decomposition(&complete(4));
        assert_eq!(td.width(), 3);
        assert_eq!(td.bags.len(), 1);
    }

    #[test]
    fn heuristic_handles_disconnected_and_tiny() {
        let g = Graph::from_edges(5, &[(0, 1), (2, 3)]);
        let td = heuristic_tree_decomposition(&g);
        assert_eq!(validate_tree_decomposition(&g, &td), Ok(()));
        let td = heuristic_tree_decomposition(&Graph::new(1));
        assert_eq!(td.bags, vec![vec![0]]);
    }

    #[test]
    fn validation_examples() {
        let p3 = path(3);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]);
        assert_eq!(validate_tree_decomposition(&p3, &td), Ok(()));

        let td = TreeDecomposition::new(vec![vec![0, 1]], vec![]);
        assert_eq!(
            validate_tree_decomposition(&p3, &td),
            Err(TdViolation::EdgeUncovered { edge: 1, u: 1, v: 2 })
        );

        let g = Graph::from_edges(4, &[(0, 1), (0, 3)]);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![2], vec![0, 3]], vec![(0, 1), (1, 2)]);
        assert_eq!(validate_tree_decomposition(&g, &td), Err(TdViolation::VertexNotConnected(0)));

        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![]);
        assert_eq!(validate_tree_decomposition(&p3, &td), Err(TdViolation::NotATree));
        let td = TreeDecomposition::new(vec![vec![0, 7]], vec![]);
        assert_eq!(
            validate_tree_decomposition(&p3, &td),
            Err(TdViolation::VertexOutOfRange { bag: 0, vertex: 7 })
        );
    }

    #[test]
    fn simplify_merges_nested_bags() {
        let td = TreeDecomposition::new(vec![vec![0], vec![0, 1], vec![1], vec![1, 2]], vec![(0, 1), (1, 2), (2, 3)]);
        let s = td.simplify();
        assert_eq!(s.bags, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(s.edges, vec![(0, 1)]);
    }
}
