use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use super::{validate_tree_decomposition, TdViolation, TreeDecomposition};
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NiceKind {
    Leaf,
    IntroduceVertex(Vertex),
    /// Introduces graph edge `edge` with endpoints `u` and `v`.
    IntroduceEdge { edge: usize, u: Vertex, v: Vertex },
    ForgetVertex(Vertex),
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceNode {
    pub kind: NiceKind,
    /// Sorted bag.
    pub bag: Vec<Vertex>,
    pub children: Vec<usize>,
}

/// A rooted nice tree decomposition with introduce-edge nodes. Children always
/// have smaller ids than their parent, so `0..nodes.len()` is a bottom-up
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NiceTreeDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
}

impl NiceTreeDecomposition {
    pub fn width(&self) -> usize {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(1).saturating_sub(1)
    }

    /// The node bags as an ordinary decomposition (one bag per node).
    pub fn to_tree_decomposition(&self) -> TreeDecomposition {
        let mut edges = Vec::new();
        for (i, node) in self.nodes.iter().enumerate() {
            for &c in &node.children {
                edges.push((c, i));
            }
        }
        TreeDecomposition { bags: self.nodes.iter().map(|n| n.bag.clone()).collect(), edges }
    }

    pub fn count(&self, pred: impl Fn(&NiceKind) -> bool) -> usize {
        self.nodes.iter().filter(|n| pred(&n.kind)).count()
    }

    fn push(&mut self, kind: NiceKind, bag: Vec<Vertex>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag, children });
        self.nodes.len() - 1
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NiceViolation {
    #[error("invalid underlying decomposition: {0}")]
    Decomposition(TdViolation),
    #[error("root bag is not empty")]
    RootNotEmpty,
    #[error("node {0} has a malformed bag or children for its kind")]
    Malformed(usize),
    #[error("edge {edge} introduced {count} times")]
    EdgeCount { edge: usize, count: usize },
    #[error("node {0} introduces an edge that is not in the graph")]
    UnknownEdge(usize),
    #[error("node {0} is unreachable from the root")]
    Unreachable(usize),
}

fn with(bag: &[Vertex], v: Vertex) -> Vec<Vertex> {
    let mut b = bag.to_vec();
    if let Err(pos) = b.binary_search(&v) {
        b.insert(pos, v);
    }
    b
}

fn without(bag: &[Vertex], v: Vertex) -> Vec<Vertex> {
    bag.iter().copied().filter(|&x| x != v).collect()
}

/// Converts a valid decomposition of `g` into nice form rooted at bag 0.
///
/// Between a bag and its parent, vertices are forgotten in descending order
/// and then introduced in ascending order; sibling subtrees are combined by a
/// left-deep chain of binary joins. Every edge is introduced once, directly
/// above the topmost bag containing both endpoints. The root forgets the
/// remaining vertices so its bag is empty.
pub fn make_nice(td: &TreeDecomposition, g: &Graph) -> Result<NiceTreeDecomposition, NiceViolation> {
    validate_tree_decomposition(g, td).map_err(NiceViolation::Decomposition)?;
    let mut ntd = NiceTreeDecomposition { nodes: Vec::new(), root: 0 };
    if td.bags.is_empty() {
        ntd.root = ntd.push(NiceKind::Leaf, Vec::new(), Vec::new());
        return Ok(ntd);
    }

    let adj = td.neighbors();
    let b = td.bags.len();
    let mut parent = vec![usize::MAX; b];
    let mut depth = vec![0usize; b];
    let mut order = Vec::with_capacity(b);
    parent[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        order.push(x);
        let mut next: Vec<usize> = adj[x].iter().copied().filter(|&y| parent[y] == usize::MAX).collect();
        next.sort_unstable();
        for y in next {
            parent[y] = x;
            depth[y] = depth[x] + 1;
            queue.push_back(y);
        }
    }
    let mut children = vec![Vec::new(); b];
    for &x in &order[1..] {
        children[parent[x]].push(x);
    }

    // Topmost bag holding both endpoints of each edge.
    let mut bags_of: Vec<Vec<usize>> = vec![Vec::new(); g.num_vertices()];
    for (i, bag) in td.bags.iter().enumerate() {
        for &v in bag {
            bags_of[v].push(i);
        }
    }
    let mut edges_at: Vec<Vec<usize>> = vec![Vec::new(); b];
    for (id, e) in g.edges().iter().enumerate() {
        let top = bags_of[e.u]
            .iter()
            .copied()
            .filter(|&i| td.bags[i].binary_search(&e.v).is_ok())
            .min_by_key(|&i| (depth[i], i))
            .expect("validated decomposition covers every edge");
        edges_at[top].push(id);
    }

    let mut top_node = vec![usize::MAX; b];
    for &x in order.iter().rev() {
        let target = &td.bags[x];
        let mut branches = Vec::new();
        for &c in &children[x] {
            let mut node = top_node[c];
            let mut bag = td.bags[c].clone();
            let forget: Vec<Vertex> = bag.iter().rev().copied().filter(|v| target.binary_search(v).is_err()).collect();
            for v in forget {
                bag = without(&bag, v);
                node = ntd.push(NiceKind::ForgetVertex(v), bag.clone(), vec![node]);
            }
            let intro: Vec<Vertex> = target.iter().copied().filter(|v| bag.binary_search(v).is_err()).collect();
            for v in intro {
                bag = with(&bag, v);
                node = ntd.push(NiceKind::IntroduceVertex(v), bag.clone(), vec![node]);
            }
            branches.push(node);
        }
        let mut node = if branches.is_empty() {
            let mut node = ntd.push(NiceKind::Leaf, Vec::new(), Vec::new());
            let mut bag = Vec::new();
            for &v in target {
                bag = with(&bag, v);
                node = ntd.push(NiceKind::IntroduceVertex(v), bag.clone(), vec![node]);
            }
            node
        } else {
            let mut acc = branches[0];
            for &other in &branches[1..] {
                acc = ntd.push(NiceKind::Join, target.clone(), vec![acc, other]);
            }
            acc
        };
        for &id in &edges_at[x] {
            let e = g.edge(id);
            node = ntd.push(NiceKind::IntroduceEdge { edge: id, u: e.u, v: e.v }, target.clone(), vec![node]);
        }
        top_node[x] = node;
    }

    let mut node = top_node[0];
    let mut bag = td.bags[0].clone();
    for &v in td.bags[0].iter().rev() {
        bag = without(&bag, v);
        node = ntd.push(NiceKind::ForgetVertex(v), bag.clone(), vec![node]);
    }
    ntd.root = node;
    Ok(ntd)
}

/// Checks every structural property the dynamic programs rely on.
pub fn validate_nice(ntd: &NiceTreeDecomposition, g: &Graph) -> Result<(), NiceViolation> {
    if ntd.nodes.is_empty() || ntd.root >= ntd.nodes.len() {
        return Err(NiceViolation::Malformed(ntd.root));
    }
    if !ntd.nodes[ntd.root].bag.is_empty() {
        return Err(NiceViolation::RootNotEmpty);
    }
    let mut introduced = vec![0usize; g.num_edges()];
    for (i, node) in ntd.nodes.iter().enumerate() {
        if node.children.iter().any(|&c| c >= i) {
            return Err(NiceViolation::Malformed(i));
        }
        let child_bag = |k: usize| &ntd.nodes[node.children[k]].bag;
        let ok = match node.kind {
            NiceKind::Leaf => node.children.is_empty() && node.bag.is_empty(),
            NiceKind::IntroduceVertex(v) => {
                node.children.len() == 1 && child_bag(0).binary_search(&v).is_err() && node.bag == with(child_bag(0), v)
            }
            NiceKind::ForgetVertex(v) => {
                node.children.len() == 1 && node.bag.binary_search(&v).is_err() && node.bag == without(child_bag(0), v)
            }
            NiceKind::Join => node.children.len() == 2 && child_bag(0) == &node.bag && child_bag(1) == &node.bag,
            NiceKind::IntroduceEdge { edge, u, v } => {
                if edge >= g.num_edges() {
                    return Err(NiceViolation::UnknownEdge(i));
                }
                let e = g.edge(edge);
                if (e.u, e.v) != (u, v) {
                    return Err(NiceViolation::UnknownEdge(i));
                }
                introduced[edge] += 1;
                node.children.len() == 1
                    && child_bag(0) == &node.bag
                    && node.bag.binary_search(&u).is_ok()
                    && node.bag.binary_search(&v).is_ok()
            }
        };
        if !ok {
            return Err(NiceViolation::Malformed(i));
        }
    }
    if let Some((edge, &count)) = introduced.iter().enumerate().find(|(_, &c)| c != 1) {
        return Err(NiceViolation::EdgeCount { edge, count });
    }
    let mut reachable = HashSet::from([ntd.root]);
    let mut stack = vec![ntd.root];
    while let Some(x) = stack.pop() {
        for &c in &ntd.nodes[x].children {
            if reachable.insert(c) {
                stack.push(c);
            }
        }
    }
    if let Some(i) = (0..ntd.nodes.len()).find(|i| !reachable.contains(i)) {
        return Err(NiceViolation::Unreachable(i));
    }
    validate_tree_decomposition(g, &ntd.to_tree_decomposition()).map_err(NiceViolation::Decomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::heuristic_tree_decomposition;
    use crate::graph::named::*;

    #[test]
    fn single_bag_chain() {
        let g = path(2);
        let td = TreeDecomposition::new(vec![vec![0, 1]], vec![]);
        let ntd = make_nice(&td, &g).unwrap();
        let kinds: Vec<NiceKind> = ntd.nodes.iter().map(|n| n.kind).collect();
        assert_eq!(
            kinds,
            vec![
                NiceKind::Leaf,
                NiceKind::IntroduceVertex(0),
                NiceKind::IntroduceVertex(1),
                NiceKind::IntroduceEdge { edge: 0, u: 0, v: 1 },
                NiceKind::ForgetVertex(1),
                NiceKind::ForgetVertex(0),
            ]
        );
        assert_eq!(ntd.root, 5);
        assert_eq!(validate_nice(&ntd, &g), Ok(()));
    }

    #[test]
    fn path_decomposition() {
        let g = path(3);
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]);
        let ntd = make_nice(&td, &g).unwrap();
        assert_eq!(ntd.count(|k| matches!(k, NiceKind::IntroduceEdge { .. })), 2);
        assert_eq!(validate_nice(&ntd, &g), Ok(()));
    }

    #[test]
    fn joins_are_binary() {
        let g = star(4);
        let td = TreeDecomposition::new(
            vec![vec![0], vec![0, 1], vec![0, 2], vec![0, 3], vec![0, 4]],
            vec![(0, 1), (0, 2), (0, 3), (0, 4)],
        );
        let ntd = make_nice(&td, &g).unwrap();
        assert_eq!(ntd.count(|k| matches!(k, NiceKind::Join)), 3);
        assert_eq!(validate_nice(&ntd, &g), Ok(()));
    }

    #[test]
    fn multigraph_edges_each_introduced() {
        let mut g = Graph::with_flags(3, false, true);
        for (u, v) in [(0, 1), (0, 1), (1, 2), (2, 0)] {
            g.add_edge(u, v).unwrap();
        }
        let ntd = make_nice(&heuristic_tree_decomposition(&g), &g).unwrap();
        assert_eq!(ntd.count(|k| matches!(k, NiceKind::IntroduceEdge { .. })), 4);
        assert_eq!(validate_nice(&ntd, &g), Ok(()));
    }

    #[test]
    fn rejects_invalid_input() {
        let g = path(3);
        let td = TreeDecomposition::new(vec![vec![0, 1]], vec![]);
        assert!(matches!(make_nice(&td, &g), Err(NiceViolation::Decomposition(_))));
    }

    #[test]
    fn detects_tampering() {
        let g = cycle(4);
        let mut ntd = make_nice(&heuristic_tree_decomposition(&g), &g).unwrap();
        let idx = ntd.nodes.iter().position(|n| matches!(n.kind, NiceKind::IntroduceEdge { .. })).unwrap();
        ntd.nodes[idx].kind = NiceKind::IntroduceEdge { edge: 0, u: 0, v: 1 };
        assert!(validate_nice(&ntd, &g).is_err());
    }
}
