use std::collections::VecDeque;

use super::{find_k2k_minor, heuristic_tree_decomposition, MinorModel, TreeDecomposition};
use super::minor::{bond_from_minor, st_bond_from_minor};
use crate::graph::{block_cut_tree, verify_bond, Bond, BondRejection, Graph, GraphError, Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WinWin {
    /// A bond of size at least `k` was constructed.
    EarlyYes(Bond),
    Decomposition(TreeDecomposition),
}

/// Either a bond of size at least `k` built from a `K_{2,k}` minor, or a tree
/// decomposition of `g`.
pub fn winwin_preprocess(g: &Graph, k: usize) -> WinWin {
    if let Some(model) = find_k2k_minor(g, k) {
        if let Ok(bond) = bond_from_minor(g, &model) {
            debug_assert!(bond.size >= k);
            return WinWin::EarlyYes(bond);
        }
    }
    WinWin::Decomposition(heuristic_tree_decomposition(g))
}

/// An equivalent `s`-`t` instance on the blocks between `s` and `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedInstance {
    pub graph: Graph,
    pub td: TreeDecomposition,
    /// Original id of each reduced vertex (ascending).
    pub vertex_map: Vec<Vertex>,
    pub s: Vertex,
    pub t: Vertex,
}

impl ReducedInstance {
    /// Lifts a side of the reduced graph to the original graph: every removed
    /// vertex joins the side of the kept vertex it hangs from.
    pub fn lift(&self, g: &Graph, side: &VertexSet) -> Result<Bond, BondRejection> {
        let kept: Vec<Vertex> = self.vertex_map.clone();
        let on_side: Vec<Vertex> = side.iter().map(|v| self.vertex_map[v]).collect();
        lift_through_attachments(g, &kept, &on_side)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StPreprocess {
    EarlyYes(Bond),
    Reduced(ReducedInstance),
}

/// BFS from `kept` through the remaining vertices; each vertex joins the side
/// of the kept vertex it was reached from.
fn lift_through_attachments(g: &Graph, kept: &[Vertex], on_side: &[Vertex]) -> Result<Bond, BondRejection> {
    let n = g.num_vertices();
    let mut state = vec![0u8; n]; // 0 unseen, 1 side, 2 other
    for &v in kept {
        state[v] = 2;
    }
    for &v in on_side {
        state[v] = 1;
    }
    let mut queue: VecDeque<Vertex> = kept.iter().copied().collect();
    let adj = g.simple_adjacency();
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if state[y] == 0 {
                state[y] = state[x];
                queue.push_back(y);
            }
        }
    }
    verify_bond(g, &VertexSet::from_vertices(n, (0..n).filter(|&v| state[v] == 1)))
}

/// Some `s`-`t` bond: the subtree of `s` in a BFS tree rooted at `t`.
fn any_st_bond(g: &Graph, s: Vertex, t: Vertex) -> Bond {
    let n = g.num_vertices();
    let adj = g.simple_adjacency();
    let mut parent = vec![usize::MAX; n];
    parent[t] = t;
    let mut order = vec![t];
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                order.push(y);
            }
        }
    }
    let in_subtree = |mut v: Vertex| loop {
        if v == s {
            return true;
        }
        if v == t {
            return false;
        }
        v = parent[v];
    };
    let side = VertexSet::from_vertices(n, (0..n).filter(|&v| in_subtree(v)));
    verify_bond(g, &side).expect("a subtree of a spanning tree and its complement are connected")
}

/// Restricts an `s`-`t` instance to the blocks on the block-cut tree path
/// from `s` to `t`. Each non-bridge block is searched for a `K_{2,2k}` minor;
/// a hit yields a bond of size at least `k` separating `s` and `t`. Otherwise
/// the per-block decompositions are stitched together through `{u}` bags for
/// the shared cut vertices.
pub fn st_preprocess(g: &Graph, s: Vertex, t: Vertex, k: usize) -> Result<StPreprocess, GraphError> {
    reduce(g, s, t, Some(k))
}

/// The block reduction alone, without any minor search.
pub fn st_reduce(g: &Graph, s: Vertex, t: Vertex) -> Result<ReducedInstance, GraphError> {
    match reduce(g, s, t, None)? {
        StPreprocess::Reduced(r) => Ok(r),
        StPreprocess::EarlyYes(_) => unreachable!("no minor search without k"),
    }
}

fn reduce(g: &Graph, s: Vertex, t: Vertex, k: Option<usize>) -> Result<StPreprocess, GraphError> {
    let n = g.num_vertices();
    for x in [s, t] {
        if x >= n {
            return Err(GraphError::VertexOutOfRange { vertex: x, n });
        }
    }
    if s == t {
        return Err(GraphError::RepeatedVertex);
    }
    let bct = block_cut_tree(g)?;
    if matches!(k, Some(0..=1)) {
        return Ok(StPreprocess::EarlyYes(any_st_bond(g, s, t)));
    }
    let path = bct.block_path(s, t);
    let shared = |a: usize, b: usize| -> Vertex {
        let (x, y) = (&bct.blocks[a].vertices, &bct.blocks[b].vertices);
        *x.iter().find(|v| y.binary_search(v).is_ok()).expect("consecutive blocks share a cut vertex")
    };

    let mut kept: Vec<Vertex> = path.iter().flat_map(|&b| bct.blocks[b].vertices.iter().copied()).collect();
    kept.sort_unstable();
    kept.dedup();
    let mut reduced_id = vec![usize::MAX; n];
    for (i, &v) in kept.iter().enumerate() {
        reduced_id[v] = i;
    }

    let mut bags: Vec<Vec<Vertex>> = Vec::new();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    // For each path block, the bag index holding its entry and exit vertex.
    let mut ports: Vec<(usize, usize)> = Vec::new();
    for (i, &b) in path.iter().enumerate() {
        let block = &bct.blocks[b];
        let entry = if i == 0 { s } else { shared(path[i - 1], b) };
        let exit = if i + 1 == path.len() { t } else { shared(b, path[i + 1]) };
        let offset = bags.len();
        if block.is_bridge() {
            bags.push(block.vertices.iter().map(|&v| reduced_id[v]).collect());
            ports.push((offset, offset));
            continue;
        }
        let (h, _) = g.induced_subgraph(&block.vertices);
        let local = |v: Vertex| block.vertices.binary_search(&v).expect("vertex of the block");
        if let Some((k, model)) = k.and_then(|k| Some((k, find_k2k_minor(&h, 2 * k)?))) {
            let model = MinorModel { legs: model.legs[..2 * k].to_vec(), ..model };
            if let Ok(bond) = st_bond_from_minor(&h, local(entry), local(exit), &model) {
                let on_side: Vec<Vertex> = bond.side.iter().map(|v| block.vertices[v]).collect();
                if let Ok(lifted) = lift_through_attachments(g, &block.vertices, &on_side) {
                    debug_assert!(lifted.separates(s, t) && lifted.size >= k);
                    return Ok(StPreprocess::EarlyYes(lifted));
                }
            }
        }
        let td = heuristic_tree_decomposition(&h);
        let bag_with = |v: Vertex| offset + td.bags.iter().position(|bag| bag.contains(&local(v))).expect("covered");
        ports.push((bag_with(entry), bag_with(exit)));
        for bag in &td.bags {
            bags.push(bag.iter().map(|&x| reduced_id[block.vertices[x]]).collect());
        }
        edges.extend(td.edges.iter().map(|&(x, y)| (x + offset, y + offset)));
    }
    for i in 1..path.len() {
        let u = reduced_id[shared(path[i - 1], path[i])];
        bags.push(vec![u]);
        let hub = bags.len() - 1;
        edges.push((ports[i - 1].1, hub));
        edges.push((hub, ports[i].0));
    }

    let (graph, _) = g.induced_subgraph(&kept);
    Ok(StPreprocess::Reduced(ReducedInstance {
        graph,
        td: TreeDecomposition::new(bags, edges),
        s: reduced_id[s],
        t: reduced_id[t],
        vertex_map: kept,
    }))
}
