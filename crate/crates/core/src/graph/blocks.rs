use std::collections::VecDeque;

use super::{Graph, GraphError, Vertex};

/// A maximal 2-connected subgraph, or a bridge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Sorted vertex ids.
    pub vertices: Vec<Vertex>,
    /// Ids of the graph edges inside the block.
    pub edges: Vec<usize>,
}

impl Block {
    pub fn is_bridge(&self) -> bool {
        self.vertices.len() == 2 && self.edges.len() == 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

#[derive(Clone, Debug)]
pub struct BlockCutTree {
    pub blocks: Vec<Block>,
    /// Sorted cut vertices.
    pub cut_vertices: Vec<Vertex>,
    /// `(block id, cut vertex)` incidences.
    pub tree_edges: Vec<(usize, Vertex)>,
    blocks_of: Vec<Vec<usize>>,
}

impl BlockCutTree {
    pub fn is_cut_vertex(&self, v: Vertex) -> bool {
        self.blocks_of[v].len() > 1
    }

    /// Ids of the blocks containing `v`.
    pub fn blocks_of(&self, v: Vertex) -> &[usize] {
        &self.blocks_of[v]
    }

    /// Blocks on the block-cut tree path between the nodes representing `s`
    /// and `t`, in order from `s` to `t`. A vertex is represented by its
    /// cut-vertex node if it is one, otherwise by its unique block.
    pub fn block_path(&self, s: Vertex, t: Vertex) -> Vec<usize> {
        // Node ids: blocks are 0..b, vertex x is b + x.
        let b = self.blocks.len();
        let node_of = |x: Vertex| if self.is_cut_vertex(x) { b + x } else { self.blocks_of[x][0] };
        let (from, to) = (node_of(s), node_of(t));
        let total = b + self.blocks_of.len();
        let mut parent = vec![usize::MAX; total];
        parent[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            let next: Vec<usize> = if x < b {
                self.blocks[x].vertices.iter().filter(|&&v| self.is_cut_vertex(v)).map(|&v| b + v).collect()
            } else {
                self.blocks_of[x - b].clone()
            };
            for y in next {
                if parent[y] == usize::MAX {
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut path = Vec::new();
        let mut x = to;
        loop {
            if x < b {
                path.push(x);
            }
            if x == from {
                break;
            }
            x = parent[x];
        }
        path.reverse();
        path
    }
}

/// Blocks and cut vertices of a connected graph (iterative Tarjan with an
/// edge stack; parallel edges are handled by skipping only the tree edge id).
pub fn block_cut_tree(g: &Graph) -> Result<BlockCutTree, GraphError> {
    let n = g.num_vertices();
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    let mut blocks: Vec<Block> = Vec::new();
    if n == 1 {
        blocks.push(Block { vertices: vec![0], edges: vec![] });
    } else if n > 1 {
        const UNSEEN: usize = usize::MAX;
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut edge_stack: Vec<usize> = Vec::new();
        let mut clock = 0;
        // (vertex, edge id used to enter it, next incidence index)
        let mut stack: Vec<(Vertex, usize, usize)> = vec![(0, usize::MAX, 0)];
        disc[0] = clock;
        low[0] = clock;
        clock += 1;
        while let Some(&mut (v, parent_edge, ref mut next)) = stack.last_mut() {
            if *next < g.incident(v).len() {
                let (w, id) = g.incident(v)[*next];
                *next += 1;
                if id == parent_edge {
                    continue;
                }
                if disc[w] == UNSEEN {
                    edge_stack.push(id);
                    disc[w] = clock;
                    low[w] = clock;
                    clock += 1;
                    stack.push((w, id, 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(id);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut edges = Vec::new();
                        while let Some(id) = edge_stack.pop() {
                            edges.push(id);
                            if id == parent_edge {
                                break;
                            }
                        }
                        edges.sort_unstable();
                        let mut vertices: Vec<Vertex> =
                            edges.iter().flat_map(|&i| [g.edge(i).u, g.edge(i).v]).collect();
                        vertices.sort_unstable();
                        vertices.dedup();
                        blocks.push(Block { vertices, edges });
                    }
                }
            }
        }
        blocks.sort_by(|a, b| a.vertices.cmp(&b.vertices).then(a.edges.cmp(&b.edges)));
    }

    let mut blocks_of = vec![Vec::new(); n];
    for (i, block) in blocks.iter().enumerate() {
        for &v in &block.vertices {
            blocks_of[v].push(i);
        }
    }
    let cut_vertices: Vec<Vertex> = (0..n).filter(|&v| blocks_of[v].len() > 1).collect();
    let mut tree_edges = Vec::new();
    for (i, block) in blocks.iter().enumerate() {
        for &v in &block.vertices {
            if blocks_of[v].len() > 1 {
                tree_edges.push((i, v));
            }
        }
    }
    Ok(BlockCutTree { blocks, cut_vertices, tree_edges, blocks_of })
}

/// Whether `g` is 2-vertex-connected (connected, at least 3 vertices, no
/// cut vertex).
pub(crate) fn is_biconnected(g: &Graph) -> bool {
    g.num_vertices() >= 3
        && block_cut_tree(g).map(|bct| bct.blocks.len() == 1).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::super::named::*;
    use super::*;

    #[test]
    fn bowtie_has_one_cut_vertex() {
        let bct = block_cut_tree(&bowtie()).unwrap();
        assert_eq!(bct.blocks.len(), 2);
        assert_eq!(bct.cut_vertices, vec![2]);
        assert_eq!(bct.tree_edges.len(), 2);
    }

    #[test]
    fn cycle_is_one_block() {
        let bct = block_cut_tree(&cycle(4)).unwrap();
        assert_eq!(bct.blocks.len(), 1);
        assert!(bct.cut_vertices.is_empty());
        assert!(is_biconnected(&cycle(4)));
    }

    #[test]
    fn path_blocks_are_bridges() {
        let bct = block_cut_tree(&path(3)).unwrap();
        assert_eq!(bct.blocks.len(), 2);
        assert!(bct.blocks.iter().all(Block::is_bridge));
        assert_eq!(bct.cut_vertices, vec![1]);
        assert!(!is_biconnected(&path(3)));
    }

    #[test]
    fn parallel_edges_form_a_block() {
        let mut g = Graph::with_flags(3, false, true);
        g.add_edge(0, 1).unwrap();
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 2).unwrap();
        let bct = block_cut_tree(&g).unwrap();
        assert_eq!(bct.blocks.len(), 2);
        assert_eq!(bct.blocks[0].edges, vec![0, 1]);
        assert_eq!(bct.cut_vertices, vec![1]);
    }

    #[test]
    fn every_edge_in_exactly_one_block() {
        let g = Graph::from_edges(
            8,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3), (5, 6), (6, 7), (7, 5), (1, 7)],
        );
        let bct = block_cut_tree(&g).unwrap();
        let mut seen = vec![0; g.num_edges()];
        for b in &bct.blocks {
            for &e in &b.edges {
                seen[e] += 1;
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn block_path_between_vertices() {
        // bowtie plus a pendant triangle on 0-1-5
        let g = Graph::from_edges(
            7,
            &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (1, 5), (5, 6), (6, 1)],
        );
        let bct = block_cut_tree(&g).unwrap();
        let path = bct.block_path(0, 3);
        assert_eq!(path.len(), 2);
        assert!(bct.blocks[path[0]].contains(0));
        assert!(bct.blocks[path[1]].contains(3));
    }

    #[test]
    fn disconnected_is_rejected() {
        let g = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert!(matches!(block_cut_tree(&g), Err(GraphError::Disconnected)));
    }
}
