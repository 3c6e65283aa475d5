//! Undirected (multi)graphs with 0/1 edge weights, vertex sets, cut-sets and
//! bond certificates.

mod blocks;
mod paths;

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use blocks::{block_cut_tree, Block, BlockCutTree};
pub use paths::internally_disjoint_paths;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("parallel edge {0}-{1} in a simple graph")]
    ParallelEdge(Vertex, Vertex),
    #[error("edge weight {0} is not 0 or 1")]
    BadWeight(u32),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is not 2-vertex-connected")]
    NotBiconnected,
    #[error("operation requires an unweighted graph")]
    Weighted,
    #[error("vertices must be distinct")]
    RepeatedVertex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub weight: u8,
}

impl Edge {
    /// The endpoint opposite to `x`.
    #[inline]
    pub fn other(&self, x: Vertex) -> Vertex {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// A dense set of vertex ids backed by a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet(FixedBitSet);

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet(FixedBitSet::with_capacity(n))
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        VertexSet(bits)
    }

    pub fn from_vertices<I: IntoIterator<Item = Vertex>>(n: usize, vertices: I) -> Self {
        let mut set = VertexSet::new(n);
        for v in vertices {
            set.insert(v);
        }
        set
    }

    /// Builds a set from the low `n` bits of `mask`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        VertexSet::from_vertices(n, (0..n).filter(|&v| mask >> v & 1 == 1))
    }

    /// Size of the universe the set lives in.
    pub fn universe(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn insert(&mut self, v: Vertex) {
        self.0.insert(v);
    }

    #[inline]
    pub fn remove(&mut self, v: Vertex) {
        self.0.set(v, false);
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(v)
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.ones()
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }

    pub fn complement(&self) -> VertexSet {
        let mut bits = self.0.clone();
        bits.toggle_range(..);
        VertexSet(bits)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.0.union_with(&other.0);
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    /// Low 64 bits as an integer mask (vertex `i` is bit `i`).
    pub fn to_mask(&self) -> u64 {
        self.iter().filter(|&v| v < 64).fold(0, |m, v| m | 1 << v)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// An undirected graph on vertices `0..n`. Edges are identified by their index
/// in insertion order.
#[derive(Clone, Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    multigraph: bool,
    weighted: bool,
    adjacency: Vec<Vec<(Vertex, usize)>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.edges == other.edges
            && self.multigraph == other.multigraph
            && self.weighted == other.weighted
    }
}

impl Eq for Graph {}

impl Graph {
    /// Simple unweighted graph without edges.
    pub fn new(n: usize) -> Self {
        Graph::with_flags(n, false, false)
    }

    pub fn with_flags(n: usize, weighted: bool, multigraph: bool) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            multigraph,
            weighted,
            adjacency: vec![Vec::new(); n],
        }
    }

    /// Simple unweighted graph from an edge list. Panics on invalid input,
    /// intended for literals and tests.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v).expect("invalid edge literal");
        }
        g
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<usize, GraphError> {
        self.add_weighted_edge(u, v, 1)
    }

    pub fn add_weighted_edge(&mut self, u: Vertex, v: Vertex, weight: u32) -> Result<usize, GraphError> {
        for x in [u, v] {
            if x >= self.n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        if weight > 1 {
            return Err(GraphError::BadWeight(weight));
        }
        if !self.multigraph && self.has_edge(u, v) {
            return Err(GraphError::ParallelEdge(u.min(v), u.max(v)));
        }
        if weight != 1 {
            self.weighted = true;
        }
        let id = self.edges.len();
        self.edges.push(Edge { u, v, weight: weight as u8 });
        self.adjacency[u].push((v, id));
        self.adjacency[v].push((u, id));
        Ok(id)
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn is_multigraph(&self) -> bool {
        self.multigraph
    }

    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    /// Marks the graph as weighted without changing any weight.
    pub fn set_weighted(&mut self, weighted: bool) {
        self.weighted = weighted || self.edges.iter().any(|e| e.weight != 1);
    }

    /// `(neighbor, edge id)` pairs in insertion order.
    pub fn incident(&self, v: Vertex) -> &[(Vertex, usize)] {
        &self.adjacency[v]
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adjacency[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.adjacency[u].len() <= self.adjacency[v].len() { (u, v) } else { (v, u) };
        self.adjacency[a].iter().any(|&(w, _)| w == b)
    }

    pub fn total_weight(&self) -> usize {
        self.edges.iter().map(|e| e.weight as usize).sum()
    }

    /// Sorted, deduplicated neighbor lists (parallel edges collapsed).
    pub fn simple_adjacency(&self) -> Vec<Vec<Vertex>> {
        self.adjacency
            .iter()
            .map(|inc| {
                let mut nb: Vec<Vertex> = inc.iter().map(|&(w, _)| w).collect();
                nb.sort_unstable();
                nb.dedup();
                nb
            })
            .collect()
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Vertices reachable from `start` using only vertices of `within`.
    pub fn reach_within(&self, start: Vertex, within: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::new(self.n);
        if !within.contains(start) {
            return seen;
        }
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &(y, _) in &self.adjacency[x] {
                if within.contains(y) && !seen.contains(y) {
                    seen.insert(y);
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Whether `G[set]` is connected. The empty set counts as connected.
    pub fn induces_connected(&self, set: &VertexSet) -> bool {
        match set.iter().next() {
            None => true,
            Some(start) => self.reach_within(start, set).len() == set.len(),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.induces_connected(&self.vertex_set())
    }

    /// Connected components ordered by smallest contained vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let all = self.vertex_set();
        let mut assigned = VertexSet::new(self.n);
        let mut components = Vec::new();
        for v in 0..self.n {
            if !assigned.contains(v) {
                let comp = self.reach_within(v, &all);
                assigned.union_with(&comp);
                components.push(comp);
            }
        }
        components
    }

    /// Edge ids with exactly one endpoint in `side`.
    pub fn cut_set(&self, side: &VertexSet) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| side.contains(e.u) != side.contains(e.v))
            .map(|(i, _)| i)
            .collect()
    }

    /// Subgraph induced by `vertices` (in the given order). Returns the
    /// subgraph and, per new edge, the id of the edge it came from.
    pub fn induced_subgraph(&self, vertices: &[Vertex]) -> (Graph, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut sub = Graph::with_flags(vertices.len(), self.weighted, self.multigraph);
        let mut origin = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if local[e.u] != usize::MAX && local[e.v] != usize::MAX {
                sub.add_weighted_edge(local[e.u], local[e.v], e.weight as u32)
                    .expect("induced edge is valid");
                origin.push(id);
            }
        }
        (sub, origin)
    }

    /// Same graph with vertex `v` renamed to `perm[v]`; edge order is kept.
    pub fn relabeled(&self, perm: &[Vertex]) -> Graph {
        let mut g = Graph::with_flags(self.n, self.weighted, self.multigraph);
        for e in &self.edges {
            g.add_weighted_edge(perm[e.u], perm[e.v], e.weight as u32)
                .expect("relabeling preserves validity");
        }
        g
    }
}

/// Replaces every edge by a path of length two through a fresh vertex. The
/// new vertex for edge `i` gets id `n + i`.
pub fn subdivide_all(g: &Graph) -> Result<Graph, GraphError> {
    if g.is_weighted() {
        return Err(GraphError::Weighted);
    }
    let n = g.num_vertices();
    let mut out = Graph::new(n + g.num_edges());
    for (i, e) in g.edges().iter().enumerate() {
        out.add_edge(e.u, n + i)?;
        out.add_edge(n + i, e.v)?;
    }
    Ok(out)
}

/// A bond certificate: a side `S` whose both shores induce connected
/// subgraphs, together with its cut-set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bond {
    pub side: VertexSet,
    pub crossing_edges: Vec<usize>,
    pub size: usize,
    pub weight: usize,
}

impl Bond {
    pub fn side_vertices(&self) -> Vec<Vertex> {
        self.side.to_vec()
    }

    /// The same bond described from the other shore.
    pub fn flipped(&self) -> Bond {
        Bond { side: self.side.complement(), ..self.clone() }
    }

    /// `(u, v)` endpoint pairs of the crossing edges.
    pub fn crossing_pairs(&self, g: &Graph) -> Vec<(Vertex, Vertex)> {
        self.crossing_edges.iter().map(|&i| (g.edge(i).u, g.edge(i).v)).collect()
    }

    pub fn separates(&self, s: Vertex, t: Vertex) -> bool {
        self.side.contains(s) != self.side.contains(t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Error)]
pub enum BondRejection {
    #[error("side is empty")]
    EmptySide,
    #[error("side contains every vertex")]
    FullSide,
    #[error("side does not induce a connected subgraph")]
    LeftDisconnected,
    #[error("complement of the side does not induce a connected subgraph")]
    RightDisconnected,
    #[error("graph is not connected")]
    GraphDisconnected,
}

/// Checks that `side` determines a bond of `g` and returns its certificate.
pub fn verify_bond(g: &Graph, side: &VertexSet) -> Result<Bond, BondRejection> {
    if !g.is_connected() {
        return Err(BondRejection::GraphDisconnected);
    }
    let side = restrict(side, g.num_vertices());
    if side.is_empty() {
        return Err(BondRejection::EmptySide);
    }
    if side.len() == g.num_vertices() {
        return Err(BondRejection::FullSide);
    }
    if !g.induces_connected(&side) {
        return Err(BondRejection::LeftDisconnected);
    }
    if !g.induces_connected(&side.complement()) {
        return Err(BondRejection::RightDisconnected);
    }
    Ok(bond_unchecked(g, side))
}

/// Builds the certificate for `side` without checking connectivity.
pub(crate) fn bond_unchecked(g: &Graph, side: VertexSet) -> Bond {
    let crossing_edges = g.cut_set(&side);
    let weight = crossing_edges.iter().map(|&i| g.edge(i).weight as usize).sum();
    Bond { size: crossing_edges.len(), crossing_edges, weight, side }
}

fn restrict(side: &VertexSet, n: usize) -> VertexSet {
    if side.universe() == n {
        side.clone()
    } else {
        VertexSet::from_vertices(n, side.iter().filter(|&v| v < n))
    }
}

/// Upper bound `|E| - |V| + 2` on the size of any bond of a connected graph.
pub fn yutsis_bound(g: &Graph) -> usize {
    (g.num_edges() + 2).saturating_sub(g.num_vertices())
}

/// Small named graphs used throughout tests and examples.
pub mod named {
    use super::{Graph, Vertex};

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "simple cycles need at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges)
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph::from_edges(a + b, &edges)
    }

    /// `K_{1,leaves}` centered at 0.
    pub fn star(leaves: usize) -> Graph {
        complete_bipartite(1, leaves)
    }

    /// Triangles 0-1-2 and 2-3-4 sharing vertex 2.
    pub fn bowtie() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    }

    pub fn from_pairs(n: usize, pairs: &[(Vertex, Vertex)]) -> Graph {
        Graph::from_edges(n, pairs)
    }
}
