//! Instance constructions from the hardness reductions, together with the
//! maps that translate solutions between the constructed and source
//! instances.

mod compose;
mod random;
mod xi;

use thiserror::Error;

use crate::graph::{subdivide_all, verify_bond, Bond, BondRejection, Graph, GraphError, Vertex, VertexSet};

pub use compose::{or_compose_bond, or_compose_st, Composite, StComposite};
pub use random::{random_connected, random_partial_ktree};
pub use xi::{
    extract_cut, is_nice, is_uniform, lift_cut, make_nice_bond, make_uniform_bond, xi_power, XiEdge, XiInstance,
    XI_VERTEX_LIMIT,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("invalid bond: {0}")]
    Bond(#[from] BondRejection),
    #[error("graph is not regular")]
    NotRegular,
    #[error("pattern with {vertices} vertices at height {height} exceeds the limit of {XI_VERTEX_LIMIT}")]
    TooLarge { vertices: usize, height: usize },
    #[error("pattern must be a simple graph")]
    PatternNotSimple,
    #[error("pattern needs at least 2 vertices")]
    PatternTooSmall,
    #[error("edge set is not a cut-set of the pattern")]
    NotACut,
    #[error("pattern edge {0} out of range")]
    UnknownEdge(usize),
    #[error("bond is not {0}-uniform")]
    NotUniform(usize),
    #[error("tower of height 0 embeds no pattern")]
    HeightZero,
    #[error("composition needs at least one input")]
    NoInputs,
    #[error("input {index} has {vertices} vertices, at least 2 are required")]
    InputTooSmall { index: usize, vertices: usize },
    #[error("input {0} is not connected")]
    InputDisconnected(usize),
    #[error("vertex {vertex} out of range in input {index}")]
    BadVertex { index: usize, vertex: Vertex },
}

/// `n` disjoint copies of `g` and two adjacent vertices joined to every copy
/// vertex. Copy `c` maps vertex `v` to `c * n + v`; the two extra vertices are
/// `n²` and `n² + 1`.
pub fn psi(g: &Graph) -> Graph {
    let n = g.num_vertices();
    let (va, vb) = (n * n, n * n + 1);
    let mut out = Graph::with_flags(n * n + 2, false, g.is_multigraph());
    for c in 0..n {
        for e in g.edges() {
            out.add_edge(c * n + e.u, c * n + e.v).expect("copy of a valid edge");
        }
    }
    for x in 0..n * n {
        out.add_edge(x, va).expect("fresh edge");
        out.add_edge(x, vb).expect("fresh edge");
    }
    out.add_edge(va, vb).expect("fresh edge");
    out
}

/// Independent set instance encoded as a bond instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct W1Instance {
    pub graph: Graph,
    pub degree: usize,
    /// Bond size reached exactly when the source has an independent set of size `k`.
    pub expected_bond: usize,
    /// Side size of that bond.
    pub expected_side: usize,
}

/// Adds an edge between every pair of vertices of the regular graph `h`
/// (doubling existing edges) and subdivides every edge of the result.
pub fn w1_instance(h: &Graph, k: usize) -> Result<W1Instance, GenError> {
    let n = h.num_vertices();
    let degree = if n == 0 { 0 } else { h.degree(0) };
    if (0..n).any(|v| h.degree(v) != degree) {
        return Err(GenError::NotRegular);
    }
    let mut multi = Graph::with_flags(n, false, true);
    for e in h.edges() {
        multi.add_edge(e.u, e.v)?;
    }
    for u in 0..n {
        for v in u + 1..n {
            multi.add_edge(u, v)?;
        }
    }
    Ok(W1Instance {
        graph: subdivide_all(&multi)?,
        degree,
        expected_bond: degree * k + k * n.saturating_sub(k),
        expected_side: k + k * k.saturating_sub(1) / 2,
    })
}

/// Unweighted simple graph simulating a 0/1-weighted one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unweighted {
    pub graph: Graph,
    /// Number of weight-0 edges of the source.
    pub zero_edges: usize,
    /// Copies made of every weight-1 edge.
    pub multiplicity: usize,
    /// Source edge of each subdivision vertex, indexed by `vertex - n`.
    pub origin: Vec<usize>,
}

impl Unweighted {
    /// Maps a bond of the unweighted graph back to a bond of the source by
    /// undoing the subdivision and collapsing parallel edges. A bond cutting
    /// off a single subdivision vertex has no direct preimage; it is mapped
    /// to a bond through the corresponding source edge.
    pub fn map_back(&self, source: &Graph, bond: &Bond) -> Result<Bond, GenError> {
        let n = source.num_vertices();
        let side = VertexSet::from_vertices(n, bond.side.iter().filter(|&v| v < n));
        if !side.is_empty() && side.len() < n {
            return Ok(verify_bond(source, &side)?);
        }
        let lonely = if side.is_empty() {
            bond.side.iter().next()
        } else {
            (n..self.graph.num_vertices()).find(|&v| !bond.side.contains(v))
        };
        let edge = lonely.map(|v| self.origin[v - n]).ok_or(BondRejection::EmptySide)?;
        Ok(bond_through_edge(source, edge)?)
    }
}

/// A bond containing `edge`: the subtree hanging below it in a BFS tree
/// entered through that edge.
fn bond_through_edge(g: &Graph, edge: usize) -> Result<Bond, BondRejection> {
    let e = g.edge(edge);
    let n = g.num_vertices();
    let mut parent = vec![usize::MAX; n];
    parent[e.u] = e.u;
    parent[e.v] = e.u;
    let mut order = vec![e.u, e.v];
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for y in g.neighbors(x) {
            if parent[y] == usize::MAX {
                parent[y] = x;
                order.push(y);
            }
        }
    }
    let mut below = vec![false; n];
    below[e.v] = true;
    for &x in &order[2..] {
        below[x] = below[parent[x]];
    }
    verify_bond(g, &VertexSet::from_vertices(n, (0..n).filter(|&v| below[v])))
}

/// Replaces every weight-1 edge by `max(m, 1)` parallel edges, where `m` is
/// the number of weight-0 edges, then subdivides every edge. Subdivision
/// vertices follow the original vertices in edge order.
pub fn binary_to_unweighted(h: &Graph) -> Result<Unweighted, GenError> {
    let zero_edges = h.edges().iter().filter(|e| e.weight == 0).count();
    let multiplicity = zero_edges.max(1);
    let mut multi = Graph::with_flags(h.num_vertices(), false, true);
    let mut origin = Vec::new();
    for (id, e) in h.edges().iter().enumerate() {
        let copies = if e.weight == 1 { multiplicity } else { 1 };
        for _ in 0..copies {
            multi.add_edge(e.u, e.v)?;
            origin.push(id);
        }
    }
    Ok(Unweighted { graph: subdivide_all(&multi)?, zero_edges, multiplicity, origin })
}
