use super::GenError;
use crate::graph::{Graph, Vertex};

/// Several graphs glued at one shared vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composite {
    pub graph: Graph,
    /// `maps[i][v]` is the composite id of vertex `v` of input `i`.
    pub maps: Vec<Vec<Vertex>>,
}

/// Several `s`-`t` instances chained by identifying each `t_i` with `s_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StComposite {
    pub graph: Graph,
    pub s: Vertex,
    pub t: Vertex,
    pub maps: Vec<Vec<Vertex>>,
}

fn check_input(index: usize, g: &Graph, vertices: &[Vertex]) -> Result<(), GenError> {
    if g.num_vertices() < 2 {
        return Err(GenError::InputTooSmall { index, vertices: g.num_vertices() });
    }
    if let Some(&vertex) = vertices.iter().find(|&&v| v >= g.num_vertices()) {
        return Err(GenError::BadVertex { index, vertex });
    }
    if !g.is_connected() {
        return Err(GenError::InputDisconnected(index));
    }
    Ok(())
}

/// Builds the union of the renamed inputs. `target(i, maps)` optionally names
/// the composite id that vertex `anchor(i)` of input `i` must take.
fn glue(gs: &[&Graph], anchor: impl Fn(usize) -> Vertex, target: impl Fn(usize, &[Vec<Vertex>]) -> Option<Vertex>) -> Composite {
    let mut maps: Vec<Vec<Vertex>> = Vec::with_capacity(gs.len());
    let mut next = 0;
    for (i, g) in gs.iter().enumerate() {
        let shared = target(i, &maps);
        let a = anchor(i);
        let map: Vec<Vertex> = (0..g.num_vertices())
            .map(|v| match shared {
                Some(id) if v == a => id,
                _ => {
                    next += 1;
                    next - 1
                }
            })
            .collect();
        maps.push(map);
    }
    let weighted = gs.iter().any(|g| g.is_weighted());
    let multigraph = gs.iter().any(|g| g.is_multigraph());
    let mut graph = Graph::with_flags(next, weighted, multigraph);
    for (g, map) in gs.iter().zip(&maps) {
        for e in g.edges() {
            graph.add_weighted_edge(map[e.u], map[e.v], e.weight as u32).expect("inputs share one vertex");
        }
    }
    Composite { graph, maps }
}

/// Identifies the pivot of every input into a single vertex. Without explicit
/// pivots, vertex 0 of each input is used. A single input is returned with
/// its ids unchanged.
pub fn or_compose_bond(gs: &[Graph], pivots: Option<&[Vertex]>) -> Result<Composite, GenError> {
    if gs.is_empty() {
        return Err(GenError::NoInputs);
    }
    let pivot = |i: usize| pivots.map_or(0, |p| p.get(i).copied().unwrap_or(0));
    for (i, g) in gs.iter().enumerate() {
        check_input(i, g, &[pivot(i)])?;
    }
    let refs: Vec<&Graph> = gs.iter().collect();
    Ok(glue(&refs, pivot, |i, maps| (i > 0).then(|| maps[0][pivot(0)])))
}

/// Chains the instances: `t_i` and `s_{i+1}` become one vertex, and the
/// composite terminals are `s_1` and `t_l`.
pub fn or_compose_st(instances: &[(Graph, Vertex, Vertex)]) -> Result<StComposite, GenError> {
    if instances.is_empty() {
        return Err(GenError::NoInputs);
    }
    for (i, (g, s, t)) in instances.iter().enumerate() {
        check_input(i, g, &[*s, *t])?;
        if s == t {
            return Err(GenError::Graph(crate::graph::GraphError::RepeatedVertex));
        }
    }
    let refs: Vec<&Graph> = instances.iter().map(|(g, _, _)| g).collect();
    let c = glue(&refs, |i| instances[i].1, |i, maps| (i > 0).then(|| maps[i - 1][instances[i - 1].2]));
    let last = instances.len() - 1;
    Ok(StComposite { s: c.maps[0][instances[0].1], t: c.maps[last][instances[last].2], graph: c.graph, maps: c.maps })
}
