//! Towers of edge embeddings: starting from a single weight-1 edge, every
//! weight-1 edge is replaced by a copy of a pattern graph whose vertices are
//! tied to both former endpoints by weight-0 edges, `h` times over.

use super::GenError;
use crate::graph::{verify_bond, Bond, Graph, GraphError, Vertex, VertexSet};

/// Largest accepted value of `|V(pattern)|^(h+1)`.
pub const XI_VERTEX_LIMIT: usize = 5000;

/// A weight-1 edge of some intermediate tower level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiEdge {
    pub level: usize,
    pub u: Vertex,
    pub v: Vertex,
    /// Ids of the pattern copy replacing this edge, indexed by pattern vertex.
    /// Empty for edges of the final level.
    pub copy: Vec<Vertex>,
    /// Tower edges created from the copy's edges, in pattern edge order.
    pub children: Vec<usize>,
    /// Every vertex added below this edge, sorted.
    pub descendants: Vec<Vertex>,
    /// Id in the final graph, for edges of the final level.
    pub graph_edge: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiInstance {
    pub graph: Graph,
    pub pattern: Graph,
    pub height: usize,
    /// Iteration that created each edge of `graph`.
    pub levels: Vec<usize>,
    /// Weight-1 edges of all levels, parents before children. Index 0 is the
    /// initial edge between vertices 0 and 1.
    pub edges: Vec<XiEdge>,
}

impl XiInstance {
    /// Indices of the edges that were replaced by a pattern copy.
    pub fn split_edges(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.edges.len()).filter(|&i| self.edges[i].level < self.height)
    }

    /// Pattern edges whose copies cross `side` inside the copy of split edge `i`.
    pub fn induced_cut(&self, i: usize, side: &VertexSet) -> Vec<usize> {
        let copy = &self.edges[i].copy;
        self.pattern
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| side.contains(copy[e.u]) != side.contains(copy[e.v]))
            .map(|(id, _)| id)
            .collect()
    }

    fn separated(&self, i: usize, side: &VertexSet) -> bool {
        side.contains(self.edges[i].u) != side.contains(self.edges[i].v)
    }

    fn is_nice_at(&self, i: usize, side: &VertexSet) -> bool {
        let e = &self.edges[i];
        let inside = side.contains(e.u);
        inside != side.contains(e.v) || e.descendants.iter().all(|&x| side.contains(x) == inside)
    }

    /// First split edge not nice for `side`; edges are stored by level, so it
    /// lies on the lowest offending level.
    fn first_offending(&self, side: &VertexSet) -> Option<usize> {
        self.split_edges().find(|&i| !self.is_nice_at(i, side))
    }

    fn check(&self, f: &Bond) -> Result<Bond, GenError> {
        Ok(verify_bond(&self.graph, &f.side)?)
    }
}

/// Applies the pattern embedding `h` times to a single weight-1 edge.
pub fn xi_power(pattern: &Graph, h: usize) -> Result<XiInstance, GenError> {
    let p = pattern.num_vertices();
    if p < 2 {
        return Err(GenError::PatternTooSmall);
    }
    if pattern.is_multigraph() {
        return Err(GenError::PatternNotSimple);
    }
    if !pattern.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let too_large = GenError::TooLarge { vertices: p, height: h };
    let bound = u32::try_from(h + 1).ok().and_then(|e| p.checked_pow(e)).ok_or(too_large.clone())?;
    if bound > XI_VERTEX_LIMIT {
        return Err(too_large);
    }
    let m = pattern.num_edges();
    let total = 2 + (0..h).map(|j| p * m.pow(j as u32)).sum::<usize>();

    let mut graph = Graph::with_flags(total, true, false);
    let mut levels = Vec::new();
    let mut edges = vec![XiEdge {
        level: 0,
        u: 0,
        v: 1,
        copy: Vec::new(),
        children: Vec::new(),
        descendants: Vec::new(),
        graph_edge: None,
    }];
    let mut next = 2;
    let mut i = 0;
    while i < edges.len() {
        let (level, u, v) = (edges[i].level, edges[i].u, edges[i].v);
        if level == h {
            edges[i].graph_edge = Some(graph.add_weighted_edge(u, v, 1)?);
            levels.push(h);
        } else {
            let copy: Vec<Vertex> = (next..next + p).collect();
            next += p;
            for &t in &copy {
                graph.add_weighted_edge(u, t, 0)?;
                graph.add_weighted_edge(v, t, 0)?;
                levels.extend([level + 1, level + 1]);
            }
            for e in pattern.edges() {
                let id = edges.len();
                edges[i].children.push(id);
                edges.push(XiEdge {
                    level: level + 1,
                    u: copy[e.u],
                    v: copy[e.v],
                    copy: Vec::new(),
                    children: Vec::new(),
                    descendants: Vec::new(),
                    graph_edge: None,
                });
            }
            edges[i].copy = copy;
        }
        i += 1;
    }
    debug_assert_eq!(next, total);

    for i in (0..edges.len()).rev() {
        let mut desc = edges[i].copy.clone();
        for &c in &edges[i].children {
            desc.extend_from_slice(&edges[c].descendants);
        }
        desc.sort_unstable();
        edges[i].descendants = desc;
    }
    Ok(XiInstance { graph, pattern: pattern.clone(), height: h, levels, edges })
}

/// Every split edge either has its endpoints on different sides or lies,
/// with all its descendants, on one side.
pub fn is_nice(x: &XiInstance, f: &Bond) -> bool {
    x.first_offending(&f.side).is_none()
}

/// Nice, and every split edge with separated endpoints induces a pattern
/// cut of exactly `l` edges.
pub fn is_uniform(x: &XiInstance, f: &Bond, l: usize) -> bool {
    is_nice(x, f) && x.split_edges().filter(|&i| x.separated(i, &f.side)).all(|i| x.induced_cut(i, &f.side).len() == l)
}

/// Repairs the lowest offending split edge until the bond is nice. Each
/// round keeps the component of `S ∖ {v}` containing `u`, where `S` is the
/// side holding both endpoints; only weight-0 edges at `v` change, and the
/// next offending edge lies strictly deeper.
pub fn make_nice_bond(x: &XiInstance, f: &Bond) -> Result<Bond, GenError> {
    let f = x.check(f)?;
    let mut side = f.side.clone();
    let mut last_level = None;
    let mut rounds = 0;
    while let Some(i) = x.first_offending(&side) {
        let e = &x.edges[i];
        assert!(last_level.map_or(true, |l| e.level > l), "offending level did not increase");
        rounds += 1;
        assert!(rounds <= x.height, "more repair rounds than levels");
        last_level = Some(e.level);
        let mut within = if side.contains(e.u) { side.clone() } else { side.complement() };
        within.remove(e.v);
        side = x.graph.reach_within(e.u, &within);
    }
    let nice = verify_bond(&x.graph, &side).expect("repair keeps both sides connected");
    assert_eq!(nice.weight, f.weight, "repair changed the weight");
    Ok(nice)
}

/// Side of the tower in which every split edge with separated endpoints has
/// the copies of `pattern_side` next to its `u` end, and every other split
/// edge keeps its gadget with its endpoints.
fn lift_side(x: &XiInstance, pattern_side: &VertexSet) -> Result<Bond, GenError> {
    let mut on_side = vec![false; x.graph.num_vertices()];
    on_side[0] = true;
    for i in x.split_edges() {
        let e = &x.edges[i];
        let (su, sv) = (on_side[e.u], on_side[e.v]);
        for (a, &c) in e.copy.iter().enumerate() {
            on_side[c] = if su == sv || pattern_side.contains(a) { su } else { sv };
        }
    }
    let n = x.graph.num_vertices();
    Ok(verify_bond(&x.graph, &VertexSet::from_vertices(n, (0..n).filter(|&v| on_side[v])))?)
}

/// Lifts a cut-set of the pattern to a bond of the tower in which every
/// separated split edge induces that cut. Its weight is `|cut|^h`.
pub fn lift_cut(x: &XiInstance, cut: &[usize]) -> Result<Bond, GenError> {
    let p = &x.pattern;
    let mut crossing = vec![false; p.num_edges()];
    for &id in cut {
        *crossing.get_mut(id).ok_or(GenError::UnknownEdge(id))? = true;
    }
    let mut colour: Vec<Option<bool>> = vec![None; p.num_vertices()];
    colour[0] = Some(true);
    let mut stack = vec![0];
    while let Some(a) = stack.pop() {
        let ca = colour[a].expect("coloured before push");
        for &(b, id) in p.incident(a) {
            let want = ca != crossing[id];
            match colour[b] {
                None => {
                    colour[b] = Some(want);
                    stack.push(b);
                }
                Some(cb) if cb != want => return Err(GenError::NotACut),
                Some(_) => {}
            }
        }
    }
    let side = VertexSet::from_vertices(p.num_vertices(), (0..p.num_vertices()).filter(|&a| colour[a] == Some(true)));
    lift_side(x, &side)
}

/// Normalises `f` to an `l`-uniform bond of weight `l^h ≥ w(f)`, where `l` is
/// the largest pattern cut induced by any separated split edge of the nice
/// form of `f`. A tower of height 0 has no split edges; the bond is returned
/// as is with `l = 1`.
pub fn make_uniform_bond(x: &XiInstance, f: &Bond) -> Result<(Bond, usize), GenError> {
    if x.height == 0 {
        return Ok((x.check(f)?, 1));
    }
    let nice = make_nice_bond(x, f)?;
    let side = &nice.side;
    debug_assert!(x.separated(0, side), "a nice bond separates the initial edge");
    let best = x
        .split_edges()
        .filter(|&i| x.separated(i, side))
        .max_by_key(|&i| (x.induced_cut(i, side).len(), std::cmp::Reverse(i)))
        .expect("the initial edge is separated");
    let e = &x.edges[best];
    let near = side.contains(e.u);
    let pattern_side = VertexSet::from_vertices(
        x.pattern.num_vertices(),
        (0..x.pattern.num_vertices()).filter(|&a| side.contains(e.copy[a]) == near),
    );
    let l = x.induced_cut(best, side).len();
    let uniform = lift_side(x, &pattern_side)?;
    debug_assert_eq!(Some(uniform.weight), u32::try_from(x.height).ok().map(|h| l.pow(h)));
    assert!(uniform.weight >= f.weight, "uniform bond lost weight");
    Ok((uniform, l))
}

/// The pattern cut induced by the initial edge of an `l`-uniform bond.
pub fn extract_cut(x: &XiInstance, f: &Bond, l: usize) -> Result<Vec<usize>, GenError> {
    if x.height == 0 {
        return Err(GenError::HeightZero);
    }
    let f = x.check(f)?;
    if !is_uniform(x, &f, l) {
        return Err(GenError::NotUniform(l));
    }
    Ok(x.induced_cut(0, &f.side))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::oracle::{enumerate_bonds, largest_weight_bond_bf, max_cut_bf};

    #[test]
    fn base_and_first_level() {
        let x = xi_power(&path(3), 0).unwrap();
        assert_eq!((x.graph.num_vertices(), x.graph.num_edges(), x.graph.total_weight()), (2, 1, 1));

        let x = xi_power(&path(3), 1).unwrap();
        assert_eq!(x.graph.num_vertices(), 5);
        assert_eq!(x.graph.num_edges(), 8);
        assert_eq!(x.graph.total_weight(), 2);
        assert!(!x.graph.has_edge(0, 1));
        assert_eq!(x.edges[0].descendants, vec![2, 3, 4]);
        assert!(x.edges[1].descendants.is_empty());
    }

    #[test]
    fn tower_sizes_and_guard() {
        let x = xi_power(&cycle(4), 2).unwrap();
        assert_eq!(x.graph.num_vertices(), 2 + 4 + 16);
        assert_eq!(x.edges[0].descendants.len(), 20);
        assert_eq!(x.graph.total_weight(), 16);
        assert!(matches!(xi_power(&complete(8), 4), Err(GenError::TooLarge { .. })));
        assert_eq!(xi_power(&path(1), 1), Err(GenError::PatternTooSmall));
    }

    #[test]
    fn optimum_is_max_cut_power() {
        for (pattern, h) in [(path(3), 2), (complete(3), 1), (complete(3), 2), (complete(2), 2)] {
            let x = xi_power(&pattern, h).unwrap();
            let (k, _) = max_cut_bf(&pattern).unwrap();
            assert_eq!(largest_weight_bond_bf(&x.graph).unwrap().weight, k.pow(h as u32));
        }
    }

    #[test]
    fn repair_of_a_stray_copy_vertex() {
        let x = xi_power(&path(3), 1).unwrap();
        // Copy vertex 3 (the middle of the path) alone on the far side.
        let f = verify_bond(&x.graph, &VertexSet::from_vertices(5, [0, 1, 2, 4])).unwrap();
        assert!(!is_nice(&x, &f));
        let nice = make_nice_bond(&x, &f).unwrap();
        assert!(is_nice(&x, &nice));
        assert_eq!(nice.weight, f.weight);
        assert_eq!(make_nice_bond(&x, &nice).unwrap(), nice);
    }

    #[test]
    fn lifting_cuts() {
        let x = xi_power(&path(3), 1).unwrap();
        assert_eq!(lift_cut(&x, &[0, 1]).unwrap().weight, 2);
        let x2 = xi_power(&path(3), 2).unwrap();
        let b = lift_cut(&x2, &[0, 1]).unwrap();
        assert_eq!(b.weight, 4);
        assert!(is_uniform(&x2, &b, 2));
        assert_eq!(extract_cut(&x2, &b, 2).unwrap(), vec![0, 1]);
        assert_eq!(lift_cut(&xi_power(&path(3), 0).unwrap(), &[]).unwrap().weight, 1);

        let k3 = xi_power(&complete(3), 1).unwrap();
        assert_eq!(lift_cut(&k3, &[0]), Err(GenError::NotACut));
        assert_eq!(lift_cut(&k3, &[7]), Err(GenError::UnknownEdge(7)));
        let one = lift_cut(&x2, &[1]).unwrap();
        assert_eq!(extract_cut(&x2, &one, 1).unwrap(), vec![1]);
        assert_eq!(extract_cut(&x2, &one, 2), Err(GenError::NotUniform(2)));
    }

    #[test]
    fn normalisation_over_all_bonds() {
        let x = xi_power(&path(3), 2).unwrap();
        for f in enumerate_bonds(&x.graph).unwrap() {
            let nice = make_nice_bond(&x, &f).unwrap();
            assert!(is_nice(&x, &nice));
            assert_eq!(nice.weight, f.weight);
            let (uniform, l) = make_uniform_bond(&x, &f).unwrap();
            assert!(l == 1 || l == 2 || (l == 0 && f.weight == 0));
            assert_eq!(uniform.weight, l * l);
            assert!(uniform.weight >= f.weight);
            assert_eq!(extract_cut(&x, &uniform, l).unwrap().len(), l);
        }
    }
}
