use std::collections::VecDeque;

use super::blocks::is_biconnected;
use super::{Graph, GraphError, Vertex};

/// Unit-capacity residual network over split vertices.
struct FlowNet {
    head: Vec<usize>,
    cap: Vec<i32>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet { head: Vec::new(), cap: Vec::new(), adj: vec![Vec::new(); nodes] }
    }

    fn arc(&mut self, from: usize, to: usize, cap: i32) {
        self.adj[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.adj[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    fn augment(&mut self, source: usize, sink: usize) -> bool {
        let mut via = vec![usize::MAX; self.adj.len()];
        let mut seen = vec![false; self.adj.len()];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for &a in &self.adj[x] {
                let y = self.head[a];
                if self.cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = a;
                    queue.push_back(y);
                }
            }
        }
        if !seen[sink] {
            return false;
        }
        let mut x = sink;
        while x != source {
            let a = via[x];
            self.cap[a] -= 1;
            self.cap[a ^ 1] += 1;
            x = self.head[a ^ 1];
        }
        true
    }
}

/// Two vertex-disjoint `s`–`v` paths, each listed from `s` to `v`.
fn two_disjoint_paths(g: &Graph, s: Vertex, v: Vertex) -> Option<[Vec<Vertex>; 2]> {
    let n = g.num_vertices();
    let inn = |x: Vertex| 2 * x;
    let out = |x: Vertex| 2 * x + 1;
    let mut net = FlowNet::new(2 * n);
    for x in 0..n {
        let cap = if x == s || x == v { 2 } else { 1 };
        net.arc(inn(x), out(x), cap);
    }
    // Arcs created in ascending neighbor order so BFS is deterministic.
    let adj = g.simple_adjacency();
    let mut forward_arcs = Vec::new();
    for a in 0..n {
        for &b in &adj[a] {
            forward_arcs.push((net.head.len(), a, b));
            net.arc(out(a), inn(b), 1);
        }
    }
    for _ in 0..2 {
        if !net.augment(out(s), inn(v)) {
            return None;
        }
    }
    // Net flow per directed vertex pair.
    let mut flow_to: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for &(arc, a, b) in &forward_arcs {
        if net.cap[arc] == 0 {
            flow_to[a].push(b);
        }
    }
    // Cancel opposite unit flows.
    for a in 0..n {
        let targets = flow_to[a].clone();
        for b in targets {
            if let Some(pos) = flow_to[b].iter().position(|&x| x == a) {
                flow_to[b].remove(pos);
                if let Some(p2) = flow_to[a].iter().position(|&x| x == b) {
                    flow_to[a].remove(p2);
                }
            }
        }
    }
    let mut paths: [Vec<Vertex>; 2] = [vec![s], vec![s]];
    for path in paths.iter_mut() {
        let mut x = s;
        while x != v {
            let y = flow_to[x].pop()?;
            path.push(y);
            x = y;
        }
    }
    Some(paths)
}

/// An `s`–`v` path and a `t`–`v` path sharing only `v`, in a 2-connected
/// graph. The first path runs from `s` to `v`, the second from `t` to `v`.
pub fn internally_disjoint_paths(
    g: &Graph,
    s: Vertex,
    t: Vertex,
    v: Vertex,
) -> Result<(Vec<Vertex>, Vec<Vertex>), GraphError> {
    let n = g.num_vertices();
    for x in [s, t, v] {
        if x >= n {
            return Err(GraphError::VertexOutOfRange { vertex: x, n });
        }
    }
    if s == t || s == v || t == v {
        return Err(GraphError::RepeatedVertex);
    }
    if !is_biconnected(g) {
        return Err(GraphError::NotBiconnected);
    }
    let [mut first, mut second] = two_disjoint_paths(g, s, v).ok_or(GraphError::NotBiconnected)?;
    if second.len() < first.len() {
        std::mem::swap(&mut first, &mut second);
    }

    // A t–v path avoiding s.
    let mut within = g.vertex_set();
    within.remove(s);
    let mut parent = vec![usize::MAX; n];
    parent[t] = t;
    let mut queue = VecDeque::from([t]);
    let adj = g.simple_adjacency();
    while let Some(x) = queue.pop_front() {
        if x == v {
            break;
        }
        for &y in &adj[x] {
            if within.contains(y) && parent[y] == usize::MAX {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    let mut t_path = vec![v];
    while *t_path.last().unwrap() != t {
        let x = parent[*t_path.last().unwrap()];
        if x == usize::MAX {
            return Err(GraphError::NotBiconnected);
        }
        t_path.push(x);
    }
    t_path.reverse();

    // Splice at the first vertex of the t-path lying on either s-path.
    let on_first = |x: Vertex| first.iter().position(|&y| y == x);
    let on_second = |x: Vertex| second.iter().position(|&y| y == x);
    for (i, &x) in t_path.iter().enumerate() {
        if x == v {
            return Ok((first, t_path));
        }
        if let Some(pos) = on_second(x) {
            let mut spliced = t_path[..i].to_vec();
            spliced.extend_from_slice(&second[pos..]);
            return Ok((first, spliced));
        }
        if let Some(pos) = on_first(x) {
            let mut spliced = t_path[..i].to_vec();
            spliced.extend_from_slice(&first[pos..]);
            return Ok((second, spliced));
        }
    }
    unreachable!("the t-path ends at v")
}

#[cfg(test)]
mod tests {
    use super::super::named::*;
    use super::*;

    fn check(g: &Graph, s: Vertex, t: Vertex, v: Vertex) -> (Vec<Vertex>, Vec<Vertex>) {
        let (ps, pt) = internally_disjoint_paths(g, s, t, v).unwrap();
        assert_eq!((ps[0], *ps.last().unwrap()), (s, v));
        assert_eq!((pt[0], *pt.last().unwrap()), (t, v));
        for p in [&ps, &pt] {
            for w in p.windows(2) {
                assert!(g.has_edge(w[0], w[1]));
            }
            let mut sorted = p.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), p.len(), "path is not simple");
        }
        let shared: Vec<_> = ps.iter().filter(|x| pt.contains(x)).collect();
        assert_eq!(shared, vec![&v]);
        (ps, pt)
    }

    #[test]
    fn neighbors_of_v() {
        assert_eq!(check(&cycle(4), 0, 2, 1), (vec![0, 1], vec![2, 1]));
        assert_eq!(check(&complete(4), 0, 1, 2), (vec![0, 2], vec![1, 2]));
    }

    #[test]
    fn five_cycle() {
        assert_eq!(check(&cycle(5), 0, 2, 4), (vec![0, 4], vec![2, 3, 4]));
    }

    #[test]
    fn all_triples_on_small_biconnected_graphs() {
        let graphs = [
            cycle(6),
            complete(5),
            complete_bipartite(2, 4),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3), (1, 4)]),
        ];
        for g in &graphs {
            let n = g.num_vertices();
            for s in 0..n {
                for t in 0..n {
                    for v in 0..n {
                        if s != t && s != v && t != v {
                            check(g, s, t, v);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_non_biconnected() {
        assert_eq!(internally_disjoint_paths(&path(4), 0, 3, 1), Err(GraphError::NotBiconnected));
        assert_eq!(internally_disjoint_paths(&cycle(4), 0, 0, 1), Err(GraphError::RepeatedVertex));
    }
}
