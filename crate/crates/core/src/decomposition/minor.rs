use std::collections::VecDeque;

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{internally_disjoint_paths, verify_bond, Bond, BondRejection, Graph, GraphError, Vertex, VertexSet};

/// Branch sets of a `K_{2,p}` minor: the two poles and the legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    pub side_a: VertexSet,
    pub side_b: VertexSet,
    pub legs: Vec<VertexSet>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MinorError {
    #[error("branch set {0} is empty")]
    EmptyBranchSet(usize),
    #[error("branch sets overlap")]
    Overlap,
    #[error("branch set {0} does not induce a connected subgraph")]
    NotConnected(usize),
    #[error("leg {0} is not adjacent to both poles")]
    LegNotAttached(usize),
    #[error("vertex sets have the wrong universe size")]
    Universe,
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("constructed side is not a bond: {0}")]
    Construction(BondRejection),
    #[error("the model has {legs} legs, at least {needed} are required")]
    TooFewLegs { legs: usize, needed: usize },
}

impl MinorModel {
    /// Branch sets in the order poles first, then legs.
    pub fn branch_sets(&self) -> impl Iterator<Item = &VertexSet> {
        [&self.side_a, &self.side_b].into_iter().chain(self.legs.iter())
    }

    pub fn covered(&self) -> VertexSet {
        let mut all = self.side_a.clone();
        for set in self.branch_sets().skip(1) {
            all.union_with(set);
        }
        all
    }

    /// Checks disjointness, connectivity and leg attachment.
    pub fn validate(&self, g: &Graph) -> Result<(), MinorError> {
        let n = g.num_vertices();
        let mut seen = VertexSet::new(n);
        for (i, set) in self.branch_sets().enumerate() {
            if set.universe() != n {
                return Err(MinorError::Universe);
            }
            if set.is_empty() {
                return Err(MinorError::EmptyBranchSet(i));
            }
            if !set.is_disjoint(&seen) {
                return Err(MinorError::Overlap);
            }
            seen.union_with(set);
            if !g.induces_connected(set) {
                return Err(MinorError::NotConnected(i));
            }
        }
        for (i, leg) in self.legs.iter().enumerate() {
            if !touches(g, leg, &self.side_a) || !touches(g, leg, &self.side_b) {
                return Err(MinorError::LegNotAttached(i));
            }
        }
        Ok(())
    }
}

fn touches(g: &Graph, a: &VertexSet, b: &VertexSet) -> bool {
    a.iter().any(|x| g.neighbors(x).any(|y| b.contains(y)))
}

/// Components of `G - (A ∪ B)` adjacent to both `A` and `B`.
fn legs_between(g: &Graph, a: &VertexSet, b: &VertexSet) -> Vec<VertexSet> {
    let mut rest = a.clone();
    rest.union_with(b);
    let rest = rest.complement();
    let mut assigned = VertexSet::new(g.num_vertices());
    let mut legs = Vec::new();
    for v in rest.iter() {
        if assigned.contains(v) {
            continue;
        }
        let comp = g.reach_within(v, &rest);
        assigned.union_with(&comp);
        if touches(g, &comp, a) && touches(g, &comp, b) {
            legs.push(comp);
        }
    }
    legs
}

/// One greedy pass: add each neighbor of `grow` (ascending) if doing so
/// increases the number of legs.
fn grow_greedily(g: &Graph, grow: &mut VertexSet, other: &VertexSet, legs: &mut usize) {
    let mut candidates: Vec<Vertex> = grow
        .iter()
        .flat_map(|x| g.neighbors(x))
        .filter(|&y| !grow.contains(y) && !other.contains(y))
        .collect();
    candidates.sort_unstable();
    candidates.dedup();
    for y in candidates {
        if grow.contains(y) || !grow.iter().any(|x| g.has_edge(x, y)) {
            continue;
        }
        grow.insert(y);
        let count = legs_between(g, grow, other).len();
        if count > *legs {
            *legs = count;
        } else {
            grow.remove(y);
        }
    }
}

fn try_seed(g: &Graph, a: Vertex, b: Vertex, k: usize) -> Option<MinorModel> {
    let n = g.num_vertices();
    let mut side_a = VertexSet::from_vertices(n, [a]);
    let mut side_b = VertexSet::from_vertices(n, [b]);
    let mut count = legs_between(g, &side_a, &side_b).len();
    if count < k {
        grow_greedily(g, &mut side_a, &side_b, &mut count);
    }
    if count < k {
        grow_greedily(g, &mut side_b, &side_a, &mut count);
    }
    if count < k {
        return None;
    }
    let legs = legs_between(g, &side_a, &side_b);
    Some(MinorModel { side_a, side_b, legs })
}

/// Searches for a `K_{2,k}` minor. Seeds are vertex pairs `(a, b)` with
/// `a < b`, non-adjacent pairs first; each seed grows its poles by one
/// greedy pass. A `None` answer does not rule out such a minor.
pub fn find_k2k_minor(g: &Graph, k: usize) -> Option<MinorModel> {
    let n = g.num_vertices();
    if n < 2 {
        return None;
    }
    let mut seeds: Vec<(Vertex, Vertex)> = Vec::new();
    for adjacent in [false, true] {
        for a in 0..n {
            for b in a + 1..n {
                if g.has_edge(a, b) == adjacent {
                    seeds.push((a, b));
                }
            }
        }
    }
    let model = seeds.par_iter().find_map_first(|&(a, b)| try_seed(g, a, b, k))?;
    debug_assert_eq!(model.validate(g), Ok(()));
    Some(model)
}

/// Extends the branch sets to cover every vertex: a BFS from all covered
/// vertices (ascending) attaches each new vertex to its parent's branch set.
pub fn absorb_uncovered(g: &Graph, m: &MinorModel) -> Result<MinorModel, MinorError> {
    m.validate(g)?;
    let n = g.num_vertices();
    let mut owner = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for (i, set) in m.branch_sets().enumerate() {
        for v in set.iter() {
            owner[v] = i;
        }
    }
    queue.extend((0..n).filter(|&v| owner[v] != usize::MAX));
    let adj = g.simple_adjacency();
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if owner[y] == usize::MAX {
                owner[y] = owner[x];
                queue.push_back(y);
            }
        }
    }
    if owner.contains(&usize::MAX) {
        return Err(GraphError::Disconnected.into());
    }
    let mut sets = vec![VertexSet::new(n); 2 + m.legs.len()];
    for (v, &o) in owner.iter().enumerate() {
        sets[o].insert(v);
    }
    let legs = sets.split_off(2);
    let side_b = sets.pop().expect("two poles");
    let side_a = sets.pop().expect("two poles");
    Ok(MinorModel { side_a, side_b, legs })
}

/// The bond `∂(A')` where `A'` is the first pole after absorbing uncovered
/// vertices. Every leg contributes a crossing edge.
pub fn bond_from_minor(g: &Graph, m: &MinorModel) -> Result<Bond, MinorError> {
    let full = absorb_uncovered(g, m)?;
    verify_bond(g, &full.side_a).map_err(MinorError::Construction)
}

/// An `s`-`t` bond of size at least `legs / 2` in a 2-connected graph.
pub fn st_bond_from_minor(g: &Graph, s: Vertex, t: Vertex, m: &MinorModel) -> Result<Bond, MinorError> {
    let n = g.num_vertices();
    for x in [s, t] {
        if x >= n {
            return Err(GraphError::VertexOutOfRange { vertex: x, n }.into());
        }
    }
    if s == t {
        return Err(GraphError::RepeatedVertex.into());
    }
    if m.legs.len() < 2 {
        return Err(MinorError::TooFewLegs { legs: m.legs.len(), needed: 2 });
    }
    let m = absorb_uncovered(g, m)?;
    let owner = |v: Vertex| m.branch_sets().position(|set| set.contains(v)).expect("covering model");
    let (os, ot) = (owner(s), owner(t));
    let p = m.legs.len();

    let side = if os != ot {
        // Orient the poles so that s is not in the far pole and t not in the
        // near one, then send every leg except one containing t (or one
        // avoiding s) to the near side.
        let far = if os == 1 || ot == 0 { 0 } else { 1 };
        let far_leg = if ot >= 2 { ot } else { (2..2 + p).find(|&i| i != os).expect("two legs") };
        let mut side = VertexSet::new(n);
        for (i, set) in m.branch_sets().enumerate() {
            if i != far && i != far_leg {
                side.union_with(set);
            }
        }
        side
    } else {
        same_set_side(g, s, t, &m, os)?
    };
    let bond = verify_bond(g, &side).map_err(MinorError::Construction)?;
    debug_assert!(bond.separates(s, t));
    Ok(bond)
}

/// The case where `s` and `t` share a branch set: split `U = pole ∪ leg`
/// along a spanning tree rooted at `s` using two internally disjoint paths
/// to a vertex outside `U`.
fn same_set_side(g: &Graph, s: Vertex, t: Vertex, m: &MinorModel, shared: usize) -> Result<VertexSet, MinorError> {
    let n = g.num_vertices();
    let p = m.legs.len();
    let mut u_set = match shared {
        0 | 1 => m.branch_sets().nth(shared).expect("pole").clone(),
        _ => m.side_a.clone(),
    };
    let leg = if shared >= 2 { shared - 2 } else { p - 1 };
    u_set.union_with(&m.legs[leg]);
    let q_set = u_set.complement();
    let v = q_set.iter().next().expect("other branch sets are nonempty");

    let (ps, pt) = internally_disjoint_paths(g, s, t, v)?;
    let prefix = |path: &[Vertex]| -> Vec<Vertex> { path.iter().copied().take_while(|&x| u_set.contains(x)).collect() };
    let (ps, pt) = (prefix(&ps), prefix(&pt));

    // 0 = unassigned, 1 = U_s, 2 = U_t.
    let mut part = vec![0u8; n];
    for &x in &ps {
        part[x] = 1;
    }
    for &x in &pt {
        part[x] = 2;
    }
    // BFS tree of G[U] rooted at s; a vertex inherits its parent's part
    // unless it lies on one of the prefixes.
    let adj = g.simple_adjacency();
    let mut seen = VertexSet::new(n);
    seen.insert(s);
    let mut queue = VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if u_set.contains(y) && !seen.contains(y) {
                seen.insert(y);
                if part[y] == 0 {
                    part[y] = part[x];
                }
                queue.push_back(y);
            }
        }
    }
    let u_s = VertexSet::from_vertices(n, (0..n).filter(|&x| part[x] == 1));
    let u_t = VertexSet::from_vertices(n, (0..n).filter(|&x| part[x] == 2));
    let edges_to_q = |side: &VertexSet| {
        g.edges().iter().filter(|e| (side.contains(e.u) && q_set.contains(e.v)) || (side.contains(e.v) && q_set.contains(e.u))).count()
    };
    let need = p / 2;
    if edges_to_q(&u_s) >= need || edges_to_q(&u_t) < need {
        Ok(u_s)
    } else {
        let mut side = u_s;
        side.union_with(&q_set);
        Ok(side)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::oracle::largest_st_bond_bf;

    fn set(n: usize, vs: &[Vertex]) -> VertexSet {
        VertexSet::from_vertices(n, vs.iter().copied())
    }

    #[test]
    fn k23_is_its_own_model() {
        let g = complete_bipartite(2, 3);
        let m = find_k2k_minor(&g, 3).unwrap();
        assert_eq!(m.side_a, set(5, &[0]));
        assert_eq!(m.side_b, set(5, &[1]));
        assert_eq!(m.legs, vec![set(5, &[2]), set(5, &[3]), set(5, &[4])]);
        // Frozen from the oracle: the largest bond of K_{2,3} has size 3.
        assert_eq!(bond_from_minor(&g, &m).unwrap().size, 3);
    }

    #[test]
    fn cycle_models() {
        let m = find_k2k_minor(&cycle(4), 2).unwrap();
        assert_eq!((m.side_a.to_vec(), m.side_b.to_vec()), (vec![0], vec![2]));
        assert_eq!(m.legs, vec![set(4, &[1]), set(4, &[3])]);
        assert_eq!(bond_from_minor(&cycle(4), &m).unwrap().size, 2);

        let m = MinorModel { side_a: set(6, &[0]), side_b: set(6, &[3]), legs: vec![set(6, &[1, 2]), set(6, &[4, 5])] };
        assert_eq!(bond_from_minor(&cycle(6), &m).unwrap().size, 2);
        assert!(find_k2k_minor(&cycle(6), 3).is_none());
    }

    #[test]
    fn trees_have_no_k22() {
        let tree = Graph::from_edges(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (3, 5)]);
        assert!(find_k2k_minor(&tree, 2).is_none());
    }

    #[test]
    fn invalid_models_rejected() {
        let g = cycle(4);
        let overlap = MinorModel { side_a: set(4, &[0]), side_b: set(4, &[0]), legs: vec![] };
        assert_eq!(overlap.validate(&g), Err(MinorError::Overlap));
        let split = MinorModel { side_a: set(4, &[0, 2]), side_b: set(4, &[1]), legs: vec![] };
        assert_eq!(split.validate(&g), Err(MinorError::NotConnected(0)));
        let loose = MinorModel { side_a: set(4, &[0]), side_b: set(4, &[1]), legs: vec![set(4, &[3])] };
        assert_eq!(loose.validate(&g), Err(MinorError::LegNotAttached(0)));
    }

    #[test]
    fn absorption_covers_everything() {
        let g = Graph::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (2, 6)]);
        let m = MinorModel { side_a: set(7, &[0]), side_b: set(7, &[2]), legs: vec![set(7, &[1]), set(7, &[3])] };
        let full = absorb_uncovered(&g, &m).unwrap();
        assert_eq!(full.covered().len(), 7);
        assert_eq!(full.validate(&g), Ok(()));
        assert_eq!(full.side_a, set(7, &[0, 4, 5]));
        assert_eq!(full.side_b, set(7, &[2, 6]));
    }

    #[test]
    fn st_bonds_from_models() {
        let g = cycle(4);
        let m = find_k2k_minor(&g, 2).unwrap();
        let b = st_bond_from_minor(&g, 0, 2, &m).unwrap();
        assert!(b.separates(0, 2));
        assert_eq!(b.size, 2);

        let g = complete_bipartite(2, 4);
        let m = find_k2k_minor(&g, 4).unwrap();
        for (s, t) in [(0, 1), (2, 3), (1, 5), (4, 0)] {
            let b = st_bond_from_minor(&g, s, t, &m).unwrap();
            assert!(b.separates(s, t));
            assert!(b.size >= 2);
            assert!(b.size <= largest_st_bond_bf(&g, s, t).unwrap().size);
        }
    }

    #[test]
    fn same_set_case_exhaustively() {
        let graphs = [complete(5), complete_bipartite(2, 4), cycle(6), complete_bipartite(3, 3)];
        for g in &graphs {
            let n = g.num_vertices();
            for legs in [2, 4] {
                let Some(m) = find_k2k_minor(g, legs) else { continue };
                let m = MinorModel { legs: m.legs[..legs].to_vec(), ..m };
                for s in 0..n {
                    for t in 0..n {
                        if s != t {
                            let b = st_bond_from_minor(g, s, t, &m).unwrap();
                            assert!(b.separates(s, t));
                            assert!(b.size >= legs / 2, "{s} {t}");
                        }
                    }
                }
            }
        }
    }
}
