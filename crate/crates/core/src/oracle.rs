//! Exhaustive reference solvers. They enumerate vertex bipartitions as
//! bitmasks and serve as ground truth for every other solver.

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{bond_unchecked, yutsis_bound, Bond, Graph, Vertex, VertexSet};

/// Largest vertex count accepted by the exhaustive solvers.
pub const MAX_ORACLE_VERTICES: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{0} vertices exceeds the oracle limit of {MAX_ORACLE_VERTICES}")]
    TooLarge(usize),
    #[error("graph needs at least 2 vertices")]
    TooSmall,
    #[error("graph is not connected")]
    Disconnected,
    #[error("vertex {0} out of range")]
    BadVertex(Vertex),
    #[error("s and t must differ")]
    SameTerminals,
}

struct Masks {
    n: usize,
    adj: Vec<u32>,
    edges: Vec<(u32, u32, u8)>,
}

impl Masks {
    fn new(g: &Graph) -> Self {
        let mut adj = vec![0u32; g.num_vertices()];
        let edges = g
            .edges()
            .iter()
            .map(|e| {
                adj[e.u] |= 1 << e.v;
                adj[e.v] |= 1 << e.u;
                (1u32 << e.u, 1u32 << e.v, e.weight)
            })
            .collect();
        Masks { n: g.num_vertices(), adj, edges }
    }

    fn full(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    fn connected(&self, mask: u32) -> bool {
        if mask == 0 {
            return true;
        }
        let mut reach = mask & mask.wrapping_neg();
        let mut frontier = reach;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros();
                f &= f - 1;
                next |= self.adj[v as usize];
            }
            next &= mask & !reach;
            reach |= next;
            frontier = next;
        }
        reach == mask
    }

    fn is_bond(&self, mask: u32) -> bool {
        mask != 0 && mask != self.full() && self.connected(mask) && self.connected(self.full() & !mask)
    }

    /// (crossing edge count, crossing weight)
    fn cut(&self, mask: u32) -> (usize, usize) {
        let mut size = 0;
        let mut weight = 0;
        for &(a, b, w) in &self.edges {
            if (mask & a == 0) != (mask & b == 0) {
                size += 1;
                weight += w as usize;
            }
        }
        (size, weight)
    }
}

fn check(g: &Graph, min_vertices: usize, needs_connected: bool) -> Result<Masks, OracleError> {
    let n = g.num_vertices();
    if n > MAX_ORACLE_VERTICES {
        return Err(OracleError::TooLarge(n));
    }
    if n < min_vertices {
        return Err(OracleError::TooSmall);
    }
    if needs_connected && !g.is_connected() {
        return Err(OracleError::Disconnected);
    }
    Ok(Masks::new(g))
}

/// Best candidate over `range` by `(key, smallest mask)`.
fn best<K, F>(range: std::ops::Range<u64>, eval: F) -> Option<(K, u32)>
where
    K: Ord + Send + Copy,
    F: Fn(u64) -> Option<(K, u32)> + Sync + Send,
{
    range
        .into_par_iter()
        .filter_map(eval)
        .reduce_with(|a, b| if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) { b } else { a })
}

fn to_bond(g: &Graph, mask: u32) -> Bond {
    bond_unchecked(g, VertexSet::from_mask(g.num_vertices(), mask as u64))
}

/// Maximum bond; sides are enumerated with vertex 0 on the left.
pub fn largest_bond_bf(g: &Graph) -> Result<Bond, OracleError> {
    let m = check(g, 2, true)?;
    let half = 1u64 << (m.n - 1);
    let (_, mask) = best(0..half, |i| {
        let mask = ((i << 1) | 1) as u32;
        m.is_bond(mask).then(|| (m.cut(mask).0, mask))
    })
    .expect("a connected graph with two vertices has a bond");
    Ok(to_bond(g, mask))
}

/// Maximum bond with `s` on the left and `t` on the right.
pub fn largest_st_bond_bf(g: &Graph, s: Vertex, t: Vertex) -> Result<Bond, OracleError> {
    let m = check(g, 2, true)?;
    for x in [s, t] {
        if x >= m.n {
            return Err(OracleError::BadVertex(x));
        }
    }
    if s == t {
        return Err(OracleError::SameTerminals);
    }
    let (_, mask) = best(0..1u64 << m.n, |i| {
        let mask = i as u32;
        (mask >> s & 1 == 1 && mask >> t & 1 == 0 && m.is_bond(mask)).then(|| (m.cut(mask).0, mask))
    })
    .expect("s and t are separated by some bond of a connected graph");
    Ok(to_bond(g, mask))
}

/// Maximum bond whose side has exactly `l` vertices, if any exists.
pub fn largest_bond_side_size_bf(g: &Graph, l: usize) -> Result<Option<Bond>, OracleError> {
    let m = check(g, 2, true)?;
    Ok(best(0..1u64 << m.n, |i| {
        let mask = i as u32;
        (mask.count_ones() as usize == l && m.is_bond(mask)).then(|| (m.cut(mask).0, mask))
    })
    .map(|(_, mask)| to_bond(g, mask)))
}

/// Bond of maximum total weight; ties prefer more crossing edges.
pub fn largest_weight_bond_bf(g: &Graph) -> Result<Bond, OracleError> {
    let m = check(g, 2, true)?;
    let half = 1u64 << (m.n - 1);
    let (_, mask) = best(0..half, |i| {
        let mask = ((i << 1) | 1) as u32;
        m.is_bond(mask).then(|| {
            let (size, weight) = m.cut(mask);
            ((weight, size), mask)
        })
    })
    .expect("a connected graph with two vertices has a bond");
    Ok(to_bond(g, mask))
}

/// Maximum cut, without connectivity constraints. Returns `(size, side)`.
pub fn max_cut_bf(g: &Graph) -> Result<(usize, VertexSet), OracleError> {
    let m = check(g, 1, false)?;
    let half = 1u64 << (m.n - 1);
    let (size, mask) = best(0..half, |i| {
        let mask = ((i << 1) | 1) as u32;
        Some((m.cut(mask).0, mask))
    })
    .expect("nonempty range");
    Ok((size, VertexSet::from_mask(m.n, mask as u64)))
}

/// Every bond of `g`, each once with vertex 0 on the left, ordered by side
/// bitmask.
pub fn enumerate_bonds(g: &Graph) -> Result<Vec<Bond>, OracleError> {
    let m = check(g, 2, true)?;
    let half = 1u64 << (m.n - 1);
    let masks: Vec<u32> = (0..half)
        .into_par_iter()
        .map(|i| ((i << 1) | 1) as u32)
        .filter(|&mask| m.is_bond(mask))
        .collect();
    Ok(masks.into_iter().map(|mask| to_bond(g, mask)).collect())
}

/// Whether the largest bond meets the `|E| - |V| + 2` bound.
pub fn is_yutsis_bf(g: &Graph) -> Result<bool, OracleError> {
    Ok(largest_bond_bf(g)?.size == yutsis_bound(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::graph::verify_bond;

    #[test]
    fn largest_bond_anchors() {
        for n in 3..=10 {
            assert_eq!(largest_bond_bf(&cycle(n)).unwrap().size, 2, "C_{n}");
        }
        assert_eq!(largest_bond_bf(&star(3)).unwrap().size, 1);
        assert_eq!(largest_bond_bf(&complete(4)).unwrap().size, 4);
    }

    #[test]
    fn ties_pick_smallest_side_mask() {
        // Sides {0}, {0,1}, {0,3}, ... of C_4 all have size 2; {0} is smallest.
        let b = largest_bond_bf(&cycle(4)).unwrap();
        assert_eq!(b.side_vertices(), vec![0]);
    }

    #[test]
    fn st_bonds() {
        assert_eq!(largest_st_bond_bf(&cycle(4), 0, 2).unwrap().size, 2);
        assert_eq!(largest_st_bond_bf(&path(3), 0, 2).unwrap().size, 1);
        // Oracle-frozen: the bowtie's only 0|3 separations cut one triangle.
        assert_eq!(largest_st_bond_bf(&bowtie(), 0, 3).unwrap().size, 2);
        assert_eq!(largest_st_bond_bf(&path(3), 1, 1), Err(OracleError::SameTerminals));
    }

    #[test]
    fn side_size_bonds() {
        assert_eq!(largest_bond_side_size_bf(&complete(4), 1).unwrap().unwrap().size, 3);
        assert_eq!(largest_bond_side_size_bf(&complete(4), 2).unwrap().unwrap().size, 4);
        let b = largest_bond_side_size_bf(&path(3), 1).unwrap().unwrap();
        assert_eq!(b.size, 1);
        assert_eq!(b.side_vertices(), vec![0]);
        assert!(largest_bond_side_size_bf(&path(3), 3).unwrap().is_none());
    }

    #[test]
    fn weighted_bonds() {
        let mut g = Graph::with_flags(4, true, false);
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
            g.add_weighted_edge(u, v, 0).unwrap();
        }
        assert_eq!(largest_weight_bond_bf(&g).unwrap().weight, 0);
    }

    #[test]
    fn max_cuts() {
        assert_eq!(max_cut_bf(&complete(4)).unwrap().0, 4);
        assert_eq!(max_cut_bf(&cycle(5)).unwrap().0, 4);
        assert_eq!(max_cut_bf(&path(2)).unwrap().0, 1);
        assert_eq!(max_cut_bf(&Graph::new(1)).unwrap().0, 0);
    }

    #[test]
    fn bond_enumeration() {
        assert_eq!(enumerate_bonds(&path(2)).unwrap().len(), 1);
        assert_eq!(enumerate_bonds(&path(3)).unwrap().len(), 2);
        // Frozen from the oracle: C_4 has C(4,2) = 6 bonds (pairs of edges).
        assert_eq!(enumerate_bonds(&cycle(4)).unwrap().len(), 6);
        for b in enumerate_bonds(&complete(5)).unwrap() {
            assert!(b.side.contains(0));
            assert_eq!(verify_bond(&complete(5), &b.side).unwrap(), b);
        }
    }

    #[test]
    fn yutsis() {
        assert!(is_yutsis_bf(&complete(4)).unwrap());
        assert!(is_yutsis_bf(&cycle(5)).unwrap());
        // Frozen from the oracle: every edge of a star is a bridge and the
        // bound 3 - 4 + 2 = 1 is attained.
        assert!(is_yutsis_bf(&star(3)).unwrap());
        assert!(!is_yutsis_bf(&complete(5)).unwrap());
    }

    #[test]
    fn guards() {
        assert_eq!(largest_bond_bf(&path(25)).unwrap_err(), OracleError::TooLarge(25));
        assert_eq!(largest_bond_bf(&Graph::new(1)).unwrap_err(), OracleError::TooSmall);
        let split = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(largest_bond_bf(&split).unwrap_err(), OracleError::Disconnected);
    }
}
