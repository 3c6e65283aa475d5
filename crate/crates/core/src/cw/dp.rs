//! Largest bond over a clique-width expression.
//!
//! An entry records, for one side assignment of the vertices built so far,
//! how many side-1 vertices carry each label, and for each side the
//! multiset of component types (the label set of a component) with
//! multiplicities saturating at 2. The stored value is the largest number of
//! crossing edges realizing that shape.

use std::collections::HashMap;

use thiserror::Error;

use super::expr::{eval_w_expression, make_irredundant, with_private_labels, WExpression, WNode};
use crate::graph::{verify_bond, Bond, Graph, GraphError, Vertex, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CwError {
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("graph needs at least 2 vertices")]
    TooSmall,
    #[error("expressions with more than {max} labels are not supported", max = MAX_LABELS)]
    TooWide,
}

/// Labels beyond this make type masks overflow.
pub const MAX_LABELS: u32 = 30;

type Types = Vec<(u32, u8)>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Shape {
    /// Side-1 vertex count per label, index `label - 1`.
    counts: Vec<u32>,
    side1: Types,
    side2: Types,
}

fn add_type(types: &mut Types, mask: u32, mult: u8) {
    match types.binary_search_by_key(&mask, |&(m, _)| m) {
        Ok(i) => types[i].1 = (types[i].1 + mult).min(2),
        Err(i) => types.insert(i, (mask, mult.min(2))),
    }
}

fn merge_types(a: &Types, b: &Types) -> Types {
    let mut out = a.clone();
    for &(m, k) in b {
        add_type(&mut out, m, k);
    }
    out
}

fn relabel_types(types: &Types, from: u32, to: u32) -> Types {
    let (fb, tb) = (1u32 << from, 1u32 << to);
    let mut out = Types::new();
    for &(m, k) in types {
        let m = if m & fb != 0 { (m & !fb) | tb } else { m };
        add_type(&mut out, m, k);
    }
    out
}

/// All components touching label `i` or `j` become one.
fn join_types(types: &Types, i: u32, j: u32) -> Types {
    let hit = 1u32 << i | 1u32 << j;
    let mut merged = 0u32;
    let mut out = Types::new();
    for &(m, k) in types {
        if m & hit != 0 {
            merged |= m;
        } else {
            out.push((m, k));
        }
    }
    if merged != 0 {
        add_type(&mut out, merged, 1);
    }
    out
}

#[derive(Clone, Copy)]
enum Back {
    None,
    One(u32),
    Two(u32, u32),
}

struct Table {
    shapes: Vec<Shape>,
    values: Vec<u32>,
    back: Vec<Back>,
}

struct Builder {
    table: Table,
    index: HashMap<Shape, u32>,
}

impl Builder {
    fn new() -> Self {
        Builder { table: Table { shapes: Vec::new(), values: Vec::new(), back: Vec::new() }, index: HashMap::new() }
    }

    fn offer(&mut self, shape: Shape, value: u32, back: Back) {
        match self.index.get(&shape) {
            Some(&i) => {
                let i = i as usize;
                if value > self.table.values[i] {
                    self.table.values[i] = value;
                    self.table.back[i] = back;
                }
            }
            None => {
                self.index.insert(shape.clone(), self.table.shapes.len() as u32);
                self.table.shapes.push(shape);
                self.table.values.push(value);
                self.table.back.push(back);
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CwStats {
    pub nodes: usize,
    pub max_entries: usize,
    pub total_entries: usize,
}

/// A bond of the evaluated graph together with that graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwSolution {
    pub graph: Graph,
    pub bond: Bond,
    pub stats: CwStats,
}

fn run(e: &WExpression, forced: &dyn Fn(Vertex) -> Option<u8>) -> Result<CwSolution, CwError> {
    let e = make_irredundant(e);
    let w = e.width();
    if w > MAX_LABELS {
        return Err(CwError::TooWide);
    }
    let graph = eval_w_expression(&e).graph;
    if graph.num_vertices() < 2 {
        return Err(CwError::TooSmall);
    }
    if !graph.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    let w = w as usize;
    let order = e.reachable(e.root);
    let mut totals: Vec<Vec<u32>> = vec![Vec::new(); e.nodes.len()];
    let mut tables: Vec<Option<Table>> = (0..e.nodes.len()).map(|_| None).collect();
    let mut stats = CwStats { nodes: order.len(), ..CwStats::default() };
    for &x in &order {
        let mut out = Builder::new();
        let total = match e.nodes[x] {
            WNode::Create { label, vertex } => {
                let l = label as usize - 1;
                let mut t = vec![0; w];
                t[l] = 1;
                let sides: &[u8] = match forced(vertex) {
                    Some(0) => &[0],
                    Some(_) => &[1],
                    None => &[0, 1],
                };
                for &sd in sides {
                    let mut counts = vec![0; w];
                    let mut shape = Shape { counts: Vec::new(), side1: Types::new(), side2: Types::new() };
                    if sd == 0 {
                        counts[l] = 1;
                        shape.side1.push((1 << label, 1));
                    } else {
                        shape.side2.push((1 << label, 1));
                    }
                    shape.counts = counts;
                    out.offer(shape, 0, Back::None);
                }
                t
            }
            WNode::Union(a, b) => {
                let (ta, tb) = (tables[a].as_ref().expect("child done"), tables[b].as_ref().expect("child done"));
                for (i, sa) in ta.shapes.iter().enumerate() {
                    for (j, sb) in tb.shapes.iter().enumerate() {
                        let shape = Shape {
                            counts: sa.counts.iter().zip(&sb.counts).map(|(p, q)| p + q).collect(),
                            side1: merge_types(&sa.side1, &sb.side1),
                            side2: merge_types(&sa.side2, &sb.side2),
                        };
                        out.offer(shape, ta.values[i] + tb.values[j], Back::Two(i as u32, j as u32));
                    }
                }
                totals[a].iter().zip(&totals[b]).map(|(p, q)| p + q).collect()
            }
            WNode::Join { i, j, child } => {
                let t = totals[child].clone();
                let (li, lj) = (i as usize - 1, j as usize - 1);
                let tc = tables[child].as_ref().expect("child done");
                for (k, sh) in tc.shapes.iter().enumerate() {
                    let (si, sj) = (sh.counts[li], sh.counts[lj]);
                    let gain = si * (t[lj] - sj) + sj * (t[li] - si);
                    let mut shape = sh.clone();
                    if si > 0 && sj > 0 {
                        shape.side1 = join_types(&sh.side1, i, j);
                    }
                    if t[li] > si && t[lj] > sj {
                        shape.side2 = join_types(&sh.side2, i, j);
                    }
                    out.offer(shape, tc.values[k] + gain, Back::One(k as u32));
                }
                t
            }
            WNode::Relabel { from, to, child } => {
                let (lf, lt) = (from as usize - 1, to as usize - 1);
                let mut t = totals[child].clone();
                t[lt] += t[lf];
                t[lf] = 0;
                let tc = tables[child].as_ref().expect("child done");
                for (k, sh) in tc.shapes.iter().enumerate() {
                    let mut counts = sh.counts.clone();
                    counts[lt] += counts[lf];
                    counts[lf] = 0;
                    let shape = Shape {
                        counts,
                        side1: relabel_types(&sh.side1, from, to),
                        side2: relabel_types(&sh.side2, from, to),
                    };
                    out.offer(shape, tc.values[k], Back::One(k as u32));
                }
                t
            }
        };
        totals[x] = total;
        let entries = out.table.shapes.len();
        stats.max_entries = stats.max_entries.max(entries);
        stats.total_entries += entries;
        tables[x] = Some(out.table);
    }

    let root = tables[e.root].as_ref().expect("root done");
    let best = (0..root.shapes.len())
        .filter(|&k| {
            let sh = &root.shapes[k];
            sh.side1.len() == 1 && sh.side1[0].1 == 1 && sh.side2.len() == 1 && sh.side2[0].1 == 1
        })
        .max_by_key(|&k| (root.values[k], std::cmp::Reverse(k)))
        .expect("a connected graph on two or more vertices has a bond");

    // Walk back to the create nodes.
    let mut side = VertexSet::new(graph.num_vertices());
    let mut stack = vec![(e.root, best)];
    while let Some((x, k)) = stack.pop() {
        let table = tables[x].as_ref().expect("table");
        match (e.nodes[x], table.back[k]) {
            (WNode::Create { label, vertex }, _) => {
                if table.shapes[k].counts[label as usize - 1] == 1 {
                    side.insert(vertex);
                }
            }
            (WNode::Union(a, b), Back::Two(i, j)) => {
                stack.push((a, i as usize));
                stack.push((b, j as usize));
            }
            (WNode::Join { child, .. } | WNode::Relabel { child, .. }, Back::One(i)) => stack.push((child, i as usize)),
            _ => unreachable!("back-pointer matches node kind"),
        }
    }
    let bond = verify_bond(&graph, &side).expect("reconstructed side is a bond");
    debug_assert_eq!(bond.size, root.values[best] as usize);
    Ok(CwSolution { graph, bond, stats })
}

/// Maximum bond of the graph built by `e`.
pub fn largest_bond_cw(e: &WExpression) -> Result<CwSolution, CwError> {
    run(e, &|_| None)
}

/// Maximum bond with `s` on the returned side and `t` opposite. The
/// expression is rewritten so that `s` and `t` carry private labels.
pub fn largest_st_bond_cw(e: &WExpression, s: Vertex, t: Vertex) -> Result<CwSolution, CwError> {
    let n = e.num_vertices();
    for x in [s, t] {
        if x >= n {
            return Err(GraphError::VertexOutOfRange { vertex: x, n }.into());
        }
    }
    if s == t {
        return Err(GraphError::RepeatedVertex.into());
    }
    let private = with_private_labels(e, s, t);
    run(&private, &|v| {
        if v == s {
            Some(0)
        } else if v == t {
            Some(1)
        } else {
            None
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cw::expr::*;
    use crate::oracle::{largest_bond_bf, largest_st_bond_bf};

    #[test]
    fn anchors() {
        assert_eq!(largest_bond_cw(&clique_expression(4)).unwrap().bond.size, 4);
        assert_eq!(largest_bond_cw(&cycle_expression(5)).unwrap().bond.size, 2);
        assert_eq!(largest_bond_cw(&complete_bipartite_expression(2, 3)).unwrap().bond.size, 3);
        assert_eq!(largest_bond_cw(&path_expression(5)).unwrap().bond.size, 1);
    }

    #[test]
    fn st_anchors() {
        let b = largest_st_bond_cw(&clique_expression(4), 0, 1).unwrap().bond;
        assert_eq!(b.size, 4);
        assert!(b.side.contains(0) && !b.side.contains(1));
        assert_eq!(largest_st_bond_cw(&path_expression(4), 0, 3).unwrap().bond.size, 1);
        for s in 0..5 {
            for t in 0..5 {
                if s != t {
                    assert_eq!(largest_st_bond_cw(&cycle_expression(5), s, t).unwrap().bond.size, 2);
                }
            }
        }
    }

    #[test]
    fn builtins_match_oracle() {
        let exprs: Vec<WExpression> = (2..=7)
            .flat_map(|n| {
                let mut v = vec![path_expression(n), clique_expression(n), complete_bipartite_expression(1, n - 1)];
                if n >= 3 {
                    v.push(cycle_expression(n));
                    v.push(complete_bipartite_expression(2, n - 2));
                }
                v
            })
            .collect();
        for e in &exprs {
            let sol = largest_bond_cw(e).unwrap();
            assert_eq!(sol.bond.size, largest_bond_bf(&sol.graph).unwrap().size, "{e}");
            let n = sol.graph.num_vertices();
            for s in 0..n {
                for t in 0..n {
                    if s != t {
                        let got = largest_st_bond_cw(e, s, t).unwrap().bond;
                        assert_eq!(got.size, largest_st_bond_bf(&sol.graph, s, t).unwrap().size, "{e} {s} {t}");
                    }
                }
            }
        }
    }

    #[test]
    fn redundant_input_is_normalized() {
        let e = parse_w_expression("(j 1 2 (j 1 2 (u (v 1 0) (v 2 1))))").unwrap();
        assert_eq!(largest_bond_cw(&e).unwrap().bond.size, 1);
    }

    #[test]
    fn rejects_disconnected() {
        let e = parse_w_expression("(u (v 1 0) (v 1 1))").unwrap();
        assert_eq!(largest_bond_cw(&e).unwrap_err(), CwError::Graph(GraphError::Disconnected));
        let e = parse_w_expression("(v 1 0)").unwrap();
        assert_eq!(largest_bond_cw(&e).unwrap_err(), CwError::TooSmall);
    }
}
