//! Exact largest bond and largest `s`-`t` bond by dynamic programming over a
//! nice tree decomposition, and the decision pipelines built on top.

mod table;

use thiserror::Error;

use crate::decomposition::{
    heuristic_tree_decomposition, make_nice, st_preprocess, st_reduce, validate_nice, winwin_preprocess,
    NiceTreeDecomposition, NiceViolation, StPreprocess, TreeDecomposition, WinWin,
};
use crate::graph::{verify_bond, Bond, Graph, GraphError, Vertex, VertexSet};

use table::{reconstruct, root_state, run, Constraints};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DpError {
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("invalid nice decomposition: {0}")]
    Nice(#[from] NiceViolation),
    #[error("graph needs at least 2 vertices")]
    TooSmall,
    #[error("node {node} holds {states} states, above the bound {bound}")]
    StateBound { node: usize, states: usize, bound: u128 },
}

/// Table sizes of one run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DpStats {
    pub nodes: usize,
    pub max_bag: usize,
    pub max_states: usize,
    pub total_states: usize,
}

/// Bell number `B(k)`.
pub fn bell(k: usize) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..k {
        let mut next = vec![*row.last().expect("nonempty row")];
        for x in &row {
            let v = next.last().expect("nonempty row") + x;
            next.push(v);
        }
        row = next;
    }
    row[0]
}

/// Upper bound `B(b + 1) * 2^b` on the states of a node with bag size `b`.
pub fn state_bound(bag: usize) -> u128 {
    bell(bag + 1) << bag
}

fn precheck(g: &Graph) -> Result<(), DpError> {
    if g.num_vertices() < 2 {
        return Err(DpError::TooSmall);
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    Ok(())
}

fn solve(g: &Graph, ntd: &NiceTreeDecomposition, forced: &[Option<u8>]) -> Result<(Bond, DpStats), DpError> {
    let dp = run(g, ntd, &Constraints { forced });
    let mut stats = DpStats { nodes: ntd.nodes.len(), ..DpStats::default() };
    for (i, (node, table)) in ntd.nodes.iter().zip(&dp.tables).enumerate() {
        let states = table.states.len();
        let bound = state_bound(node.bag.len());
        if states as u128 > bound {
            return Err(DpError::StateBound { node: i, states, bound });
        }
        stats.max_bag = stats.max_bag.max(node.bag.len());
        stats.max_states = stats.max_states.max(states);
        stats.total_states += states;
    }
    let state = root_state(&dp, ntd.root).expect("a connected graph on two or more vertices has a bond");
    let side = reconstruct(ntd, &dp, ntd.root, state);
    let bond = verify_bond(g, &VertexSet::from_vertices(g.num_vertices(), side))
        .expect("reconstructed side is a bond");
    debug_assert_eq!(bond.size, dp.tables[ntd.root].values[state] as usize);
    Ok((bond, stats))
}

/// Maximum bond of `g` and table statistics.
pub fn largest_bond_tw_with_stats(g: &Graph, ntd: &NiceTreeDecomposition) -> Result<(Bond, DpStats), DpError> {
    precheck(g)?;
    validate_nice(ntd, g)?;
    solve(g, ntd, &vec![None; g.num_vertices()])
}

/// Maximum bond of `g`, with a witness side.
pub fn largest_bond_tw(g: &Graph, ntd: &NiceTreeDecomposition) -> Result<Bond, DpError> {
    largest_bond_tw_with_stats(g, ntd).map(|(b, _)| b)
}

fn check_terminals(g: &Graph, s: Vertex, t: Vertex) -> Result<(), DpError> {
    let n = g.num_vertices();
    for x in [s, t] {
        if x >= n {
            return Err(GraphError::VertexOutOfRange { vertex: x, n }.into());
        }
    }
    if s == t {
        return Err(GraphError::RepeatedVertex.into());
    }
    Ok(())
}

/// Maximum bond with `s` on the returned side and `t` opposite, using the
/// decomposition obtained by adding `s` and `t` to every bag of `td`.
pub fn largest_st_bond_td(
    g: &Graph,
    s: Vertex,
    t: Vertex,
    td: &TreeDecomposition,
) -> Result<(Bond, DpStats), DpError> {
    precheck(g)?;
    check_terminals(g, s, t)?;
    let bags = td.bags.iter().map(|bag| bag.iter().copied().chain([s, t]).collect()).collect();
    let augmented = TreeDecomposition::new(bags, td.edges.clone());
    let ntd = make_nice(&augmented, g)?;
    let mut forced = vec![None; g.num_vertices()];
    forced[s] = Some(0);
    forced[t] = Some(1);
    solve(g, &ntd, &forced)
}

/// Maximum `s`-`t` bond; `ntd` is any nice decomposition of `g`.
pub fn largest_st_bond_tw(g: &Graph, s: Vertex, t: Vertex, ntd: &NiceTreeDecomposition) -> Result<Bond, DpError> {
    validate_nice(ntd, g)?;
    let td = ntd.to_tree_decomposition().simplify();
    largest_st_bond_td(g, s, t, &td).map(|(b, _)| b)
}

/// Exact largest bond using a min-fill decomposition.
pub fn largest_bond(g: &Graph) -> Result<Bond, DpError> {
    precheck(g)?;
    let ntd = make_nice(&heuristic_tree_decomposition(g), g)?;
    largest_bond_tw(g, &ntd)
}

/// Exact largest `s`-`t` bond after restricting to the blocks between them.
pub fn largest_st_bond(g: &Graph, s: Vertex, t: Vertex) -> Result<Bond, DpError> {
    precheck(g)?;
    check_terminals(g, s, t)?;
    let r = st_reduce(g, s, t)?;
    solve_reduced(g, &r)
}

fn solve_reduced(g: &Graph, r: &crate::decomposition::ReducedInstance) -> Result<Bond, DpError> {
    let (bond, _) = largest_st_bond_td(&r.graph, r.s, r.t, &r.td)?;
    let lifted = r.lift(g, &bond.side).expect("lifting preserves bonds");
    debug_assert_eq!(lifted.size, bond.size);
    Ok(lifted)
}

/// Outcome of a decision pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    /// Whether a bond of size at least `k` exists.
    pub yes: bool,
    /// A witness: of size at least `k` on a yes answer, otherwise optimal.
    pub bond: Bond,
    /// The exact optimum when the dynamic program ran, `None` when the answer
    /// came from a minor certificate.
    pub optimum: Option<usize>,
}

/// Decides whether `g` has a bond of size at least `k`.
pub fn solve_largest_bond(g: &Graph, k: usize) -> Result<Solution, DpError> {
    precheck(g)?;
    match winwin_preprocess(g, k) {
        WinWin::EarlyYes(bond) => Ok(Solution { yes: true, bond, optimum: None }),
        WinWin::Decomposition(td) => {
            let ntd = make_nice(&td, g)?;
            let bond = largest_bond_tw(g, &ntd)?;
            Ok(Solution { yes: bond.size >= k, optimum: Some(bond.size), bond })
        }
    }
}

/// Decides whether `g` has a bond of size at least `k` separating `s` and
/// `t`. The returned side contains `s`.
pub fn solve_largest_st_bond(g: &Graph, s: Vertex, t: Vertex, k: usize) -> Result<Solution, DpError> {
    precheck(g)?;
    check_terminals(g, s, t)?;
    match st_preprocess(g, s, t, k)? {
        StPreprocess::EarlyYes(bond) => {
            let bond = if bond.side.contains(s) { bond } else { bond.flipped() };
            Ok(Solution { yes: true, bond, optimum: None })
        }
        StPreprocess::Reduced(r) => {
            let bond = solve_reduced(g, &r)?;
            Ok(Solution { yes: bond.size >= k, optimum: Some(bond.size), bond })
        }
    }
}
