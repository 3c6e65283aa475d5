//! Exact solvers and instance generators for the largest bond and largest
//! st-bond problems.
//!
//! A bond of a connected graph is the cut-set of a bipartition whose two
//! shores both induce connected subgraphs. The crate provides exhaustive
//! oracles, a dynamic program over nice tree decompositions preceded by
//! K_{2,k}-minor preprocessing, a dynamic program over clique-width
//! expressions, and generators for the hardness gadgets relating bonds to
//! maximum cuts.

pub mod cw;
pub mod decomposition;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod twdp;

pub use graph::{verify_bond, Bond, BondRejection, Graph, GraphError, Vertex, VertexSet};
