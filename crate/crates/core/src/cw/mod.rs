//! Clique-width expressions and the largest-bond dynamic program over them.

mod dp;
mod expr;

pub use dp::{largest_bond_cw, largest_st_bond_cw, CwError, CwSolution, CwStats, MAX_LABELS};
pub use expr::{
    builtin_expression, clique_expression, complete_bipartite_expression, cycle_expression, eval_w_expression,
    is_irredundant, make_irredundant, parse_w_expression, path_expression, psi_expression, with_private_labels,
    Builtin, ExprError, ExprErrorKind, Label, LabeledGraph, WExpression, WNode,
};
