use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub type Label = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WNode {
    Create { label: Label, vertex: Vertex },
    Union(usize, usize),
    /// Adds every edge between labels `i` and `j`.
    Join { i: Label, j: Label, child: usize },
    /// Renames label `from` to `to`.
    Relabel { from: Label, to: Label, child: usize },
}

/// A clique-width expression stored as an arena; children precede parents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WExpression {
    pub nodes: Vec<WNode>,
    pub root: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("offset {offset}: {kind}")]
pub struct ExprError {
    pub offset: usize,
    pub kind: ExprErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprErrorKind {
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unexpected token `{0}`")]
    Unexpected(String),
    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
    #[error("invalid number `{0}`")]
    BadNumber(String),
    #[error("labels start at 1")]
    LabelZero,
    #[error("operation on label {0} with itself")]
    SameLabels(Label),
    #[error("vertex {0} created twice")]
    DuplicateVertex(Vertex),
    #[error("vertex ids must be 0..{n}, vertex {missing} is missing")]
    MissingVertex { n: usize, missing: Vertex },
    #[error("trailing input")]
    Trailing,
    #[error("empty expression")]
    Empty,
}

impl WExpression {
    pub fn new() -> Self {
        WExpression { nodes: Vec::new(), root: 0 }
    }

    fn push(&mut self, node: WNode) -> usize {
        self.nodes.push(node);
        self.root = self.nodes.len() - 1;
        self.root
    }

    pub fn create(&mut self, label: Label, vertex: Vertex) -> usize {
        self.push(WNode::Create { label, vertex })
    }

    pub fn union(&mut self, a: usize, b: usize) -> usize {
        self.push(WNode::Union(a, b))
    }

    pub fn join(&mut self, i: Label, j: Label, child: usize) -> usize {
        self.push(WNode::Join { i, j, child })
    }

    pub fn relabel(&mut self, from: Label, to: Label, child: usize) -> usize {
        self.push(WNode::Relabel { from, to, child })
    }

    /// Copies the subexpression rooted at `node` of `other` into `self`,
    /// mapping vertex ids and labels; returns the new root.
    pub fn graft(
        &mut self,
        other: &WExpression,
        node: usize,
        vertex: impl Fn(Vertex) -> Vertex,
        label: impl Fn(Label) -> Label,
    ) -> usize {
        let mut ids = vec![usize::MAX; other.nodes.len()];
        for x in other.reachable(node) {
            ids[x] = match other.nodes[x] {
                WNode::Create { label: l, vertex: v } => self.create(label(l), vertex(v)),
                WNode::Union(a, b) => self.union(ids[a], ids[b]),
                WNode::Join { i, j, child } => self.join(label(i), label(j), ids[child]),
                WNode::Relabel { from, to, child } => self.relabel(label(from), label(to), ids[child]),
            };
        }
        ids[node]
    }

    /// Node ids of the subexpression at `node`, ascending (children first).
    pub fn reachable(&self, node: usize) -> Vec<usize> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![node];
        seen[node] = true;
        while let Some(x) = stack.pop() {
            for c in self.children(x) {
                if !seen[c] {
                    seen[c] = true;
                    stack.push(c);
                }
            }
        }
        (0..self.nodes.len()).filter(|&x| seen[x]).collect()
    }

    pub fn children(&self, x: usize) -> Vec<usize> {
        match self.nodes[x] {
            WNode::Create { .. } => vec![],
            WNode::Union(a, b) => vec![a, b],
            WNode::Join { child, .. } | WNode::Relabel { child, .. } => vec![child],
        }
    }

    /// Largest label mentioned.
    pub fn width(&self) -> Label {
        self.reachable(self.root)
            .into_iter()
            .map(|x| match self.nodes[x] {
                WNode::Create { label, .. } => label,
                WNode::Union(..) => 0,
                WNode::Join { i, j, .. } => i.max(j),
                WNode::Relabel { from, to, .. } => from.max(to),
            })
            .max()
            .unwrap_or(0)
    }

    /// Created vertex ids in node order.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.reachable(self.root)
            .into_iter()
            .filter_map(|x| match self.nodes[x] {
                WNode::Create { vertex, .. } => Some(vertex),
                _ => None,
            })
            .collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices().len()
    }

    pub fn count(&self, pred: impl Fn(&WNode) -> bool) -> usize {
        self.reachable(self.root).into_iter().filter(|&x| pred(&self.nodes[x])).count()
    }
}

impl Default for WExpression {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Display for WExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Iterative to cope with deep expressions.
        enum Step {
            Open(usize),
            Text(&'static str),
        }
        let mut stack = vec![Step::Open(self.root)];
        while let Some(step) = stack.pop() {
            match step {
                Step::Text(t) => f.write_str(t)?,
                Step::Open(x) => match self.nodes[x] {
                    WNode::Create { label, vertex } => write!(f, "(v {label} {vertex})")?,
                    WNode::Union(a, b) => {
                        f.write_str("(u ")?;
                        stack.extend([Step::Text(")"), Step::Open(b), Step::Text(" "), Step::Open(a)]);
                    }
                    WNode::Join { i, j, child } => {
                        write!(f, "(j {i} {j} ")?;
                        stack.extend([Step::Text(")"), Step::Open(child)]);
                    }
                    WNode::Relabel { from, to, child } => {
                        write!(f, "(r {from} {to} ")?;
                        stack.extend([Step::Text(")"), Step::Open(child)]);
                    }
                },
            }
        }
        Ok(())
    }
}

#[derive(Debug)]
enum Token<'a> {
    Open,
    Close,
    Atom(&'a str),
}

fn tokenize(text: &str) -> Vec<(usize, Token<'_>)> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'(' => {
                out.push((i, Token::Open));
                i += 1;
            }
            b')' => {
                out.push((i, Token::Close));
                i += 1;
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() && !matches!(bytes[i], b'(' | b')' | b'#') {
                    i += 1;
                }
                out.push((start, Token::Atom(&text[start..i])));
            }
        }
    }
    out
}

/// Parses the s-expression grammar `(v l id)`, `(u e e)`, `(j i j e)`,
/// `(r i j e)`. Vertex ids must be exactly `0..n`.
pub fn parse_w_expression(text: &str) -> Result<WExpression, ExprError> {
    let tokens = tokenize(text);
    let end = text.len();
    let err = |offset: usize, kind| ExprError { offset, kind };
    // Frames: operator, its start offset, parsed numbers, parsed children.
    struct Frame {
        op: char,
        offset: usize,
        numbers: Vec<u64>,
        children: Vec<usize>,
    }
    let mut expr = WExpression::new();
    let mut stack: Vec<Frame> = Vec::new();
    let mut root = None;
    let mut pos = 0;
    let mut seen = BTreeSet::new();
    while pos < tokens.len() {
        let (offset, ref tok) = tokens[pos];
        pos += 1;
        if root.is_some() {
            return Err(err(offset, ExprErrorKind::Trailing));
        }
        match tok {
            Token::Open => {
                let (op_offset, op) = match tokens.get(pos) {
                    Some((o, Token::Atom(a))) => (*o, *a),
                    Some((o, _)) => return Err(err(*o, ExprErrorKind::Unexpected("(".into()))),
                    None => return Err(err(end, ExprErrorKind::UnexpectedEnd)),
                };
                pos += 1;
                let op = match op {
                    "v" | "u" | "j" | "r" => op.chars().next().expect("nonempty"),
                    other => return Err(err(op_offset, ExprErrorKind::UnknownOperator(other.to_string()))),
                };
                if let Some(parent) = stack.last() {
                    let wanted = if parent.op == 'u' { 0 } else { 2 };
                    if parent.op == 'v' || parent.numbers.len() < wanted {
                        return Err(err(offset, ExprErrorKind::Unexpected("(".into())));
                    }
                }
                stack.push(Frame { op, offset, numbers: Vec::new(), children: Vec::new() });
            }
            Token::Atom(a) => {
                let frame = stack.last_mut().ok_or_else(|| err(offset, ExprErrorKind::Unexpected(a.to_string())))?;
                let limit = match frame.op {
                    'u' => 0,
                    _ => 2,
                };
                if frame.numbers.len() >= limit || !frame.children.is_empty() {
                    return Err(err(offset, ExprErrorKind::Unexpected(a.to_string())));
                }
                let value: u64 = a.parse().map_err(|_| err(offset, ExprErrorKind::BadNumber(a.to_string())))?;
                let is_label = !(frame.op == 'v' && frame.numbers.len() == 1);
                if is_label && value == 0 {
                    return Err(err(offset, ExprErrorKind::LabelZero));
                }
                if is_label && value > Label::MAX as u64 {
                    return Err(err(offset, ExprErrorKind::BadNumber(a.to_string())));
                }
                frame.numbers.push(value);
            }
            Token::Close => {
                let frame = stack.pop().ok_or_else(|| err(offset, ExprErrorKind::Unexpected(")".into())))?;
                let (numbers, children) = (frame.numbers.len(), frame.children.len());
                let arity_ok = match frame.op {
                    'v' => numbers == 2 && children == 0,
                    'u' => children == 2,
                    _ => numbers == 2 && children == 1,
                };
                if !arity_ok {
                    return Err(err(offset, ExprErrorKind::Unexpected(")".into())));
                }
                let id = match frame.op {
                    'v' => {
                        let vertex = frame.numbers[1] as Vertex;
                        if !seen.insert(vertex) {
                            return Err(err(frame.offset, ExprErrorKind::DuplicateVertex(vertex)));
                        }
                        expr.create(frame.numbers[0] as Label, vertex)
                    }
                    'u' => expr.union(frame.children[0], frame.children[1]),
                    op => {
                        let (i, j) = (frame.numbers[0] as Label, frame.numbers[1] as Label);
                        if i == j {
                            return Err(err(frame.offset, ExprErrorKind::SameLabels(i)));
                        }
                        if op == 'j' {
                            expr.join(i, j, frame.children[0])
                        } else {
                            expr.relabel(i, j, frame.children[0])
                        }
                    }
                };
                match stack.last_mut() {
                    Some(parent) => {
                        let max = if parent.op == 'u' { 2 } else { 1 };
                        if parent.children.len() >= max {
                            return Err(err(frame.offset, ExprErrorKind::Unexpected("(".into())));
                        }
                        parent.children.push(id);
                    }
                    None => root = Some(id),
                }
            }
        }
    }
    if !stack.is_empty() {
        return Err(err(end, ExprErrorKind::UnexpectedEnd));
    }
    let root = root.ok_or(err(0, ExprErrorKind::Empty))?;
    expr.root = root;
    let n = seen.len();
    if let Some(missing) = (0..n).find(|v| !seen.contains(v)) {
        return Err(err(0, ExprErrorKind::MissingVertex { n, missing }));
    }
    Ok(expr)
}

/// The evaluated graph and the final label of each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub labels: Vec<Label>,
}

/// Builds the graph of `e`. Joins never create parallel edges.
pub fn eval_w_expression(e: &WExpression) -> LabeledGraph {
    let n = e.num_vertices();
    let mut graph = Graph::new(n);
    let mut labels = vec![0; n];
    let mut members: Vec<Vec<Vertex>> = vec![Vec::new(); e.nodes.len()];
    for x in e.reachable(e.root) {
        members[x] = match e.nodes[x] {
            WNode::Create { label, vertex } => {
                labels[vertex] = label;
                vec![vertex]
            }
            WNode::Union(a, b) => {
                let mut m = std::mem::take(&mut members[a]);
                m.append(&mut members[b]);
                m
            }
            WNode::Join { i, j, child } => {
                let m = std::mem::take(&mut members[child]);
                for &a in m.iter().filter(|&&a| labels[a] == i) {
                    for &b in m.iter().filter(|&&b| labels[b] == j) {
                        if !graph.has_edge(a, b) {
                            graph.add_edge(a.min(b), a.max(b)).expect("distinct fresh pair");
                        }
                    }
                }
                m
            }
            WNode::Relabel { from, to, child } => {
                let m = std::mem::take(&mut members[child]);
                for &a in &m {
                    if labels[a] == from {
                        labels[a] = to;
                    }
                }
                m
            }
        };
    }
    LabeledGraph { graph, labels }
}

/// Drops every join whose edges are all added again by an ancestor join:
/// a join `(a, b)` is redundant when the relabels on the way up send `{a, b}`
/// onto the label pair of a join above it. The result evaluates to the same
/// graph and adds each edge exactly once.
pub fn make_irredundant(e: &WExpression) -> WExpression {
    let w = e.width() as usize;
    // Pending pairs as a symmetric (w+1)x(w+1) matrix, indexed by node.
    type Pairs = Vec<bool>;
    let idx = |a: Label, b: Label| a as usize * (w + 1) + b as usize;
    let mut pending: Vec<Option<Pairs>> = vec![None; e.nodes.len()];
    let mut drop = vec![false; e.nodes.len()];
    pending[e.root] = Some(vec![false; (w + 1) * (w + 1)]);
    for x in (0..e.nodes.len()).rev() {
        let Some(p) = pending[x].take() else { continue };
        match e.nodes[x] {
            WNode::Create { .. } => {}
            WNode::Union(a, b) => {
                pending[a] = Some(p.clone());
                pending[b] = Some(p);
            }
            WNode::Join { i, j, child } => {
                let mut p = p;
                if p[idx(i, j)] {
                    drop[x] = true;
                }
                p[idx(i, j)] = true;
                p[idx(j, i)] = true;
                pending[child] = Some(p);
            }
            WNode::Relabel { from, to, child } => {
                let r = |l: Label| if l == from { to } else { l };
                let mut q = vec![false; (w + 1) * (w + 1)];
                for a in 1..=w as Label {
                    for b in 1..=w as Label {
                        if a != b && r(a) != r(b) && p[idx(r(a), r(b))] {
                            q[idx(a, b)] = true;
                        }
                    }
                }
                pending[child] = Some(q);
            }
        }
    }
    let mut out = WExpression::new();
    let mut ids = vec![usize::MAX; e.nodes.len()];
    for x in e.reachable(e.root) {
        ids[x] = match e.nodes[x] {
            WNode::Create { label, vertex } => out.create(label, vertex),
            WNode::Union(a, b) => out.union(ids[a], ids[b]),
            WNode::Join { child, .. } if drop[x] => ids[child],
            WNode::Join { i, j, child } => out.join(i, j, ids[child]),
            WNode::Relabel { from, to, child } => out.relabel(from, to, ids[child]),
        };
    }
    out.root = ids[e.root];
    out
}

/// Whether no join re-adds an existing edge.
pub fn is_irredundant(e: &WExpression) -> bool {
    let n = e.num_vertices();
    let mut labels = vec![0; n];
    let mut adjacent = vec![false; n * n];
    let mut members: Vec<Vec<Vertex>> = vec![Vec::new(); e.nodes.len()];
    for x in e.reachable(e.root) {
        members[x] = match e.nodes[x] {
            WNode::Create { label, vertex } => {
                labels[vertex] = label;
                vec![vertex]
            }
            WNode::Union(a, b) => {
                let mut m = std::mem::take(&mut members[a]);
                m.append(&mut members[b]);
                m
            }
            WNode::Join { i, j, child } => {
                let m = std::mem::take(&mut members[child]);
                for &a in m.iter().filter(|&&a| labels[a] == i) {
                    for &b in m.iter().filter(|&&b| labels[b] == j) {
                        if adjacent[a * n + b] {
                            return false;
                        }
                        adjacent[a * n + b] = true;
                        adjacent[b * n + a] = true;
                    }
                }
                m
            }
            WNode::Relabel { from, to, child } => {
                let m = std::mem::take(&mut members[child]);
                for &a in &m {
                    if labels[a] == from {
                        labels[a] = to;
                    }
                }
                m
            }
        };
    }
    true
}

/// Gives `s` and `t` the private labels `w + 1` and `w + 2`, adding the joins
/// that reproduce their original adjacencies.
pub fn with_private_labels(e: &WExpression, s: Vertex, t: Vertex) -> WExpression {
    let w = e.width();
    let (ls, lt) = (w + 1, w + 2);
    // Current label of s and t at each node, if present below it.
    let mut at: Vec<(Option<Label>, Option<Label>)> = vec![(None, None); e.nodes.len()];
    let mut out = WExpression::new();
    let mut ids = vec![usize::MAX; e.nodes.len()];
    for x in e.reachable(e.root) {
        let (node, track) = match e.nodes[x] {
            WNode::Create { label, vertex } => {
                let private = if vertex == s {
                    ls
                } else if vertex == t {
                    lt
                } else {
                    label
                };
                let track = (
                    (vertex == s).then_some(label),
                    (vertex == t).then_some(label),
                );
                (out.create(private, vertex), track)
            }
            WNode::Union(a, b) => (out.union(ids[a], ids[b]), (at[a].0.or(at[b].0), at[a].1.or(at[b].1))),
            WNode::Relabel { from, to, child } => {
                let r = |l: Option<Label>| l.map(|l| if l == from { to } else { l });
                (out.relabel(from, to, ids[child]), (r(at[child].0), r(at[child].1)))
            }
            WNode::Join { i, j, child } => {
                let (cs, ct) = at[child];
                let mut node = out.join(i, j, ids[child]);
                for (tracked, private) in [(cs, ls), (ct, lt)] {
                    match tracked {
                        Some(l) if l == i => node = out.join(private, j, node),
                        Some(l) if l == j => node = out.join(i, private, node),
                        _ => {}
                    }
                }
                if let (Some(a), Some(b)) = (cs, ct) {
                    if (a == i && b == j) || (a == j && b == i) {
                        node = out.join(ls, lt, node);
                    }
                }
                (node, (cs, ct))
            }
        };
        ids[x] = node;
        at[x] = track;
    }
    out.root = ids[e.root];
    out
}

/// `K_n` with two labels.
pub fn clique_expression(n: usize) -> WExpression {
    let mut e = WExpression::new();
    let mut x = e.create(1, 0);
    for v in 1..n {
        let leaf = e.create(2, v);
        x = e.union(x, leaf);
        x = e.join(1, 2, x);
        x = e.relabel(2, 1, x);
    }
    e.root = x;
    e
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`, two labels.
pub fn complete_bipartite_expression(a: usize, b: usize) -> WExpression {
    let mut e = WExpression::new();
    let mut x = e.create(1, 0);
    for v in 1..a + b {
        let leaf = e.create(if v < a { 1 } else { 2 }, v);
        x = e.union(x, leaf);
    }
    if a > 0 && b > 0 {
        x = e.join(1, 2, x);
    }
    e.root = x;
    e
}

/// `P_n` on `0..n` in order, three labels: the current end carries label 2.
pub fn path_expression(n: usize) -> WExpression {
    let mut e = WExpression::new();
    let mut x = e.create(2, 0);
    for v in 1..n {
        let leaf = e.create(1, v);
        x = e.union(x, leaf);
        x = e.join(1, 2, x);
        x = e.relabel(2, 3, x);
        x = e.relabel(1, 2, x);
    }
    e.root = x;
    e
}

/// `C_n` (n ≥ 3) on `0..n` in order, four labels: vertex 0 keeps label 4.
pub fn cycle_expression(n: usize) -> WExpression {
    assert!(n >= 3, "cycles need at least 3 vertices");
    let mut e = WExpression::new();
    let a = e.create(4, 0);
    let b = e.create(2, 1);
    let mut x = e.union(a, b);
    x = e.join(2, 4, x);
    for v in 2..n {
        let leaf = e.create(1, v);
        x = e.union(x, leaf);
        x = e.join(1, 2, x);
        x = e.relabel(2, 3, x);
        x = e.relabel(1, 2, x);
    }
    x = e.join(2, 4, x);
    e.root = x;
    e
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Path(usize),
    Cycle(usize),
    Clique(usize),
    CompleteBipartite(usize, usize),
}

pub fn builtin_expression(kind: Builtin) -> WExpression {
    match kind {
        Builtin::Path(n) => path_expression(n),
        Builtin::Cycle(n) => cycle_expression(n),
        Builtin::Clique(n) => clique_expression(n),
        Builtin::CompleteBipartite(a, b) => complete_bipartite_expression(a, b),
    }
}

/// Expression for the graph made of `n` copies of the graph of `e` plus two
/// adjacent vertices joined to everything. Copy `c` maps vertex `v` to
/// `c * n + v`; the extra vertices are `n²` and `n² + 1`.
pub fn psi_expression(e: &WExpression, n: usize) -> WExpression {
    let w = e.width();
    let mut out = WExpression::new();
    let mut copies = None;
    for c in 0..n {
        let mut x = out.graft(e, e.root, |v| c * n + v, |l| l);
        for l in 2..=w {
            x = out.relabel(l, 1, x);
        }
        copies = Some(match copies {
            None => x,
            Some(prev) => out.union(prev, x),
        });
    }
    let va = out.create(1, n * n);
    let vb = out.create(2, n * n + 1);
    let mut pair = out.union(va, vb);
    pair = out.join(1, 2, pair);
    pair = out.relabel(1, 2, pair);
    let root = match copies {
        None => pair,
        Some(c) => {
            let u = out.union(c, pair);
            out.join(1, 2, u)
        }
    };
    out.root = root;
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn edge_set(g: &Graph) -> BTreeSet<(Vertex, Vertex)> {
        g.edges().iter().map(|e| (e.u.min(e.v), e.u.max(e.v))).collect()
    }

    #[test]
    fn parse_examples() {
        let e = parse_w_expression("(v 1 0)").unwrap();
        assert_eq!(e.nodes, vec![WNode::Create { label: 1, vertex: 0 }]);
        let k2 = eval_w_expression(&parse_w_expression("(j 1 2 (u (v 1 0) (v 2 1)))").unwrap());
        assert_eq!(edge_set(&k2.graph), BTreeSet::from([(0, 1)]));
        let star = parse_w_expression("# a star\n(j 1 2 (u (v 1 0)\n (u (v 2 1) (v 2 2))))").unwrap();
        assert_eq!(edge_set(&eval_w_expression(&star).graph), BTreeSet::from([(0, 1), (0, 2)]));
    }

    #[test]
    fn parse_errors() {
        let kind = |t: &str| parse_w_expression(t).unwrap_err().kind;
        assert_eq!(kind("(v 0 0)"), ExprErrorKind::LabelZero);
        assert_eq!(kind("(u (v 1 0) (v 1 0))"), ExprErrorKind::DuplicateVertex(0));
        assert_eq!(kind("(j 1 1 (v 1 0))"), ExprErrorKind::SameLabels(1));
        assert_eq!(kind("(x 1 0)"), ExprErrorKind::UnknownOperator("x".into()));
        assert_eq!(kind("(u (v 1 0) (v 1 2))"), ExprErrorKind::MissingVertex { n: 2, missing: 1 });
        assert_eq!(kind("(v 1 0"), ExprErrorKind::UnexpectedEnd);
        assert_eq!(kind("(v 1 0) (v 1 1)"), ExprErrorKind::Trailing);
        assert_eq!(kind("(v 1 a)"), ExprErrorKind::BadNumber("a".into()));
        let err = parse_w_expression("(u (v 1 0) (q 1 1))").unwrap_err();
        assert_eq!(err.offset, 12);
    }

    #[test]
    fn display_round_trip() {
        for e in [path_expression(5), cycle_expression(6), clique_expression(4), psi_expression(&clique_expression(2), 2)] {
            let text = e.to_string();
            let back = parse_w_expression(&text).unwrap();
            assert_eq!(back.to_string(), text);
            assert_eq!(eval_w_expression(&back), eval_w_expression(&e));
        }
    }

    #[test]
    fn builtins_evaluate_to_named_graphs() {
        let cases = [
            (clique_expression(4), named::complete(4), 2),
            (path_expression(5), named::path(5), 3),
            (cycle_expression(5), named::cycle(5), 4),
            (complete_bipartite_expression(2, 3), named::complete_bipartite(2, 3), 2),
        ];
        for (e, g, w) in cases {
            assert_eq!(edge_set(&eval_w_expression(&e).graph), edge_set(&g));
            assert_eq!(e.width(), w);
            assert!(is_irredundant(&e));
        }
        assert_eq!(eval_w_expression(&path_expression(4)).graph.num_edges(), 3);
        assert_eq!(eval_w_expression(&clique_expression(4)).graph.num_edges(), 6);
    }

    #[test]
    fn irredundant_normalization() {
        let dup = parse_w_expression("(j 1 2 (j 1 2 (u (v 1 0) (v 2 1))))").unwrap();
        assert!(!is_irredundant(&dup));
        let fixed = make_irredundant(&dup);
        assert!(is_irredundant(&fixed));
        assert_eq!(fixed.count(|n| matches!(n, WNode::Join { .. })), 1);
        assert_eq!(eval_w_expression(&fixed), eval_w_expression(&dup));

        let clean = cycle_expression(5);
        assert_eq!(make_irredundant(&clean), clean);

        // K_4 whose last vertex is joined twice.
        let k4 = parse_w_expression("(j 1 2 (j 1 2 (u (r 2 1 (j 1 2 (u (r 2 1 (j 1 2 (u (v 1 0) (v 2 1)))) (v 2 2)))) (v 2 3))))").unwrap();
        let fixed = make_irredundant(&k4);
        assert_eq!(eval_w_expression(&fixed), eval_w_expression(&k4));
        assert_eq!(eval_w_expression(&fixed).graph.num_edges(), 6);
        assert_eq!(fixed.count(|n| matches!(n, WNode::Join { .. })), 3);
        // The pair (a, b) of a lower join maps onto (1, 2) through relabels.
        let partial = parse_w_expression("(j 1 2 (u (r 3 1 (j 3 2 (u (v 3 0) (v 2 1)))) (v 1 2)))").unwrap();
        let fixed = make_irredundant(&partial);
        assert!(is_irredundant(&fixed));
        assert_eq!(eval_w_expression(&fixed), eval_w_expression(&partial));
    }

    #[test]
    fn private_labels_preserve_graph() {
        for e in [cycle_expression(5), clique_expression(4), path_expression(4)] {
            let n = e.num_vertices();
            for s in 0..n {
                for t in 0..n {
                    if s != t {
                        let p = with_private_labels(&e, s, t);
                        let lg = eval_w_expression(&p);
                        assert_eq!(edge_set(&lg.graph), edge_set(&eval_w_expression(&e).graph));
                        assert_eq!((lg.labels[s], lg.labels[t]), (e.width() + 1, e.width() + 2));
                    }
                }
            }
        }
    }

    #[test]
    fn psi_of_k2() {
        let e = psi_expression(&clique_expression(2), 2);
        let g = eval_w_expression(&e).graph;
        assert_eq!(g.num_vertices(), 6);
        assert_eq!(g.num_edges(), 2 + 8 + 1);
        assert_eq!(e.width(), 2);
        assert!(g.has_edge(4, 5));
        assert_eq!(psi_expression(&parse_w_expression("(v 1 0)").unwrap(), 1).width(), 2);
    }
}
