//! Solver results and their JSON, text and DOT renderings.

use std::fmt::Write;

use bond_core::{Bond, Graph};
use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub problem: &'static str,
    pub n: usize,
    pub m: usize,
    pub k: Option<usize>,
    pub answer: &'static str,
    /// Exact optimum, unknown when a minor certificate settled the answer.
    pub optimum: Option<usize>,
    pub side: Vec<usize>,
    pub crossing_edges: Vec<[usize; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<usize>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(problem: &'static str, g: &Graph, k: Option<usize>, bond: &Bond, optimum: Option<usize>) -> Self {
        let yes = k.map_or(true, |k| bond.size >= k);
        Report {
            problem,
            n: g.num_vertices(),
            m: g.num_edges(),
            k,
            answer: if yes { "YES" } else { "NO" },
            optimum,
            side: bond.side_vertices(),
            crossing_edges: bond.crossing_pairs(g).into_iter().map(|(u, v)| [u.min(v), u.max(v)]).collect(),
            s: None,
            t: None,
            weight: g.is_weighted().then_some(bond.weight),
            oracle: None,
            elapsed_ms: 0,
        }
    }

    pub fn is_yes(&self) -> bool {
        self.answer == "YES"
    }

    pub fn render(&self, g: &Graph, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => self.text(),
            Format::Dot => dot(g, &self.side, &self.crossing_edges),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "problem: {}", self.problem);
        let _ = writeln!(out, "graph: {} vertices, {} edges", self.n, self.m);
        if let (Some(s), Some(t)) = (self.s, self.t) {
            let _ = writeln!(out, "terminals: s={s} t={t}");
        }
        if let Some(k) = self.k {
            let _ = writeln!(out, "k: {k}");
        }
        let _ = writeln!(out, "answer: {}", self.answer);
        match self.optimum {
            Some(o) => {
                let _ = writeln!(out, "optimum: {o}");
            }
            None => {
                let _ = writeln!(out, "optimum: not computed (certified by a minor)");
            }
        }
        if let Some(w) = self.weight {
            let _ = writeln!(out, "weight: {w}");
        }
        if let Some(o) = self.oracle {
            let _ = writeln!(out, "oracle: {o}");
        }
        let side: Vec<String> = self.side.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "side: {}", side.join(" "));
        let edges: Vec<String> = self.crossing_edges.iter().map(|[u, v]| format!("{u}-{v}")).collect();
        let _ = writeln!(out, "crossing edges ({}): {}", edges.len(), edges.join(" "));
        let _ = writeln!(out, "elapsed: {} ms", self.elapsed_ms);
        out
    }
}

/// DOT drawing: side vertices filled, crossing edges bold.
pub fn dot(g: &Graph, side: &[usize], crossing: &[[usize; 2]]) -> String {
    let mut on_side = vec![false; g.num_vertices()];
    for &v in side {
        on_side[v] = true;
    }
    let mut out = String::from("graph bond {\n");
    for v in 0..g.num_vertices() {
        if on_side[v] {
            let _ = writeln!(out, "  {v} [style=filled, fillcolor=lightblue];");
        } else {
            let _ = writeln!(out, "  {v};");
        }
    }
    for e in g.edges() {
        let cut = on_side[e.u] != on_side[e.v];
        debug_assert_eq!(cut, crossing.contains(&[e.u.min(e.v), e.u.max(e.v)]));
        let mut attrs = Vec::new();
        if cut {
            attrs.push("style=bold".to_string());
            attrs.push("color=red".to_string());
        }
        if g.is_weighted() {
            attrs.push(format!("label={}", e.weight));
        }
        if attrs.is_empty() {
            let _ = writeln!(out, "  {} -- {};", e.u, e.v);
        } else {
            let _ = writeln!(out, "  {} -- {} [{}];", e.u, e.v, attrs.join(", "));
        }
    }
    out.push_str("}\n");
    out
}
