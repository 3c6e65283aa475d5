//! Text formats: the edge-list graph format and PACE-style `.td` tree
//! decompositions.
//!
//! Edge list: the first non-comment line is `n m [weighted|unweighted]
//! [multi|simple]`, followed by `m` lines `u v [w]` with 0-indexed endpoints
//! and `w` in `{0, 1}`. Lines starting with `#` are comments.
//!
//! Tree decompositions use the PACE convention: `s td <bags> <width+1> <n>`,
//! then `b <id> <v...>` lines and one `i j` line per tree edge. Bag ids and
//! vertices are 1-indexed in the file.

use std::fmt::Write;

use thiserror::Error;

use crate::decomposition::TreeDecomposition;
use crate::graph::{Graph, GraphError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("missing header")]
    MissingHeader,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unknown flag `{0}`")]
    UnknownFlag(String),
    #[error("invalid number `{0}`")]
    BadNumber(String),
    #[error("weight column in an unweighted file")]
    UnexpectedWeight,
    #[error("trailing token `{0}`")]
    Trailing(String),
    #[error("expected {expected} entries, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("{0}")]
    Graph(GraphError),
}

struct Tokens<'a> {
    line: usize,
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Tokens<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        let mut items = Vec::new();
        let mut start = None;
        for (i, c) in text.char_indices() {
            if c.is_whitespace() {
                if let Some(s) = start.take() {
                    items.push((s + 1, &text[s..i]));
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            items.push((s + 1, &text[s..]));
        }
        Tokens { line, items, pos: 0 }
    }

    fn err(&self, column: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, column, kind }
    }

    fn column(&self) -> usize {
        self.items.get(self.pos).map(|t| t.0).unwrap_or(1)
    }

    fn next(&mut self) -> Option<(usize, &'a str)> {
        let t = self.items.get(self.pos).copied();
        self.pos += 1;
        t
    }

    fn number(&mut self, what: &'static str) -> Result<usize, ParseError> {
        let column = self.column();
        let (col, tok) = self.next().ok_or_else(|| self.err(column, ParseErrorKind::Expected(what)))?;
        tok.parse().map_err(|_| self.err(col, ParseErrorKind::BadNumber(tok.to_string())))
    }

    fn done(&mut self) -> Result<(), ParseError> {
        match self.next() {
            None => Ok(()),
            Some((col, tok)) => Err(self.err(col, ParseErrorKind::Trailing(tok.to_string()))),
        }
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#') && !t.starts_with('c')
        })
}

/// Parses the edge-list format.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or(ParseError { line: 1, column: 1, kind: ParseErrorKind::MissingHeader })?;
    let mut toks = Tokens::new(line, header);
    let n = toks.number("vertex count")?;
    let m = toks.number("edge count")?;
    let (mut weighted, mut multi) = (false, false);
    while let Some((col, flag)) = toks.next() {
        match flag {
            "weighted" => weighted = true,
            "unweighted" => weighted = false,
            "multi" => multi = true,
            "simple" => multi = false,
            other => return Err(toks.err(col, ParseErrorKind::UnknownFlag(other.to_string()))),
        }
    }
    let mut g = Graph::with_flags(n, weighted, multi);
    let mut last_line = line;
    for (line, text) in lines {
        last_line = line;
        let mut toks = Tokens::new(line, text);
        let col = toks.column();
        let u = toks.number("endpoint")?;
        let v = toks.number("endpoint")?;
        let w = match toks.next() {
            None => 1,
            Some((wcol, tok)) => {
                if !weighted {
                    return Err(toks.err(wcol, ParseErrorKind::UnexpectedWeight));
                }
                tok.parse().map_err(|_| toks.err(wcol, ParseErrorKind::BadNumber(tok.to_string())))?
            }
        };
        toks.done()?;
        if g.num_edges() == m {
            return Err(ParseError { line, column: col, kind: ParseErrorKind::CountMismatch { expected: m, found: m + 1 } });
        }
        g.add_weighted_edge(u, v, w)
            .map_err(|e| ParseError { line, column: col, kind: ParseErrorKind::Graph(e) })?;
    }
    if g.num_edges() != m {
        return Err(ParseError {
            line: last_line,
            column: 1,
            kind: ParseErrorKind::CountMismatch { expected: m, found: g.num_edges() },
        });
    }
    g.set_weighted(weighted);
    Ok(g)
}

/// Serializes a graph in the edge-list format.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let weighted = g.is_weighted();
    let _ = writeln!(
        out,
        "{} {} {} {}",
        g.num_vertices(),
        g.num_edges(),
        if weighted { "weighted" } else { "unweighted" },
        if g.is_multigraph() { "multi" } else { "simple" }
    );
    for e in g.edges() {
        if weighted {
            let _ = writeln!(out, "{} {} {}", e.u, e.v, e.weight);
        } else {
            let _ = writeln!(out, "{} {}", e.u, e.v);
        }
    }
    out
}

/// Parses a PACE `.td` file.
pub fn parse_td(text: &str) -> Result<TreeDecomposition, ParseError> {
    let mut lines = content_lines(text);
    let (line, header) = lines
        .next()
        .ok_or(ParseError { line: 1, column: 1, kind: ParseErrorKind::MissingHeader })?;
    let mut toks = Tokens::new(line, header);
    for expected in ["s", "td"] {
        let col = toks.column();
        match toks.next() {
            Some((_, tok)) if tok == expected => {}
            _ => return Err(toks.err(col, ParseErrorKind::Expected("`s td` header"))),
        }
    }
    let num_bags = toks.number("bag count")?;
    let _max_bag = toks.number("maximum bag size")?;
    let _n = toks.number("vertex count")?;
    toks.done()?;

    let mut bags: Vec<Option<Vec<usize>>> = vec![None; num_bags];
    let mut edges = Vec::new();
    for (line, text) in lines {
        let mut toks = Tokens::new(line, text);
        if text.trim_start().starts_with('b') {
            toks.next();
            let col = toks.column();
            let id = toks.number("bag id")?;
            if id == 0 || id > num_bags {
                return Err(toks.err(col, ParseErrorKind::BadNumber(id.to_string())));
            }
            let mut bag = Vec::new();
            while toks.pos < toks.items.len() {
                let col = toks.column();
                let v = toks.number("vertex")?;
                if v == 0 {
                    return Err(toks.err(col, ParseErrorKind::BadNumber("0".into())));
                }
                bag.push(v - 1);
            }
            bag.sort_unstable();
            bag.dedup();
            bags[id - 1] = Some(bag);
        } else {
            let col = toks.column();
            let a = toks.number("bag id")?;
            let b = toks.number("bag id")?;
            toks.done()?;
            if a == 0 || b == 0 || a > num_bags || b > num_bags {
                return Err(ParseError { line, column: col, kind: ParseErrorKind::BadNumber(format!("{a} {b}")) });
            }
            edges.push((a - 1, b - 1));
        }
    }
    let found = bags.iter().filter(|b| b.is_some()).count();
    if found != num_bags {
        return Err(ParseError { line, column: 1, kind: ParseErrorKind::CountMismatch { expected: num_bags, found } });
    }
    Ok(TreeDecomposition::new(bags.into_iter().map(Option::unwrap).collect(), edges))
}

/// Serializes a tree decomposition in PACE `.td` format.
pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "s td {} {} {}", td.bags.len(), td.width() + 1, n);
    for (i, bag) in td.bags.iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    for &(a, b) in &td.edges {
        let _ = writeln!(out, "{} {}", a + 1, b + 1);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    #[test]
    fn parses_k2() {
        let g = parse_edge_list("2 1 unweighted simple\n0 1\n").unwrap();
        assert_eq!(g, named::path(2));
    }

    #[test]
    fn header_flags_default_and_comments() {
        let g = parse_edge_list("# a triangle\n3 3\n0 1\n# middle\n1 2\n2 0\n").unwrap();
        assert_eq!(g.num_edges(), 3);
        assert!(!g.is_weighted());
    }

    #[test]
    fn duplicate_edge_in_simple_file() {
        let err = parse_edge_list("2 2 unweighted simple\n0 1\n1 0\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(matches!(err.kind, ParseErrorKind::Graph(GraphError::ParallelEdge(0, 1))));
        assert!(parse_edge_list("2 2 unweighted multi\n0 1\n1 0\n").is_ok());
    }

    #[test]
    fn weight_errors() {
        let err = parse_edge_list("2 1 weighted simple\n0 1 2\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Graph(GraphError::BadWeight(2))));
        let err = parse_edge_list("2 1 unweighted simple\n0 1 1\n").unwrap_err();
        assert_eq!((err.line, err.column, err.kind), (2, 5, ParseErrorKind::UnexpectedWeight));
    }

    #[test]
    fn range_and_count_errors() {
        let err = parse_edge_list("2 1\n0 5\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Graph(GraphError::VertexOutOfRange { .. })));
        let err = parse_edge_list("3 2\n0 1\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::CountMismatch { expected: 2, found: 1 });
        let err = parse_edge_list("3 1 fancy\n0 1\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownFlag("fancy".into()));
    }

    #[test]
    fn weighted_round_trip() {
        let mut g = Graph::with_flags(3, true, true);
        g.add_weighted_edge(0, 1, 0).unwrap();
        g.add_weighted_edge(0, 1, 1).unwrap();
        g.add_weighted_edge(1, 2, 1).unwrap();
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn td_round_trip() {
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]);
        let text = write_td(&td, 3);
        assert!(text.starts_with("s td 2 2 3\n"));
        assert_eq!(parse_td(&text).unwrap(), td);
    }
}
