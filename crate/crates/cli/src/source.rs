//! Loading graphs, decompositions and expressions from files or short
//! built-in names such as `cycle:6` or `kbip:2,3`.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use bond_core::cw::{builtin_expression, parse_w_expression, Builtin, WExpression};
use bond_core::decomposition::TreeDecomposition;
use bond_core::graph::named;
use bond_core::io::{parse_edge_list, parse_td};
use bond_core::Graph;

fn read(path: &str) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {path}"))
}

fn numbers(args: &str, count: usize, name: &str) -> Result<Vec<usize>> {
    let parsed: Vec<usize> = args
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| anyhow!("`{name}` expects {count} comma-separated numbers, got `{args}`"))?;
    if parsed.len() != count {
        bail!("`{name}` expects {count} comma-separated numbers, got `{args}`");
    }
    Ok(parsed)
}

fn builtin(spec: &str) -> Result<Option<Builtin>> {
    let Some((name, args)) = spec.split_once(':') else { return Ok(None) };
    Ok(Some(match name {
        "path" => Builtin::Path(numbers(args, 1, name)?[0]),
        "cycle" => Builtin::Cycle(numbers(args, 1, name)?[0]),
        "complete" | "clique" => Builtin::Clique(numbers(args, 1, name)?[0]),
        "kbip" => {
            let ab = numbers(args, 2, name)?;
            Builtin::CompleteBipartite(ab[0], ab[1])
        }
        "star" => Builtin::CompleteBipartite(1, numbers(args, 1, name)?[0]),
        _ => return Ok(None),
    }))
}

fn builtin_graph(kind: Builtin) -> Result<Graph> {
    let valid = match kind {
        Builtin::Path(n) | Builtin::Clique(n) => n >= 1,
        Builtin::Cycle(n) => n >= 3,
        Builtin::CompleteBipartite(a, b) => a >= 1 && b >= 1,
    };
    if !valid {
        bail!("built-in graph {kind:?} is too small");
    }
    Ok(match kind {
        Builtin::Path(n) => named::path(n),
        Builtin::Cycle(n) => named::cycle(n),
        Builtin::Clique(n) => named::complete(n),
        Builtin::CompleteBipartite(a, b) => named::complete_bipartite(a, b),
    })
}

/// Reads an edge-list file, or builds a named graph when `spec` is not a file.
pub fn load_graph(spec: &str) -> Result<Graph> {
    if !Path::new(spec).exists() {
        if let Some(kind) = builtin(spec)? {
            return builtin_graph(kind);
        }
    }
    let text = read(spec)?;
    parse_edge_list(&text).with_context(|| format!("in {spec}"))
}

pub fn load_td(path: &str) -> Result<TreeDecomposition> {
    let text = read(path)?;
    parse_td(&text).with_context(|| format!("in {path}"))
}

/// Reads an expression file, or a built-in expression name.
pub fn load_expression(spec: &str) -> Result<WExpression> {
    if !Path::new(spec).exists() {
        if let Some(kind) = builtin(spec)? {
            builtin_graph(kind)?;
            return Ok(builtin_expression(kind));
        }
    }
    let text = read(spec)?;
    parse_w_expression(&text).with_context(|| format!("in {spec}"))
}

/// Parses `0,3,4` into vertex ids.
pub fn parse_vertex_list(list: &str) -> Result<Vec<usize>> {
    if list.trim().is_empty() {
        return Ok(Vec::new());
    }
    list.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| anyhow!("invalid vertex `{x}`")))
        .collect()
}
