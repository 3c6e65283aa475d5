//! `bond gen`: instance constructions written as edge lists with a JSON
//! sidecar describing the construction.

use std::fs;

use anyhow::{bail, Context, Result};
use bond_core::generators::{
    binary_to_unweighted, or_compose_bond, or_compose_st, psi, random_connected, random_partial_ktree, w1_instance,
    xi_power,
};
use bond_core::io::write_edge_list;
use bond_core::oracle::{max_cut_bf, MAX_ORACLE_VERTICES};
use bond_core::Graph;
use clap::{Args, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::source::{load_graph, parse_vertex_list};

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,
    /// Write the edge list here and the metadata to `<out>.json`; without it
    /// the edge list goes to stdout.
    #[arg(long, short, global = true)]
    pub out: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    /// n copies of the input plus two universal adjacent vertices.
    Psi { graph: String },
    /// Repeated edge embedding of a pattern into a single edge.
    Xi {
        pattern: String,
        #[arg(long)]
        height: usize,
    },
    /// Independent-set instance from a regular graph.
    W1 {
        graph: String,
        #[arg(long)]
        k: usize,
    },
    /// Glue graphs at one vertex, or chain s-t instances with `--terminals`.
    Compose {
        #[arg(required = true)]
        graphs: Vec<String>,
        /// Vertex of each input to identify, default 0.
        #[arg(long)]
        pivots: Option<String>,
        /// `s:t` per input; chains `t_i` to `s_{i+1}`.
        #[arg(long, conflicts_with = "pivots")]
        terminals: Option<String>,
    },
    /// Simple unweighted graph simulating a 0/1-weighted graph.
    Unweighted { graph: String },
    /// Random connected graph.
    Random {
        #[arg(long)]
        n: usize,
        /// Edges beyond a spanning tree.
        #[arg(long, default_value_t = 0, conflicts_with = "width")]
        extra: usize,
        /// Sample a partial k-tree of this width instead.
        #[arg(long)]
        width: Option<usize>,
        /// Probability of keeping each non-tree edge of the k-tree.
        #[arg(long, default_value_t = 0.5)]
        keep: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn max_cut(g: &Graph) -> Option<usize> {
    (g.num_vertices() <= MAX_ORACLE_VERTICES).then(|| max_cut_bf(g).ok().map(|(k, _)| k)).flatten()
}

fn terminals(list: &str) -> Result<Vec<(usize, usize)>> {
    list.split(',')
        .map(|pair| {
            let Some((s, t)) = pair.split_once(':') else { bail!("terminal pair `{pair}` is not `s:t`") };
            Ok((s.trim().parse()?, t.trim().parse()?))
        })
        .collect()
}

fn build(kind: &GenKind) -> Result<(Graph, Value)> {
    Ok(match kind {
        GenKind::Psi { graph } => {
            let g = load_graph(graph)?;
            let n = g.num_vertices();
            let k = max_cut(&g);
            let meta = json!({
                "construction": "psi",
                "source_n": n,
                "source_m": g.num_edges(),
                "source_max_cut": k,
                "predicted_largest_bond": k.map(|k| n * k + n * n + 1),
                "universal_vertices": [n * n, n * n + 1],
            });
            (psi(&g), meta)
        }
        GenKind::Xi { pattern, height } => {
            let p = load_graph(pattern)?;
            let x = xi_power(&p, *height)?;
            let k = max_cut(&p);
            let split: Vec<Value> = x
                .split_edges()
                .map(|i| {
                    let e = &x.edges[i];
                    json!({ "level": e.level, "u": e.u, "v": e.v, "copy": e.copy })
                })
                .collect();
            let meta = json!({
                "construction": "xi",
                "height": height,
                "pattern_n": p.num_vertices(),
                "pattern_m": p.num_edges(),
                "pattern_max_cut": k,
                "predicted_max_weight": k.map(|k| k.pow(*height as u32)),
                "edge_levels": x.levels,
                "split_edges": split,
            });
            (x.graph, meta)
        }
        GenKind::W1 { graph, k } => {
            let h = load_graph(graph)?;
            let w = w1_instance(&h, *k)?;
            let meta = json!({
                "construction": "w1",
                "k": k,
                "degree": w.degree,
                "source_n": h.num_vertices(),
                "expected_bond": w.expected_bond,
                "expected_side": w.expected_side,
            });
            (w.graph, meta)
        }
        GenKind::Compose { graphs, pivots, terminals: terms } => {
            let gs = graphs.iter().map(|s| load_graph(s)).collect::<Result<Vec<_>>>()?;
            match terms {
                Some(list) => {
                    let pairs = terminals(list)?;
                    if pairs.len() != gs.len() {
                        bail!("{} terminal pairs for {} graphs", pairs.len(), gs.len());
                    }
                    let inst: Vec<_> = gs.into_iter().zip(pairs).map(|(g, (s, t))| (g, s, t)).collect();
                    let c = or_compose_st(&inst)?;
                    let meta = json!({ "construction": "or-compose-st", "s": c.s, "t": c.t, "maps": c.maps });
                    (c.graph, meta)
                }
                None => {
                    let pivots = pivots.as_deref().map(parse_vertex_list).transpose()?;
                    if let Some(p) = &pivots {
                        if p.len() != gs.len() {
                            bail!("{} pivots for {} graphs", p.len(), gs.len());
                        }
                    }
                    let c = or_compose_bond(&gs, pivots.as_deref())?;
                    let meta = json!({ "construction": "or-compose", "maps": c.maps });
                    (c.graph, meta)
                }
            }
        }
        GenKind::Unweighted { graph } => {
            let h = load_graph(graph)?;
            let u = binary_to_unweighted(&h)?;
            let meta = json!({
                "construction": "binary-to-unweighted",
                "zero_edges": u.zero_edges,
                "multiplicity": u.multiplicity,
                "origin": u.origin,
            });
            (u.graph, meta)
        }
        GenKind::Random { n, extra, width, keep, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let g = match width {
                Some(w) => random_partial_ktree(*n, *w, *keep, &mut rng),
                None => random_connected(*n, *extra, &mut rng),
            };
            let meta = json!({
                "construction": "random",
                "n": n,
                "extra": extra,
                "width": width,
                "keep": keep,
                "seed": seed,
            });
            (g, meta)
        }
    })
}

pub fn run(args: &GenArgs) -> Result<()> {
    let (graph, mut meta) = build(&args.kind)?;
    meta["n"] = json!(graph.num_vertices());
    meta["m"] = json!(graph.num_edges());
    let text = write_edge_list(&graph);
    match &args.out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {path}"))?;
            let sidecar = format!("{path}.json");
            fs::write(&sidecar, serde_json::to_string_pretty(&meta)? + "\n")
                .with_context(|| format!("cannot write {sidecar}"))?;
        }
        None => print!("{text}"),
    }
    Ok(())
}
