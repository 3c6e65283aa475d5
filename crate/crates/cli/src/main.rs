mod gen;
mod report;
mod source;

use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use bond_core::cw::{largest_bond_cw, largest_st_bond_cw};
use bond_core::decomposition::{
    heuristic_tree_decomposition, make_nice, validate_nice, validate_tree_decomposition, NiceKind,
};
use bond_core::graph::{block_cut_tree, yutsis_bound};
use bond_core::io::write_td;
use bond_core::oracle::{largest_bond_bf, largest_st_bond_bf, largest_weight_bond_bf, MAX_ORACLE_VERTICES};
use bond_core::twdp::{largest_bond, largest_bond_tw, largest_st_bond, solve_largest_bond, solve_largest_st_bond};
use bond_core::{verify_bond, Graph, VertexSet};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use report::{Format, Report};
use source::{load_expression, load_graph, load_td, parse_vertex_list};

/// Exact solvers for the largest bond and largest s-t bond problems.
///
/// Graph arguments are edge-list files or built-in names: `path:N`,
/// `cycle:N`, `complete:N`, `star:N`, `kbip:A,B`. Exit status: 0 for YES or
/// success, 1 for NO, 2 for errors.
#[derive(Parser, Debug)]
#[command(name = "bond", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for the parallel searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Args, Debug)]
struct Decision {
    /// Decide whether a bond of at least this size exists; without it the
    /// optimum is computed.
    #[arg(long)]
    k: Option<usize>,
    /// Cross-check the answer against the exhaustive oracle (small graphs).
    #[arg(long)]
    oracle_check: bool,
}

#[derive(Args, Debug)]
struct Terminals {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    t: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Largest bond by tree decomposition dynamic programming.
    Solve {
        graph: String,
        #[command(flatten)]
        decision: Decision,
        /// Use this PACE decomposition instead of the built-in heuristic.
        #[arg(long)]
        td: Option<String>,
    },
    /// Largest bond separating two terminals.
    SolveSt {
        graph: String,
        #[command(flatten)]
        terminals: Terminals,
        #[command(flatten)]
        decision: Decision,
    },
    /// Largest (s-t) bond of the graph built by a clique-width expression.
    SolveCw {
        /// Expression file or built-in name.
        #[arg(long)]
        expr: String,
        #[arg(long, requires = "t")]
        s: Option<usize>,
        #[arg(long, requires = "s")]
        t: Option<usize>,
        /// Terminals as a pair, same as `--s S --t T`.
        #[arg(long, num_args = 2, value_names = ["S", "T"], conflicts_with_all = ["s", "t"])]
        st: Option<Vec<usize>>,
        #[command(flatten)]
        decision: Decision,
    },
    /// Exhaustive search, for graphs with at most 24 vertices.
    Oracle {
        graph: String,
        #[arg(long, requires = "t")]
        s: Option<usize>,
        #[arg(long, requires = "s")]
        t: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Maximize the total 0/1 weight instead of the size.
        #[arg(long, conflicts_with_all = ["s", "t"])]
        weighted: bool,
    },
    /// Instance generators.
    Gen(gen::GenArgs),
    /// Check whether a vertex set is one side of a bond.
    CheckBond {
        graph: String,
        /// Comma-separated vertex ids.
        #[arg(long)]
        side: String,
    },
    /// Blocks and cut vertices.
    Blocks {
        graph: String,
        #[arg(long, requires = "t")]
        s: Option<usize>,
        #[arg(long, requires = "s")]
        t: Option<usize>,
    },
    /// Tree decomposition utilities.
    Td {
        #[command(subcommand)]
        action: TdAction,
    },
}

#[derive(Subcommand, Debug)]
enum TdAction {
    /// Check a PACE decomposition against a graph.
    Validate { graph: String, td: String },
    /// Summarize the nice decomposition built from a PACE file or the heuristic.
    Nice { graph: String, td: Option<String> },
    /// Print a heuristic decomposition in PACE format.
    Decompose { graph: String },
}

/// When a minor certificate answers YES, the exact optimum is still computed
/// if the heuristic decomposition is at most this wide.
const EXACT_WIDTH: usize = 8;

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("value serializes"));
}

fn oracle_check(report: &mut Report, g: &Graph, st: Option<(usize, usize)>) -> Result<()> {
    if g.num_vertices() > MAX_ORACLE_VERTICES {
        bail!("--oracle-check needs at most {MAX_ORACLE_VERTICES} vertices");
    }
    let best = match st {
        Some((s, t)) => largest_st_bond_bf(g, s, t)?.size,
        None => largest_bond_bf(g)?.size,
    };
    report.oracle = Some(best);
    let witness = report.crossing_edges.len();
    if report.optimum.is_some_and(|o| o != best) || witness > best || report.k.is_some_and(|k| (best >= k) != report.is_yes()) {
        bail!("oracle disagrees: oracle optimum {best}, solver optimum {:?}, witness {witness}", report.optimum);
    }
    Ok(())
}

fn emit(report: Report, g: &Graph, format: Format) -> ExitCode {
    print!("{}", report.render(g, format));
    if report.is_yes() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().context("configuring threads")?;
    }
    let format = cli.format;
    match cli.command {
        Command::Solve { graph, decision, td } => {
            let g = load_graph(&graph)?;
            let start = Instant::now();
            let (bond, optimum) = match (&td, decision.k) {
                (Some(path), _) => {
                    let td = load_td(path)?;
                    let bond = largest_bond_tw(&g, &make_nice(&td, &g)?)?;
                    let size = bond.size;
                    (bond, Some(size))
                }
                (None, Some(k)) => {
                    let sol = solve_largest_bond(&g, k)?;
                    match sol.optimum {
                        Some(o) => (sol.bond, Some(o)),
                        None if heuristic_tree_decomposition(&g).width() <= EXACT_WIDTH => {
                            let bond = largest_bond(&g)?;
                            let size = bond.size;
                            (bond, Some(size))
                        }
                        None => (sol.bond, None),
                    }
                }
                (None, None) => {
                    let bond = largest_bond(&g)?;
                    let size = bond.size;
                    (bond, Some(size))
                }
            };
            let mut report = Report::new("largest-bond", &g, decision.k, &bond, optimum);
            report.elapsed_ms = start.elapsed().as_millis();
            if decision.oracle_check {
                oracle_check(&mut report, &g, None)?;
            }
            Ok(emit(report, &g, format))
        }
        Command::SolveSt { graph, terminals: Terminals { s, t }, decision } => {
            let g = load_graph(&graph)?;
            let start = Instant::now();
            let (bond, optimum) = match decision.k {
                Some(k) => {
                    let sol = solve_largest_st_bond(&g, s, t, k)?;
                    match sol.optimum {
                        Some(o) => (sol.bond, Some(o)),
                        None if heuristic_tree_decomposition(&g).width() <= EXACT_WIDTH => {
                            let bond = largest_st_bond(&g, s, t)?;
                            let size = bond.size;
                            (bond, Some(size))
                        }
                        None => (sol.bond, None),
                    }
                }
                None => {
                    let bond = largest_st_bond(&g, s, t)?;
                    let size = bond.size;
                    (bond, Some(size))
                }
            };
            let mut report = Report::new("largest-st-bond", &g, decision.k, &bond, optimum);
            report.elapsed_ms = start.elapsed().as_millis();
            (report.s, report.t) = (Some(s), Some(t));
            if decision.oracle_check {
                oracle_check(&mut report, &g, Some((s, t)))?;
            }
            Ok(emit(report, &g, format))
        }
        Command::SolveCw { expr, s, t, st, decision } => {
            let (s, t) = match st.as_deref() {
                Some(&[a, b]) => (Some(a), Some(b)),
                _ => (s, t),
            };
            let e = load_expression(&expr)?;
            let start = Instant::now();
            let (problem, sol) = match (s, t) {
                (Some(s), Some(t)) => ("largest-st-bond-cw", largest_st_bond_cw(&e, s, t)?),
                _ => ("largest-bond-cw", largest_bond_cw(&e)?),
            };
            let g = &sol.graph;
            let mut report = Report::new(problem, g, decision.k, &sol.bond, Some(sol.bond.size));
            report.elapsed_ms = start.elapsed().as_millis();
            (report.s, report.t) = (s, t);
            if decision.oracle_check {
                oracle_check(&mut report, g, s.zip(t))?;
            }
            Ok(emit(report, g, format))
        }
        Command::Oracle { graph, s, t, k, weighted } => {
            let g = load_graph(&graph)?;
            let start = Instant::now();
            let (problem, bond, optimum) = match (s, t) {
                (Some(s), Some(t)) => {
                    let b = largest_st_bond_bf(&g, s, t)?;
                    let size = b.size;
                    ("oracle-st-bond", b, size)
                }
                _ if weighted => {
                    let b = largest_weight_bond_bf(&g)?;
                    let w = b.weight;
                    ("oracle-weight-bond", b, w)
                }
                _ => {
                    let b = largest_bond_bf(&g)?;
                    let size = b.size;
                    ("oracle-bond", b, size)
                }
            };
            let mut report = Report::new(problem, &g, k, &bond, Some(optimum));
            if weighted {
                report.weight = Some(bond.weight);
                report.answer = if k.map_or(true, |k| optimum >= k) { "YES" } else { "NO" };
            }
            report.elapsed_ms = start.elapsed().as_millis();
            (report.s, report.t) = (s, t);
            Ok(emit(report, &g, format))
        }
        Command::Gen(args) => {
            gen::run(&args)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckBond { graph, side } => {
            let g = load_graph(&graph)?;
            let n = g.num_vertices();
            let vertices = parse_vertex_list(&side)?;
            if let Some(v) = vertices.iter().find(|&&v| v >= n) {
                bail!("vertex {v} out of range for {n} vertices");
            }
            let set = VertexSet::from_vertices(n, vertices);
            let verdict = verify_bond(&g, &set);
            match (&verdict, format) {
                (Ok(bond), Format::Dot) => {
                    let crossing: Vec<[usize; 2]> =
                        bond.crossing_pairs(&g).into_iter().map(|(u, v)| [u.min(v), u.max(v)]).collect();
                    print!("{}", report::dot(&g, &bond.side_vertices(), &crossing));
                }
                (Ok(bond), Format::Text) => {
                    println!("valid bond: size {}, weight {}, bound {}", bond.size, bond.weight, yutsis_bound(&g))
                }
                (Err(why), Format::Text) => println!("not a bond: {why}"),
                (Ok(bond), _) => print_json(&json!({
                    "valid": true,
                    "size": bond.size,
                    "weight": bond.weight,
                    "side": bond.side_vertices(),
                    "yutsis_bound": yutsis_bound(&g),
                })),
                (Err(why), _) => print_json(&json!({ "valid": false, "reason": why.to_string() })),
            }
            Ok(if verdict.is_ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Blocks { graph, s, t } => {
            let g = load_graph(&graph)?;
            let bct = block_cut_tree(&g)?;
            let path = match (s, t) {
                (Some(s), Some(t)) => {
                    for x in [s, t] {
                        if x >= g.num_vertices() {
                            bail!("vertex {x} out of range");
                        }
                    }
                    Some(bct.block_path(s, t))
                }
                _ => None,
            };
            if format == Format::Text {
                for (i, b) in bct.blocks.iter().enumerate() {
                    let kind = if b.is_bridge() { "bridge" } else { "block" };
                    println!("{kind} {i}: {:?}", b.vertices);
                }
                println!("cut vertices: {:?}", bct.cut_vertices);
                if let Some(p) = path {
                    println!("block path: {p:?}");
                }
            } else {
                let blocks: Vec<_> =
                    bct.blocks.iter().map(|b| json!({ "vertices": b.vertices, "bridge": b.is_bridge() })).collect();
                print_json(&json!({
                    "blocks": blocks,
                    "cut_vertices": bct.cut_vertices,
                    "tree_edges": bct.tree_edges,
                    "block_path": path,
                }));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Td { action } => match action {
            TdAction::Validate { graph, td } => {
                let g = load_graph(&graph)?;
                let td = load_td(&td)?;
                let verdict = validate_tree_decomposition(&g, &td);
                let value = match &verdict {
                    Ok(()) => json!({ "valid": true, "width": td.width(), "bags": td.bags.len() }),
                    Err(why) => json!({ "valid": false, "reason": why.to_string() }),
                };
                if format == Format::Text {
                    match &verdict {
                        Ok(()) => println!("valid, width {}", td.width()),
                        Err(why) => println!("invalid: {why}"),
                    }
                } else {
                    print_json(&value);
                }
                Ok(if verdict.is_ok() { ExitCode::SUCCESS } else { ExitCode::from(1) })
            }
            TdAction::Nice { graph, td } => {
                let g = load_graph(&graph)?;
                let td = match td {
                    Some(path) => load_td(&path)?,
                    None => heuristic_tree_decomposition(&g),
                };
                let ntd = make_nice(&td, &g)?;
                validate_nice(&ntd, &g)?;
                let count = |f: fn(&NiceKind) -> bool| ntd.count(f);
                let value = json!({
                    "width": ntd.width(),
                    "nodes": ntd.nodes.len(),
                    "leaf": count(|k| matches!(k, NiceKind::Leaf)),
                    "introduce_vertex": count(|k| matches!(k, NiceKind::IntroduceVertex(_))),
                    "introduce_edge": count(|k| matches!(k, NiceKind::IntroduceEdge { .. })),
                    "forget": count(|k| matches!(k, NiceKind::ForgetVertex(_))),
                    "join": count(|k| matches!(k, NiceKind::Join)),
                });
                print_json(&value);
                Ok(ExitCode::SUCCESS)
            }
            TdAction::Decompose { graph } => {
                let g = load_graph(&graph)?;
                print!("{}", write_td(&heuristic_tree_decomposition(&g), g.num_vertices()));
                Ok(ExitCode::SUCCESS)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
