//! Connectivity-aware cut tables over a nice tree decomposition.
//!
//! A state assigns every bag vertex a side and a part: bag vertices in the
//! same part are already connected inside the processed subgraph. A side
//! with no bag vertex is either still empty or holds exactly one component
//! whose vertices are all forgotten. Each cell is a byte `side << 7 | part`,
//! parts numbered by first appearance; a trailing byte carries one
//! "forgotten" bit per side.

use std::collections::HashMap;

use crate::decomposition::{NiceKind, NiceTreeDecomposition};
use crate::graph::{Graph, Vertex};

pub(crate) type Key = Box<[u8]>;

const SIDE_BIT: u8 = 0x80;
const PART_MASK: u8 = 0x7f;
const FRESH: u8 = PART_MASK;
const NONE: u32 = u32::MAX;

pub(crate) struct NodeTable {
    pub states: Vec<Key>,
    pub values: Vec<u32>,
    /// Indices into the children's state lists.
    pub back: Vec<(u32, u32)>,
}

struct Builder {
    table: NodeTable,
    index: HashMap<Key, u32>,
}

impl Builder {
    fn new() -> Self {
        Builder { table: NodeTable { states: Vec::new(), values: Vec::new(), back: Vec::new() }, index: HashMap::new() }
    }

    fn offer(&mut self, key: Vec<u8>, value: u32, back: (u32, u32)) {
        let key: Key = key.into_boxed_slice();
        match self.index.get(&key) {
            Some(&i) => {
                let i = i as usize;
                if value > self.table.values[i] {
                    self.table.values[i] = value;
                    self.table.back[i] = back;
                }
            }
            None => {
                self.index.insert(key.clone(), self.table.states.len() as u32);
                self.table.states.push(key);
                self.table.values.push(value);
                self.table.back.push(back);
            }
        }
    }
}

fn side(cell: u8) -> usize {
    (cell >> 7) as usize
}

fn part(cell: u8) -> u8 {
    cell & PART_MASK
}

/// Renumbers parts by first appearance. `cells` excludes the flag byte.
fn canonicalize(cells: &mut [u8]) {
    let mut map = [u8::MAX; 128];
    let mut next = 0u8;
    for c in cells.iter_mut() {
        let p = part(*c) as usize;
        if map[p] == u8::MAX {
            map[p] = next;
            next += 1;
        }
        *c = (*c & SIDE_BIT) | map[p];
    }
}

/// Side constraints: `forced[v] = Some(side)`.
pub(crate) struct Constraints<'a> {
    pub forced: &'a [Option<u8>],
}

pub(crate) struct DpRun {
    pub tables: Vec<NodeTable>,
}

/// Runs the dynamic program bottom-up over `ntd` (children precede parents).
pub(crate) fn run(g: &Graph, ntd: &NiceTreeDecomposition, constraints: &Constraints) -> DpRun {
    let mut tables: Vec<NodeTable> = Vec::with_capacity(ntd.nodes.len());
    for node in &ntd.nodes {
        let mut out = Builder::new();
        match node.kind {
            NiceKind::Leaf => out.offer(vec![0], 0, (NONE, NONE)),
            NiceKind::IntroduceVertex(v) => {
                let child = &tables[node.children[0]];
                let pos = node.bag.binary_search(&v).expect("introduced vertex in bag");
                let sides: &[u8] = match constraints.forced[v] {
                    Some(0) => &[0],
                    Some(_) => &[1],
                    None => &[0, 1],
                };
                for (i, key) in child.states.iter().enumerate() {
                    let (cells, flags) = key.split_at(key.len() - 1);
                    for &sd in sides {
                        if flags[0] >> sd & 1 == 1 {
                            continue;
                        }
                        let mut next = Vec::with_capacity(key.len() + 1);
                        next.extend_from_slice(&cells[..pos]);
                        next.push(sd << 7 | FRESH);
                        next.extend_from_slice(&cells[pos..]);
                        canonicalize(&mut next);
                        next.push(flags[0]);
                        out.offer(next, child.values[i], (i as u32, NONE));
                    }
                }
            }
            NiceKind::IntroduceEdge { edge, u, v } => {
                let child = &tables[node.children[0]];
                let pu = node.bag.binary_search(&u).expect("endpoint in bag");
                let pv = node.bag.binary_search(&v).expect("endpoint in bag");
                let gain = 1u32;
                debug_assert!(edge < g.num_edges());
                for (i, key) in child.states.iter().enumerate() {
                    let (cu, cv) = (key[pu], key[pv]);
                    let mut next = key.to_vec();
                    let value = if side(cu) != side(cv) {
                        child.values[i] + gain
                    } else {
                        if part(cu) != part(cv) {
                            let n = next.len() - 1;
                            for c in &mut next[..n] {
                                if *c == cv {
                                    *c = cu;
                                }
                            }
                            canonicalize(&mut next[..n]);
                        }
                        child.values[i]
                    };
                    out.offer(next, value, (i as u32, NONE));
                }
            }
            NiceKind::ForgetVertex(v) => {
                let child = &tables[node.children[0]];
                let child_bag = &ntd.nodes[node.children[0]].bag;
                let pos = child_bag.binary_search(&v).expect("forgotten vertex in child bag");
                for (i, key) in child.states.iter().enumerate() {
                    let (cells, flags) = key.split_at(key.len() - 1);
                    let c = cells[pos];
                    let mut next: Vec<u8> = cells[..pos].iter().chain(&cells[pos + 1..]).copied().collect();
                    let mut flag = flags[0];
                    if !next.iter().any(|&x| x == c) {
                        if next.iter().any(|&x| side(x) == side(c)) {
                            continue;
                        }
                        flag |= 1 << side(c);
                    }
                    // In a connected graph nothing can be introduced once the
                    // bag empties, so both sides must already be complete.
                    if next.is_empty() && flag != 0b11 {
                        continue;
                    }
                    canonicalize(&mut next);
                    next.push(flag);
                    out.offer(next, child.values[i], (i as u32, NONE));
                }
            }
            NiceKind::Join => {
                let (left, right) = (&tables[node.children[0]], &tables[node.children[1]]);
                let b = node.bag.len();
                let signature = |key: &Key| -> u64 {
                    key[..b].iter().enumerate().fold(0u64, |acc, (j, &c)| acc | (side(c) as u64) << j)
                };
                let mut groups: HashMap<u64, Vec<u32>> = HashMap::new();
                for (j, key) in right.states.iter().enumerate() {
                    groups.entry(signature(key)).or_default().push(j as u32);
                }
                let mut parent = vec![0usize; b];
                for (i, lkey) in left.states.iter().enumerate() {
                    let Some(partners) = groups.get(&signature(lkey)) else { continue };
                    for &j in partners {
                        let rkey = &right.states[j as usize];
                        let (lf, rf) = (lkey[b], rkey[b]);
                        if lf & rf != 0 {
                            continue;
                        }
                        for (x, p) in parent.iter_mut().enumerate() {
                            *p = x;
                        }
                        fn find(parent: &mut [usize], mut x: usize) -> usize {
                            while parent[x] != x {
                                parent[x] = parent[parent[x]];
                                x = parent[x];
                            }
                            x
                        }
                        for key in [lkey, rkey] {
                            let mut first = [usize::MAX; 128];
                            for x in 0..b {
                                let p = part(key[x]) as usize;
                                if first[p] == usize::MAX {
                                    first[p] = x;
                                } else {
                                    let (ra, rb) = (find(&mut parent, first[p]), find(&mut parent, x));
                                    parent[ra.max(rb)] = ra.min(rb);
                                }
                            }
                        }
                        let mut next: Vec<u8> = (0..b)
                            .map(|x| {
                                let r = find(&mut parent, x);
                                (lkey[x] & SIDE_BIT) | r as u8
                            })
                            .collect();
                        canonicalize(&mut next);
                        next.push(lf | rf);
                        out.offer(next, left.values[i] + right.values[j as usize], (i as u32, j));
                    }
                }
            }
        }
        tables.push(out.table);
    }
    DpRun { tables }
}

/// Index of the root state in which both sides are single forgotten
/// components.
pub(crate) fn root_state(run: &DpRun, root: usize) -> Option<usize> {
    run.tables[root].states.iter().position(|k| k.len() == 1 && k[0] == 0b11)
}

/// Follows back-pointers from `(root, state)` and reads off the side of every
/// vertex at its introduce node. Returns the vertices on side 0.
pub(crate) fn reconstruct(ntd: &NiceTreeDecomposition, run: &DpRun, root: usize, state: usize) -> Vec<Vertex> {
    let mut side0 = Vec::new();
    let mut stack = vec![(root, state)];
    while let Some((node, idx)) = stack.pop() {
        let n = &ntd.nodes[node];
        if let NiceKind::IntroduceVertex(v) = n.kind {
            let pos = n.bag.binary_search(&v).expect("introduced vertex in bag");
            if side(run.tables[node].states[idx][pos]) == 0 {
                side0.push(v);
            }
        }
        let (a, b) = run.tables[node].back[idx];
        if a != NONE {
            stack.push((n.children[0], a as usize));
        }
        if b != NONE {
            stack.push((n.children[1], b as usize));
        }
    }
    side0.sort_unstable();
    side0
}
