//! Canonical forms and isomorphism tests for small graphs.
//!
//! The canonical form is the lexicographically smallest upper-triangular
//! adjacency bitstring over the leaves of an individualization-refinement
//! tree. Refinement starts from the degree partition and splits cells until
//! the partition is equitable. Subtrees that are images of explored subtrees
//! under automorphisms found along the way are skipped.
//!
//! [`are_isomorphic`] does not go through canonical forms: it runs its own
//! backtracking search, so the two can be checked against each other.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest order accepted by the isomorphism routines.
pub const MAX_ISO_ORDER: usize = 16;

/// Labelling-invariant encoding of an isomorphism class: one byte for the
/// order followed by the adjacency bitstring packed most significant bit
/// first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        if s.len() % 2 == 1 {
            return None;
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(s.get(i..i + 2)?, 16).ok())
            .collect::<Option<Vec<u8>>>()
            .map(CanonicalForm)
    }

    pub fn order(&self) -> usize {
        self.0[0] as usize
    }

    /// Rebuilds the canonical representative graph.
    pub fn to_graph(&self) -> Graph {
        let n = self.order();
        let mut edges = Vec::new();
        let mut bit = 0usize;
        for i in 0..n {
            for j in i + 1..n {
                if self.0[1 + bit / 8] >> (7 - bit % 8) & 1 == 1 {
                    edges.push((i, j));
                }
                bit += 1;
            }
        }
        Graph::from_edges(n, &edges).expect("canonical bytes encode a simple graph")
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

fn guard(g: &Graph, op: &'static str) -> Result<()> {
    if g.order() > MAX_ISO_ORDER {
        return Err(Error::OrderTooLarge {
            op,
            order: g.order(),
            limit: MAX_ISO_ORDER,
        });
    }
    Ok(())
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_labelling(g).map(|(form, _)| form)
}

/// Canonical form plus the labelling that produces it: `lab[p]` is the vertex
/// of `g` placed at position `p`.
pub fn canonical_labelling(g: &Graph) -> Result<(CanonicalForm, Vec<usize>)> {
    guard(g, "canonical form")?;
    let n = g.order();
    let adj: Vec<u64> = (0..n).map(|v| g.neighbor_mask(v)).collect();
    let mut search = Search {
        adj: &adj,
        n,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let cells = refine(&adj, initial_partition(&adj));
    let mut path = Vec::new();
    search.descend(cells, &mut path);
    let best = search.best.expect("search visits at least one leaf");
    Ok((
        encode(n, best.code),
        best.lab.iter().map(|&v| v as usize).collect(),
    ))
}

/// `g` relabelled into its canonical representative.
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let (_, lab) = canonical_labelling(g)?;
    let mut perm = vec![0; g.order()];
    for (pos, &v) in lab.iter().enumerate() {
        perm[v] = pos;
    }
    Ok(g.permuted(&perm))
}

fn encode(n: usize, code: u128) -> CanonicalForm {
    let bits = n * n.saturating_sub(1) / 2;
    let nbytes = bits.div_ceil(8);
    let mut out = Vec::with_capacity(1 + nbytes);
    out.push(n as u8);
    // left-align the bitstring
    let aligned = if bits == 0 { 0 } else { code << (128 - bits) };
    for k in 0..nbytes {
        out.push((aligned >> (120 - 8 * k)) as u8);
    }
    CanonicalForm(out)
}

type Cells = Vec<Vec<u8>>;

fn initial_partition(adj: &[u64]) -> Cells {
    let mut by_degree: Vec<(u32, u8)> = adj
        .iter()
        .enumerate()
        .map(|(v, m)| (m.count_ones(), v as u8))
        .collect();
    by_degree.sort_unstable();
    let mut cells: Cells = Vec::new();
    let mut last = None;
    for (d, v) in by_degree {
        if last != Some(d) {
            cells.push(Vec::new());
            last = Some(d);
        }
        cells.last_mut().unwrap().push(v);
    }
    cells
}

/// Splits cells until every vertex of a cell has the same number of
/// neighbours in every cell. Cell order depends only on the counts.
fn refine(adj: &[u64], mut cells: Cells) -> Cells {
    'again: loop {
        for s in 0..cells.len() {
            let splitter: u64 = cells[s].iter().fold(0, |m, &v| m | 1 << v);
            for c in 0..cells.len() {
                if cells[c].len() == 1 {
                    continue;
                }
                let count = |v: u8| (adj[v as usize] & splitter).count_ones();
                let c0 = count(cells[c][0]);
                if cells[c].iter().all(|&v| count(v) == c0) {
                    continue;
                }
                let mut keyed: Vec<(u32, u8)> = cells[c].iter().map(|&v| (count(v), v)).collect();
                keyed.sort_unstable();
                let mut parts: Cells = Vec::new();
                let mut last = None;
                for (k, v) in keyed {
                    if last != Some(k) {
                        parts.push(Vec::new());
                        last = Some(k);
                    }
                    parts.last_mut().unwrap().push(v);
                }
                cells.splice(c..=c, parts);
                continue 'again;
            }
        }
        return cells;
    }
}

struct Leaf {
    code: u128,
    lab: Vec<u8>,
    path: Vec<u8>,
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<u8>>,
}

impl Search<'_> {
    fn code(&self, lab: &[u8]) -> u128 {
        let mut code = 0u128;
        for i in 0..self.n {
            let row = self.adj[lab[i] as usize];
            for j in i + 1..self.n {
                code = code << 1 | (row >> lab[j] & 1) as u128;
            }
        }
        code
    }

    /// Explores the subtree below `path`. `Some(level)` asks the caller to
    /// unwind to the ancestor at depth `level`.
    fn descend(&mut self, cells: Cells, path: &mut Vec<u8>) -> Option<usize> {
        if cells.len() == self.n {
            return self.leaf(cells.iter().map(|c| c[0]).collect(), path);
        }
        let depth = path.len();
        let target = (0..cells.len())
            .filter(|&c| cells[c].len() > 1)
            .min_by_key(|&c| cells[c].len())
            .expect("non-discrete partition has a non-singleton cell");
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();
        let mut tried: Vec<u8> = Vec::new();
        for v in candidates {
            if !tried.is_empty() && self.equivalent_to_tried(v, &tried, path) {
                continue;
            }
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..target]);
            next.push(vec![v]);
            next.push(cells[target].iter().copied().filter(|&w| w != v).collect());
            next.extend_from_slice(&cells[target + 1..]);
            let next = refine(self.adj, next);
            path.push(v);
            let jump = self.descend(next, path);
            path.pop();
            tried.push(v);
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, lab: Vec<u8>, path: &[u8]) -> Option<usize> {
        let code = self.code(&lab);
        let Some(first) = &self.first else {
            let leaf = Leaf {
                code,
                lab: lab.clone(),
                path: path.to_vec(),
            };
            self.best = Some(Leaf {
                code,
                lab,
                path: path.to_vec(),
            });
            self.first = Some(leaf);
            return None;
        };
        if code == first.code {
            let level = common_prefix(path, &first.path);
            let auto = automorphism(&lab, &first.lab);
            self.autos.push(auto);
            return Some(level);
        }
        let best = self.best.as_ref().expect("best is set with first");
        if code == best.code {
            let level = common_prefix(path, &best.path);
            let auto = automorphism(&lab, &best.lab);
            self.autos.push(auto);
            return Some(level);
        }
        if code < best.code {
            self.best = Some(Leaf {
                code,
                lab,
                path: path.to_vec(),
            });
        }
        None
    }

    /// Is `v` in the orbit of a tried vertex under the known automorphisms
    /// that fix `path` pointwise?
    fn equivalent_to_tried(&self, v: u8, tried: &[u8], path: &[u8]) -> bool {
        let mut parent: Vec<u8> = (0..self.n as u8).collect();
        fn find(p: &mut [u8], mut x: u8) -> u8 {
            while p[x as usize] != x {
                p[x as usize] = p[p[x as usize] as usize];
                x = p[x as usize];
            }
            x
        }
        let mut any = false;
        for gamma in &self.autos {
            if path.iter().any(|&p| gamma[p as usize] != p) {
                continue;
            }
            any = true;
            for x in 0..self.n as u8 {
                let (a, b) = (find(&mut parent, x), find(&mut parent, gamma[x as usize]));
                if a != b {
                    parent[a as usize] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&t| find(&mut parent, t) == rv)
    }
}

fn common_prefix(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// The map `from[p] ↦ to[p]`.
fn automorphism(from: &[u8], to: &[u8]) -> Vec<u8> {
    let mut gamma = vec![0u8; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a as usize] = b;
    }
    gamma
}

/// Cheap isomorphism invariants compared before any search.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fingerprint {
    pub order: usize,
    pub size: usize,
    pub degrees: Vec<usize>,
    pub triangles: Vec<usize>,
}

impl Fingerprint {
    pub fn of(g: &Graph) -> Self {
        let mut degrees = g.degrees();
        degrees.sort_unstable();
        let mut triangles = g.triangle_counts();
        triangles.sort_unstable();
        Fingerprint {
            order: g.order(),
            size: g.size(),
            degrees,
            triangles,
        }
    }
}

/// Exact isomorphism test by backtracking over vertex maps that respect
/// degree and triangle count.
pub fn are_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    guard(g, "isomorphism test")?;
    guard(h, "isomorphism test")?;
    if Fingerprint::of(g) != Fingerprint::of(h) {
        return Ok(false);
    }
    let n = g.order();
    if n == 0 {
        return Ok(true);
    }
    let (dg, dh) = (g.degrees(), h.degrees());
    let (tg, th) = (g.triangle_counts(), h.triangle_counts());

    // map vertices of g in an order that keeps each new vertex adjacent to
    // already placed ones where possible
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let links = order.iter().filter(|&&u| g.has_edge(u, v)).count();
                (links, dg[v], std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    struct Ctx<'a> {
        g: &'a Graph,
        h: &'a Graph,
        order: Vec<usize>,
        key_g: Vec<(usize, usize)>,
        key_h: Vec<(usize, usize)>,
        map: Vec<usize>,
        used: Vec<bool>,
    }

    fn extend(c: &mut Ctx<'_>, k: usize) -> bool {
        if k == c.order.len() {
            return true;
        }
        let x = c.order[k];
        for y in 0..c.h.order() {
            if c.used[y] || c.key_h[y] != c.key_g[x] {
                continue;
            }
            let consistent = c.order[..k]
                .iter()
                .all(|&x2| c.g.has_edge(x, x2) == c.h.has_edge(y, c.map[x2]));
            if !consistent {
                continue;
            }
            c.map[x] = y;
            c.used[y] = true;
            if extend(c, k + 1) {
                return true;
            }
            c.used[y] = false;
        }
        false
    }

    let mut ctx = Ctx {
        g,
        h,
        order,
        key_g: dg.into_iter().zip(tg).collect(),
        key_h: dh.into_iter().zip(th).collect(),
        map: vec![usize::MAX; n],
        used: vec![false; n],
    };
    Ok(extend(&mut ctx, 0))
}
