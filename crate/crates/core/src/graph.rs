//! Simple undirected graphs and the two-cluster labelling used by the
//! partial transpose.
//!
//! A [`ClusteredGraph`] on `2q` vertices names vertex `v_{μ,i}` (cluster
//! `μ ∈ {1, 2}`, slot `i ∈ 1..=q`) by the linear index `(μ-1)·q + (i-1)`.
//! Every operation returns a new value; graphs are never mutated after
//! construction.

use std::fmt;
use std::ops::Deref;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph with one adjacency bitset row per vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Graph {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    /// Builds a graph from vertex pairs. Duplicate pairs (in either
    /// orientation) collapse to one edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            g.insert(u, v);
        }
        Ok(g)
    }

    pub(crate) fn insert(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u * self.words + v / 64] |= 1 << (v % 64);
        self.rows[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub(crate) fn remove(&mut self, u: usize, v: usize) {
        self.rows[u * self.words + v / 64] &= !(1 << (v % 64));
        self.rows[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    /// Number of vertices.
    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.rows
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.rows[v * self.words..(v + 1) * self.words]
    }

    /// Neighbourhood of `v` as a single word. Only valid for graphs with at
    /// most 64 vertices.
    #[inline]
    pub fn neighbor_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.rows[v * self.words]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(k, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            out.extend(self.neighbors(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Relabels vertices: old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal order");
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.insert(perm[u], perm[v]);
        }
        g
    }

    /// Disjoint union; the vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.insert(u, v);
        }
        for (u, v) in other.edges() {
            g.insert(u + self.n, v + self.n);
        }
        g
    }

    /// Same graph with `extra` isolated vertices appended.
    pub fn padded(&self, extra: usize) -> Graph {
        self.disjoint_union(&Graph::empty(extra))
    }

    /// Number of triangles through each vertex.
    pub fn triangle_counts(&self) -> Vec<usize> {
        let mut t = vec![0; self.n];
        for (u, v) in self.edges() {
            let common: usize = self
                .row(u)
                .iter()
                .zip(self.row(v))
                .map(|(a, b)| (a & b).count_ones() as usize)
                .sum();
            t[u] += common;
            t[v] += common;
        }
        // each triangle at u is seen through both of its edges at u
        t.iter().map(|c| c / 2).collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// One of the two vertex clusters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cluster {
    First,
    Second,
}

/// A graph on `2q` vertices with the fixed labelling `v_{μ,i} ↔ (μ-1)·q + (i-1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ClusteredGraph {
    q: usize,
    graph: Graph,
}

/// Edges of a clustered graph split into the two intra-cluster parts and the
/// cross part. Each edge is stored as linear indices `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct EdgePartition {
    pub intra1: Vec<(usize, usize)>,
    pub intra2: Vec<(usize, usize)>,
    pub cross: Vec<(usize, usize)>,
}

/// Cross edges `(v_{1,i}, v_{2,j})`, `i ≠ j`, whose mirror `(v_{1,j}, v_{2,i})`
/// is absent. Stored as `(first-cluster vertex, second-cluster vertex)`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AsymmetricEdgeSet {
    pub edges: Vec<(usize, usize)>,
}

impl AsymmetricEdgeSet {
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn touches(&self, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| a == v || b == v)
    }
}

impl ClusteredGraph {
    /// Validated constructor: `q ≥ 1`, all indices in `0..2q`, no self-loops.
    pub fn build(q: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if q == 0 {
            return Err(Error::EmptyClusters);
        }
        Ok(ClusteredGraph {
            q,
            graph: Graph::from_edges(2 * q, edges)?,
        })
    }

    /// Edgeless clustered graph; `q = 0` is allowed and acts as the unit of
    /// [`ClusteredGraph::disjoint_union`].
    pub fn empty(q: usize) -> Self {
        ClusteredGraph {
            q,
            graph: Graph::empty(2 * q),
        }
    }

    /// Interprets a plain graph of even order with the identity labelling.
    pub fn from_graph(graph: Graph) -> Result<Self> {
        if graph.order() % 2 == 1 {
            return Err(Error::OddOrder {
                op: "cluster labelling",
                order: graph.order(),
            });
        }
        Ok(ClusteredGraph {
            q: graph.order() / 2,
            graph,
        })
    }

    /// Places vertex `v` of `graph` into slot `slots[v]`.
    pub fn from_graph_with_slots(graph: &Graph, slots: &[usize]) -> Result<Self> {
        let n = graph.order();
        if n % 2 == 1 {
            return Err(Error::OddOrder {
                op: "cluster labelling",
                order: n,
            });
        }
        let mut seen = vec![false; n];
        for &s in slots {
            if s >= n {
                return Err(Error::VertexOutOfRange {
                    vertex: s,
                    order: n,
                });
            }
            if std::mem::replace(&mut seen[s], true) {
                return Err(Error::hypothesis(
                    "slot assignment",
                    format!("slot {s} assigned twice"),
                ));
            }
        }
        if slots.len() != n {
            return Err(Error::hypothesis(
                "slot assignment",
                format!("expected {n} slots, got {}", slots.len()),
            ));
        }
        Ok(ClusteredGraph {
            q: n / 2,
            graph: graph.permuted(slots),
        })
    }

    /// Vertices per cluster.
    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    /// Linear index of `v_{μ,i}` with `μ ∈ {1,2}` and 1-based `i`.
    #[inline]
    pub fn vertex(&self, mu: usize, i: usize) -> usize {
        debug_assert!((1..=2).contains(&mu) && (1..=self.q).contains(&i));
        (mu - 1) * self.q + (i - 1)
    }

    /// Inverse of [`ClusteredGraph::vertex`]: `(μ, i)`, both 1-based.
    #[inline]
    pub fn slot(&self, v: usize) -> (usize, usize) {
        (v / self.q + 1, v % self.q + 1)
    }

    pub fn cluster_of(&self, v: usize) -> Cluster {
        if v < self.q {
            Cluster::First
        } else {
            Cluster::Second
        }
    }

    /// Human-readable vertex name, e.g. `v1,2`.
    pub fn vertex_name(&self, v: usize) -> String {
        let (mu, i) = self.slot(v);
        format!("v{mu},{i}")
    }

    /// The partial transpose: every cross edge `(v_{1,i}, v_{2,j})`, `i ≠ j`,
    /// whose mirror `(v_{1,j}, v_{2,i})` is absent is replaced by the mirror.
    /// All replacements are decided against the original edge set.
    pub fn partial_transpose(&self) -> ClusteredGraph {
        let moves = self.asymmetric_edge_set();
        let mut graph = self.graph.clone();
        for &(a, b) in &moves.edges {
            graph.remove(a, b);
        }
        for &(a, b) in &moves.edges {
            let i = a;
            let j = b - self.q;
            graph.insert(j, self.q + i);
        }
        ClusteredGraph { q: self.q, graph }
    }

    pub fn asymmetric_edge_set(&self) -> AsymmetricEdgeSet {
        let q = self.q;
        let mut edges = Vec::new();
        for i in 0..q {
            for b in self.graph.neighbors(i).filter(|&b| b >= q) {
                let j = b - q;
                if i != j && !self.graph.has_edge(j, q + i) {
                    edges.push((i, b));
                }
            }
        }
        AsymmetricEdgeSet { edges }
    }

    /// `G = G^τ` under the identity labelling.
    pub fn is_partially_symmetric(&self) -> bool {
        self.asymmetric_edge_set().is_empty()
    }

    pub fn edge_partition(&self) -> EdgePartition {
        let mut p = EdgePartition::default();
        for (u, v) in self.graph.edges() {
            match (self.cluster_of(u), self.cluster_of(v)) {
                (Cluster::First, Cluster::First) => p.intra1.push((u, v)),
                (Cluster::Second, Cluster::Second) => p.intra2.push((u, v)),
                _ => p.cross.push((u, v)),
            }
        }
        p
    }

    /// Disjoint union with clusters concatenated: the slots of `other` follow
    /// those of `self` inside each cluster, so `τ` commutes with the union.
    pub fn disjoint_union(&self, other: &ClusteredGraph) -> ClusteredGraph {
        let q = self.q + other.q;
        let remap = |g: &ClusteredGraph, offset: usize, v: usize| {
            let (mu, i) = (v / g.q, v % g.q);
            mu * q + offset + i
        };
        let mut graph = Graph::empty(2 * q);
        for (u, v) in self.graph.edges() {
            graph.insert(remap(self, 0, u), remap(self, 0, v));
        }
        for (u, v) in other.graph.edges() {
            graph.insert(remap(other, self.q, u), remap(other, self.q, v));
        }
        ClusteredGraph { q, graph }
    }

    /// Appends `r` slots to each cluster (new slots `q+1..=q+r`).
    pub fn extended(&self, r: usize) -> ClusteredGraph {
        self.disjoint_union(&ClusteredGraph::empty(r))
    }

    /// Copy with extra edges given as linear indices.
    pub fn with_edges(&self, edges: &[(usize, usize)]) -> Result<ClusteredGraph> {
        let mut graph = self.graph.clone();
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= graph.order() {
                    return Err(Error::VertexOutOfRange {
                        vertex: w,
                        order: graph.order(),
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            graph.insert(u, v);
        }
        Ok(ClusteredGraph { q: self.q, graph })
    }

    /// Copy with the given edges removed (absent edges are ignored).
    pub fn without_edges(&self, edges: &[(usize, usize)]) -> ClusteredGraph {
        let mut graph = self.graph.clone();
        for &(u, v) in edges {
            if u < graph.order() && v < graph.order() {
                graph.remove(u, v);
            }
        }
        ClusteredGraph { q: self.q, graph }
    }

    /// Sum of degrees over one cluster.
    pub fn cluster_degree_sum(&self, cluster: Cluster) -> usize {
        let range = match cluster {
            Cluster::First => 0..self.q,
            Cluster::Second => self.q..2 * self.q,
        };
        range.map(|v| self.graph.degree(v)).sum()
    }

    /// Image under the cluster swap `v_{1,i} ↔ v_{2,i}`.
    pub fn cluster_swapped(&self) -> ClusteredGraph {
        let q = self.q;
        let perm: Vec<usize> = (0..2 * q).map(|v| (v + q) % (2 * q)).collect();
        ClusteredGraph {
            q,
            graph: self.graph.permuted(&perm),
        }
    }
}

impl Deref for ClusteredGraph {
    type Target = Graph;

    fn deref(&self) -> &Graph {
        &self.graph
    }
}

impl AsRef<Graph> for ClusteredGraph {
    fn as_ref(&self) -> &Graph {
        &self.graph
    }
}

impl fmt::Debug for ClusteredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ClusteredGraph(q={}, edges={:?})",
            self.q,
            self.graph.edges()
        )
    }
}

/// Number of labelled partially symmetric graphs on two clusters of size `q`:
/// `2^{q(3q-1)/2}`.
pub fn count_partially_symmetric(q: usize) -> BigUint {
    BigUint::from(1u8) << (q * (3 * q - 1) / 2)
}

/// Largest `q` accepted by [`brute_count_partially_symmetric`].
pub const BRUTE_PSYM_MAX_Q: usize = 4;

/// Counts labelled graphs on `2q` vertices fixed by the partial transpose by
/// enumerating every edge subset.
pub fn brute_count_partially_symmetric(q: usize) -> Result<BigUint> {
    if q == 0 {
        return Err(Error::EmptyClusters);
    }
    if q > BRUTE_PSYM_MAX_Q {
        return Err(Error::OrderTooLarge {
            op: "brute-force partial symmetry count",
            order: 2 * q,
            limit: 2 * BRUTE_PSYM_MAX_Q,
        });
    }
    let n = 2 * q;
    // index every unordered pair of vertices
    let mut index = vec![vec![usize::MAX; n]; n];
    let mut pairs = 0;
    for u in 0..n {
        for v in u + 1..n {
            index[u][v] = pairs;
            index[v][u] = pairs;
            pairs += 1;
        }
    }
    let cross = |i: usize, j: usize| index[i][q + j];
    let transpose = |mask: u64| -> u64 {
        let mut out = mask;
        for i in 0..q {
            for j in 0..q {
                if i != j && mask >> cross(i, j) & 1 == 1 && mask >> cross(j, i) & 1 == 0 {
                    out &= !(1 << cross(i, j));
                }
            }
        }
        for i in 0..q {
            for j in 0..q {
                if i != j && mask >> cross(i, j) & 1 == 1 && mask >> cross(j, i) & 1 == 0 {
                    out |= 1 << cross(j, i);
                }
            }
        }
        out
    };
    let count = (0u64..1 << pairs).filter(|&m| transpose(m) == m).count();
    Ok(BigUint::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> ClusteredGraph {
        ClusteredGraph::build(2, &[(0, 2), (1, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn build_normalizes_and_rejects() {
        let a = ClusteredGraph::build(2, &[(0, 2), (2, 0), (0, 2)]).unwrap();
        let b = ClusteredGraph::build(2, &[(0, 2)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.size(), 1);
        assert_eq!(
            ClusteredGraph::build(2, &[(0, 4)]),
            Err(Error::VertexOutOfRange {
                vertex: 4,
                order: 4
            })
        );
        assert_eq!(ClusteredGraph::build(2, &[(1, 1)]), Err(Error::SelfLoop(1)));
        assert_eq!(ClusteredGraph::build(0, &[]), Err(Error::EmptyClusters));
        let e = ClusteredGraph::build(1, &[]).unwrap();
        assert_eq!((e.order(), e.size()), (2, 0));
    }

    #[test]
    fn transpose_of_k() {
        let kt = k().partial_transpose();
        assert_eq!(kt.edges(), vec![(0, 2), (0, 3), (2, 3)]);
        assert_eq!(kt.partial_transpose(), k());
    }

    #[test]
    fn transpose_of_labelled_path() {
        // v23-v22-v21-v12-v13
        let g = ClusteredGraph::build(3, &[(5, 4), (4, 3), (3, 1), (1, 2)]).unwrap();
        let want = ClusteredGraph::build(3, &[(2, 1), (0, 4), (4, 5), (3, 4)]).unwrap();
        assert_eq!(g.partial_transpose(), want);
        // the isomorphic copy v23-v22-v21-v11-v12 is fixed
        let g0 = ClusteredGraph::build(3, &[(5, 4), (4, 3), (3, 0), (0, 1)]).unwrap();
        assert!(g0.is_partially_symmetric());
    }

    #[test]
    fn asymmetric_edges() {
        assert_eq!(k().asymmetric_edge_set().edges, vec![(1, 2)]);
        let q = 3;
        let all: Vec<_> = (0..6)
            .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
            .collect();
        let complete = ClusteredGraph::build(q, &all).unwrap();
        assert!(complete.asymmetric_edge_set().is_empty());
        assert!(ClusteredGraph::empty(4).is_partially_symmetric());
        assert!(!k().is_partially_symmetric());
    }

    #[test]
    fn drawn_partially_symmetric_examples() {
        for edges in [
            vec![(1, 3)],
            vec![(0, 1)],
            vec![(0, 3), (1, 2)],
            vec![(0, 2), (0, 3), (1, 2), (2, 3)],
        ] {
            assert!(ClusteredGraph::build(2, &edges)
                .unwrap()
                .is_partially_symmetric());
        }
    }

    #[test]
    fn partition_of_k() {
        let p = k().edge_partition();
        assert!(p.intra1.is_empty());
        assert_eq!(p.intra2, vec![(2, 3)]);
        assert_eq!(p.cross, vec![(0, 2), (1, 2)]);
        assert_eq!(
            ClusteredGraph::empty(3).edge_partition(),
            EdgePartition::default()
        );
    }

    #[test]
    fn union_layout() {
        let e = ClusteredGraph::build(1, &[(0, 1)]).unwrap();
        let g1 = k().disjoint_union(&e);
        // K plus the diagonal (v13, v23)
        let want = ClusteredGraph::build(3, &[(0, 3), (1, 3), (3, 4), (2, 5)]).unwrap();
        assert_eq!(g1, want);
        assert_eq!(k().disjoint_union(&ClusteredGraph::empty(0)), k());
        let two = e.disjoint_union(&e);
        assert_eq!(two.edges(), vec![(0, 2), (1, 3)]);
        assert!(two.is_partially_symmetric());
    }

    #[test]
    fn psym_counts_small() {
        assert_eq!(count_partially_symmetric(1), BigUint::from(2u8));
        assert_eq!(count_partially_symmetric(2), BigUint::from(32u8));
        assert_eq!(count_partially_symmetric(3), BigUint::from(4096u32));
        for q in 1..=3 {
            assert_eq!(
                brute_count_partially_symmetric(q).unwrap(),
                count_partially_symmetric(q)
            );
        }
        assert!(brute_count_partially_symmetric(5).is_err());
    }

    #[test]
    fn slots_and_names() {
        let g = ClusteredGraph::empty(3);
        assert_eq!(g.vertex(2, 3), 5);
        assert_eq!(g.slot(4), (2, 2));
        assert_eq!(g.vertex_name(1), "v1,2");
    }

    #[test]
    fn wide_graphs_use_multiword_rows() {
        let mut edges = vec![(0, 99), (5, 70)];
        edges.push((64, 65));
        let g = Graph::from_edges(100, &edges).unwrap();
        assert_eq!(g.edges(), vec![(0, 99), (5, 70), (64, 65)]);
        assert_eq!(g.neighbors(99).collect::<Vec<_>>(), vec![0]);
        let c = ClusteredGraph::from_graph(g).unwrap();
        assert_eq!(c.partial_transpose().partial_transpose(), c);
    }
}
