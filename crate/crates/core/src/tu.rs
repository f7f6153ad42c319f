//! Q-polynomial coefficients from TU subgraphs.
//!
//! A TU subgraph is a spanning subgraph whose components are trees or
//! unicyclic graphs with an odd cycle. With `W(H) = 4^c · ∏(1 + |E(T_i)|)`
//! (isolated vertices are 0-edge trees), `p_j = (-1)^j Σ W(H)` over the TU
//! subgraphs with `j` edges. This module computes that sum by enumeration and
//! serves as an independent check on [`crate::spectral::q_polynomial`].

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default cap on `C(m, j)` for a single coefficient.
pub const DEFAULT_SUBSET_BUDGET: u64 = 10_000_000;

/// Shape of one connected component of a TU subgraph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ComponentKind {
    Tree { edges: usize },
    OddUnicyclic { edges: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuComponent {
    pub vertices: Vec<usize>,
    pub kind: ComponentKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuSubgraph {
    pub edges: Vec<(usize, usize)>,
    pub components: Vec<TuComponent>,
}

impl TuSubgraph {
    /// Number of odd-unicyclic components.
    pub fn unicyclic_count(&self) -> usize {
        self.components
            .iter()
            .filter(|c| matches!(c.kind, ComponentKind::OddUnicyclic { .. }))
            .count()
    }

    /// Edge counts of the tree components.
    pub fn tree_sizes(&self) -> Vec<usize> {
        self.components
            .iter()
            .filter_map(|c| match c.kind {
                ComponentKind::Tree { edges } => Some(edges),
                _ => None,
            })
            .collect()
    }
}

/// Why an edge subset fails to be a TU subgraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum NotTu {
    /// A component whose only cycle has even length.
    EvenCycle { vertices: Vec<usize> },
    /// A component with two or more independent cycles.
    MultipleCycles { vertices: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum TuVerdict {
    Tu(TuSubgraph),
    NotTu(NotTu),
}

/// Classifies the spanning subgraph of `g` with the given edges.
pub fn classify_tu(g: &Graph, edge_subset: &[(usize, usize)]) -> Result<TuVerdict> {
    let n = g.order();
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(edge_subset.len());
    for &(u, v) in edge_subset {
        if !g.has_edge(u, v) {
            return Err(Error::EdgeNotInGraph(u, v));
        }
        let e = (u.min(v), u.max(v));
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    edges.sort_unstable();

    let mut dsu = Dsu::new(n);
    for &(u, v) in &edges {
        dsu.union(u, v);
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        members[dsu.find(v)].push(v);
    }
    let mut edge_count = vec![0usize; n];
    for &(u, _) in &edges {
        edge_count[dsu.find(u)] += 1;
    }

    let mut components = Vec::new();
    for root in 0..n {
        if members[root].is_empty() {
            continue;
        }
        let verts = std::mem::take(&mut members[root]);
        let e = edge_count[root];
        let kind = match e.cmp(&verts.len()) {
            std::cmp::Ordering::Less => ComponentKind::Tree { edges: e },
            std::cmp::Ordering::Equal => {
                if has_odd_cycle(&edges, &verts) {
                    ComponentKind::OddUnicyclic { edges: e }
                } else {
                    return Ok(TuVerdict::NotTu(NotTu::EvenCycle { vertices: verts }));
                }
            }
            std::cmp::Ordering::Greater => {
                return Ok(TuVerdict::NotTu(NotTu::MultipleCycles { vertices: verts }))
            }
        };
        components.push(TuComponent {
            vertices: verts,
            kind,
        });
    }
    components.sort_by_key(|c| c.vertices[0]);
    Ok(TuVerdict::Tu(TuSubgraph { edges, components }))
}

/// Two-colouring test restricted to one component.
fn has_odd_cycle(edges: &[(usize, usize)], verts: &[usize]) -> bool {
    let inside = |x: usize| verts.binary_search(&x).is_ok();
    let local: Vec<(usize, usize)> = edges.iter().copied().filter(|&(u, _)| inside(u)).collect();
    let mut colour: std::collections::HashMap<usize, bool> = Default::default();
    let mut stack = vec![verts[0]];
    colour.insert(verts[0], false);
    while let Some(x) = stack.pop() {
        let cx = colour[&x];
        for &(u, v) in &local {
            let y = if u == x {
                v
            } else if v == x {
                u
            } else {
                continue;
            };
            match colour.get(&y) {
                Some(&cy) if cy == cx => return true,
                Some(_) => {}
                None => {
                    colour.insert(y, !cx);
                    stack.push(y);
                }
            }
        }
    }
    false
}

/// `W(H) = 4^c · ∏ (1 + |E(T_i)|)`.
pub fn tu_weight(h: &TuSubgraph) -> BigUint {
    let mut w = BigUint::one() << (2 * h.unicyclic_count());
    for e in h.tree_sizes() {
        w *= BigUint::from(1 + e);
    }
    w
}

/// Result of a TU enumeration for one edge count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuCoefficient {
    pub j: usize,
    /// `(-1)^j` times the total weight.
    pub p_j: BigInt,
    /// Number of TU subgraphs with `j` edges.
    pub count: u64,
    /// Total weight before the sign.
    pub weight: BigUint,
}

/// `p_j` from the TU expansion. Refuses when `C(m, j)` exceeds `budget`.
pub fn coefficient_via_tu(g: &Graph, j: usize, budget: u64) -> Result<TuCoefficient> {
    let n = g.order();
    if j > n {
        return Err(Error::hypothesis(
            "coefficient index",
            format!("j = {j} exceeds the vertex count {n}"),
        ));
    }
    let m = g.size();
    check_budget(m, j, budget)?;
    let mut acc = Accumulator::new(j);
    if j <= m {
        Enumerator::new(g, j).run(&mut acc);
    }
    Ok(acc.finish(j))
}

/// All coefficients `p_0..p_n` in one enumeration.
pub fn tu_coefficients(g: &Graph, budget: u64) -> Result<Vec<TuCoefficient>> {
    let n = g.order();
    let m = g.size();
    for j in 0..=n.min(m) {
        check_budget(m, j, budget)?;
    }
    let mut acc = Accumulator::new(n);
    Enumerator::new(g, n.min(m)).run(&mut acc);
    Ok((0..=n).map(|j| acc.finish(j)).collect())
}

/// Equal total TU weight over `j`-edge TU subgraphs.
pub fn are_comparable(g: &Graph, h: &Graph, j: usize, budget: u64) -> Result<bool> {
    Ok(coefficient_via_tu(g, j, budget)?.weight == coefficient_via_tu(h, j, budget)?.weight)
}

fn binomial(m: usize, j: usize) -> u128 {
    if j > m {
        return 0;
    }
    let j = j.min(m - j);
    (0..j).fold(1u128, |acc, i| acc * (m - i) as u128 / (i + 1) as u128)
}

fn check_budget(m: usize, j: usize, budget: u64) -> Result<()> {
    let c = binomial(m, j);
    if c > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "TU enumeration C(m, j)",
            needed: format!("C({m}, {j}) = {c}"),
            limit: budget,
        });
    }
    Ok(())
}

struct Accumulator {
    weights: Vec<u128>,
    counts: Vec<u64>,
}

impl Accumulator {
    fn new(max_j: usize) -> Self {
        Accumulator {
            weights: vec![0; max_j + 1],
            counts: vec![0; max_j + 1],
        }
    }

    fn finish(&self, j: usize) -> TuCoefficient {
        let (weight, count) = if j < self.weights.len() {
            (BigUint::from(self.weights[j]), self.counts[j])
        } else {
            (BigUint::zero(), 0)
        };
        let signed = BigInt::from(weight.clone());
        TuCoefficient {
            j,
            p_j: if j.is_multiple_of(2) { signed } else { -signed },
            count,
            weight,
        }
    }
}

/// Union-find over vertices with path parity, used during enumeration.
#[derive(Clone)]
struct Dsu {
    parent: Vec<usize>,
    parity: Vec<bool>,
    edges: Vec<usize>,
    cyclic: Vec<bool>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            parity: vec![false; n],
            edges: vec![0; n],
            cyclic: vec![false; n],
        }
    }

    /// Root of `x` and the parity of the path from `x` to it.
    fn find_parity(&self, mut x: usize) -> (usize, bool) {
        let mut p = false;
        while self.parent[x] != x {
            p ^= self.parity[x];
            x = self.parent[x];
        }
        (x, p)
    }

    fn find(&self, x: usize) -> usize {
        self.find_parity(x).0
    }

    fn union(&mut self, u: usize, v: usize) {
        let (ru, _) = self.find_parity(u);
        let (rv, _) = self.find_parity(v);
        if ru != rv {
            self.parent[rv] = ru;
        }
    }

    /// Adds edge `(u, v)`. Returns `false` when the result can no longer be
    /// extended to a TU subgraph (even cycle or a second cycle).
    fn add_edge(&mut self, u: usize, v: usize) -> bool {
        let (ru, pu) = self.find_parity(u);
        let (rv, pv) = self.find_parity(v);
        if ru == rv {
            if self.cyclic[ru] || pu != pv {
                // endpoints of opposite colour close an even cycle
                return false;
            }
            self.cyclic[ru] = true;
            self.edges[ru] += 1;
            true
        } else {
            if self.cyclic[ru] && self.cyclic[rv] {
                return false;
            }
            self.parent[rv] = ru;
            self.parity[rv] = pu ^ pv ^ true;
            self.edges[ru] += self.edges[rv] + 1;
            self.cyclic[ru] |= self.cyclic[rv];
            true
        }
    }

    fn weight(&self) -> u128 {
        let mut w = 1u128;
        for x in 0..self.parent.len() {
            if self.parent[x] == x {
                w *= if self.cyclic[x] {
                    4
                } else {
                    1 + self.edges[x] as u128
                };
            }
        }
        w
    }
}

struct Enumerator {
    edges: Vec<(usize, usize)>,
    max_j: usize,
    n: usize,
}

impl Enumerator {
    fn new(g: &Graph, max_j: usize) -> Self {
        Enumerator {
            edges: g.edges(),
            max_j,
            n: g.order(),
        }
    }

    fn run(&self, acc: &mut Accumulator) {
        let dsu = Dsu::new(self.n);
        self.visit(&dsu, 0, 0, acc);
    }

    fn visit(&self, dsu: &Dsu, start: usize, depth: usize, acc: &mut Accumulator) {
        acc.weights[depth] += dsu.weight();
        acc.counts[depth] += 1;
        if depth == self.max_j {
            return;
        }
        for k in start..self.edges.len() {
            let (u, v) = self.edges[k];
            let mut next = dsu.clone();
            if next.add_edge(u, v) {
                self.visit(&next, k + 1, depth + 1, acc);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::q_polynomial;

    fn k() -> Graph {
        Graph::from_edges(4, &[(0, 2), (1, 2), (2, 3)]).unwrap()
    }

    fn kt() -> Graph {
        Graph::from_edges(4, &[(0, 2), (0, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn classify_k_and_kt() {
        let TuVerdict::Tu(h) = classify_tu(&k(), &k().edges()).unwrap() else {
            panic!("K is a tree");
        };
        assert_eq!(h.unicyclic_count(), 0);
        assert_eq!(h.tree_sizes(), vec![3]);
        assert_eq!(tu_weight(&h), BigUint::from(4u8));

        let TuVerdict::Tu(h) = classify_tu(&kt(), &kt().edges()).unwrap() else {
            panic!("triangle plus isolated vertex is TU");
        };
        assert_eq!(h.unicyclic_count(), 1);
        assert_eq!(h.tree_sizes(), vec![0]);
        assert_eq!(tu_weight(&h), BigUint::from(4u8));
    }

    #[test]
    fn even_cycle_and_theta_are_rejected() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        let square = [(0, 1), (1, 2), (2, 3), (0, 3)];
        assert!(matches!(
            classify_tu(&c4, &square).unwrap(),
            TuVerdict::NotTu(NotTu::EvenCycle { .. })
        ));
        assert!(matches!(
            classify_tu(&c4, &c4.edges()).unwrap(),
            TuVerdict::NotTu(NotTu::MultipleCycles { .. })
        ));
        assert_eq!(
            classify_tu(&k(), &[(0, 1)]),
            Err(Error::EdgeNotInGraph(0, 1))
        );
    }

    #[test]
    fn empty_subgraph_weighs_one() {
        let TuVerdict::Tu(h) = classify_tu(&k(), &[]).unwrap() else {
            unreachable!()
        };
        assert_eq!(h.components.len(), 4);
        assert_eq!(tu_weight(&h), BigUint::one());
    }

    #[test]
    fn coefficients_of_k() {
        let b = DEFAULT_SUBSET_BUDGET;
        assert_eq!(
            coefficient_via_tu(&k(), 1, b).unwrap().p_j,
            BigInt::from(-6)
        );
        assert_eq!(coefficient_via_tu(&k(), 2, b).unwrap().p_j, BigInt::from(9));
        let c3 = coefficient_via_tu(&k(), 3, b).unwrap();
        assert_eq!((c3.p_j.clone(), c3.count), (BigInt::from(-4), 1));
        assert_eq!(coefficient_via_tu(&k(), 4, b).unwrap().p_j, BigInt::zero());
        assert_eq!(coefficient_via_tu(&k(), 0, b).unwrap().p_j, BigInt::one());
        for j in 0..=4 {
            assert!(are_comparable(&k(), &kt(), j, b).unwrap());
        }
    }

    #[test]
    fn all_at_once_matches_polynomial() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 1)]).unwrap();
        let tu: Vec<BigInt> = tu_coefficients(&g, DEFAULT_SUBSET_BUDGET)
            .unwrap()
            .into_iter()
            .map(|c| c.p_j)
            .collect();
        assert_eq!(tu, q_polynomial(&g).coeffs());
    }

    #[test]
    fn budget_guard() {
        let all: Vec<_> = (0..8)
            .flat_map(|u| (u + 1..8).map(move |v| (u, v)))
            .collect();
        let k8 = Graph::from_edges(8, &all).unwrap();
        let err = coefficient_via_tu(&k8, 8, 1000).unwrap_err();
        assert!(err.is_budget());
        assert!(coefficient_via_tu(&k(), 7, 10).is_err());
    }
}
