//! Strategies and property checks shared by the property suite and the
//! acceptance run.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use qspectral_core::graph::Cluster;
use qspectral_core::iso::{are_isomorphic, canonical_form};
use qspectral_core::spectral::{poly_multiply, q_polynomial};
use qspectral_core::tu::{tu_coefficients, DEFAULT_SUBSET_BUDGET};
use qspectral_core::{ClusteredGraph, Graph};

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

/// Graphs on `min_n..=max_n` vertices with a random edge density.
pub fn graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n, 0.0..=1.0f64).prop_flat_map(|(n, p)| {
        let pairs = all_pairs(n);
        proptest::collection::vec(proptest::bool::weighted(p.clamp(0.01, 0.99)), pairs.len())
            .prop_map(move |bits| {
                let e: Vec<_> = pairs
                    .iter()
                    .zip(bits)
                    .filter(|(_, b)| *b)
                    .map(|(e, _)| *e)
                    .collect();
                Graph::from_edges(n, &e).unwrap()
            })
    })
}

/// Clustered graphs with `1..=max_q` vertices per cluster.
pub fn clustered(max_q: usize) -> impl Strategy<Value = ClusteredGraph> {
    (1..=max_q).prop_flat_map(|q| {
        graph(2 * q, 2 * q).prop_map(move |g| ClusteredGraph::build(q, &g.edges()).unwrap())
    })
}

/// A graph together with a relabelling of its vertices.
pub fn graph_and_permutation(
    min_n: usize,
    max_n: usize,
) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    graph(min_n, max_n).prop_flat_map(|g| {
        let n = g.order();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

pub fn involution(g: &ClusteredGraph) -> Result<(), TestCaseError> {
    prop_assert_eq!(&g.partial_transpose().partial_transpose(), g);
    Ok(())
}

pub fn degree_sums(g: &ClusteredGraph) -> Result<(), TestCaseError> {
    let t = g.partial_transpose();
    for c in [Cluster::First, Cluster::Second] {
        prop_assert_eq!(g.cluster_degree_sum(c), t.cluster_degree_sum(c));
    }
    prop_assert_eq!(g.size(), t.size());
    Ok(())
}

pub fn transpose_commutes_with_union(
    g: &ClusteredGraph,
    h: &ClusteredGraph,
) -> Result<(), TestCaseError> {
    prop_assert_eq!(
        g.disjoint_union(h).partial_transpose(),
        g.partial_transpose().disjoint_union(&h.partial_transpose())
    );
    Ok(())
}

pub fn union_multiplies(g: &Graph, h: &Graph) -> Result<(), TestCaseError> {
    prop_assert_eq!(
        q_polynomial(&g.disjoint_union(h)),
        poly_multiply(&q_polynomial(g), &q_polynomial(h))
    );
    Ok(())
}

pub fn relabel_invariant(g: &Graph, perm: &[usize]) -> Result<(), TestCaseError> {
    prop_assert_eq!(
        canonical_form(g).unwrap(),
        canonical_form(&g.permuted(perm)).unwrap()
    );
    Ok(())
}

/// Isomorphic graphs share a polynomial, and canonical forms agree with the
/// backtracking decision.
pub fn isomorphic_implies_cospectral(g: &Graph, h: &Graph) -> Result<(), TestCaseError> {
    let iso = are_isomorphic(g, h).unwrap();
    prop_assert_eq!(
        iso,
        canonical_form(g).unwrap() == canonical_form(h).unwrap()
    );
    if iso {
        prop_assert_eq!(q_polynomial(g), q_polynomial(h));
    }
    Ok(())
}

pub fn tu_matches_determinant(g: &Graph) -> Result<(), TestCaseError> {
    let p = q_polynomial(g);
    let tu = tu_coefficients(g, DEFAULT_SUBSET_BUDGET).unwrap();
    for c in &tu {
        prop_assert_eq!(&c.p_j, p.coeff(c.j), "j = {}", c.j);
    }
    Ok(())
}
