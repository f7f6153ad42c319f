//! Hand-transcribed graphs from the worked examples and figures.
//!
//! Edges are written with two-digit slot labels: `23` is `v_{2,3}`, the third
//! vertex of the second cluster. These graphs are independent of the
//! generator constructors so the two can be compared.

use crate::graph::{ClusteredGraph, Graph};

fn slot(q: usize, label: usize) -> usize {
    let (mu, i) = (label / 10, label % 10);
    assert!(
        (1..=2).contains(&mu) && (1..=q).contains(&i),
        "bad slot label {label}"
    );
    (mu - 1) * q + (i - 1)
}

/// Builds a clustered graph from two-digit slot labels.
pub fn labelled(q: usize, edges: &[(usize, usize)]) -> ClusteredGraph {
    let linear: Vec<_> = edges
        .iter()
        .map(|&(a, b)| (slot(q, a), slot(q, b)))
        .collect();
    ClusteredGraph::build(q, &linear).expect("fixture edges are valid")
}

/// The smallest graph that is cospectral but not isomorphic to its partial
/// transpose: a star on v11, v12, v22 centred at v21.
pub fn k() -> ClusteredGraph {
    labelled(2, &[(11, 21), (12, 21), (21, 22)])
}

/// The drawn partial transpose of [`k`]: a triangle plus an isolated vertex.
pub fn k_tau() -> ClusteredGraph {
    labelled(2, &[(11, 21), (11, 22), (21, 22)])
}

/// Coefficients of `λ^4 - 6λ^3 + 9λ^2 - 4λ`, shared by [`k`] and [`k_tau`].
pub const K_POLYNOMIAL: [i64; 5] = [1, -6, 9, -4, 0];

/// A labelled path fixed by the partial transpose.
pub fn labelling_g0() -> ClusteredGraph {
    labelled(3, &[(23, 22), (22, 21), (21, 11), (11, 12)])
}

/// An isomorphic copy of [`labelling_g0`] that the transpose moves.
pub fn labelling_g() -> ClusteredGraph {
    labelled(3, &[(23, 22), (22, 21), (21, 12), (12, 13)])
}

pub fn labelling_g_tau() -> ClusteredGraph {
    labelled(3, &[(13, 12), (11, 22), (22, 23), (21, 22)])
}

/// Four small partially symmetric graphs on two clusters of two.
pub fn partially_symmetric_drawings() -> Vec<ClusteredGraph> {
    vec![
        labelled(2, &[(12, 22)]),
        labelled(2, &[(11, 12)]),
        labelled(2, &[(11, 22), (12, 21)]),
        labelled(2, &[(11, 21), (11, 22), (12, 21), (21, 22)]),
    ]
}

/// A six-vertex graph that is not cospectral to its partial transpose.
pub fn counterexample() -> ClusteredGraph {
    labelled(
        3,
        &[
            (11, 21),
            (11, 22),
            (12, 22),
            (13, 23),
            (13, 22),
            (21, 22),
            (23, 22),
        ],
    )
}

pub fn counterexample_tau() -> ClusteredGraph {
    labelled(
        3,
        &[
            (11, 21),
            (12, 22),
            (12, 21),
            (13, 23),
            (12, 23),
            (21, 22),
            (23, 22),
        ],
    )
}

/// Published four-decimal spectra of [`counterexample`] and its transpose.
pub const COUNTEREXAMPLE_SPECTRUM: [f64; 6] = [0.6277, 1.0, 1.0, 2.0, 3.0, 6.3723];
pub const COUNTEREXAMPLE_TAU_SPECTRUM: [f64; 6] = [0.3542, 0.5858, 2.0, 2.0, 3.4142, 5.6458];

/// Two cospectral six-vertex graphs that no cluster labelling relates by a
/// partial transpose. Vertices 1..6 of the drawing are 0..5 here.
pub fn non_transpose_pair() -> (Graph, Graph) {
    let shift = |e: &[(usize, usize)]| -> Vec<(usize, usize)> {
        e.iter().map(|&(u, v)| (u - 1, v - 1)).collect()
    };
    let a = shift(&[(1, 4), (1, 2), (1, 5), (1, 6), (2, 5), (2, 6), (2, 4)]);
    let b = shift(&[(1, 4), (1, 2), (1, 5), (1, 6), (2, 5), (2, 4), (4, 5)]);
    (
        Graph::from_edges(6, &a).unwrap(),
        Graph::from_edges(6, &b).unwrap(),
    )
}

/// The eight-vertex comparison graph. The bottom row `D0..D3` is the first
/// cluster and the top row `C0..C3` the second.
pub fn switching_g() -> ClusteredGraph {
    labelled(
        4,
        &[(11, 12), (12, 13), (13, 14), (22, 23), (21, 12), (12, 24)],
    )
}

/// The Godsil–McKay switched graph drawn next to [`switching_g`].
pub fn switching_gm() -> ClusteredGraph {
    labelled(
        4,
        &[(11, 12), (12, 13), (13, 14), (22, 23), (22, 12), (12, 23)],
    )
}

/// The drawn partial transpose of [`switching_g`].
pub fn switching_g_tau() -> ClusteredGraph {
    labelled(
        4,
        &[(11, 12), (12, 13), (13, 14), (22, 23), (11, 22), (22, 14)],
    )
}

fn cycle(mu: usize, q: usize) -> Vec<(usize, usize)> {
    (1..=q)
        .map(|i| (10 * mu + i, 10 * mu + i % q + 1))
        .collect()
}

fn path(mu: usize, q: usize) -> Vec<(usize, usize)> {
    (1..q).map(|i| (10 * mu + i, 10 * mu + i + 1)).collect()
}

fn with(mut base: Vec<(usize, usize)>, extra: &[(usize, usize)]) -> Vec<(usize, usize)> {
    base.extend_from_slice(extra);
    base
}

/// Two 5-cycles, chord v12–v14, cross edges v12–v22 and v12–v24.
pub fn two_cycles_with_chord() -> ClusteredGraph {
    let mut e = with(cycle(1, 5), &cycle(2, 5));
    e.extend([(12, 14), (12, 22), (12, 24)]);
    labelled(5, &e)
}

/// Triangle on the first cluster, second triangle missing v21–v22, cross
/// edges v11–v21 and v11–v22.
pub fn broken_triangles() -> ClusteredGraph {
    labelled(
        3,
        &[
            (11, 12),
            (12, 13),
            (13, 11),
            (22, 23),
            (23, 21),
            (11, 21),
            (11, 22),
        ],
    )
}

/// A 5-cycle over a 5-path with end cross edges and three diagonals.
pub fn cycle_over_path() -> ClusteredGraph {
    let e = with(cycle(1, 5), &path(2, 5));
    labelled(
        5,
        &with(e, &[(11, 21), (11, 25), (12, 22), (13, 23), (15, 25)]),
    )
}

/// [`k`] plus a disjoint diagonal edge v13–v23.
pub fn k_plus_diagonal() -> ClusteredGraph {
    labelled(3, &[(11, 21), (12, 21), (21, 22), (13, 23)])
}

/// Two 5-cycles, the second missing v23–v24, cross v13–v23 and v13–v24,
/// before and after adding the pair v12–v15, v22–v25.
pub fn paired_chords() -> (ClusteredGraph, ClusteredGraph) {
    let mut base: Vec<_> = with(cycle(1, 5), &cycle(2, 5));
    base.retain(|&e| e != (23, 24));
    base.extend([(13, 23), (13, 24)]);
    let g = labelled(5, &base);
    let g1 = labelled(5, &with(base, &[(12, 15), (22, 25)]));
    (g, g1)
}

/// Two 5-cycles, the second missing v21–v22, cross v11–v21 and v11–v22,
/// with the pair v13–v15, v23–v25, before and after adding the mirror-closed
/// cross set on slots 3 and 5.
pub fn symmetric_cross_block() -> (ClusteredGraph, ClusteredGraph) {
    let mut base: Vec<_> = with(cycle(1, 5), &cycle(2, 5));
    base.retain(|&e| e != (21, 22));
    base.extend([(11, 21), (11, 22), (13, 15), (23, 25)]);
    let g = labelled(5, &base);
    let g1 = labelled(5, &with(base, &[(13, 23), (15, 25), (13, 25), (15, 23)]));
    (g, g1)
}

/// [`broken_triangles`] grown by three vertices per cluster: a tree on the
/// first side, a triangle with a hair on the second, one new cross edge.
pub fn grown_broken_triangles() -> ClusteredGraph {
    labelled(
        6,
        &[
            (11, 12),
            (12, 13),
            (13, 11),
            (22, 23),
            (23, 21),
            (11, 21),
            (11, 22),
            (13, 14),
            (14, 15),
            (14, 16),
            (23, 24),
            (23, 25),
            (24, 25),
            (25, 26),
            (14, 24),
        ],
    )
}

/// Triangle over a 3-path with cross v11–v21 and v11–v23, grown by three
/// vertices per cluster.
pub fn grown_triangle_over_path() -> ClusteredGraph {
    labelled(
        6,
        &[
            (11, 12),
            (12, 13),
            (13, 11),
            (21, 22),
            (22, 23),
            (11, 21),
            (11, 23),
            (12, 14),
            (14, 15),
            (14, 16),
            (22, 25),
            (24, 25),
            (25, 26),
        ],
    )
}

/// A six-vertex graph whose partial transpose equals its cluster swap.
pub fn swap_symmetric_base() -> ClusteredGraph {
    labelled(
        3,
        &[
            (11, 12),
            (12, 22),
            (22, 21),
            (21, 11),
            (12, 23),
            (11, 13),
            (21, 23),
        ],
    )
}

/// [`swap_symmetric_base`] with one new vertex per cluster and the edge
/// v11–v14.
pub fn swap_symmetric_grown() -> ClusteredGraph {
    labelled(
        4,
        &[
            (11, 12),
            (12, 22),
            (22, 21),
            (21, 11),
            (12, 23),
            (11, 13),
            (21, 23),
            (11, 14),
        ],
    )
}

/// A 6-cycle over a 6-path joined at v11 to both path ends.
pub fn book_graph() -> ClusteredGraph {
    let e = with(cycle(1, 6), &path(2, 6));
    labelled(6, &with(e, &[(11, 21), (11, 26)]))
}

/// Edges of [`book_graph`] whose removal keeps the property.
pub const BOOK_OPTIONAL: [(usize, usize); 2] = [(13, 14), (23, 24)];

/// The ten-vertex analogue of [`book_graph`].
pub fn small_book_graph() -> ClusteredGraph {
    let e = with(cycle(1, 5), &path(2, 5));
    labelled(5, &with(e, &[(11, 21), (11, 25)]))
}

/// Edges of [`small_book_graph`] that only work when removed together.
pub const SMALL_BOOK_REMOVABLE: [(usize, usize); 4] = [(12, 13), (13, 14), (22, 23), (23, 24)];

/// An eight-vertex pair: a triangle joined at v11 to three of four vertices
/// of a star centred at v24, and the drawn partner.
pub fn hub_pair() -> (ClusteredGraph, ClusteredGraph) {
    let g = labelled(
        4,
        &[
            (11, 12),
            (12, 13),
            (11, 13),
            (11, 21),
            (11, 22),
            (11, 23),
            (23, 24),
            (21, 24),
            (22, 24),
        ],
    );
    let h = labelled(
        4,
        &[
            (11, 12),
            (12, 13),
            (11, 13),
            (11, 21),
            (21, 12),
            (21, 13),
            (23, 24),
            (21, 24),
            (22, 24),
        ],
    );
    (g, h)
}

/// Maps two-digit slot labels of a fixture with cluster size `q` to linear
/// indices.
pub fn slot_edges(q: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    edges
        .iter()
        .map(|&(a, b)| (slot(q, a), slot(q, b)))
        .collect()
}
