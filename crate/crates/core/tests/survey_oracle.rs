//! Survey results against brute-force oracles that share no code with the
//! library's canonical forms or determinant-based polynomials.

use std::collections::{BTreeMap, BTreeSet};

use qspectral_core::survey::{enumerate_graphs, pt_witness, survey_table, PtSearch, SurveyOptions};
use qspectral_core::Graph;

fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

fn adjacency_bits(n: usize, edges: &[(usize, usize)], perm: &[usize]) -> u64 {
    let idx = |u: usize, v: usize| {
        let (a, b) = (u.min(v), u.max(v));
        a * n - a * (a + 1) / 2 + (b - a - 1)
    };
    edges
        .iter()
        .fold(0u64, |acc, &(u, v)| acc | 1 << idx(perm[u], perm[v]))
}

/// Smallest relabelled bitstring over all permutations.
fn brute_canonical(n: usize, edges: &[(usize, usize)], perms: &[Vec<usize>]) -> u64 {
    perms
        .iter()
        .map(|p| adjacency_bits(n, edges, p))
        .min()
        .unwrap()
}

/// Characteristic polynomial of `D + A` by Faddeev–LeVerrier.
fn leverrier(n: usize, edges: &[(usize, usize)]) -> Vec<i128> {
    let mut q = vec![vec![0i128; n]; n];
    for &(u, v) in edges {
        q[u][v] = 1;
        q[v][u] = 1;
        q[u][u] += 1;
        q[v][v] += 1;
    }
    let mul = |a: &Vec<Vec<i128>>, b: &Vec<Vec<i128>>| -> Vec<Vec<i128>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                    .collect()
            })
            .collect()
    };
    let mut coeffs = vec![1i128];
    let mut m = vec![vec![0i128; n]; n];
    for k in 1..=n {
        // M_k = Q M_{k-1} + c_{k-1} I, c_k = -tr(Q M_k) / k
        let mut next = mul(&q, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += coeffs[k - 1];
        }
        m = next;
        let tr: i128 = (0..n).map(|i| mul(&q, &m)[i][i]).sum();
        assert_eq!(tr % k as i128, 0);
        coeffs.push(-tr / k as i128);
    }
    coeffs
}

/// Per edge count: (graphs in nontrivial classes) from labelled brute force.
fn brute_cospectral_rows(n: usize) -> BTreeMap<usize, usize> {
    let all = pairs(n);
    let perms = permutations(n);
    let mut classes: BTreeMap<u64, Vec<(usize, usize)>> = BTreeMap::new();
    for mask in 0u64..1 << all.len() {
        let edges: Vec<_> = (0..all.len())
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| all[b])
            .collect();
        let key = brute_canonical(n, &edges, &perms);
        classes.entry(key).or_insert(edges);
    }
    let mut by_poly: BTreeMap<Vec<i128>, usize> = BTreeMap::new();
    for edges in classes.values() {
        *by_poly.entry(leverrier(n, edges)).or_default() += 1;
    }
    let mut rows = BTreeMap::new();
    for edges in classes.values() {
        if by_poly[&leverrier(n, edges)] > 1 {
            *rows.entry(edges.len()).or_default() += 1;
        }
    }
    rows
}

#[test]
fn cospectral_rows_match_brute_force() {
    for n in 2..=6 {
        let table = survey_table(n, SurveyOptions::default()).unwrap();
        let computed: BTreeMap<usize, usize> = table
            .rows
            .iter()
            .map(|r| (r.m, r.cospectral_count))
            .collect();
        assert_eq!(computed, brute_cospectral_rows(n), "n = {n}");
    }
}

#[test]
fn pt_counts_match_plain_search() {
    for n in [4, 6] {
        let table = survey_table(n, SurveyOptions::default()).unwrap();
        for (row, m) in table.rows.iter().map(|r| (r, r.m)) {
            let plain = table
                .classes
                .iter()
                .flat_map(|c| &c.members)
                .map(|mem| mem.form.to_graph())
                .filter(|g| g.size() == m)
                .filter(|g| pt_witness(g, PtSearch::Plain, u64::MAX).unwrap().is_some())
                .count();
            assert_eq!(row.pt_count, plain, "n = {n}, m = {m}");
        }
    }
}

fn automorphisms(g: &Graph, perms: &[Vec<usize>]) -> u64 {
    let edges = g.edges();
    let n = g.order();
    let own = adjacency_bits(n, &edges, &(0..n).collect::<Vec<_>>());
    perms
        .iter()
        .filter(|p| adjacency_bits(n, &edges, p) == own)
        .count() as u64
}

#[test]
fn seven_vertex_enumeration_covers_every_labelled_graph() {
    // Σ n!/|Aut(G)| over one representative per class counts labelled graphs
    let n = 7;
    let perms = permutations(n);
    let graphs = enumerate_graphs(n).unwrap();
    assert_eq!(graphs.len(), 1044);
    let labelled: u64 = graphs.iter().map(|g| 5040 / automorphisms(g, &perms)).sum();
    assert_eq!(labelled, 1 << 21);
    let distinct: BTreeSet<u64> = graphs
        .iter()
        .map(|g| brute_canonical(n, &g.edges(), &perms))
        .collect();
    assert_eq!(distinct.len(), graphs.len());
}
