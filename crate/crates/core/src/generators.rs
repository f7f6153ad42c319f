//! Constructive families of graphs that are Q-cospectral to their partial
//! transpose, and the procedures that grow them.
//!
//! Indices are 1-based slot numbers inside a cluster, matching the vertex
//! names `v_{mu,i}`. Every constructor returns a [`FamilyGraph`]; the claims
//! about it are only ever established by [`report`], which recomputes
//! cospectrality and isomorphism from scratch.

use num_bigint::BigUint;
use rand::seq::IndexedRandom;
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::ClusteredGraph;
use crate::iso::are_isomorphic;
use crate::spectral::{q_polynomial, vertex_deleted_polynomial, QPolynomial};

/// Slot `(mu, i)`: cluster `mu ∈ {1, 2}`, index `i ∈ 1..=q`.
pub type Slot = (usize, usize);

/// A generated graph with the distinguished pair `(i, j)` whose cross edge
/// `v_{1,i} v_{2,j}` the partial transpose moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyGraph {
    pub graph: ClusteredGraph,
    pub distinguished: Option<(usize, usize)>,
    pub family: &'static str,
    pub params: Value,
}

/// Outcome of checking a generated graph against its partial transpose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorReport {
    pub family: String,
    pub params: Value,
    pub graph: ClusteredGraph,
    pub transpose: ClusteredGraph,
    pub polynomial: QPolynomial,
    pub transpose_polynomial: QPolynomial,
    pub cospectral: bool,
    pub isomorphic: bool,
}

impl GeneratorReport {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family,
            "params": self.params,
            "q": self.graph.q(),
            "edges": self.graph.edges(),
            "transpose_edges": self.transpose.edges(),
            "polynomial": self.polynomial,
            "transpose_polynomial": self.transpose_polynomial,
            "cospectral": self.cospectral,
            "isomorphic": self.isomorphic,
        })
    }
}

/// Recomputes both claims for `g` against `g^τ`.
pub fn report(g: &FamilyGraph) -> Result<GeneratorReport> {
    report_graph(g.family, g.params.clone(), &g.graph)
}

pub fn report_graph(family: &str, params: Value, g: &ClusteredGraph) -> Result<GeneratorReport> {
    let transpose = g.partial_transpose();
    let polynomial = q_polynomial(g);
    let transpose_polynomial = q_polynomial(&transpose);
    let cospectral = polynomial == transpose_polynomial;
    let isomorphic = are_isomorphic(g, &transpose)?;
    Ok(GeneratorReport {
        family: family.to_string(),
        params,
        graph: g.clone(),
        transpose,
        polynomial,
        transpose_polynomial,
        cospectral,
        isomorphic,
    })
}

fn check_slot(q: usize, i: usize, rule: &'static str) -> Result<()> {
    if i == 0 || i > q {
        return Err(Error::hypothesis(
            rule,
            format!("index {i} outside 1..={q}"),
        ));
    }
    Ok(())
}

fn lin(q: usize, (mu, i): Slot) -> usize {
    (mu - 1) * q + (i - 1)
}

fn cycle_edges(q: usize, mu: usize) -> Vec<(usize, usize)> {
    (1..=q)
        .map(|i| (lin(q, (mu, i)), lin(q, (mu, i % q + 1))))
        .collect()
}

fn path_edges(q: usize, mu: usize) -> Vec<(usize, usize)> {
    (1..q)
        .map(|i| (lin(q, (mu, i)), lin(q, (mu, i + 1))))
        .collect()
}

/// Two q-cycles, a chord `v_{1,i} v_{1,j}` and cross edges `v_{1,i} v_{2,i}`,
/// `v_{1,i} v_{2,j}`. Needs `q ≥ 4`, `i < j` and the two slots non-adjacent on
/// the cycle.
pub fn theorem1_graph(q: usize, i: usize, j: usize) -> Result<FamilyGraph> {
    const RULE: &str = "two-cycle construction";
    if q < 4 {
        return Err(Error::hypothesis(RULE, format!("needs q >= 4, got {q}")));
    }
    check_slot(q, i, RULE)?;
    check_slot(q, j, RULE)?;
    if i >= j {
        return Err(Error::hypothesis(
            RULE,
            format!("needs i < j, got i={i}, j={j}"),
        ));
    }
    if j - i == 1 || j - i == q - 1 {
        return Err(Error::hypothesis(
            RULE,
            format!("v1{i} and v1{j} are adjacent on the cycle"),
        ));
    }
    let mut e = cycle_edges(q, 1);
    e.extend(cycle_edges(q, 2));
    e.push((lin(q, (1, i)), lin(q, (1, j))));
    e.push((lin(q, (1, i)), lin(q, (2, i))));
    e.push((lin(q, (1, i)), lin(q, (2, j))));
    Ok(FamilyGraph {
        graph: ClusteredGraph::build(q, &e)?,
        distinguished: Some((i, j)),
        family: "theorem1",
        params: json!({"q": q, "i": i, "j": j}),
    })
}

/// All admissible `(i, j)` for [`theorem1_graph`] at cluster size `q`.
pub fn theorem1_parameters(q: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=q {
        for j in i + 1..=q {
            if q >= 4 && j - i != 1 && j - i != q - 1 {
                out.push((i, j));
            }
        }
    }
    out
}

fn corollary1_inner(q: usize, i: usize, keep: bool) -> Result<FamilyGraph> {
    const RULE: &str = "broken-cycle construction";
    if q < 3 {
        return Err(Error::hypothesis(RULE, format!("needs q >= 3, got {q}")));
    }
    check_slot(q, i, RULE)?;
    let next = i % q + 1;
    let mut e = cycle_edges(q, 1);
    let removed = (lin(q, (2, i)), lin(q, (2, next)));
    e.extend(
        cycle_edges(q, 2)
            .into_iter()
            .filter(|&(a, b)| keep || ((a, b) != removed && (b, a) != removed)),
    );
    e.push((lin(q, (1, i)), lin(q, (2, i))));
    e.push((lin(q, (1, i)), lin(q, (2, next))));
    Ok(FamilyGraph {
        graph: ClusteredGraph::build(q, &e)?,
        distinguished: Some((i, next)),
        family: if keep {
            "corollary1-kept"
        } else {
            "corollary1"
        },
        params: json!({"q": q, "i": i}),
    })
}

/// Two q-cycles with cross edges `v_{1,i} v_{2,i}`, `v_{1,i} v_{2,i+1}` and
/// the edge `v_{2,i} v_{2,i+1}` removed (indices mod q).
pub fn corollary1_graph(q: usize, i: usize) -> Result<FamilyGraph> {
    corollary1_inner(q, i, false)
}

/// As [`corollary1_graph`] but keeping `v_{2,i} v_{2,i+1}`; this graph is
/// isomorphic to its partial transpose.
pub fn corollary1_kept_graph(q: usize, i: usize) -> Result<FamilyGraph> {
    corollary1_inner(q, i, true)
}

/// A q-cycle over a q-vertex path, cross edges `v_{1,1} v_{2,1}` and
/// `v_{1,1} v_{2,q}`, plus a diagonal `v_{1,k} v_{2,k}` for each `k` in
/// `diagonals ⊆ 2..=q`.
pub fn corollary2_graph(q: usize, diagonals: &[usize]) -> Result<FamilyGraph> {
    const RULE: &str = "cycle-over-path construction";
    if q < 3 {
        return Err(Error::hypothesis(RULE, format!("needs q >= 3, got {q}")));
    }
    let mut e = cycle_edges(q, 1);
    e.extend(path_edges(q, 2));
    e.push((lin(q, (1, 1)), lin(q, (2, 1))));
    e.push((lin(q, (1, 1)), lin(q, (2, q))));
    let mut diag = diagonals.to_vec();
    diag.sort_unstable();
    diag.dedup();
    for &k in &diag {
        check_slot(q, k, RULE)?;
        if k == 1 {
            return Err(Error::hypothesis(
                RULE,
                "diagonal 1 is already a mandatory edge",
            ));
        }
        e.push((lin(q, (1, k)), lin(q, (2, k))));
    }
    Ok(FamilyGraph {
        graph: ClusteredGraph::build(q, &e)?,
        distinguished: Some((1, q)),
        family: "corollary2",
        params: json!({"q": q, "diagonals": diag}),
    })
}

/// How strictly [`procedure1_union`] checks that the added part is fixed by
/// the partial transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FixedPartCheck {
    /// `G' = G'^τ` under the identity labelling.
    #[default]
    PartiallySymmetric,
    /// `G'` merely isomorphic to `G'^τ`.
    Isomorphic,
}

/// `G ∪ G'` with clusters concatenated.
pub fn procedure1_union(
    g: &FamilyGraph,
    gp: &ClusteredGraph,
    check: FixedPartCheck,
) -> Result<FamilyGraph> {
    const RULE: &str = "union with a fixed part";
    let ok = match check {
        FixedPartCheck::PartiallySymmetric => gp.is_partially_symmetric(),
        FixedPartCheck::Isomorphic => are_isomorphic(gp, &gp.partial_transpose())?,
    };
    if !ok {
        let what = match check {
            FixedPartCheck::PartiallySymmetric => "added part is not partially symmetric",
            FixedPartCheck::Isomorphic => "added part is not isomorphic to its partial transpose",
        };
        return Err(Error::hypothesis(RULE, what));
    }
    Ok(FamilyGraph {
        graph: g.graph.disjoint_union(gp),
        distinguished: g.distinguished,
        family: "procedure1",
        params: json!({"base": g.params, "base_family": g.family, "added_q": gp.q(), "added_edges": gp.edges()}),
    })
}

fn distinguished(g: &FamilyGraph, rule: &'static str) -> Result<(usize, usize)> {
    g.distinguished
        .ok_or_else(|| Error::hypothesis(rule, "base graph carries no distinguished pair"))
}

/// Adds `v_{1,k} v_{1,l}` and `v_{2,k} v_{2,l}` for each `(k, l)`, avoiding the
/// distinguished indices.
pub fn procedure2_add_pairs(g: &FamilyGraph, pairs: &[(usize, usize)]) -> Result<FamilyGraph> {
    const RULE: &str = "paired intra-cluster edges";
    let (i, j) = distinguished(g, RULE)?;
    let q = g.graph.q();
    let mut e = Vec::new();
    for &(k, l) in pairs {
        check_slot(q, k, RULE)?;
        check_slot(q, l, RULE)?;
        if [k, l].iter().any(|x| *x == i || *x == j) {
            return Err(Error::hypothesis(
                RULE,
                format!("pair ({k}, {l}) touches a distinguished index {i} or {j}"),
            ));
        }
        if k == l {
            return Err(Error::hypothesis(
                RULE,
                format!("pair ({k}, {l}) is a loop"),
            ));
        }
        for mu in 1..=2 {
            let (a, b) = (lin(q, (mu, k)), lin(q, (mu, l)));
            if g.graph.has_edge(a, b) {
                return Err(Error::hypothesis(
                    RULE,
                    format!("edge v{mu}{k} v{mu}{l} already present"),
                ));
            }
            e.push((a, b));
        }
    }
    Ok(FamilyGraph {
        graph: g.graph.with_edges(&e)?,
        distinguished: g.distinguished,
        family: "procedure2",
        params: json!({"base": g.params, "base_family": g.family, "pairs": pairs}),
    })
}

fn mirror_closed(cross: &[(usize, usize)]) -> Option<(usize, usize)> {
    cross
        .iter()
        .find(|&&(k, l)| !cross.contains(&(l, k)))
        .copied()
}

/// Adds cross edges `v_{1,k} v_{2,l}` forming a partially symmetric block on
/// indices outside the distinguished pair.
pub fn procedure3_add_psym_cross(g: &FamilyGraph, cross: &[(usize, usize)]) -> Result<FamilyGraph> {
    const RULE: &str = "partially symmetric cross block";
    let (i, j) = distinguished(g, RULE)?;
    let q = g.graph.q();
    if let Some((k, l)) = mirror_closed(cross) {
        return Err(Error::hypothesis(
            RULE,
            format!("cross edge v1{k} v2{l} lacks its mirror v1{l} v2{k}"),
        ));
    }
    let mut e = Vec::new();
    for &(k, l) in cross {
        check_slot(q, k, RULE)?;
        check_slot(q, l, RULE)?;
        if [k, l].iter().any(|x| *x == i || *x == j) {
            return Err(Error::hypothesis(
                RULE,
                format!("cross edge ({k}, {l}) touches a distinguished index {i} or {j}"),
            ));
        }
        e.push((lin(q, (1, k)), lin(q, (2, l))));
    }
    Ok(FamilyGraph {
        graph: g.graph.with_edges(&e)?,
        distinguished: g.distinguished,
        family: "procedure3",
        params: json!({"base": g.params, "base_family": g.family, "cross": cross}),
    })
}

/// Edges for growing a graph by `r` slots per cluster. Slots are numbered in
/// the grown graph, so new slots are `q+1..=q+r`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Extension {
    pub r: usize,
    /// Edges between new slots of the same cluster.
    pub intra_new: Vec<(Slot, Slot)>,
    /// Edges from an old slot to a new slot of the same cluster.
    pub attach: Vec<(Slot, Slot)>,
    /// Cross pairs `(k, l)` meaning `v_{1,k} v_{2,l}` between new slots;
    /// must be closed under `(k, l) ↦ (l, k)`.
    pub cross_new: Vec<(usize, usize)>,
}

impl Extension {
    fn params(&self) -> Value {
        json!({
            "r": self.r,
            "intra_new": self.intra_new,
            "attach": self.attach,
            "cross_new": self.cross_new,
        })
    }

    fn apply(&self, base: &ClusteredGraph, rule: &'static str) -> Result<ClusteredGraph> {
        let q0 = base.q();
        let q = q0 + self.r;
        let grown = base.extended(self.r);
        let is_new = |i: usize| i > q0 && i <= q;
        let is_old = |i: usize| i >= 1 && i <= q0;
        let mut e = Vec::new();
        for &(a, b) in &self.intra_new {
            if a.0 != b.0 || !(1..=2).contains(&a.0) || !is_new(a.1) || !is_new(b.1) || a == b {
                return Err(Error::hypothesis(
                    rule,
                    format!("intra edge {a:?}-{b:?} must join two new slots of one cluster"),
                ));
            }
            e.push((lin(q, a), lin(q, b)));
        }
        for &(old, new) in &self.attach {
            if old.0 != new.0 || !(1..=2).contains(&old.0) || !is_old(old.1) || !is_new(new.1) {
                return Err(Error::hypothesis(
                    rule,
                    format!("attach edge {old:?}-{new:?} must join an old and a new slot of one cluster"),
                ));
            }
            e.push((lin(q, old), lin(q, new)));
        }
        if let Some((k, l)) = mirror_closed(&self.cross_new) {
            return Err(Error::hypothesis(
                rule,
                format!("new cross edge v1{k} v2{l} lacks its mirror"),
            ));
        }
        for &(k, l) in &self.cross_new {
            if !is_new(k) || !is_new(l) {
                return Err(Error::hypothesis(
                    rule,
                    format!("new cross edge ({k}, {l}) must join new slots"),
                ));
            }
            e.push((lin(q, (1, k)), lin(q, (2, l))));
        }
        grown.with_edges(&e)
    }
}

/// Grows `g` by new vertices in both clusters. The distinguished slots
/// `v_{1,i}, v_{1,j}, v_{2,i}, v_{2,j}` must stay away from the new vertices.
pub fn procedure4_extend(g: &FamilyGraph, ext: &Extension) -> Result<FamilyGraph> {
    const RULE: &str = "growth around an asymmetric edge";
    let (i, j) = distinguished(g, RULE)?;
    let q0 = g.graph.q();
    if !g.graph.has_edge(lin(q0, (1, i)), lin(q0, (2, j)))
        || g.graph.has_edge(lin(q0, (1, j)), lin(q0, (2, i)))
    {
        return Err(Error::hypothesis(
            RULE,
            format!("v1{i} v2{j} must be present with its mirror absent"),
        ));
    }
    if ext.r == 0 {
        return Err(Error::hypothesis(
            RULE,
            "needs at least one new vertex per cluster",
        ));
    }
    if let Some(&(old, _)) = ext.attach.iter().find(|(old, _)| old.1 == i || old.1 == j) {
        return Err(Error::hypothesis(
            RULE,
            format!(
                "v{}{} is distinguished and may not join new vertices",
                old.0, old.1
            ),
        ));
    }
    Ok(FamilyGraph {
        graph: ext.apply(&g.graph, RULE)?,
        distinguished: g.distinguished,
        family: "procedure4",
        params: json!({"base": g.params, "base_family": g.family, "extension": ext.params()}),
    })
}

/// True when the cluster swap `v_{1,i} ↔ v_{2,i}` maps `g` onto `g^τ`.
/// Equivalently, the second cluster's internal edges copy the first's.
pub fn is_swap_symmetric(g: &ClusteredGraph) -> bool {
    g.cluster_swapped() == g.partial_transpose()
}

/// Grows a swap-symmetric `g0` with non-empty asymmetric set. Only
/// `attach_vertex`, which must avoid every asymmetric edge, joins the new
/// vertices; `ext.attach` must all start at it.
pub fn procedure5_extend(
    g0: &ClusteredGraph,
    attach_vertex: Slot,
    ext: &Extension,
) -> Result<FamilyGraph> {
    const RULE: &str = "growth of a swap-symmetric graph";
    if !is_swap_symmetric(g0) {
        return Err(Error::hypothesis(
            RULE,
            "the cluster swap does not map the graph onto its partial transpose",
        ));
    }
    let asym = g0.asymmetric_edge_set();
    if asym.is_empty() {
        return Err(Error::hypothesis(RULE, "asymmetric edge set is empty"));
    }
    let q0 = g0.q();
    if !(1..=2).contains(&attach_vertex.0) || attach_vertex.1 == 0 || attach_vertex.1 > q0 {
        return Err(Error::hypothesis(
            RULE,
            format!("bad attach vertex {attach_vertex:?}"),
        ));
    }
    if asym.touches(lin(q0, attach_vertex)) {
        return Err(Error::hypothesis(
            RULE,
            format!(
                "v{}{} is incident to an asymmetric edge",
                attach_vertex.0, attach_vertex.1
            ),
        ));
    }
    if let Some(&(old, _)) = ext.attach.iter().find(|(old, _)| *old != attach_vertex) {
        return Err(Error::hypothesis(
            RULE,
            format!(
                "only v{}{} may join new vertices, got {old:?}",
                attach_vertex.0, attach_vertex.1
            ),
        ));
    }
    if ext.r == 0 {
        return Err(Error::hypothesis(
            RULE,
            "needs at least one new vertex per cluster",
        ));
    }
    let (u, v) = asym.edges[0];
    let (i, j) = (u % q0 + 1, v % q0 + 1);
    Ok(FamilyGraph {
        graph: ext.apply(g0, RULE)?,
        distinguished: Some((i, j)),
        family: "procedure5",
        params: json!({
            "base_q": q0,
            "base_edges": g0.edges(),
            "attach_vertex": [attach_vertex.0, attach_vertex.1],
            "extension": ext.params(),
        }),
    })
}

/// Published family sizes. These are reported as claims, not certified.
pub fn family_count(family: &str, q: usize) -> Result<BigUint> {
    let exp = |e: i64| -> Result<BigUint> {
        if e < 0 {
            return Err(Error::hypothesis(
                "family count",
                format!("{family} is undefined at q={q}"),
            ));
        }
        Ok(BigUint::from(1u8) << e as u64)
    };
    let q = q as i64;
    match family {
        "theorem1" => exp(q - 2),
        "corollary1" => Ok(BigUint::from(1u8)),
        "procedure2" => exp(q * (q - 2) - 1),
        "procedure3" => exp((q - 2) * (3 * q - 7) / 2),
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

/// Family names understood by [`family_count`].
pub const COUNTED_FAMILIES: [&str; 4] = ["theorem1", "corollary1", "procedure2", "procedure3"];

// ---- seeded samplers ----

/// Which hypotheses a sampler draws from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hypotheses {
    /// Everything the construction's stated conditions allow.
    AsStated,
    /// The stated conditions plus the extra symmetry that exact checks show
    /// is needed: added intra pairs and cross blocks invariant under
    /// [`reflection`], growth attached only at slots it fixes, and growth of
    /// swap-symmetric graphs anchored at a vertex Q-cospectral to its partner.
    Refined,
}

/// The reflection of the q-cycle exchanging slots `i` and `j`:
/// `k ↦ i + j - k (mod q)`, 1-based.
pub fn reflection(q: usize, i: usize, j: usize, k: usize) -> usize {
    (i + j + 2 * q - k - 1) % q + 1
}

/// True when `v_{mu,k}` and `v_{3-mu,k}` have equal vertex-deleted
/// Q-minors in `g`.
pub fn is_cospectral_with_partner(g: &ClusteredGraph, (mu, k): Slot) -> bool {
    let q = g.q();
    let v = lin(q, (mu, k));
    let w = lin(q, (3 - mu, k));
    vertex_deleted_polynomial(g, v) == vertex_deleted_polynomial(g, w)
}

fn sample_base<R: Rng>(rng: &mut R, max_q: usize, hyp: Hypotheses) -> FamilyGraph {
    loop {
        let q = rng.random_range(4..=max_q);
        let kinds = match hyp {
            Hypotheses::AsStated => 3,
            Hypotheses::Refined => 2,
        };
        let g = match rng.random_range(0..kinds) {
            0 => {
                let params = theorem1_parameters(q);
                let &(i, j) = params.choose(rng).expect("q >= 4 has admissible pairs");
                theorem1_graph(q, i, j)
            }
            1 => corollary1_graph(q, rng.random_range(1..=q)),
            _ => {
                let diag: Vec<usize> = (2..=q).filter(|_| rng.random_bool(0.5)).collect();
                corollary2_graph(q, &diag)
            }
        };
        if let Ok(g) = g {
            return g;
        }
    }
}

/// A random partially symmetric graph on two clusters of `q`.
pub fn random_partially_symmetric<R: Rng>(rng: &mut R, q: usize, p: f64) -> ClusteredGraph {
    if q == 0 {
        return ClusteredGraph::empty(0);
    }
    let mut e = Vec::new();
    for a in 0..q {
        for b in a + 1..q {
            for mu in 0..2 {
                if rng.random_bool(p) {
                    e.push((mu * q + a, mu * q + b));
                }
            }
            if rng.random_bool(p) {
                e.push((a, q + b));
                e.push((b, q + a));
            }
        }
        if rng.random_bool(p) {
            e.push((a, q + a));
        }
    }
    ClusteredGraph::build(q, &e).expect("indices in range")
}

pub fn sample_procedure1<R: Rng>(rng: &mut R) -> Result<FamilyGraph> {
    let g = sample_base(rng, 6, Hypotheses::AsStated);
    let extra = rng.random_range(1..=(8 - g.graph.q()).min(3));
    let gp = random_partially_symmetric(rng, extra, 0.4);
    procedure1_union(&g, &gp, FixedPartCheck::PartiallySymmetric)
}

/// Groups admissible intra pairs into the orbits that must be added
/// together: singletons as stated, reflection orbits when refined.
fn pair_orbits(g: &FamilyGraph, hyp: Hypotheses) -> Vec<Vec<(usize, usize)>> {
    let (i, j) = g.distinguished.expect("sampled bases are distinguished");
    let q = g.graph.q();
    let free = |k: usize, l: usize| {
        ![k, l].iter().any(|x| *x == i || *x == j)
            && !(1..=2).any(|mu| g.graph.has_edge(lin(q, (mu, k)), lin(q, (mu, l))))
    };
    let mut out = Vec::new();
    for k in 1..=q {
        for l in k + 1..=q {
            if !free(k, l) {
                continue;
            }
            match hyp {
                Hypotheses::AsStated => out.push(vec![(k, l)]),
                Hypotheses::Refined => {
                    let (a, b) = (reflection(q, i, j, k), reflection(q, i, j, l));
                    let image = (a.min(b), a.max(b));
                    if image < (k, l) {
                        continue;
                    }
                    if image == (k, l) {
                        out.push(vec![(k, l)]);
                    } else if free(image.0, image.1) {
                        out.push(vec![(k, l), image]);
                    }
                }
            }
        }
    }
    out
}

fn cycle_base<R: Rng>(rng: &mut R, q: usize) -> Result<FamilyGraph> {
    if rng.random_bool(0.5) {
        let params = theorem1_parameters(q);
        let &(i, j) = params.choose(rng).expect("q >= 4 has admissible pairs");
        theorem1_graph(q, i, j)
    } else {
        corollary1_graph(q, rng.random_range(1..=q))
    }
}

/// Base from the two-cycle or broken-cycle constructions with a random
/// non-empty set of intra pairs.
pub fn sample_procedure2<R: Rng>(rng: &mut R, hyp: Hypotheses) -> Result<FamilyGraph> {
    loop {
        let q = rng.random_range(5..=7);
        let g = cycle_base(rng, q)?;
        let pairs: Vec<_> = pair_orbits(&g, hyp)
            .into_iter()
            .filter(|_| rng.random_bool(0.5))
            .flatten()
            .collect();
        if !pairs.is_empty() {
            return procedure2_add_pairs(&g, &pairs);
        }
    }
}

pub fn sample_procedure3<R: Rng>(rng: &mut R, hyp: Hypotheses) -> Result<FamilyGraph> {
    loop {
        let g = if rng.random_bool(0.5) {
            sample_procedure2(rng, hyp)?
        } else {
            let q = rng.random_range(5..=7);
            cycle_base(rng, q)?
        };
        let (i, j) = g.distinguished.unwrap();
        let q = g.graph.q();
        let absent = |k: usize, l: usize| !g.graph.has_edge(lin(q, (1, k)), lin(q, (2, l)));
        let mut cross: Vec<(usize, usize)> = Vec::new();
        for k in (1..=q).filter(|&k| k != i && k != j) {
            for l in (k..=q).filter(|&l| l != i && l != j) {
                let mut orbit = vec![(k, l), (l, k)];
                if hyp == Hypotheses::Refined {
                    let (a, b) = (reflection(q, i, j, k), reflection(q, i, j, l));
                    orbit.extend([(a, b), (b, a)]);
                }
                orbit.sort_unstable();
                orbit.dedup();
                if orbit[0] != (k, l) || !orbit.iter().all(|&(x, y)| absent(x, y)) {
                    continue;
                }
                if rng.random_bool(0.4) {
                    cross.extend(orbit);
                }
            }
        }
        if !cross.is_empty() {
            return procedure3_add_psym_cross(&g, &cross);
        }
    }
}

fn random_extension<R: Rng>(rng: &mut R, q0: usize, r: usize, attach_from: &[Slot]) -> Extension {
    let q = q0 + r;
    let mut ext = Extension {
        r,
        ..Extension::default()
    };
    for mu in 1..=2 {
        for a in q0 + 1..=q {
            for b in a + 1..=q {
                if rng.random_bool(0.5) {
                    ext.intra_new.push(((mu, a), (mu, b)));
                }
            }
        }
    }
    for &old in attach_from {
        for a in q0 + 1..=q {
            if rng.random_bool(0.4) {
                ext.attach.push((old, (old.0, a)));
            }
        }
    }
    for k in q0 + 1..=q {
        if rng.random_bool(0.3) {
            ext.cross_new.push((k, k));
        }
        for l in k + 1..=q {
            if rng.random_bool(0.3) {
                ext.cross_new.push((k, l));
                ext.cross_new.push((l, k));
            }
        }
    }
    ext
}

pub fn sample_procedure4<R: Rng>(rng: &mut R, hyp: Hypotheses) -> Result<FamilyGraph> {
    let g = sample_base(rng, 6, hyp);
    let (i, j) = g.distinguished.unwrap();
    let q0 = g.graph.q();
    let r = rng.random_range(1..=(8 - q0).min(3));
    let attach_from: Vec<Slot> = (1..=2)
        .flat_map(|mu| (1..=q0).map(move |k| (mu, k)))
        .filter(|&(_, k)| k != i && k != j)
        .filter(|&(_, k)| hyp == Hypotheses::AsStated || reflection(q0, i, j, k) == k)
        .collect();
    let ext = random_extension(rng, q0, r, &attach_from);
    procedure4_extend(&g, &ext)
}

/// A random swap-symmetric graph on two clusters of `q` with a non-empty
/// asymmetric set and at least one vertex outside it.
pub fn random_swap_symmetric<R: Rng>(rng: &mut R, q: usize) -> ClusteredGraph {
    loop {
        let mut e = Vec::new();
        for a in 0..q {
            for b in a + 1..q {
                if rng.random_bool(0.5) {
                    e.push((a, b));
                    e.push((q + a, q + b));
                }
            }
            for b in 0..q {
                if rng.random_bool(0.35) {
                    e.push((a, q + b));
                }
            }
        }
        let g = ClusteredGraph::build(q, &e).expect("indices in range");
        let asym = g.asymmetric_edge_set();
        if !asym.is_empty() && (0..2 * q).any(|v| !asym.touches(v)) {
            debug_assert!(is_swap_symmetric(&g));
            return g;
        }
    }
}

pub fn sample_procedure5<R: Rng>(rng: &mut R, hyp: Hypotheses) -> Result<FamilyGraph> {
    loop {
        let q0 = rng.random_range(3..=5);
        let g0 = random_swap_symmetric(rng, q0);
        let asym = g0.asymmetric_edge_set();
        let anchors: Vec<Slot> = (0..2 * q0)
            .filter(|&v| !asym.touches(v))
            .map(|v| (v / q0 + 1, v % q0 + 1))
            .filter(|&s| hyp == Hypotheses::AsStated || is_cospectral_with_partner(&g0, s))
            .collect();
        let Some(&anchor) = anchors.choose(rng) else {
            continue;
        };
        let r = rng.random_range(1..=(8 - q0).min(3));
        let mut ext = random_extension(rng, q0, r, &[anchor]);
        if ext.attach.is_empty() {
            ext.attach.push((anchor, (anchor.0, q0 + 1)));
        }
        return procedure5_extend(&g0, anchor, &ext);
    }
}
