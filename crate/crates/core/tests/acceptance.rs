//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit when any
//! criterion fails. Informational lines start with `  ..`.

mod common;

use std::time::{Duration, Instant};

use proptest::strategy::Strategy;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qspectral_core::fixtures;
use qspectral_core::generators::{
    corollary1_graph, corollary2_graph, procedure5_extend, report, sample_procedure1,
    sample_procedure2, sample_procedure3, sample_procedure4, sample_procedure5, theorem1_graph,
    theorem1_parameters, Extension, FamilyGraph, Hypotheses,
};
use qspectral_core::graph::{brute_count_partially_symmetric, count_partially_symmetric};
use qspectral_core::iso::are_isomorphic;
use qspectral_core::spectral::{are_q_cospectral, q_polynomial, q_spectrum, QPolynomial};
use qspectral_core::survey::{
    compare_with_reference, enumerate_graphs, fixture_suite, reference_max_m, survey_table,
    RowStatus, SurveyOptions, REFERENCE_AGGREGATES,
};
use qspectral_core::tu::{coefficient_via_tu, DEFAULT_SUBSET_BUDGET};
use qspectral_core::Graph;

const SPECTRUM_TOLERANCE: f64 = 5e-4;
const SEVEN_VERTEX_RATIO: f64 = 0.7115;
const RATIO_TOLERANCE: f64 = 5e-5;
const SAMPLES_PER_PROCEDURE: usize = 20;
const PROPERTY_CASES: u32 = 10_000;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn run(id: &str, title: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    if took > limit {
        out.pass = false;
        out.detail = format!("{}; over the {:?} limit", out.detail, limit);
    }
    let tag = if out.pass { "PASS" } else { "FAIL" };
    println!("[{tag}] {id} {title}: {} ({:.2?})", out.detail, took);
    out.pass
}

fn k_polynomial() -> Outcome {
    let want = QPolynomial::from_i64(&fixtures::K_POLYNOMIAL);
    let (k, kt) = (fixtures::k(), fixtures::k_tau());
    let pk = q_polynomial(&k);
    let pt = q_polynomial(&kt);
    let iso = are_isomorphic(&k, &kt).unwrap();
    let computed_tau = k.partial_transpose() == kt;
    outcome(
        pk == want && pt == want && !iso && computed_tau,
        format!("p(K)={pk} p(K^tau)={pt} isomorphic={iso} transpose_matches={computed_tau}"),
    )
}

fn tu_mismatches(g: &Graph) -> usize {
    let p = q_polynomial(g);
    (0..=g.order())
        .filter(|&j| &coefficient_via_tu(g, j, DEFAULT_SUBSET_BUDGET).unwrap().p_j != p.coeff(j))
        .count()
}

fn tu_equivalence() -> Outcome {
    let mut graphs = Vec::new();
    for n in 1..=6 {
        graphs.extend(enumerate_graphs(n).unwrap());
    }
    let exhaustive = graphs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let n = rng.random_range(7..=8);
        let p = rng.random_range(0.15..0.85);
        let e: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.random_bool(p))
            .collect();
        graphs.push(Graph::from_edges(n, &e).unwrap());
    }
    let sparse = graphs.iter().filter(|g| g.size() < g.order()).count();
    let bad: usize = graphs.iter().map(tu_mismatches).sum();
    outcome(
        exhaustive == 208 && bad == 0,
        format!(
            "{exhaustive} classes n<=6 + 100 random n in 7..=8, {sparse} with m<n, {bad} coefficient mismatches"
        ),
    )
}

fn spectra_close(got: &[f64], want: &[f64]) -> f64 {
    got.iter()
        .zip(want)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

fn counterexample() -> Outcome {
    let g = fixtures::counterexample();
    let t = g.partial_transpose();
    let drawn = t == fixtures::counterexample_tau();
    let eg = q_spectrum(&g).eigenvalues;
    let et = q_spectrum(&t).eigenvalues;
    let dg = spectra_close(&eg, &fixtures::COUNTEREXAMPLE_SPECTRUM);
    let dt = spectra_close(&et, &fixtures::COUNTEREXAMPLE_TAU_SPECTRUM);
    let cospectral = are_q_cospectral(&g, &t);
    outcome(
        drawn && dg <= SPECTRUM_TOLERANCE && dt <= SPECTRUM_TOLERANCE && !cospectral,
        format!("max deviation G {dg:.1e}, G^tau {dt:.1e}; cospectral={cospectral}; transpose_matches={drawn}"),
    )
}

fn survey() -> Outcome {
    let mut problems = Vec::new();
    let mut slow = Vec::new();
    for n in 4..=8 {
        let start = Instant::now();
        let opts = SurveyOptions {
            max_m: if n == 8 { reference_max_m(8) } else { None },
            ..SurveyOptions::default()
        };
        let table = survey_table(n, opts).unwrap();
        let took = start.elapsed();
        let limit = Duration::from_secs(if n <= 7 { 120 } else { 1800 });
        if took > limit {
            slow.push(format!("n={n} took {took:.0?}"));
        }
        for c in compare_with_reference(&table) {
            let show =
                |x: Option<(usize, usize)>| x.map_or("-".to_string(), |(a, b)| format!("{a},{b}"));
            let reference = show(c.reference.map(|r| (r.cospectral_count, r.pt_count)));
            let line = format!(
                "n={} m={} computed={} published={}",
                n,
                c.m,
                show(c.computed),
                reference
            );
            match c.status {
                RowStatus::Match => {}
                RowStatus::Suspect => println!(
                    "  .. suspect published row {line} printed_ratio={}",
                    c.reference.map_or("-", |r| r.printed_ratio)
                ),
                RowStatus::Unreferenced => {}
                RowStatus::Mismatch | RowStatus::Truncated => {
                    println!("  .. {:?} {line}", c.status);
                    problems.push(format!("n={n} m={}", c.m));
                }
            }
        }
        let (cos, pt, ratio) = table.aggregate();
        let published = REFERENCE_AGGREGATES
            .iter()
            .find(|(k, _)| *k == n)
            .map_or(String::new(), |(_, pct)| format!(", published {pct}%"));
        println!(
            "  .. n={n} aggregate {pt}/{cos} = {ratio} ({:.4}{published})",
            pt as f64 / cos as f64
        );
        match n {
            6 if ratio != num_rational::Ratio::new(3, 4) => {
                problems.push(format!("n=6 aggregate {ratio}"))
            }
            7 => {
                let r = pt as f64 / cos as f64;
                if (r - SEVEN_VERTEX_RATIO).abs() > RATIO_TOLERANCE {
                    problems.push(format!("n=7 aggregate {r:.4} vs {SEVEN_VERTEX_RATIO}"));
                }
            }
            _ => {}
        }
    }
    problems.extend(slow);
    let detail = if problems.is_empty() {
        "all published rows reproduced".to_string()
    } else {
        format!("{} discrepancies: {}", problems.len(), problems.join(", "))
    };
    outcome(problems.is_empty(), detail)
}

struct Tally {
    total: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            total: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, g: &FamilyGraph, need_non_iso: bool) {
        self.total += 1;
        let r = report(g).unwrap();
        if !r.cospectral || (need_non_iso && r.isomorphic) {
            self.failures.push(format!(
                "{} {} cospectral={} isomorphic={}",
                g.family, g.params, r.cospectral, r.isomorphic
            ));
        }
    }
}

fn sampled(hyp: Hypotheses, seed: u64) -> Vec<(&'static str, Tally)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    type Sampler = fn(&mut ChaCha8Rng, Hypotheses) -> qspectral_core::Result<FamilyGraph>;
    let samplers: [(&str, bool, Sampler); 5] = [
        ("procedure1", false, |r, _| sample_procedure1(r)),
        ("procedure2", true, sample_procedure2),
        ("procedure3", false, sample_procedure3),
        ("procedure4", true, sample_procedure4),
        ("procedure5", false, sample_procedure5),
    ];
    for (name, need_non_iso, f) in samplers {
        let mut t = Tally::new();
        for _ in 0..SAMPLES_PER_PROCEDURE {
            t.check(&f(&mut rng, hyp).unwrap(), need_non_iso);
        }
        out.push((name, t));
    }
    out
}

fn generators() -> Outcome {
    let mut t = Tally::new();
    for q in 4..=7 {
        for (i, j) in theorem1_parameters(q) {
            t.check(&theorem1_graph(q, i, j).unwrap(), true);
        }
    }
    for q in 3..=7 {
        for i in 1..=q {
            t.check(&corollary1_graph(q, i).unwrap(), true);
        }
    }
    for q in 3..=6 {
        for mask in 0..1u32 << (q - 1) {
            let diag: Vec<usize> = (2..=q).filter(|k| mask >> (k - 2) & 1 == 1).collect();
            t.check(&corollary2_graph(q, &diag).unwrap(), false);
        }
    }
    let ext = Extension {
        r: 1,
        attach: vec![((1, 1), (1, 4))],
        ..Extension::default()
    };
    t.check(
        &procedure5_extend(&fixtures::swap_symmetric_base(), (1, 1), &ext).unwrap(),
        true,
    );
    let constructions = t.total;
    for f in &t.failures {
        println!("  .. {f}");
    }
    let mut sample_failures = 0;
    for (name, s) in sampled(Hypotheses::AsStated, 5) {
        println!(
            "  .. {name} as stated: {}/{} samples fail",
            s.failures.len(),
            s.total
        );
        if let Some(first) = s.failures.first() {
            println!("  ..   e.g. {first}");
        }
        sample_failures += s.failures.len();
    }
    for (name, s) in sampled(Hypotheses::Refined, 5) {
        println!(
            "  .. {name} refined (informational): {}/{} samples fail",
            s.failures.len(),
            s.total
        );
    }
    outcome(
        t.failures.is_empty() && sample_failures == 0,
        format!(
            "{constructions} constructions with {} failures; {} sampled procedures fail",
            t.failures.len(),
            sample_failures
        ),
    )
}

fn psym_counts() -> Outcome {
    let rows: Vec<_> = (1..=3)
        .map(|q| {
            (
                q,
                count_partially_symmetric(q),
                brute_count_partially_symmetric(q).unwrap(),
            )
        })
        .collect();
    let want = [2u32, 32, 4096];
    let pass = rows
        .iter()
        .zip(want)
        .all(|((_, c, b), w)| c == b && *c == w.into());
    let detail = rows
        .iter()
        .map(|(q, c, b)| format!("q={q}: {c} formula, {b} brute force"))
        .collect::<Vec<_>>()
        .join("; ");
    outcome(pass, detail)
}

fn property<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), proptest::test_runner::TestCaseError>,
) -> Result<u32, String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, test)
        .map(|_| cases)
        .map_err(|e| e.to_string())
}

fn properties() -> Outcome {
    let results = [
        (
            "involution",
            property(2000, common::clustered(6), |g| common::involution(&g)),
        ),
        (
            "degree sums",
            property(2000, common::clustered(6), |g| common::degree_sums(&g)),
        ),
        (
            "union commutes",
            property(
                1500,
                (common::clustered(4), common::clustered(4)),
                |(g, h)| common::transpose_commutes_with_union(&g, &h),
            ),
        ),
        (
            "union multiplies",
            property(
                1500,
                (common::graph(1, 6), common::graph(1, 6)),
                |(g, h)| common::union_multiplies(&g, &h),
            ),
        ),
        (
            "relabelling",
            property(5000, common::graph_and_permutation(1, 10), |(g, p)| {
                common::relabel_invariant(&g, &p)
            }),
        ),
        (
            "iso implies cospectral",
            property(1000, common::graph_and_permutation(1, 8), |(g, p)| {
                common::isomorphic_implies_cospectral(&g, &g.permuted(&p))
            }),
        ),
        (
            "iso agrees with canonical form",
            property(
                1000,
                (common::graph(1, 6), common::graph(1, 6)),
                |(g, h)| common::isomorphic_implies_cospectral(&g, &h),
            ),
        ),
    ];
    let mut total = 0;
    let mut failed = Vec::new();
    for (name, r) in results {
        match r {
            Ok(n) => total += n,
            Err(e) => failed.push(format!("{name}: {e}")),
        }
    }
    let pass = failed.is_empty() && total >= PROPERTY_CASES;
    outcome(
        pass,
        format!(
            "{total} cases, violations: {}",
            if failed.is_empty() {
                "none".into()
            } else {
                failed.join("; ")
            }
        ),
    )
}

fn drawn_fixtures() -> Outcome {
    let suite = fixture_suite().unwrap();
    let failed: Vec<_> = suite
        .iter()
        .filter(|c| !c.passed())
        .map(|c| c.name.clone())
        .collect();
    let negatives = suite.iter().filter(|c| !c.expect_pair).count();
    outcome(
        failed.is_empty(),
        format!(
            "{} checks ({negatives} negative controls), failed: {}",
            suite.len(),
            if failed.is_empty() {
                "none".into()
            } else {
                failed.join(", ")
            }
        ),
    )
}

fn switching_regression() -> Outcome {
    let g = fixtures::switching_g();
    let t = g.partial_transpose();
    let drawn = t == fixtures::switching_g_tau();
    let iso = are_isomorphic(&t, &fixtures::switching_gm()).unwrap();
    outcome(
        drawn && !iso,
        format!("transpose_matches={drawn} isomorphic_to_switched={iso}"),
    )
}

fn main() {
    let secs = Duration::from_secs;
    let results = [
        run("C1", "K and its partial transpose", secs(1), k_polynomial),
        run(
            "C2",
            "TU expansion equals determinant",
            secs(300),
            tu_equivalence,
        ),
        run(
            "C3",
            "six-vertex counterexample spectra",
            secs(10),
            counterexample,
        ),
        run("C4", "survey table", secs(1920), survey),
        run("C5", "generator soundness", secs(600), generators),
        run("C6", "partially symmetric counts", secs(10), psym_counts),
        run("C7", "property suite", secs(600), properties),
        run("C8", "drawn fixtures", secs(60), drawn_fixtures),
        run(
            "C9",
            "transpose versus switching",
            secs(10),
            switching_regression,
        ),
    ];
    let failed = results.iter().filter(|p| !**p).count();
    println!(
        "acceptance: {} passed, {failed} failed",
        results.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
