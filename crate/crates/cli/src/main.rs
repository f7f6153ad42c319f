//! `qspectral`: batch front end for the partial-transpose cospectrality toolkit.

mod input;

use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qspectral_core::formats::{encode_graph6, to_dot, write_edge_list};
use qspectral_core::generators::{
    corollary1_graph, corollary2_graph, family_count, report, sample_procedure1, sample_procedure2,
    sample_procedure3, sample_procedure4, sample_procedure5, theorem1_graph, FamilyGraph,
    GeneratorReport, Hypotheses,
};
use qspectral_core::graph::{brute_count_partially_symmetric, count_partially_symmetric};
use qspectral_core::iso::are_isomorphic;
use qspectral_core::spectral::{q_polynomial, q_spectrum};
use qspectral_core::survey::{
    compare_with_reference, fixture_suite, ingest_graph6, survey_graphs, survey_table, RowStatus,
    SurveyOptions, DEFAULT_PERM_BUDGET,
};
use qspectral_core::tu::{tu_coefficients, DEFAULT_SUBSET_BUDGET};
use qspectral_core::{ClusteredGraph, Error};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::input::{load, Loaded};

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_CHECK: u8 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "qspectral",
    version,
    about = "Signless-Laplacian cospectral graphs via partial transpose"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output format; each subcommand has a plain-text default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Worker threads (default: QSPECTRAL_THREADS or available parallelism).
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// Cap on edge subsets per TU coefficient.
    #[arg(long, global = true, default_value_t = DEFAULT_SUBSET_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget_subsets: u64,
    /// Cap on cluster assignments per graph in the realizability search.
    #[arg(long, global = true, default_value_t = DEFAULT_PERM_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget_perms: u64,
    /// Seed for sampled constructions.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Tsv,
    Json,
    Dot,
    Graph6,
    Edgelist,
}

/// A graph argument: a file path (`-` for stdin) or `--edges` inline.
#[derive(Args, Debug)]
struct GraphInput {
    /// Edge-list or graph6 file; `-` reads standard input.
    input: Option<String>,
    /// Inline edges such as `0-2,1-2,2-3`; needs --q or --n.
    #[arg(long)]
    edges: Option<String>,
    /// Cluster size; overrides the default split of an `n=` or graph6 input.
    #[arg(long)]
    q: Option<usize>,
    /// Vertex count for inline edges of an unclustered graph.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply the partial transpose.
    Pt(GraphInput),
    /// Approximate Q-spectrum, four decimals.
    Spectrum(GraphInput),
    /// Exact coefficients of det(λI - Q).
    Qpoly(GraphInput),
    /// Coefficients from the TU-subgraph expansion.
    TuCoeffs(GraphInput),
    /// Compare two graphs, or one graph with its partial transpose.
    CheckPair {
        first: String,
        second: Option<String>,
        #[arg(long)]
        q: Option<usize>,
    },
    /// Test partial symmetry of a graph, or count partially symmetric graphs.
    Psym {
        #[command(flatten)]
        graph: GraphInput,
        /// Count labelled partially symmetric graphs on two clusters of --q.
        #[arg(long)]
        count: bool,
        /// With --count, enumerate instead of using the closed form.
        #[arg(long)]
        brute: bool,
    },
    /// Build a member of a construction family and verify it.
    Generate(GenerateArgs),
    /// Exhaustive survey table for order --n.
    Survey {
        #[arg(long)]
        n: usize,
        /// Only graphs with at most this many edges.
        #[arg(long)]
        max_m: Option<usize>,
        /// graph6 corpus to survey instead of the built-in enumeration.
        #[arg(long)]
        input: Option<String>,
        /// Skip the comparison with the published table.
        #[arg(long)]
        no_check: bool,
    },
    /// Verify the hand-transcribed fixture families.
    Fixtures,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    /// theorem1, corollary1, corollary2 or procedure1..procedure5.
    #[arg(long)]
    family: String,
    #[arg(long)]
    q: Option<usize>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    /// Diagonal slots for corollary2, e.g. `2,4`.
    #[arg(long, value_delimiter = ',')]
    diagonals: Vec<usize>,
    /// Sample procedures under the refined hypotheses.
    #[arg(long)]
    refined: bool,
    /// Print the published family size for --q instead of a graph.
    #[arg(long)]
    count: bool,
}

/// An error that should exit with the usage status.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

/// Output plus the status to exit with.
struct Outcome {
    text: String,
    status: u8,
}

impl From<String> for Outcome {
    fn from(text: String) -> Self {
        Outcome { text, status: 0 }
    }
}

fn json_text(mut v: Value) -> String {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(1));
    }
    let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
    s.push('\n');
    s
}

fn render_graph(g: &ClusteredGraph, format: Option<Format>) -> Result<String> {
    Ok(match format.unwrap_or(Format::Edgelist) {
        Format::Edgelist => write_edge_list(g),
        Format::Graph6 => format!("{}\n", encode_graph6(g)),
        Format::Dot => to_dot(g),
        Format::Json => json_text(json!({
            "q": g.q(),
            "edges": g.edges(),
            "graph6": encode_graph6(g),
        })),
        Format::Tsv => bail!(usage("tsv output is only available for survey")),
    })
}

fn text_only(format: Option<Format>, cmd: &str) -> Result<bool> {
    match format {
        None => Ok(true),
        Some(Format::Json) => Ok(false),
        Some(f) => Err(usage(format!(
            "{cmd} supports only the default text output and json, not {f:?}"
        ))),
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Pt(inp) => {
            let graph = load(inp)?.clustered()?;
            Ok(render_graph(&graph.partial_transpose(), g.format)?.into())
        }
        Command::Spectrum(inp) => {
            let graph = load(inp)?.graph;
            let spec = q_spectrum(&graph);
            Ok(if text_only(g.format, "spectrum")? {
                format!("{}\n", spec.rounded().join(" "))
            } else {
                json_text(json!({ "eigenvalues": spec.eigenvalues, "rounded": spec.rounded() }))
            }
            .into())
        }
        Command::Qpoly(inp) => {
            let graph = load(inp)?.graph;
            let p = q_polynomial(&graph);
            Ok(if text_only(g.format, "qpoly")? {
                let c: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
                format!("{}\n", c.join(","))
            } else {
                json_text(json!({ "polynomial": p, "display": p.to_string() }))
            }
            .into())
        }
        Command::TuCoeffs(inp) => {
            let graph = load(inp)?.graph;
            let coeffs = tu_coefficients(&graph, g.budget_subsets)?;
            Ok(if text_only(g.format, "tu-coeffs")? {
                let mut s = String::from("j\tp_j\ttu_subgraphs\tweight\n");
                for c in &coeffs {
                    let _ = writeln!(s, "{}\t{}\t{}\t{}", c.j, c.p_j, c.count, c.weight);
                }
                s
            } else {
                json_text(json!({ "coefficients": coeffs }))
            }
            .into())
        }
        Command::CheckPair { first, second, q } => {
            let a = load(&GraphInput {
                input: Some(first.clone()),
                edges: None,
                q: *q,
                n: None,
            })?;
            let b = match second {
                Some(path) => {
                    load(&GraphInput {
                        input: Some(path.clone()),
                        edges: None,
                        q: *q,
                        n: None,
                    })?
                    .graph
                }
                None => a.clustered()?.partial_transpose().into_graph(),
            };
            let cospectral = q_polynomial(&a.graph) == q_polynomial(&b);
            let isomorphic = are_isomorphic(&a.graph, &b)?;
            Ok(if text_only(g.format, "check-pair")? {
                format!("cospectral={cospectral} isomorphic={isomorphic}\n")
            } else {
                json_text(json!({ "cospectral": cospectral, "isomorphic": isomorphic }))
            }
            .into())
        }
        Command::Psym {
            graph,
            count,
            brute,
        } => {
            let text = text_only(g.format, "psym")?;
            if *count {
                let q = graph.q.ok_or_else(|| usage("psym --count needs --q"))?;
                let c = if *brute {
                    brute_count_partially_symmetric(q)?
                } else {
                    count_partially_symmetric(q)
                };
                return Ok(if text {
                    format!("q={q} count={c}\n")
                } else {
                    json_text(json!({ "q": q, "count": c.to_string(), "brute": brute }))
                }
                .into());
            }
            let cg = load(graph)?.clustered()?;
            let asym = cg.asymmetric_edge_set();
            Ok(if text {
                format!(
                    "partially_symmetric={} asymmetric_edges={}\n",
                    asym.is_empty(),
                    asym.len()
                )
            } else {
                json_text(json!({
                    "partially_symmetric": asym.is_empty(),
                    "asymmetric_edges": asym.edges,
                }))
            }
            .into())
        }
        Command::Generate(args) => generate(args, g),
        Command::Survey {
            n,
            max_m,
            input,
            no_check,
        } => survey(*n, *max_m, input.as_deref(), *no_check, g),
        Command::Fixtures => {
            let suite = fixture_suite()?;
            let failed = suite.iter().filter(|c| !c.passed()).count();
            let text = if text_only(g.format, "fixtures")? {
                let mut s = String::new();
                for c in &suite {
                    let _ = writeln!(
                        s,
                        "{} {} expect_pair={} cospectral={} isomorphic={}{}",
                        if c.passed() { "PASS" } else { "FAIL" },
                        c.name,
                        c.expect_pair,
                        c.report.cospectral,
                        c.report.isomorphic,
                        c.matches_drawing
                            .map(|m| format!(" matches_drawing={m}"))
                            .unwrap_or_default()
                    );
                }
                s
            } else {
                json_text(json!({
                    "fixtures": suite.iter().map(|c| json!({
                        "name": c.name,
                        "passed": c.passed(),
                        "expect_pair": c.expect_pair,
                        "matches_drawing": c.matches_drawing,
                        "report": c.report.to_json(),
                    })).collect::<Vec<_>>(),
                }))
            };
            Ok(Outcome {
                text,
                status: if failed > 0 { EXIT_CHECK } else { 0 },
            })
        }
    }
}

fn build_family(args: &GenerateArgs, seed: u64) -> Result<FamilyGraph> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| usage(format!("--family {} needs {flag}", args.family)))
    };
    let hyp = if args.refined {
        Hypotheses::Refined
    } else {
        Hypotheses::AsStated
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(match args.family.as_str() {
        "theorem1" => theorem1_graph(
            need(args.q, "--q")?,
            need(args.i, "--i")?,
            need(args.j, "--j")?,
        )?,
        "corollary1" => corollary1_graph(need(args.q, "--q")?, need(args.i, "--i")?)?,
        "corollary2" => corollary2_graph(need(args.q, "--q")?, &args.diagonals)?,
        "procedure1" => sample_procedure1(&mut rng)?,
        "procedure2" => sample_procedure2(&mut rng, hyp)?,
        "procedure3" => sample_procedure3(&mut rng, hyp)?,
        "procedure4" => sample_procedure4(&mut rng, hyp)?,
        "procedure5" => sample_procedure5(&mut rng, hyp)?,
        other => bail!(usage(format!("unknown family `{other}`"))),
    })
}

fn generate(args: &GenerateArgs, g: &Global) -> Result<Outcome> {
    if args.count {
        let q = args.q.ok_or_else(|| usage("generate --count needs --q"))?;
        let c = family_count(&args.family, q)?;
        return Ok(if text_only(g.format, "generate --count")? {
            format!("family={} q={q} count={c} claim=unverified\n", args.family)
        } else {
            json_text(json!({
                "family": args.family,
                "q": q,
                "count": c.to_string(),
                "claim": "unverified",
            }))
        }
        .into());
    }
    let fam = build_family(args, g.seed)?;
    let rep: GeneratorReport = report(&fam)?;
    let text = match g.format {
        Some(Format::Json) => {
            let mut v = rep.to_json();
            v["graph6"] = json!(encode_graph6(&rep.graph));
            v["transpose_graph6"] = json!(encode_graph6(&rep.transpose));
            json_text(v)
        }
        f => format!(
            "# G\n{}# G^tau\n{}# cospectral={} isomorphic={}\n",
            render_graph(&rep.graph, f)?,
            render_graph(&rep.transpose, f)?,
            rep.cospectral,
            rep.isomorphic
        ),
    };
    Ok(text.into())
}

fn survey(
    n: usize,
    max_m: Option<usize>,
    input: Option<&str>,
    no_check: bool,
    g: &Global,
) -> Result<Outcome> {
    let opts = SurveyOptions {
        max_m,
        perm_budget: g.budget_perms,
    };
    let table = match input {
        Some(path) => survey_graphs(n, &ingest_graph6(&input::read(path)?)?, opts)?,
        None => survey_table(n, opts)?,
    };
    let text = match g.format {
        None | Some(Format::Tsv) => table.to_tsv(),
        Some(Format::Json) => json_text(table.to_json()),
        Some(f) => bail!(usage(format!("survey supports tsv and json, not {f:?}"))),
    };
    let mut status = 0;
    if !no_check {
        for c in compare_with_reference(&table) {
            if let Some(m) = max_m {
                if c.m > m {
                    continue;
                }
            }
            let show =
                |p: Option<(usize, usize)>| p.map_or("-".to_string(), |(a, b)| format!("{a},{b}"));
            let reference = c.reference.map(|r| (r.cospectral_count, r.pt_count));
            eprintln!(
                "n={} m={} computed={} reference={} {:?}{}",
                c.n,
                c.m,
                show(c.computed),
                show(reference),
                c.status,
                c.reference
                    .filter(|r| r.suspect)
                    .map(|r| format!(" printed_ratio={}", r.printed_ratio))
                    .unwrap_or_default()
            );
            if c.status == RowStatus::Mismatch {
                status = EXIT_CHECK;
            }
        }
    }
    if table.truncated_at.is_some() {
        status = EXIT_BUDGET;
    }
    Ok(Outcome { text, status })
}

fn configure_threads(flag: Option<u64>) -> Result<()> {
    let from_env = std::env::var("QSPECTRAL_THREADS").ok();
    let threads = match (flag, from_env) {
        (Some(t), _) => Some(t as usize),
        (None, Some(s)) => Some(s.parse::<usize>().ok().filter(|&t| t > 0).ok_or_else(|| {
            usage(format!(
                "QSPECTRAL_THREADS must be a positive integer, got `{s}`"
            ))
        })?),
        (None, None) => None,
    };
    if let Some(t) = threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring the worker pool")?;
    }
    Ok(())
}

fn exit_status(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        EXIT_USAGE
    } else if err.downcast_ref::<Error>().is_some_and(Error::is_budget) {
        EXIT_BUDGET
    } else {
        EXIT_FAILURE
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads(cli.global.threads)
        .and_then(|_| run(&cli))
        .and_then(|out| {
            match &cli.global.out {
                Some(path) => {
                    std::fs::write(path, &out.text).with_context(|| format!("writing {path}"))?
                }
                None => std::io::stdout().write_all(out.text.as_bytes())?,
            }
            Ok(out.status)
        });
    match result {
        Ok(status) => ExitCode::from(status),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_status(&err))
        }
    }
}

impl Loaded {
    fn clustered(&self) -> Result<ClusteredGraph> {
        let n = self.graph.order();
        let q = match self.q {
            Some(q) => q,
            None if n.is_multiple_of(2) => n / 2,
            None => bail!(usage(format!(
                "a graph on {n} vertices cannot be split into two equal clusters"
            ))),
        };
        if 2 * q != n {
            bail!(usage(format!(
                "--q {q} does not match a graph on {n} vertices"
            )));
        }
        if q == 0 {
            return Ok(ClusteredGraph::empty(0));
        }
        Ok(ClusteredGraph::build(q, &self.graph.edges())?)
    }
}
