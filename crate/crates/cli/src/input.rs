//! Reading graphs from files, standard input or inline edge lists.

use std::io::Read as _;

use anyhow::{bail, Context, Result};
use qspectral_core::formats::{decode_graph6, parse_edge_list};
use qspectral_core::Graph;

use crate::{usage, GraphInput};

/// A graph and the cluster size it was given, if any.
pub struct Loaded {
    pub graph: Graph,
    pub q: Option<usize>,
}

/// Reads a whole file, or standard input for `-`.
pub fn read(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .context("reading standard input")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn parse_inline(edges: &str, n: usize) -> Result<Graph> {
    let mut out = Vec::new();
    for tok in edges.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (u, v) = tok
            .split_once('-')
            .ok_or_else(|| usage(format!("inline edge `{tok}` is not of the form u-v")))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("bad vertex `{s}` in inline edge `{tok}`")))
        };
        out.push((parse(u)?, parse(v)?));
    }
    Ok(Graph::from_edges(n, &out)?)
}

/// Edge-list text is recognised by its `q=` or `n=` header; anything else is
/// read as a single graph6 line.
fn parse_text(text: &str) -> Result<Loaded> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty());
    match first {
        Some(l) if l.contains('=') && !l.starts_with(">>graph6<<") => {
            let e = parse_edge_list(text)?;
            Ok(Loaded {
                graph: e.graph,
                q: e.q,
            })
        }
        _ => {
            let lines: Vec<(usize, &str)> = text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty())
                .collect();
            match lines.as_slice() {
                [(k, l)] => Ok(Loaded {
                    graph: decode_graph6(l.trim(), k + 1)?,
                    q: None,
                }),
                [] => bail!(usage("empty input")),
                _ => bail!(usage("expected a single graph6 line")),
            }
        }
    }
}

pub fn load(inp: &GraphInput) -> Result<Loaded> {
    let mut loaded = match (&inp.input, &inp.edges) {
        (Some(_), Some(_)) => bail!(usage("give either an input file or --edges, not both")),
        (None, None) => bail!(usage("missing input: give a file, `-` or --edges")),
        (None, Some(edges)) => {
            let n = match (inp.q, inp.n) {
                (Some(q), None) => 2 * q,
                (None, Some(n)) => n,
                (Some(q), Some(n)) if 2 * q == n => n,
                (Some(q), Some(n)) => bail!(usage(format!("--q {q} and --n {n} disagree"))),
                (None, None) => bail!(usage("--edges needs --q or --n")),
            };
            Loaded {
                graph: parse_inline(edges, n)?,
                q: inp.q,
            }
        }
        (Some(path), None) => parse_text(&read(path)?)?,
    };
    if let Some(q) = inp.q {
        match loaded.q {
            Some(h) if h != q => bail!(usage(format!("--q {q} conflicts with the header q={h}"))),
            _ => loaded.q = Some(q),
        }
    }
    Ok(loaded)
}
