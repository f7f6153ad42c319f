//! Text formats: the clustered edge list, graph6 and DOT.
//!
//! Edge lists start with a header line `q=<int>` (a clustered graph on `2q`
//! vertices) or `n=<int>` (a plain graph), followed by one `u v` pair of
//! linear vertex indices per line. Vertex `v_{mu,i}` has index
//! `(mu-1)*q + (i-1)`. Text after `#` is ignored.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{ClusteredGraph, Graph};

/// A parsed edge list. `q` is present when the header fixed a cluster size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeList {
    pub q: Option<usize>,
    pub graph: Graph,
}

impl EdgeList {
    pub fn clustered(self) -> Result<ClusteredGraph> {
        match self.q {
            Some(q) => {
                let edges = self.graph.edges();
                if q == 0 {
                    Ok(ClusteredGraph::empty(0))
                } else {
                    ClusteredGraph::build(q, &edges)
                }
            }
            None => ClusteredGraph::from_graph(self.graph),
        }
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

pub fn parse_edge_list(text: &str) -> Result<EdgeList> {
    let mut header: Option<(usize, Option<usize>)> = None;
    let mut edges = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let Some((n, _)) = header else {
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(line_no, "expected header `q=<int>` or `n=<int>`"))?;
            let value: usize = value.trim().parse().map_err(|_| {
                Error::parse(line_no, format!("bad header value `{}`", value.trim()))
            })?;
            header = match key.trim() {
                "q" => Some((2 * value, Some(value))),
                "n" => Some((value, None)),
                other => {
                    return Err(Error::parse(
                        line_no,
                        format!("unknown header key `{other}`"),
                    ))
                }
            };
            continue;
        };
        let mut it = line.split_whitespace();
        let mut next = |what: &str| -> Result<usize> {
            let tok = it
                .next()
                .ok_or_else(|| Error::parse(line_no, format!("missing {what} vertex")))?;
            let v: usize = tok
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad vertex `{tok}`")))?;
            if v >= n {
                return Err(Error::parse(
                    line_no,
                    format!("vertex {v} out of range for {n} vertices"),
                ));
            }
            Ok(v)
        };
        let (u, v) = (next("first")?, next("second")?);
        if it.next().is_some() {
            return Err(Error::parse(line_no, "expected exactly two vertices"));
        }
        if u == v {
            return Err(Error::parse(line_no, format!("self-loop at vertex {u}")));
        }
        edges.push((u, v));
    }
    let (n, q) = header.ok_or_else(|| Error::parse(0, "missing header line"))?;
    Ok(EdgeList {
        q,
        graph: Graph::from_edges(n, &edges)?,
    })
}

/// Normalized clustered edge list: header, then sorted edges `u v` with `u < v`.
pub fn write_edge_list(g: &ClusteredGraph) -> String {
    let mut out = format!("q={}\n", g.q());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn write_plain_edge_list(g: &Graph) -> String {
    let mut out = format!("n={}\n", g.order());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

const GRAPH6_HEADER: &str = ">>graph6<<";

pub fn encode_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 line. `line_no` is used in error messages.
pub fn decode_graph6(line: &str, line_no: usize) -> Result<Graph> {
    let line = line.trim_end_matches(['\r', '\n']);
    let line = line.strip_prefix(GRAPH6_HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(Error::parse(
            line_no,
            format!("illegal graph6 character at column {}", pos + 1),
        ));
    }
    if bytes.is_empty() {
        return Err(Error::parse(line_no, "empty graph6 line"));
    }
    let six = |b: u8| (b - 63) as usize;
    let (n, body) = if bytes[0] != 126 {
        (six(bytes[0]), &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Error::parse(line_no, "truncated graph6 order"));
        }
        (
            six(bytes[1]) << 12 | six(bytes[2]) << 6 | six(bytes[3]),
            &bytes[4..],
        )
    } else {
        if bytes.len() < 8 {
            return Err(Error::parse(line_no, "truncated graph6 order"));
        }
        let n = bytes[2..8].iter().fold(0usize, |acc, &b| acc << 6 | six(b));
        (n, &bytes[8..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() != need {
        return Err(Error::parse(
            line_no,
            format!(
                "expected {need} adjacency bytes for {n} vertices, found {}",
                body.len()
            ),
        ));
    }
    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            if six(body[k / 6]) >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if !k.is_multiple_of(6) && six(body[k / 6]) & ((1 << (6 - k % 6)) - 1) != 0 {
        return Err(Error::parse(line_no, "nonzero graph6 padding bits"));
    }
    Graph::from_edges(n, &edges)
}

/// Decodes every non-blank line of a graph6 stream, 1-based line numbers in
/// errors.
pub fn parse_graph6_stream(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(k, l)| decode_graph6(l.trim(), k + 1))
        .collect()
}

/// DOT rendering with each cluster drawn as one rank.
pub fn to_dot(g: &ClusteredGraph) -> String {
    let mut out = String::from("graph G {\n  rankdir=TB;\n  node [shape=circle];\n");
    for mu in 1..=2 {
        let _ = writeln!(
            out,
            "  subgraph cluster_{mu} {{\n    label=\"C{mu}\";\n    rank=same;"
        );
        for i in 1..=g.q() {
            let v = g.vertex(mu, i);
            let _ = writeln!(out, "    {v} [label=\"v{mu}{i}\"];");
        }
        out.push_str("  }\n");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}
