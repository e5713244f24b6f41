//! Plain-text graph files.
//!
//! ```text
//! c comment
//! p edge-cap <n> <m>
//! a <u> <v> <cap>
//! ```
//!
//! Vertex-capacitated files use `p vertex-cap <n> <m>`, one `w <v> <cap>`
//! line per vertex (missing vertices default to capacity 1) and `a <u> <v>`
//! arc lines. Vertex ids are 1-based. Capacities are nonnegative decimals
//! (`2.75`) or fractions (`1/3`), read exactly.

use std::fmt::Write as _;
use std::path::Path;

use crate::capacity::{common_scale, format_ratio, Capacity, Rational};
use crate::error::{Error, Result};
use crate::graph::{ArcCap, DiGraph};
use crate::vertex::VertexCapGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphKind {
    EdgeCap,
    VertexCap,
}

impl GraphKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            GraphKind::EdgeCap => "edge-cap",
            GraphKind::VertexCap => "vertex-cap",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedGraph {
    Edge(DiGraph),
    Vertex(VertexCapGraph),
}

impl ParsedGraph {
    pub fn kind(&self) -> GraphKind {
        match self {
            ParsedGraph::Edge(_) => GraphKind::EdgeCap,
            ParsedGraph::Vertex(_) => GraphKind::VertexCap,
        }
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_cap(tok: &str, line: usize) -> Result<Rational> {
    if tok.starts_with('-') {
        return Err(err(line, format!("negative capacity {tok}")));
    }
    Rational::parse(tok).ok_or_else(|| err(line, format!("invalid capacity {tok:?}")))
}

fn reduce(values: &[Rational], line: usize) -> Result<(Vec<u128>, u128)> {
    common_scale(values).map_err(|_| err(line, "capacities exceed 128-bit range"))
}

fn parse_id(tok: Option<&str>, n: usize, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| err(line, "missing vertex id"))?;
    let id: usize = tok
        .parse()
        .map_err(|_| err(line, format!("invalid vertex id {tok:?}")))?;
    if id == 0 || id > n {
        return Err(err(line, format!("vertex id {id} outside 1..={n}")));
    }
    Ok(id - 1)
}

fn parse_count(tok: Option<&str>, line: usize) -> Result<usize> {
    let tok = tok.ok_or_else(|| err(line, "incomplete problem line"))?;
    tok.parse().map_err(|_| err(line, format!("invalid count {tok:?}")))
}

pub fn parse_graph_str(text: &str) -> Result<ParsedGraph> {
    let mut header: Option<(GraphKind, usize, usize, usize)> = None;
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut caps: Vec<Rational> = Vec::new();
    let mut weights: Vec<Option<Rational>> = Vec::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let mut toks = raw.split_whitespace();
        let Some(tag) = toks.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(err(line, "duplicate problem line"));
                }
                let kind = match toks.next() {
                    Some("edge-cap") => GraphKind::EdgeCap,
                    Some("vertex-cap") => GraphKind::VertexCap,
                    other => return Err(err(line, format!("unknown problem kind {other:?}"))),
                };
                let n = parse_count(toks.next(), line)?;
                let m = parse_count(toks.next(), line)?;
                weights = vec![None; n];
                header = Some((kind, n, m, line));
            }
            "a" | "w" => {
                let Some((kind, n, _, _)) = header else {
                    return Err(err(line, "data line before problem line"));
                };
                if tag == "w" {
                    if kind != GraphKind::VertexCap {
                        return Err(err(line, "vertex capacity in an edge-cap file"));
                    }
                    let v = parse_id(toks.next(), n, line)?;
                    let c = parse_cap(toks.next().ok_or_else(|| err(line, "missing capacity"))?, line)?;
                    if weights[v].replace(c).is_some() {
                        return Err(err(line, format!("duplicate capacity for vertex {}", v + 1)));
                    }
                } else {
                    let u = parse_id(toks.next(), n, line)?;
                    let v = parse_id(toks.next(), n, line)?;
                    if kind == GraphKind::EdgeCap {
                        caps.push(parse_cap(
                            toks.next().ok_or_else(|| err(line, "missing capacity"))?,
                            line,
                        )?);
                    }
                    arcs.push((u, v));
                }
            }
            other => return Err(err(line, format!("unknown line type {other:?}"))),
        }
        if let Some(extra) = toks.next() {
            return Err(err(line, format!("unexpected token {extra:?}")));
        }
    }
    let (kind, n, m, hline) = header.ok_or_else(|| err(last.max(1), "missing problem line"))?;
    if arcs.len() != m {
        return Err(err(hline, format!("header declares {m} arcs, found {}", arcs.len())));
    }
    match kind {
        GraphKind::EdgeCap => {
            let (nums, scale) = reduce(&caps, hline)?;
            let g = DiGraph::from_arc_caps(
                n,
                arcs.iter()
                    .zip(nums)
                    .map(|(&(u, v), c)| (u, v, ArcCap::Finite(Capacity(c)))),
                scale,
            )?;
            Ok(ParsedGraph::Edge(g))
        }
        GraphKind::VertexCap => {
            let values: Vec<Rational> = weights.iter().map(|w| w.unwrap_or(Rational::integer(1))).collect();
            let (nums, scale) = reduce(&values, hline)?;
            Ok(ParsedGraph::Vertex(
                VertexCapGraph::new(n, arcs, nums)?.with_scale(scale),
            ))
        }
    }
}

pub fn parse_graph(path: impl AsRef<Path>) -> Result<ParsedGraph> {
    parse_graph_str(&std::fs::read_to_string(path)?)
}

pub fn write_edge_graph(g: &DiGraph) -> String {
    let mut s = format!("p edge-cap {} {}\n", g.n(), g.m());
    for a in g.arcs() {
        let _ = writeln!(
            s,
            "a {} {} {}",
            a.tail + 1,
            a.head + 1,
            format_ratio(a.cap.0, g.scale())
        );
    }
    s
}

pub fn write_vertex_graph(g: &VertexCapGraph) -> String {
    let mut s = format!("p vertex-cap {} {}\n", g.n(), g.m());
    for (v, c) in g.vcaps().iter().enumerate() {
        let _ = writeln!(s, "w {} {}", v + 1, format_ratio(c.0, g.scale()));
    }
    for &(u, v) in g.arcs() {
        let _ = writeln!(s, "a {} {}", u + 1, v + 1);
    }
    s
}

pub fn write_graph(g: &ParsedGraph) -> String {
    match g {
        ParsedGraph::Edge(g) => write_edge_graph(g),
        ParsedGraph::Vertex(g) => write_vertex_graph(g),
    }
}
