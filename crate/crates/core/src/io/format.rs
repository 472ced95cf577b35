//! Line-oriented text formats for graphs, words, tours, witnesses and
//! vertex sets. Lines starting with `#` are comments everywhere.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use crate::dow::DoubleOccurrenceWord;
use crate::error::{Error, Result};
use crate::euler::{tour_from_word, EulerianTour};
use crate::graph::{MultiGraph, SimpleGraph, VertexId};
use crate::solvers::{VmOp, VmWitness};

/// Either kind of graph, as selected by the file header.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParsedGraph {
    Simple(SimpleGraph),
    Multi(MultiGraph),
}

/// Non-comment, non-blank lines with their 1-based line numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn invalid(line: usize, message: impl Into<String>) -> Error {
    Error::InvalidInput {
        line,
        message: message.into(),
    }
}

fn label_at(line: usize, text: &str) -> Result<VertexId> {
    VertexId::new(text).map_err(|e| invalid(line, e.to_string()))
}

/// Parses a graph file:
///
/// ```text
/// simple 5
/// a b
/// a c
/// ```
///
/// The header is `simple N` or `multi N`, optionally followed by all `N`
/// vertex labels (needed only for isolated vertices). Each further line is
/// one edge: two labels, or one two-character token naming two
/// single-character labels. Multigraph edge ids follow line order.
pub fn parse_graph(text: &str) -> Result<ParsedGraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| syntax(1, 1, "missing graph header"))?;
    let toks = tokens(header);
    let multi = match toks[0].1 {
        "simple" => false,
        "multi" => true,
        other => return Err(syntax(hline, 1, format!("expected 'simple' or 'multi', found {other:?}"))),
    };
    let (ncol, ntext) = *toks.get(1).ok_or_else(|| syntax(hline, header.len() + 1, "missing vertex count"))?;
    let n: usize = ntext
        .parse()
        .map_err(|_| syntax(hline, ncol, format!("vertex count {ntext:?} is not a number")))?;
    let declared: Vec<VertexId> = toks[2..].iter().map(|(_, t)| label_at(hline, t)).collect::<Result<_>>()?;
    if !declared.is_empty() && declared.len() != n {
        return Err(invalid(hline, format!("header declares {n} vertices but lists {}", declared.len())));
    }
    let declared_set: BTreeSet<VertexId> = declared.iter().cloned().collect();
    if declared_set.len() != declared.len() {
        return Err(invalid(hline, "header lists a vertex twice"));
    }

    let mut edges: Vec<(usize, VertexId, VertexId)> = Vec::new();
    for (lineno, line) in lines {
        let toks = tokens(line);
        let (a, b) = match toks.as_slice() {
            [(_, a), (_, b)] => (label_at(lineno, a)?, label_at(lineno, b)?),
            [(_, t)] if t.chars().count() == 2 => {
                let mut cs = t.chars();
                let a = cs.next().expect("two chars").to_string();
                let b = cs.next().expect("two chars").to_string();
                (label_at(lineno, &a)?, label_at(lineno, &b)?)
            }
            [(col, t)] => return Err(syntax(lineno, *col, format!("edge line needs two labels, found {t:?}"))),
            [_, _, (col, _), ..] => return Err(syntax(lineno, *col, "unexpected third token on edge line")),
            [] => unreachable!("content lines are non-empty"),
        };
        edges.push((lineno, a, b));
    }

    let mut vertices: BTreeSet<VertexId> = declared_set.clone();
    for (lineno, a, b) in &edges {
        for v in [a, b] {
            if !declared_set.is_empty() && !declared_set.contains(v) {
                return Err(invalid(*lineno, format!("vertex {v} is not listed in the header")));
            }
            vertices.insert(v.clone());
        }
    }
    if vertices.len() != n {
        return Err(invalid(
            hline,
            format!(
                "header declares {n} vertices but the edges mention {}; list all labels in the header to add isolated vertices",
                vertices.len()
            ),
        ));
    }

    if multi {
        let pairs = edges.into_iter().map(|(_, a, b)| (a, b));
        return Ok(ParsedGraph::Multi(MultiGraph::new(vertices, pairs)?));
    }
    let mut seen = BTreeSet::new();
    for (lineno, a, b) in &edges {
        if a == b {
            return Err(invalid(*lineno, format!("loop at {a} in a simple graph")));
        }
        let key = if a < b { (a, b) } else { (b, a) };
        if !seen.insert(key) {
            return Err(invalid(*lineno, format!("duplicate edge {a} {b}")));
        }
    }
    let pairs = edges.into_iter().map(|(_, a, b)| (a, b));
    Ok(ParsedGraph::Simple(SimpleGraph::new(vertices, pairs)?))
}

pub fn parse_simple_graph(text: &str) -> Result<SimpleGraph> {
    match parse_graph(text)? {
        ParsedGraph::Simple(g) => Ok(g),
        ParsedGraph::Multi(_) => Err(invalid(1, "expected a simple graph, found a multigraph")),
    }
}

pub fn parse_multigraph(text: &str) -> Result<MultiGraph> {
    match parse_graph(text)? {
        ParsedGraph::Multi(f) => Ok(f),
        ParsedGraph::Simple(_) => Err(invalid(1, "expected a multigraph, found a simple graph")),
    }
}

fn header(kind: &str, labels: &[VertexId], list: bool) -> String {
    let mut s = format!("{kind} {}", labels.len());
    if list {
        for v in labels {
            let _ = write!(s, " {v}");
        }
    }
    s.push('\n');
    s
}

/// Header plus sorted edges.
pub fn serialize_simple(g: &SimpleGraph) -> String {
    let isolated = g.degrees().contains(&0);
    let mut s = header("simple", g.vertices(), isolated);
    for (u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Header plus edges in id order, so ids survive a round trip.
pub fn serialize_multi(f: &MultiGraph) -> String {
    let isolated = (0..f.len()).any(|v| f.degree(v) == 0);
    let mut s = header("multi", f.vertices(), isolated);
    for e in 0..f.edge_count() {
        let (u, v) = f.edge_labels(e);
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

/// Space-separated letters; a single token longer than one character is
/// read letter by letter.
pub fn parse_word(text: &str) -> Result<DoubleOccurrenceWord> {
    let mut letters = Vec::new();
    for (lineno, line) in content_lines(text) {
        for (_, t) in tokens(line) {
            letters.push((lineno, t));
        }
    }
    if let [(lineno, t)] = letters.as_slice() {
        if t.chars().count() > 1 {
            return DoubleOccurrenceWord::from_compact(t).map_err(|e| invalid(*lineno, e.to_string()));
        }
    }
    let labels = letters.iter().map(|&(l, t)| label_at(l, t)).collect::<Result<Vec<_>>>()?;
    DoubleOccurrenceWord::new(labels)
}

pub fn serialize_word(w: &DoubleOccurrenceWord) -> String {
    format!("{w}\n")
}

/// `tour`, then alternating vertex and edge-id lines, ending on the first
/// vertex again. Written in canonical rotation.
pub fn serialize_tour(t: &EulerianTour) -> String {
    let c = t.canonical_form();
    let vs = c.vertices();
    let mut s = String::from("tour\n");
    for (v, e) in vs.iter().zip(c.edges()) {
        let _ = writeln!(s, "{v}\n{e}");
    }
    if let Some(v) = vs.first() {
        let _ = writeln!(s, "{v}");
    }
    s
}

pub fn parse_tour(f: &Arc<MultiGraph>, text: &str) -> Result<EulerianTour> {
    let mut lines = content_lines(text);
    match lines.next() {
        Some((_, "tour")) => {}
        Some((l, other)) => return Err(syntax(l, 1, format!("expected 'tour', found {other:?}"))),
        None => return Err(syntax(1, 1, "empty tour file")),
    }
    let mut vertices = Vec::new();
    let mut edges = Vec::new();
    let mut last = 0;
    for (i, (lineno, line)) in lines.enumerate() {
        last = lineno;
        if i % 2 == 0 {
            vertices.push(label_at(lineno, line)?);
        } else {
            edges.push(
                line.parse::<usize>()
                    .map_err(|_| syntax(lineno, 1, format!("expected an edge id, found {line:?}")))?,
            );
        }
    }
    if vertices.len() != edges.len() + 1 || vertices.first() != vertices.last() {
        return Err(invalid(last, "tour must alternate vertices and edges and end where it starts"));
    }
    vertices.pop();
    EulerianTour::new(Arc::clone(f), &vertices, edges).map_err(|e| invalid(last, e.to_string()))
}

/// A tour file, or a word read as the tour's visiting sequence.
pub fn parse_tour_or_word(f: &Arc<MultiGraph>, text: &str) -> Result<EulerianTour> {
    if content_lines(text).next().is_some_and(|(_, l)| l == "tour") {
        parse_tour(f, text)
    } else {
        tour_from_word(f, parse_word(text)?.letters())
    }
}

/// `LC v` / `DEL v` lines, then `ISO a=x b=y …` (sorted by source vertex).
pub fn serialize_witness(w: &VmWitness) -> String {
    let mut s = String::new();
    for op in &w.ops {
        let _ = writeln!(s, "{op}");
    }
    s.push_str("ISO");
    for (a, b) in &w.iso {
        let _ = write!(s, " {a}={b}");
    }
    s.push('\n');
    s
}

pub fn parse_witness(text: &str) -> Result<VmWitness> {
    let mut ops = Vec::new();
    let mut iso = None;
    for (lineno, line) in content_lines(text) {
        if iso.is_some() {
            return Err(syntax(lineno, 1, "nothing may follow the ISO line"));
        }
        let toks = tokens(line);
        match toks.as_slice() {
            [(_, "LC"), (_, v)] => ops.push(VmOp::Lc(label_at(lineno, v)?)),
            [(_, "DEL"), (_, v)] => ops.push(VmOp::Delete(label_at(lineno, v)?)),
            [(_, "ISO"), pairs @ ..] => {
                let mut map = BTreeMap::new();
                for &(col, p) in pairs {
                    let (a, b) = p
                        .split_once('=')
                        .ok_or_else(|| syntax(lineno, col, format!("expected a=b, found {p:?}")))?;
                    if map.insert(label_at(lineno, a)?, label_at(lineno, b)?).is_some() {
                        return Err(invalid(lineno, format!("{a} mapped twice")));
                    }
                }
                iso = Some(map);
            }
            [(col, t), ..] => return Err(syntax(lineno, *col, format!("expected LC, DEL or ISO, found {t:?}"))),
            [] => unreachable!("content lines are non-empty"),
        }
    }
    let iso = iso.ok_or_else(|| syntax(text.lines().count().max(1), 1, "missing ISO line"))?;
    Ok(VmWitness { ops, iso })
}

/// Labels separated by commas and/or whitespace, optionally in braces.
pub fn parse_vertex_set(text: &str) -> Result<BTreeSet<VertexId>> {
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    inner
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| label_at(1, t))
        .collect()
}

pub fn serialize_vertex_set<'a>(set: impl IntoIterator<Item = &'a VertexId>) -> String {
    set.into_iter().map(|v| v.as_str()).collect::<Vec<_>>().join(",")
}
