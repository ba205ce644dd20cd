//! Text formats.
//!
//! Graph: `n m`, then `m` lines `u v`; lines `# label <v> <name>` attach
//! labels, other `#` lines are comments. Rotation: one line `v: e1 e2 ...`
//! per vertex, edge ids clockwise. Embedding: the page count, the spine as
//! space-separated vertices, then one `u v page` line per edge.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::book::{BookEmbedding, BookError};
use crate::graph::{EdgeId, Graph, GraphError};
use crate::planar::{EmbeddingError, RotationSystem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error(transparent)]
    Book(#[from] BookError),
}

fn syntax(line: usize, reason: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, reason: reason.into() }
}

fn number<T: FromStr>(tok: &str, line: usize) -> Result<T, ParseError> {
    tok.parse().map_err(|_| syntax(line, format!("expected a number, found `{tok}`")))
}

/// Non-empty lines with their 1-based numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty())
}

pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut labels: Vec<(usize, usize, String)> = Vec::new();
    for (line, t) in content_lines(text) {
        if let Some(rest) = t.strip_prefix('#') {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.first() == Some(&"label") {
                if parts.len() != 3 {
                    return Err(syntax(line, "expected `# label <vertex> <name>`"));
                }
                labels.push((line, number(parts[1], line)?, parts[2].to_string()));
            }
            continue;
        }
        let toks: Vec<&str> = t.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(syntax(line, "expected two numbers"));
        }
        let (a, b) = (number(toks[0], line)?, number(toks[1], line)?);
        if header.is_none() {
            header = Some((a, b));
        } else {
            edges.push((a, b));
        }
    }
    let (n, m) = header.ok_or_else(|| syntax(0, "missing `n m` header"))?;
    if edges.len() != m {
        return Err(syntax(0, format!("header announces {m} edges, found {}", edges.len())));
    }
    let g = Graph::new(n, &edges)?;
    if labels.is_empty() {
        return Ok(g);
    }
    let mut names: Vec<Option<String>> = vec![None; n];
    for (line, v, name) in labels {
        if v >= n {
            return Err(syntax(line, format!("label for vertex {v} out of range")));
        }
        names[v] = Some(name);
    }
    let names = names.into_iter().enumerate().map(|(v, l)| l.unwrap_or_else(|| v.to_string())).collect();
    Ok(g.with_labels(names)?)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.vertex_count(), g.edge_count());
    if let Some(labels) = g.labels() {
        for (v, l) in labels.iter().enumerate() {
            let _ = writeln!(out, "# label {v} {l}");
        }
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn parse_rotation(text: &str, g: Graph) -> Result<RotationSystem, ParseError> {
    let n = g.vertex_count();
    let mut rotation: Vec<Option<Vec<EdgeId>>> = vec![None; n];
    for (line, t) in content_lines(text) {
        if t.starts_with('#') {
            continue;
        }
        let (v, rest) = t.split_once(':').ok_or_else(|| syntax(line, "expected `v: e1 e2 ...`"))?;
        let v: usize = number(v.trim(), line)?;
        if v >= n {
            return Err(syntax(line, format!("vertex {v} out of range")));
        }
        if rotation[v].is_some() {
            return Err(syntax(line, format!("vertex {v} listed twice")));
        }
        let edges = rest.split_whitespace().map(|tok| number(tok, line)).collect::<Result<Vec<EdgeId>, _>>()?;
        if let Some(&e) = edges.iter().find(|&&e| e >= g.edge_count()) {
            return Err(syntax(line, format!("edge {e} out of range")));
        }
        rotation[v] = Some(edges);
    }
    let rotation = rotation
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| syntax(0, format!("no rotation for vertex {v}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RotationSystem::new(g, rotation)?)
}

pub fn write_rotation(rs: &RotationSystem) -> String {
    let mut out = String::new();
    for v in 0..rs.graph().vertex_count() {
        let _ = write!(out, "{v}:");
        for e in rs.rotation(v) {
            let _ = write!(out, " {e}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_embedding(text: &str, g: &Graph) -> Result<BookEmbedding, ParseError> {
    // The spine line may be empty for the empty graph, so keep blank lines
    // until the spine has been read.
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (pline, p) = lines
        .by_ref()
        .find(|(_, l)| !l.is_empty())
        .ok_or_else(|| syntax(0, "missing page count"))?;
    let pages: usize = number(p, pline)?;
    let (sline, s) = lines.next().ok_or_else(|| syntax(pline + 1, "missing spine"))?;
    let spine = s.split_whitespace().map(|tok| number(tok, sline)).collect::<Result<Vec<usize>, _>>()?;
    let mut page_of = vec![None; g.edge_count()];
    for (line, t) in lines.filter(|(_, l)| !l.is_empty()) {
        let toks: Vec<&str> = t.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(syntax(line, "expected `u v page`"));
        }
        let (u, v, p): (usize, usize, usize) = (number(toks[0], line)?, number(toks[1], line)?, number(toks[2], line)?);
        let e = (u < g.vertex_count() && v < g.vertex_count())
            .then(|| g.edge_id(u, v))
            .flatten()
            .ok_or_else(|| syntax(line, format!("{u} {v} is not an edge of the graph")))?;
        if page_of[e].replace(p).is_some() {
            return Err(syntax(line, format!("edge {u} {v} assigned twice")));
        }
    }
    if spine.len() != g.vertex_count() {
        return Err(syntax(sline, format!("spine has {} vertices, graph has {}", spine.len(), g.vertex_count())));
    }
    let page_of = page_of
        .into_iter()
        .enumerate()
        .map(|(e, p)| {
            p.ok_or_else(|| {
                let (u, v) = g.edge(e);
                syntax(0, format!("edge {u} {v} has no page"))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BookEmbedding::new(spine, page_of, pages)?)
}

pub fn write_embedding(g: &Graph, emb: &BookEmbedding) -> String {
    let mut out = format!("{}\n", emb.page_count());
    let spine: Vec<String> = emb.spine().iter().map(|v| v.to_string()).collect();
    out.push_str(&spine.join(" "));
    out.push('\n');
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let _ = writeln!(out, "{u} {v} {}", emb.page_of(e));
    }
    out
}
