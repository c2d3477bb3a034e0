//! Edge-list text serialization.
//!
//! Bipartite graphs:
//! ```text
//! bipartite <left_count> <right_count> <edge_count>
//! u v
//! ```
//! Weighted graphs:
//! ```text
//! weighted <n> <entry_count>
//! u v w      (u < v)
//! ```
//! Lines starting with `#` are comments. Writing is canonical (edges sorted),
//! so a write–read–write round trip is byte-stable.

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Side, VertexSet, WeightedGraph};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

/// A graph file of either kind, detected from the header keyword.
#[derive(Debug, Clone)]
pub enum GraphFile {
    Bipartite(BipartiteGraph),
    Weighted(WeightedGraph),
}

pub fn bipartite_to_string(g: &BipartiteGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "bipartite {} {} {}",
        g.left_count(),
        g.right_count(),
        g.edge_count()
    );
    // adjacency lists are already sorted, so scanning left vertices in order
    // emits edges in canonical (u, v) order
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

pub fn weighted_to_string(g: &WeightedGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "weighted {} {}", g.vertex_count(), g.entry_count());
    for (u, v, w) in g.entries() {
        let _ = writeln!(out, "{u} {v} {w}");
    }
    out
}

pub fn write_bipartite(g: &BipartiteGraph, path: &Path) -> Result<()> {
    fs::write(path, bipartite_to_string(g))?;
    Ok(())
}

pub fn write_weighted(g: &WeightedGraph, path: &Path) -> Result<()> {
    fs::write(path, weighted_to_string(g))?;
    Ok(())
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| Error::Parse {
        line,
        message: format!("missing {what}"),
    })?
    .parse()
    .map_err(|_| Error::Parse {
        line,
        message: format!("invalid {what}"),
    })
}

pub fn parse_bipartite(text: &str) -> Result<BipartiteGraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        message: "empty file".into(),
    })?;
    let mut toks = header.split_ascii_whitespace();
    match toks.next() {
        Some("bipartite") => {}
        other => {
            return Err(Error::Parse {
                line: hline,
                message: format!("expected `bipartite` header, found {other:?}"),
            })
        }
    }
    let left_count: usize = parse_field(toks.next(), hline, "left count")?;
    let right_count: usize = parse_field(toks.next(), hline, "right count")?;
    let edge_count: usize = parse_field(toks.next(), hline, "edge count")?;
    if left_count == 0 || right_count == 0 {
        return Err(Error::Parse {
            line: hline,
            message: "vertex counts must be positive".into(),
        });
    }

    let mut adjacency: Vec<Vec<u32>> = vec![Vec::new(); left_count];
    let mut seen_edges = 0usize;
    for (ln, line) in lines {
        let mut toks = line.split_ascii_whitespace();
        let u: usize = parse_field(toks.next(), ln, "left endpoint")?;
        let v: usize = parse_field(toks.next(), ln, "right endpoint")?;
        if toks.next().is_some() {
            return Err(Error::Parse {
                line: ln,
                message: "trailing tokens after edge".into(),
            });
        }
        if u >= left_count {
            return Err(Error::Parse {
                line: ln,
                message: format!("left endpoint {u} out of range (count {left_count})"),
            });
        }
        if v >= right_count {
            return Err(Error::Parse {
                line: ln,
                message: format!("right endpoint {v} out of range (count {right_count})"),
            });
        }
        adjacency[u].push(v as u32);
        seen_edges += 1;
    }
    if seen_edges != edge_count {
        return Err(Error::Parse {
            line: 0,
            message: format!("header promises {edge_count} edges, file has {seen_edges}"),
        });
    }
    BipartiteGraph::new(left_count, right_count, adjacency)
}

pub fn parse_weighted(text: &str) -> Result<WeightedGraph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        message: "empty file".into(),
    })?;
    let mut toks = header.split_ascii_whitespace();
    match toks.next() {
        Some("weighted") => {}
        other => {
            return Err(Error::Parse {
                line: hline,
                message: format!("expected `weighted` header, found {other:?}"),
            })
        }
    }
    let n: usize = parse_field(toks.next(), hline, "vertex count")?;
    let entry_count: usize = parse_field(toks.next(), hline, "entry count")?;
    let mut g = WeightedGraph::new(n).map_err(|e| Error::Parse {
        line: hline,
        message: e.to_string(),
    })?;
    let mut seen = 0usize;
    for (ln, line) in lines {
        let mut toks = line.split_ascii_whitespace();
        let u: usize = parse_field(toks.next(), ln, "first endpoint")?;
        let v: usize = parse_field(toks.next(), ln, "second endpoint")?;
        let w: u64 = parse_field(toks.next(), ln, "weight")?;
        if u >= v {
            return Err(Error::Parse {
                line: ln,
                message: format!("entries must satisfy u < v, found {u} {v}"),
            });
        }
        if w == 0 {
            return Err(Error::Parse {
                line: ln,
                message: "zero-weight entries must be omitted".into(),
            });
        }
        g.add_weight(u, v, w).map_err(|e| Error::Parse {
            line: ln,
            message: e.to_string(),
        })?;
        seen += 1;
    }
    if seen != entry_count {
        return Err(Error::Parse {
            line: 0,
            message: format!("header promises {entry_count} entries, file has {seen}"),
        });
    }
    Ok(g)
}

pub fn read_bipartite(path: &Path) -> Result<BipartiteGraph> {
    parse_bipartite(&fs::read_to_string(path)?)
}

pub fn read_weighted(path: &Path) -> Result<WeightedGraph> {
    parse_weighted(&fs::read_to_string(path)?)
}

/// Reads either kind of graph file, keyed on the header.
pub fn read_graph_file(path: &Path) -> Result<GraphFile> {
    let text = fs::read_to_string(path)?;
    let keyword = content_lines(&text)
        .next()
        .and_then(|(_, l)| l.split_ascii_whitespace().next())
        .unwrap_or("");
    match keyword {
        "bipartite" => Ok(GraphFile::Bipartite(parse_bipartite(&text)?)),
        "weighted" => Ok(GraphFile::Weighted(parse_weighted(&text)?)),
        other => Err(Error::Parse {
            line: 1,
            message: format!("unknown graph header {other:?}"),
        }),
    }
}

/// Reads a vertex set: whitespace-separated indices, `#` comments.
pub fn read_vertex_set(path: &Path, side: Side) -> Result<VertexSet> {
    let text = fs::read_to_string(path)?;
    let mut indices = Vec::new();
    for (ln, line) in content_lines(&text) {
        for tok in line.split_ascii_whitespace() {
            let v: usize = tok.parse().map_err(|_| Error::Parse {
                line: ln,
                message: format!("invalid vertex index {tok:?}"),
            })?;
            indices.push(v);
        }
    }
    Ok(VertexSet::new(side, indices))
}
