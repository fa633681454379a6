//! Edge-list text format.
//!
//! ```text
//! # comment
//! n m
//! bipartite k        (optional; declares L = 0..k)
//! u v                (m lines, 0-indexed)
//! ```
//!
//! An EDCS file is the same format preceded by `# edcs beta=<b> beta_minus=<b->`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use edcs_core::edcs::Edcs;
use edcs_core::{EdcsParams, Graph};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{0}")]
    Graph(#[from] edcs_core::Error),
    #[error("cannot read {path}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

/// A parsed edge-list file.
#[derive(Debug, Clone)]
pub struct Parsed {
    pub graph: Graph,
    /// Repeated edges that were dropped (either orientation).
    pub duplicates: usize,
    /// `(beta, beta_minus)` from an EDCS header comment.
    pub edcs_params: Option<(u64, u64)>,
}

fn edcs_header(comment: &str) -> Option<(u64, u64)> {
    let rest = comment.trim_start_matches('#').trim().strip_prefix("edcs")?;
    let mut beta = None;
    let mut beta_minus = None;
    for field in rest.split_whitespace() {
        match field.split_once('=') {
            Some(("beta", v)) => beta = v.parse().ok(),
            Some(("beta_minus", v)) => beta_minus = v.parse().ok(),
            _ => {}
        }
    }
    Some((beta?, beta_minus?))
}

fn parse_usize(line: usize, tok: &str, what: &str) -> Result<usize, FormatError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("{what} `{tok}` is not a non-negative integer")))
}

pub fn parse_edge_list(text: &str) -> Result<Parsed, FormatError> {
    let mut edcs_params = None;
    let mut header: Option<(usize, usize)> = None;
    let mut left: Option<usize> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let content = raw.trim();
        if content.is_empty() {
            continue;
        }
        if content.starts_with('#') {
            if let Some(p) = edcs_header(content) {
                edcs_params = Some(p);
            }
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks[0] == "bipartite" {
            if toks.len() != 2 {
                return Err(syntax(line, "expected `bipartite k`"));
            }
            if !edges.is_empty() {
                return Err(syntax(line, "`bipartite` must precede the edges"));
            }
            left = Some(parse_usize(line, toks[1], "side size")?);
            continue;
        }
        if toks.len() != 2 {
            return Err(syntax(line, format!("expected two integers, found {} fields", toks.len())));
        }
        let a = parse_usize(line, toks[0], "value")?;
        let b = parse_usize(line, toks[1], "value")?;
        let Some((n, _)) = header else {
            header = Some((a, b));
            continue;
        };
        if a >= n || b >= n {
            return Err(syntax(line, format!("edge ({a}, {b}) has an endpoint outside 0..{n}")));
        }
        if a == b {
            return Err(syntax(line, format!("self-loop at vertex {a}")));
        }
        edges.push((a, b));
    }
    let (n, m) = header.ok_or_else(|| syntax(last_line.max(1), "missing `n m` header"))?;
    if edges.len() != m {
        return Err(syntax(
            last_line.max(1),
            format!("header declares {m} edges but {} were listed", edges.len()),
        ));
    }
    let (mut graph, duplicates) = Graph::with_duplicates(n, edges)?;
    if let Some(k) = left {
        graph = graph.with_left_prefix(k)?;
    }
    Ok(Parsed {
        graph,
        duplicates,
        edcs_params,
    })
}

pub fn read_edge_list(path: &Path) -> Result<(Parsed, Vec<u8>), FormatError> {
    let bytes = fs::read(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let text = String::from_utf8_lossy(&bytes);
    let parsed = parse_edge_list(&text).map_err(|e| match e {
        FormatError::Syntax { line, msg } => FormatError::Syntax {
            line,
            msg: format!("{}: {msg}", path.display()),
        },
        other => other,
    })?;
    Ok((parsed, bytes))
}

/// Serializes `g` with edges in lexicographic order.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(16 + 12 * g.m());
    writeln!(out, "{} {}", g.n(), g.m()).unwrap();
    if let Some(k) = g.left_prefix() {
        writeln!(out, "bipartite {k}").unwrap();
    }
    for e in g.edges() {
        writeln!(out, "{} {}", e.0, e.1).unwrap();
    }
    out
}

pub fn write_edcs(h: &Edcs<'_>) -> String {
    let p = h.params();
    format!(
        "# edcs beta={} beta_minus={}\n{}",
        p.beta(),
        p.beta_minus(),
        write_edge_list(&h.to_graph())
    )
}

/// Rebuilds an EDCS of `host` from a parsed EDCS file; `params` overrides the
/// header.
pub fn edcs_from_parsed<'g>(
    host: &'g Graph,
    sub: &Parsed,
    params: Option<EdcsParams>,
) -> Result<Edcs<'g>, FormatError> {
    let params = match (params, sub.edcs_params) {
        (Some(p), _) => p,
        (None, Some((b, bm))) => EdcsParams::new(b, bm)?,
        (None, None) => {
            return Err(syntax(1, "EDCS file lacks `# edcs beta=.. beta_minus=..` and no --beta given"))
        }
    };
    if sub.graph.n() != host.n() {
        return Err(edcs_core::Error::VertexCountMismatch(host.n(), sub.graph.n()).into());
    }
    Ok(Edcs::from_edges(host, params, sub.graph.edges())?)
}
