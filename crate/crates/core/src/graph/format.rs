//! The line-oriented graph file format.
//!
//! ```text
//! VCS 1          # or `VCS-U 1` for undirected graphs
//! n 4
//! S 1 0          # count, then ids; may be omitted when empty
//! T 1 3
//! E 3
//! 0 1
//! 1 2
//! 2 3
//! ```
//!
//! `#` starts a comment that runs to the end of the line. Blank lines are
//! ignored. Canonical output sorts edges and uses single spaces.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use super::{Digraph, TerminalSpec, UGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed header: {msg}")]
    Header { line: usize, msg: String },
    #[error("line {line}: malformed record: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: vertex id {id} out of range (n = {n})")]
    OutOfRange { line: usize, id: usize, n: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop at vertex {v}")]
    SelfLoop { line: usize, v: usize },
    #[error("line {line}: duplicate terminal {id}")]
    DuplicateTerminal { line: usize, id: usize },
    #[error("expected a {expected} graph, found a {found} graph")]
    KindMismatch { expected: &'static str, found: &'static str },
    #[error("unexpected end of input: {0}")]
    Truncated(String),
}

/// A parsed graph file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphFile {
    Directed(Digraph, TerminalSpec),
    Undirected(UGraph, TerminalSpec),
}

impl GraphFile {
    fn kind(&self) -> &'static str {
        match self {
            GraphFile::Directed(..) => "directed",
            GraphFile::Undirected(..) => "undirected",
        }
    }

    /// Canonical text form.
    pub fn serialize(&self) -> String {
        match self {
            GraphFile::Directed(g, t) => serialize_digraph(g, t),
            GraphFile::Undirected(g, t) => serialize_ugraph(g, t),
        }
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    /// Next non-empty line with comments stripped, as (1-based number, tokens).
    fn next_record(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (i, raw) in self.inner.by_ref() {
            let body = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = body.split_whitespace().collect();
            if !toks.is_empty() {
                return Some((i + 1, toks));
            }
        }
        None
    }
}

fn number(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse::<usize>().map_err(|_| ParseError::Malformed {
        line,
        msg: format!("expected a non-negative integer, found `{tok}`"),
    })
}

fn id(tok: &str, line: usize, n: usize) -> Result<usize, ParseError> {
    let id = number(tok, line)?;
    if id >= n {
        return Err(ParseError::OutOfRange { line, id, n });
    }
    Ok(id)
}

fn terminal_list(toks: &[&str], line: usize, n: usize) -> Result<Vec<usize>, ParseError> {
    let count = number(
        toks.get(1).ok_or(ParseError::Malformed { line, msg: "missing terminal count".into() })?,
        line,
    )?;
    if toks.len() != count + 2 {
        return Err(ParseError::Malformed {
            line,
            msg: format!("terminal count {count} but {} ids", toks.len() - 2),
        });
    }
    let mut seen = HashSet::new();
    let mut ids = Vec::with_capacity(count);
    for tok in &toks[2..] {
        let v = id(tok, line, n)?;
        if !seen.insert(v) {
            return Err(ParseError::DuplicateTerminal { line, id: v });
        }
        ids.push(v);
    }
    Ok(ids)
}

/// `parse_graph`: reads either kind of graph file.
pub fn parse_graph(text: &str) -> Result<GraphFile, ParseError> {
    let mut lines = Lines { inner: text.lines().enumerate() };
    let (hline, header) = lines.next_record().ok_or(ParseError::Truncated("missing header".into()))?;
    let directed = match header.as_slice() {
        ["VCS", "1"] => true,
        ["VCS-U", "1"] => false,
        _ => {
            return Err(ParseError::Header {
                line: hline,
                msg: format!("expected `VCS 1` or `VCS-U 1`, found `{}`", header.join(" ")),
            })
        }
    };
    let (nline, ntoks) = lines.next_record().ok_or(ParseError::Truncated("missing `n` line".into()))?;
    let n = match ntoks.as_slice() {
        ["n", v] => number(v, nline)?,
        _ => return Err(ParseError::Header { line: nline, msg: "expected `n <count>`".into() }),
    };

    let mut sources = Vec::new();
    let mut sinks = Vec::new();
    let (mut line, mut toks) = lines.next_record().ok_or(ParseError::Truncated("missing `E` line".into()))?;
    if toks[0] == "S" {
        sources = terminal_list(&toks, line, n)?;
        (line, toks) = lines.next_record().ok_or(ParseError::Truncated("missing `E` line".into()))?;
    }
    if toks[0] == "T" {
        sinks = terminal_list(&toks, line, n)?;
        (line, toks) = lines.next_record().ok_or(ParseError::Truncated("missing `E` line".into()))?;
    }
    let m = match toks.as_slice() {
        ["E", v] => number(v, line)?,
        _ => return Err(ParseError::Header { line, msg: "expected `E <count>`".into() }),
    };

    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    for i in 0..m {
        let (line, toks) = lines
            .next_record()
            .ok_or_else(|| ParseError::Truncated(format!("expected {m} edges, found {i}")))?;
        if toks.len() != 2 {
            return Err(ParseError::Malformed { line, msg: "an edge is two vertex ids".into() });
        }
        let (u, v) = (id(toks[0], line, n)?, id(toks[1], line, n)?);
        if u == v {
            return Err(ParseError::SelfLoop { line, v: u });
        }
        let key = if directed { (u, v) } else { (u.min(v), u.max(v)) };
        if !seen.insert(key) {
            return Err(ParseError::DuplicateEdge { line, u, v });
        }
        edges.push((u, v));
    }
    if let Some((line, _)) = lines.next_record() {
        return Err(ParseError::Malformed { line, msg: "trailing content after the edge list".into() });
    }

    let terms = TerminalSpec { sources, sinks };
    Ok(if directed {
        GraphFile::Directed(Digraph::new(n, edges).expect("edges validated"), terms)
    } else {
        GraphFile::Undirected(UGraph::new(n, edges).expect("edges validated"), terms)
    })
}

/// Parses a file that must hold a directed graph.
pub fn parse_digraph(text: &str) -> Result<(Digraph, TerminalSpec), ParseError> {
    match parse_graph(text)? {
        GraphFile::Directed(g, t) => Ok((g, t)),
        other => Err(ParseError::KindMismatch { expected: "directed", found: other.kind() }),
    }
}

/// Parses a file that must hold an undirected graph.
pub fn parse_ugraph(text: &str) -> Result<(UGraph, TerminalSpec), ParseError> {
    match parse_graph(text)? {
        GraphFile::Undirected(g, t) => Ok((g, t)),
        other => Err(ParseError::KindMismatch { expected: "undirected", found: other.kind() }),
    }
}

fn write_body(out: &mut String, n: usize, terms: &TerminalSpec, edges: &[(usize, usize)]) {
    let _ = writeln!(out, "n {n}");
    for (tag, list) in [("S", &terms.sources), ("T", &terms.sinks)] {
        let _ = write!(out, "{tag} {}", list.len());
        for v in list.iter() {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
    }
    let _ = writeln!(out, "E {}", edges.len());
    for &(u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
}

pub fn serialize_digraph(g: &Digraph, terms: &TerminalSpec) -> String {
    let mut out = String::from("VCS 1\n");
    write_body(&mut out, g.n(), terms, g.edges());
    out
}

pub fn serialize_ugraph(g: &UGraph, terms: &TerminalSpec) -> String {
    let mut out = String::from("VCS-U 1\n");
    write_body(&mut out, g.n(), terms, g.edges());
    out
}
