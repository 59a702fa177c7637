//! Instance and result file formats. Vertices are 1-indexed on disk.
//!
//! ```text
//! c comment
//! p lcol <n> <m>
//! e <u> <v>
//! l <v> <digits>
//! ```

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::engine::{Colour, ColourMask, Outcome, Stats, Verdict};
use crate::graph::{Graph, GraphError};
use crate::recognition::PromiseViolation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: vertex {vertex} outside 1..={n}")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: second list line for vertex {vertex}")]
    DuplicateListLine { line: usize, vertex: usize },
    #[error("line {line}: empty list for vertex {vertex}")]
    EmptyList { line: usize, vertex: usize },
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<usize, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| syntax(line, format!("bad {what} `{tok}`")))
}

fn vertex(tok: Option<&str>, line: usize, n: usize) -> Result<usize, ParseError> {
    let v = number(tok, line, "vertex")?;
    if v == 0 || v > n {
        return Err(ParseError::OutOfRange { line, vertex: v, n });
    }
    Ok(v - 1)
}

/// Parses a list digit string: non-empty, strictly ascending, over `1..=3`.
pub fn parse_list(digits: &str) -> Option<ColourMask> {
    let mut mask = ColourMask::EMPTY;
    let mut last = 0;
    for ch in digits.chars() {
        let c = ch.to_digit(10)? as Colour;
        if !(1..=3).contains(&c) || c <= last {
            return None;
        }
        mask = mask.with(c);
        last = c;
    }
    (!mask.is_empty()).then_some(mask)
}

pub fn list_digits(m: ColourMask) -> String {
    m.colours().map(|c| char::from(b'0' + c)).collect()
}

pub fn parse_instance(text: &str) -> Result<(Graph, Vec<ColourMask>), ParseError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut edges = Vec::new();
    let mut edge_lines = Vec::new();
    let mut lists: Vec<Option<ColourMask>> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        let Some(tag) = toks.next() else { continue };
        match tag {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(syntax(line, "second problem line"));
                }
                if toks.next() != Some("lcol") {
                    return Err(syntax(line, "expected `p lcol <n> <m>`"));
                }
                let n = number(toks.next(), line, "vertex count")?;
                let m = number(toks.next(), line, "edge count")?;
                header = Some((n, m, line));
                lists = vec![None; n];
            }
            "e" | "l" => {
                let Some((n, _, _)) = header else {
                    return Err(syntax(line, "data before the problem line"));
                };
                let v = vertex(toks.next(), line, n)?;
                if tag == "e" {
                    let w = vertex(toks.next(), line, n)?;
                    if v == w {
                        return Err(syntax(line, "self-loop"));
                    }
                    edges.push((v, w));
                    edge_lines.push(line);
                } else {
                    let mask = match toks.next() {
                        None => return Err(ParseError::EmptyList { line, vertex: v + 1 }),
                        Some(d) => parse_list(d).ok_or_else(|| syntax(line, format!("bad colour list `{d}`")))?,
                    };
                    if lists[v].replace(mask).is_some() {
                        return Err(ParseError::DuplicateListLine { line, vertex: v + 1 });
                    }
                }
            }
            other => return Err(syntax(line, format!("unknown line type `{other}`"))),
        }
        if toks.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
    }
    let Some((n, m, pline)) = header else {
        return Err(syntax(text.lines().count().max(1), "missing problem line"));
    };
    if edges.len() != m {
        return Err(syntax(pline, format!("declared {m} edges, found {}", edges.len())));
    }
    let g = Graph::new(n, &edges).map_err(|e| match e {
        GraphError::DuplicateEdge(u, v) => {
            // Report the second occurrence.
            let line = edges
                .iter()
                .zip(&edge_lines)
                .filter(|(&(a, b), _)| (a.min(b), a.max(b)) == (u, v))
                .nth(1)
                .map_or(pline, |(_, &l)| l);
            ParseError::DuplicateEdge { line, u: u + 1, v: v + 1 }
        }
        other => syntax(pline, other.to_string()),
    })?;
    Ok((g, lists.into_iter().map(|l| l.unwrap_or(ColourMask::FULL)).collect()))
}

/// Canonical text: edges in lexicographic order, list lines only for
/// vertices without the full list.
pub fn emit_instance(g: &Graph, lists: &[ColourMask]) -> String {
    let mut s = format!("p lcol {} {}\n", g.n(), g.edge_count());
    for (u, v) in g.edges() {
        let _ = writeln!(s, "e {} {}", u + 1, v + 1);
    }
    for (v, &m) in lists.iter().enumerate() {
        if !m.is_full() {
            let _ = writeln!(s, "l {} {}", v + 1, list_digits(m));
        }
    }
    s
}

/// Reads `v <id> <colour>` lines (a leading `SAT` line and comments are
/// skipped). Missing vertices are left as 0.
pub fn parse_colouring(text: &str, n: usize) -> Result<Vec<Colour>, ParseError> {
    let mut f = vec![0 as Colour; n];
    let mut seen = vec![false; n];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") | Some("SAT") => continue,
            Some("v") => {
                let v = vertex(toks.next(), line, n)?;
                let c = number(toks.next(), line, "colour")?;
                if !(1..=3).contains(&c) {
                    return Err(syntax(line, format!("colour {c} outside 1..=3")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(syntax(line, format!("vertex {} coloured twice", v + 1)));
                }
                f[v] = c as Colour;
            }
            Some(other) => return Err(syntax(line, format!("unexpected `{other}`"))),
        }
    }
    Ok(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub fn witness_line(w: &PromiseViolation) -> String {
    let mut s = format!("witness {}", w.kind);
    for v in &w.vertices {
        let _ = write!(s, " {}", v + 1);
    }
    s
}

#[derive(Serialize)]
struct JsonWitness<'a> {
    kind: String,
    vertices: Vec<usize>,
    #[serde(skip_serializing_if = "str::is_empty")]
    note: &'a str,
}

fn json_witness(w: &PromiseViolation) -> JsonWitness<'_> {
    JsonWitness { kind: w.kind.to_string(), vertices: w.vertices.iter().map(|v| v + 1).collect(), note: &w.note }
}

pub fn status(v: &Verdict) -> &'static str {
    match v {
        Verdict::Colouring(_) => "SAT",
        Verdict::Uncolourable => "UNSAT",
        Verdict::InvalidInput(_) => "INVALID",
    }
}

pub fn emit_result(outcome: &Outcome, format: Format) -> String {
    match format {
        Format::Text => {
            let mut s = format!("{}\n", status(&outcome.verdict));
            match &outcome.verdict {
                Verdict::Colouring(f) => {
                    for (v, c) in f.iter().enumerate() {
                        let _ = writeln!(s, "v {} {}", v + 1, c);
                    }
                }
                Verdict::Uncolourable => {}
                Verdict::InvalidInput(w) => {
                    let _ = writeln!(s, "{}", witness_line(w));
                }
            }
            s
        }
        Format::Json => {
            let mut obj = json!({ "status": status(&outcome.verdict), "stats": stats_json(&outcome.stats) });
            match &outcome.verdict {
                Verdict::Colouring(f) => obj["colouring"] = json!(f),
                Verdict::Uncolourable => {}
                Verdict::InvalidInput(w) => obj["witness"] = serde_json::to_value(json_witness(w)).unwrap(),
            }
            let mut s = serde_json::to_string(&obj).unwrap();
            s.push('\n');
            s
        }
    }
}

fn stats_json(s: &Stats) -> serde_json::Value {
    serde_json::to_value(s).unwrap()
}
