//! Line-oriented text formats.
//!
//! Digraph files:
//! ```text
//! # comment
//! n 3
//! arc 0 1 3/2
//! arc 1 2 2.5
//! ```
//! `n <count>` must be the first record; each `arc <tail> <head> <label>`
//! gets the next arc id, starting at 0. Labels are nonnegative decimals or
//! `p/q` rationals. Blank lines and `#` comments are skipped everywhere.
//!
//! Arborescence files hold `root <v>` followed by one `use <arc-id>` line
//! per arc; ids refer to the 0-based `arc` order of the digraph file.
//!
//! Sequence files hold `length <s> [optimal|valid]` followed by exactly
//! `s` lines `swap -<arc-id> +<arc-id>`.
//!
//! Undirected graph files (for hard-instance generation) hold `n <count>`
//! followed by `edge <u> <v>` lines.

use std::fmt::Write as _;

use thiserror::Error;

use crate::digraph::{Arborescence, TemporalDigraph, ValidationError};
use crate::fixed_root::ReconfStep;
use crate::label::{Label, LabelError};

/// A parse failure, pointing at the offending line (1-based; 0 means the
/// file as a whole).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, message: message.into() }
}

/// Records of a file: `(line number, tokens)` with comments and blanks
/// dropped.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(idx, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            return None;
        }
        Some((idx + 1, line.split_whitespace().collect()))
    })
}

fn parse_usize(line: usize, token: &str, what: &str) -> Result<usize, ParseError> {
    token
        .parse::<usize>()
        .map_err(|_| err(line, format!("malformed {what} `{token}`")))
}

fn parse_label(line: usize, token: &str) -> Result<Label, ParseError> {
    token.parse::<Label>().map_err(|e| match e {
        LabelError::Negative => err(line, "negative label"),
        LabelError::ZeroDenominator => err(line, "zero denominator in label"),
        LabelError::Malformed(s) => err(line, format!("malformed label `{s}`")),
    })
}

fn expect_arity(line: usize, tokens: &[&str], arity: usize) -> Result<(), ParseError> {
    if tokens.len() != arity {
        return Err(err(
            line,
            format!("expected {} fields, found {}", arity, tokens.len()),
        ));
    }
    Ok(())
}

pub fn parse_digraph(text: &str) -> Result<TemporalDigraph, ParseError> {
    let mut digraph: Option<TemporalDigraph> = None;
    for (line, tokens) in records(text) {
        match tokens[0] {
            "n" => {
                if digraph.is_some() {
                    return Err(err(line, "duplicate `n` record"));
                }
                expect_arity(line, &tokens, 2)?;
                digraph = Some(TemporalDigraph::new(parse_usize(line, tokens[1], "vertex count")?));
            }
            "arc" => {
                let d = digraph
                    .as_mut()
                    .ok_or_else(|| err(line, "`arc` record before `n`"))?;
                expect_arity(line, &tokens, 4)?;
                let tail = parse_usize(line, tokens[1], "vertex")?;
                let head = parse_usize(line, tokens[2], "vertex")?;
                let label = parse_label(line, tokens[3])?;
                d.add_arc(tail, head, label)
                    .map_err(|e| err(line, e.to_string()))?;
            }
            other => return Err(err(line, format!("unknown record `{other}`"))),
        }
    }
    digraph.ok_or_else(|| err(0, "missing `n` record".to_string()))
}

pub fn write_digraph(d: &TemporalDigraph) -> String {
    let mut out = format!("n {}\n", d.vertex_count());
    for arc in d.arcs() {
        writeln!(out, "arc {} {} {}", arc.tail, arc.head, arc.label).unwrap();
    }
    out
}

/// Raw contents of an arborescence file, before binding to a digraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArbFile {
    pub root: usize,
    pub arc_ids: Vec<usize>,
}

pub fn parse_arborescence(text: &str) -> Result<ArbFile, ParseError> {
    let mut root: Option<usize> = None;
    let mut arc_ids = Vec::new();
    for (line, tokens) in records(text) {
        match tokens[0] {
            "root" => {
                if root.is_some() {
                    return Err(err(line, "duplicate `root` record"));
                }
                expect_arity(line, &tokens, 2)?;
                root = Some(parse_usize(line, tokens[1], "vertex")?);
            }
            "use" => {
                if root.is_none() {
                    return Err(err(line, "`use` record before `root`"));
                }
                expect_arity(line, &tokens, 2)?;
                arc_ids.push(parse_usize(line, tokens[1], "arc id")?);
            }
            other => return Err(err(line, format!("unknown record `{other}`"))),
        }
    }
    let root = root.ok_or_else(|| err(0, "missing `root` record".to_string()))?;
    Ok(ArbFile { root, arc_ids })
}

/// Binds a parsed arborescence file to a digraph and validates its shape.
/// The declared root must match the root implied by the arc set.
pub fn assemble_arborescence(
    d: &TemporalDigraph,
    file: &ArbFile,
) -> Result<Arborescence, ValidationError> {
    if file.root >= d.vertex_count() {
        return Err(ValidationError::VertexOutOfRange(file.root));
    }
    let t = Arborescence::from_arc_set(d, file.arc_ids.iter().copied())?;
    if t.root() != file.root {
        return Err(ValidationError::RootMismatch(file.root, t.root()));
    }
    Ok(t)
}

pub fn write_arborescence(t: &Arborescence) -> String {
    let mut out = format!("root {}\n", t.root());
    for id in t.sorted_arc_ids() {
        writeln!(out, "use {id}").unwrap();
    }
    out
}

pub fn parse_sequence(text: &str) -> Result<Vec<ReconfStep>, ParseError> {
    let mut declared: Option<usize> = None;
    let mut steps = Vec::new();
    for (line, tokens) in records(text) {
        match tokens[0] {
            "length" => {
                if declared.is_some() {
                    return Err(err(line, "duplicate `length` record"));
                }
                if tokens.len() == 3 && tokens[2] != "optimal" && tokens[2] != "valid" {
                    return Err(err(line, format!("unknown claim `{}`", tokens[2])));
                }
                if tokens.len() != 2 && tokens.len() != 3 {
                    return Err(err(line, "expected `length <count> [optimal|valid]`"));
                }
                declared = Some(parse_usize(line, tokens[1], "length")?);
            }
            "swap" => {
                if declared.is_none() {
                    return Err(err(line, "`swap` record before `length`"));
                }
                expect_arity(line, &tokens, 3)?;
                let remove = tokens[1]
                    .strip_prefix('-')
                    .ok_or_else(|| err(line, "expected `-<arc-id>`"))?;
                let add = tokens[2]
                    .strip_prefix('+')
                    .ok_or_else(|| err(line, "expected `+<arc-id>`"))?;
                steps.push(ReconfStep {
                    remove: parse_usize(line, remove, "arc id")?,
                    add: parse_usize(line, add, "arc id")?,
                });
            }
            other => return Err(err(line, format!("unknown record `{other}`"))),
        }
    }
    let declared = declared.ok_or_else(|| err(0, "missing `length` record".to_string()))?;
    if declared != steps.len() {
        return Err(err(
            0,
            format!("declared length {declared} but found {} swaps", steps.len()),
        ));
    }
    Ok(steps)
}

pub fn write_sequence(steps: &[ReconfStep], claim: Option<&str>) -> String {
    let mut out = match claim {
        Some(claim) => format!("length {} {claim}\n", steps.len()),
        None => format!("length {}\n", steps.len()),
    };
    for step in steps {
        writeln!(out, "swap -{} +{}", step.remove, step.add).unwrap();
    }
    out
}

/// An undirected simple graph read from `n` / `edge` records. Structural
/// validation (self-loops, duplicates) happens when the vertex cover
/// instance is built from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

pub fn parse_undirected_graph(text: &str) -> Result<GraphFile, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (line, tokens) in records(text) {
        match tokens[0] {
            "n" => {
                if n.is_some() {
                    return Err(err(line, "duplicate `n` record"));
                }
                expect_arity(line, &tokens, 2)?;
                n = Some(parse_usize(line, tokens[1], "vertex count")?);
            }
            "edge" => {
                let n = n.ok_or_else(|| err(line, "`edge` record before `n`"))?;
                expect_arity(line, &tokens, 3)?;
                let u = parse_usize(line, tokens[1], "vertex")?;
                let v = parse_usize(line, tokens[2], "vertex")?;
                if u >= n || v >= n {
                    return Err(err(line, format!("vertex out of range in `edge {u} {v}`")));
                }
                edges.push((u, v));
            }
            other => return Err(err(line, format!("unknown record `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| err(0, "missing `n` record".to_string()))?;
    Ok(GraphFile { n, edges })
}
