//! The line-oriented space file format and DOT export.
//!
//! ```text
//! # comments and blank lines are ignored
//! space line3
//! points a b c
//! arrow a b
//! arrow b c
//! ```
//!
//! Loops are implicit. An explicit `arrow x x` is accepted and dropped with a
//! warning; a repeated arrow is an error.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{is_identifier, ConvergenceSpace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDocument {
    pub name: String,
    pub points: Vec<String>,
    pub arrows: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Warning {
    pub line: usize,
    pub message: String,
}

/// Document names additionally allow `-` so fixture names round-trip.
pub fn is_document_name(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

impl SpaceDocument {
    pub fn from_space(name: &str, space: &ConvergenceSpace) -> Self {
        SpaceDocument {
            name: name.to_string(),
            points: space.labels().to_vec(),
            arrows: space.arrows().map(|(x, y)| (space.label(x).to_string(), space.label(y).to_string())).collect(),
        }
    }

    pub fn to_space(&self) -> Result<ConvergenceSpace> {
        ConvergenceSpace::new(self.points.iter().cloned(), self.arrows.iter().map(|(a, b)| (a, b)))
    }

    pub fn render(&self) -> String {
        let mut s = format!("space {}\n", self.name);
        s.push_str("points");
        for p in &self.points {
            s.push(' ');
            s.push_str(p);
        }
        s.push('\n');
        for (a, b) in &self.arrows {
            let _ = writeln!(s, "arrow {a} {b}");
        }
        s
    }
}

pub fn parse_space(text: &str) -> Result<SpaceDocument> {
    parse_space_with_warnings(text).map(|(doc, _)| doc)
}

pub fn parse_space_with_warnings(text: &str) -> Result<(SpaceDocument, Vec<Warning>)> {
    let mut name: Option<String> = None;
    let mut points: Option<Vec<String>> = None;
    let mut arrows: Vec<(String, String)> = Vec::new();
    let mut warnings = Vec::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(keyword) = tokens.next() else { continue };
        let args: Vec<&str> = tokens.collect();
        match keyword {
            "space" => {
                if name.is_some() {
                    return Err(err(line, "duplicate `space` line"));
                }
                let [n] = args.as_slice() else {
                    return Err(err(line, "`space` takes exactly one name"));
                };
                if !is_document_name(n) {
                    return Err(err(line, format!("invalid space name `{n}`")));
                }
                name = Some(n.to_string());
            }
            "points" => {
                if name.is_none() {
                    return Err(err(line, "`points` before `space`"));
                }
                if points.is_some() {
                    return Err(err(line, "duplicate `points` line"));
                }
                let mut ps: Vec<String> = Vec::with_capacity(args.len());
                for p in &args {
                    if !is_identifier(p) {
                        return Err(err(line, format!("invalid label `{p}`")));
                    }
                    if ps.iter().any(|q| q == p) {
                        return Err(err(line, format!("duplicate point `{p}`")));
                    }
                    ps.push(p.to_string());
                }
                if ps.len() > crate::pointset::CAPACITY {
                    return Err(err(line, format!("{} points exceed the limit of 64", ps.len())));
                }
                points = Some(ps);
            }
            "arrow" => {
                let Some(ps) = points.as_ref() else {
                    return Err(err(line, "`arrow` before `points`"));
                };
                let [a, b] = args.as_slice() else {
                    return Err(err(line, "`arrow` takes exactly two labels"));
                };
                for l in [a, b] {
                    if !ps.iter().any(|p| p == l) {
                        return Err(err(line, format!("unknown label `{l}`")));
                    }
                }
                if a == b {
                    warnings.push(Warning { line, message: format!("explicit loop at `{a}` ignored") });
                    continue;
                }
                let pair = (a.to_string(), b.to_string());
                if arrows.contains(&pair) {
                    return Err(err(line, format!("duplicate arrow `{a} {b}`")));
                }
                arrows.push(pair);
            }
            other => return Err(err(line, format!("unknown directive `{other}`"))),
        }
    }
    let last = text.lines().count().max(1);
    let name = name.ok_or_else(|| err(last, "missing `space` line"))?;
    let points = points.ok_or_else(|| err(last, "missing `points` line"))?;
    Ok((SpaceDocument { name, points, arrows }, warnings))
}

/// DOT digraph: nodes in label order, one edge per non-loop arrow (row-major).
pub fn render_dot(space: &ConvergenceSpace) -> String {
    let mut s = String::from("digraph {\n");
    for l in space.labels() {
        let _ = writeln!(s, "    \"{l}\";");
    }
    for (x, y) in space.arrows() {
        let _ = writeln!(s, "    \"{}\" -> \"{}\";", space.label(x), space.label(y));
    }
    s.push_str("}\n");
    s
}

/// Single-line form used in text reports: `points=a,b,c arrows=a>b,b>c`.
pub fn compact(space: &ConvergenceSpace) -> String {
    let arrows: Vec<String> = space.arrows().map(|(x, y)| format!("{}>{}", space.label(x), space.label(y))).collect();
    format!("points={} arrows={}", space.labels().join(","), arrows.join(","))
}
