//! The line-oriented quiver file format.
//!
//! ```text
//! # comment
//! vertices: 3
//! arrow: a : 1 -> 2
//! arrow: b : 2 -> 3
//! relation: a b
//! ```

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::quiver::{Path, Quiver};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverInput {
    pub quiver: Quiver,
    pub relations: Vec<Path>,
}

pub fn parse_input(text: &str) -> Result<QuiverInput> {
    let mut quiver: Option<Quiver> = None;
    let mut relations = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let syntax = |message: &str| Error::Syntax {
            line,
            message: message.to_string(),
        };
        let (key, rest) = content
            .split_once(':')
            .ok_or_else(|| syntax("expected `<keyword>: ...`"))?;
        let rest = rest.trim();
        match key.trim() {
            "vertices" => {
                if quiver.is_some() {
                    return Err(syntax("duplicate `vertices` line"));
                }
                let n: usize = rest
                    .parse()
                    .map_err(|_| syntax("vertex count must be a positive integer"))?;
                if n == 0 {
                    return Err(syntax("vertex count must be a positive integer"));
                }
                quiver = Some(Quiver::new(n));
            }
            "arrow" => {
                let q = quiver
                    .as_mut()
                    .ok_or_else(|| syntax("`vertices` must precede arrows"))?;
                let (label, ends) = rest
                    .split_once(':')
                    .ok_or_else(|| syntax("expected `arrow: <label> : <src> -> <tgt>`"))?;
                let (src, tgt) = ends
                    .split_once("->")
                    .ok_or_else(|| syntax("expected `<src> -> <tgt>`"))?;
                let vertex = |s: &str| -> Result<usize> {
                    let v: usize = s
                        .trim()
                        .parse()
                        .map_err(|_| syntax(&format!("bad vertex `{}`", s.trim())))?;
                    if v == 0 || v > q.num_vertices() {
                        return Err(syntax(&format!(
                            "vertex {v} outside 1..={}",
                            q.num_vertices()
                        )));
                    }
                    Ok(v - 1)
                };
                let (s, t) = (vertex(src)?, vertex(tgt)?);
                q.add_arrow(label.trim(), s, t).map_err(|e| match e {
                    Error::Invalid(m) => Error::Syntax { line, message: m },
                    other => other,
                })?;
            }
            "relation" => {
                let q = quiver
                    .as_ref()
                    .ok_or_else(|| syntax("`vertices` must precede relations"))?;
                let labels: Vec<&str> = rest.split_whitespace().collect();
                if labels.is_empty() {
                    return Err(syntax("empty relation"));
                }
                let mut ids = Vec::with_capacity(labels.len());
                for l in &labels {
                    match q.arrow_id(l) {
                        Some(id) => ids.push(id),
                        None if l.chars().any(|c| "+-*/".contains(c)) => {
                            return Err(syntax("relations must be single paths"))
                        }
                        None => {
                            return Err(Error::UnknownLabel {
                                line,
                                label: l.to_string(),
                            })
                        }
                    }
                }
                let path = q.path(&ids).ok_or_else(|| Error::NonComposable {
                    line,
                    relation: labels.join(" "),
                })?;
                relations.push(path);
            }
            other => return Err(syntax(&format!("unknown keyword `{other}`"))),
        }
    }
    let quiver = quiver.ok_or(Error::Syntax {
        line: text.lines().count().max(1),
        message: "missing `vertices` line".to_string(),
    })?;
    Ok(QuiverInput { quiver, relations })
}

/// Canonical text form; `parse_input(&format_input(x)) == x`.
pub fn format_input(input: &QuiverInput) -> String {
    let q = &input.quiver;
    let mut out = String::new();
    writeln!(out, "vertices: {}", q.num_vertices()).unwrap();
    for a in q.arrows() {
        writeln!(out, "arrow: {} : {} -> {}", a.label, a.source + 1, a.target + 1).unwrap();
    }
    for r in &input.relations {
        let labels: Vec<&str> = r.arrows().iter().map(|&a| q.arrow(a).label.as_str()).collect();
        writeln!(out, "relation: {}", labels.join(" ")).unwrap();
    }
    out
}
