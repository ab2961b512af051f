//! Quivers and paths.
//!
//! A position along a path of length `l` is one of its `l + 1` vertices,
//! numbered `0..=l`. Every "starts before"/"ends after" comparison between
//! subpaths of a common ambient path is an integer comparison of positions.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type ArrowId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: VertexId,
    pub target: VertexId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    num_vertices: usize,
    arrows: Vec<Arrow>,
    by_label: HashMap<String, ArrowId>,
}

impl Quiver {
    pub fn new(num_vertices: usize) -> Quiver {
        Quiver {
            num_vertices,
            arrows: Vec::new(),
            by_label: HashMap::new(),
        }
    }

    pub fn add_arrow(&mut self, label: &str, source: VertexId, target: VertexId) -> Result<ArrowId> {
        if !valid_label(label) {
            return Err(Error::Invalid(format!("invalid arrow label `{label}`")));
        }
        if source >= self.num_vertices || target >= self.num_vertices {
            return Err(Error::Invalid(format!(
                "arrow `{label}` has an endpoint outside 1..={}",
                self.num_vertices
            )));
        }
        if self.by_label.contains_key(label) {
            return Err(Error::Invalid(format!("duplicate arrow label `{label}`")));
        }
        let id = self.arrows.len();
        self.arrows.push(Arrow {
            label: label.to_string(),
            source,
            target,
        });
        self.by_label.insert(label.to_string(), id);
        Ok(id)
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id]
    }

    pub fn arrow_id(&self, label: &str) -> Option<ArrowId> {
        self.by_label.get(label).copied()
    }

    /// Builds a path from arrow ids, or `None` if consecutive arrows do not compose.
    pub fn path(&self, arrows: &[ArrowId]) -> Option<Path> {
        let first = arrows.first()?;
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return None;
            }
        }
        Some(Path {
            source: self.arrows[*first].source,
            target: self.arrows[*arrows.last().unwrap()].target,
            arrows: arrows.to_vec(),
        })
    }

    pub fn path_from_labels(&self, labels: &[&str]) -> Option<Path> {
        let ids: Option<Vec<_>> = labels.iter().map(|l| self.arrow_id(l)).collect();
        self.path(&ids?)
    }

    pub fn arrow_path(&self, id: ArrowId) -> Path {
        self.path(&[id]).unwrap()
    }

    /// The vertex at position `pos` along `arrows`, which must be non-empty
    /// unless `pos == 0`.
    pub fn vertex_at(&self, source: VertexId, arrows: &[ArrowId], pos: usize) -> VertexId {
        if pos == 0 {
            source
        } else {
            self.arrows[arrows[pos - 1]].target
        }
    }

    /// The subpath of `p` between positions `start` and `end`.
    pub fn subpath(&self, p: &Path, start: usize, end: usize) -> Path {
        assert!(start <= end && end <= p.len());
        if start == end {
            Path::trivial(self.vertex_at(p.source, &p.arrows, start))
        } else {
            Path {
                source: self.arrows[p.arrows[start]].source,
                target: self.arrows[p.arrows[end - 1]].target,
                arrows: p.arrows[start..end].to_vec(),
            }
        }
    }

    /// Human-readable label: `e(x)` for trivial paths (1-based), otherwise
    /// arrow labels joined by `.`.
    pub fn label(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e({})", p.source + 1)
        } else {
            self.label_arrows(&p.arrows)
        }
    }

    pub fn label_arrows(&self, arrows: &[ArrowId]) -> String {
        arrows
            .iter()
            .map(|&a| self.arrows[a].label.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Inverse of [`Quiver::label`].
    pub fn parse_label(&self, text: &str) -> Result<Path> {
        let text = text.trim();
        if let Some(inner) = text.strip_prefix("e(").and_then(|t| t.strip_suffix(')')) {
            let v: usize = inner
                .parse()
                .map_err(|_| Error::Invalid(format!("bad vertex in `{text}`")))?;
            if v == 0 || v > self.num_vertices {
                return Err(Error::Invalid(format!("vertex out of range in `{text}`")));
            }
            return Ok(Path::trivial(v - 1));
        }
        let mut ids = Vec::new();
        for l in text.split('.') {
            ids.push(
                self.arrow_id(l)
                    .ok_or_else(|| Error::Invalid(format!("unknown arrow `{l}` in `{text}`")))?,
            );
        }
        self.path(&ids)
            .ok_or_else(|| Error::Invalid(format!("`{text}` is not a path")))
    }
}

pub(crate) fn valid_label(label: &str) -> bool {
    let mut chars = label.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// A path in a quiver. Trivial paths carry their vertex as both endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: VertexId,
    target: VertexId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn trivial(v: VertexId) -> Path {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn target(&self) -> VertexId {
        self.target
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_trivial()
    }

    pub fn parallel_to(&self, other: &Path) -> bool {
        self.source == other.source && self.target == other.target
    }

    /// Concatenation `self · q`, or `None` if the endpoints differ.
    pub fn compose(&self, q: &Path) -> Option<Path> {
        if self.target != q.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        Some(Path {
            source: self.source,
            target: q.target,
            arrows,
        })
    }

    /// Number of occurrences of `a` among the arrows.
    pub fn count_arrow(&self, a: ArrowId) -> usize {
        self.arrows.iter().filter(|&&b| b == a).count()
    }
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A positioned factor: `host[offset .. offset + |factor|] == factor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub host: Path,
    pub factor: Path,
    pub offset: usize,
}

impl Occurrence {
    pub fn end(&self) -> usize {
        self.offset + self.factor.len()
    }

    pub fn prefix(&self, q: &Quiver) -> Path {
        q.subpath(&self.host, 0, self.offset)
    }

    pub fn suffix(&self, q: &Quiver) -> Path {
        q.subpath(&self.host, self.end(), self.host.len())
    }
}

/// Offsets at which `factor` occurs in `host`, increasing.
pub fn occurrence_offsets(factor: &[ArrowId], host: &[ArrowId]) -> Vec<usize> {
    if factor.is_empty() || factor.len() > host.len() {
        return Vec::new();
    }
    host.windows(factor.len())
        .enumerate()
        .filter(|(_, w)| *w == factor)
        .map(|(i, _)| i)
        .collect()
}

pub fn find_occurrences(factor: &Path, host: &Path) -> Vec<Occurrence> {
    occurrence_offsets(&factor.arrows, &host.arrows)
        .into_iter()
        .map(|offset| Occurrence {
            host: host.clone(),
            factor: factor.clone(),
            offset,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(r: usize) -> Quiver {
        let mut q = Quiver::new(r);
        for i in 0..r {
            q.add_arrow(&format!("a{}", i + 1), i, (i + 1) % r).unwrap();
        }
        q
    }

    #[test]
    fn composition() {
        let mut q = Quiver::new(3);
        let a = q.add_arrow("a", 0, 1).unwrap();
        let b = q.add_arrow("b", 1, 2).unwrap();
        let pa = q.arrow_path(a);
        let pb = q.arrow_path(b);
        assert_eq!(Path::trivial(0).compose(&pa), Some(pa.clone()));
        assert_eq!(pa.compose(&Path::trivial(1)), Some(pa.clone()));
        assert_eq!(pa.compose(&pb).unwrap().arrows(), &[a, b]);
        assert_eq!(pa.compose(&pa), None);
    }

    #[test]
    fn occurrences_in_a_cycle() {
        let q = cyclic(3);
        let host = q.path_from_labels(&["a1", "a2", "a3", "a1"]).unwrap();
        let f = q.path_from_labels(&["a1"]).unwrap();
        let offs: Vec<_> = find_occurrences(&f, &host).iter().map(|o| o.offset).collect();
        assert_eq!(offs, vec![0, 3]);
        for o in find_occurrences(&f, &host) {
            let rebuilt = o
                .prefix(&q)
                .compose(&o.factor)
                .and_then(|p| p.compose(&o.suffix(&q)))
                .unwrap();
            assert_eq!(rebuilt, host);
        }
    }

    #[test]
    fn labels_round_trip() {
        let q = cyclic(3);
        for text in ["e(2)", "a1", "a3.a1.a2"] {
            let p = q.parse_label(text).unwrap();
            assert_eq!(q.label(&p), text);
        }
        assert!(q.parse_label("a1.a3").is_err());
        assert!(q.parse_label("e(4)").is_err());
    }

    #[test]
    fn label_rules() {
        assert!(valid_label("alpha_1'"));
        assert!(!valid_label("1a"));
        assert!(!valid_label("a.b"));
        assert!(!valid_label(""));
    }
}
