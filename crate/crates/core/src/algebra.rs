//! Monomial algebras `A = kQ/I` with their path basis.

use std::collections::{HashMap, VecDeque};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::lincomb::LinComb;
use crate::quiver::{occurrence_offsets, ArrowId, Path, Quiver, VertexId};

/// Index of a path in the sorted basis `P`.
pub type BasisId = u32;

/// An element of `A` in the path basis.
pub type AlgebraElement = LinComb<BasisId, Scalar>;

pub const DEFAULT_LENGTH_CAP: usize = 64;

const DENSE_TABLE_LIMIT: usize = 2048;

#[derive(Debug)]
pub struct MonomialAlgebra {
    quiver: Quiver,
    relations: Vec<Path>,
    basis: Vec<Path>,
    index: HashMap<Path, BasisId>,
    vertex_ids: Vec<BasisId>,
    arrow_ids: Vec<BasisId>,
    /// `parallel[s * n + t]`: basis paths from `s` to `t`.
    parallel: Vec<Vec<BasisId>>,
    /// `prefixes[i][k]`: the first `k` arrows of basis path `i`.
    prefixes: Vec<Vec<BasisId>>,
    suffixes: Vec<Vec<BasisId>>,
    starting: Vec<Vec<BasisId>>,
    ending: Vec<Vec<BasisId>>,
    table: Option<Vec<BasisId>>,
}

const ZERO: BasisId = BasisId::MAX;

impl MonomialAlgebra {
    pub fn new(quiver: Quiver, relations: Vec<Path>) -> Result<MonomialAlgebra> {
        Self::with_cap(quiver, relations, DEFAULT_LENGTH_CAP)
    }

    pub fn with_cap(quiver: Quiver, relations: Vec<Path>, cap: usize) -> Result<MonomialAlgebra> {
        for r in &relations {
            if r.len() < 2 {
                return Err(Error::ShortRelation(quiver.label(r)));
            }
        }
        for (i, r) in relations.iter().enumerate() {
            for (j, s) in relations.iter().enumerate() {
                if i != j && !occurrence_offsets(r.arrows(), s.arrows()).is_empty() {
                    return Err(Error::NonMinimal {
                        divisor: quiver.label(r),
                        relation: quiver.label(s),
                    });
                }
            }
        }

        let mut basis: Vec<Path> = (0..quiver.num_vertices()).map(Path::trivial).collect();
        let mut queue: VecDeque<Path> = basis.iter().cloned().collect();
        let mut outgoing: Vec<Vec<ArrowId>> = vec![Vec::new(); quiver.num_vertices()];
        for (id, a) in quiver.arrows().iter().enumerate() {
            outgoing[a.source].push(id);
        }
        while let Some(p) = queue.pop_front() {
            for &a in &outgoing[p.target()] {
                let mut arrows = p.arrows().to_vec();
                arrows.push(a);
                let killed = relations.iter().any(|r| arrows.ends_with(r.arrows()));
                if killed {
                    continue;
                }
                let q = quiver.path(&arrows).unwrap();
                if q.len() > cap {
                    return Err(Error::InfiniteBasis {
                        cap,
                        witness: quiver.label(&q),
                    });
                }
                basis.push(q.clone());
                queue.push_back(q);
            }
        }
        basis.sort();

        let index: HashMap<Path, BasisId> = basis
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as BasisId))
            .collect();
        let n = quiver.num_vertices();
        let vertex_ids = (0..n).map(|v| index[&Path::trivial(v)]).collect();
        let arrow_ids = (0..quiver.num_arrows())
            .map(|a| index[&quiver.arrow_path(a)])
            .collect();
        let mut parallel = vec![Vec::new(); n * n];
        for (i, p) in basis.iter().enumerate() {
            parallel[p.source() * n + p.target()].push(i as BasisId);
        }
        let mut starting = vec![Vec::new(); n];
        let mut ending = vec![Vec::new(); n];
        for (i, p) in basis.iter().enumerate() {
            starting[p.source()].push(i as BasisId);
            ending[p.target()].push(i as BasisId);
        }
        let mut prefixes = Vec::with_capacity(basis.len());
        let mut suffixes = Vec::with_capacity(basis.len());
        for p in &basis {
            prefixes.push(
                (0..=p.len())
                    .map(|k| index[&quiver.subpath(p, 0, k)])
                    .collect(),
            );
            suffixes.push(
                (0..=p.len())
                    .map(|k| index[&quiver.subpath(p, k, p.len())])
                    .collect(),
            );
        }

        let mut alg = MonomialAlgebra {
            quiver,
            relations,
            basis,
            index,
            vertex_ids,
            arrow_ids,
            parallel,
            prefixes,
            suffixes,
            starting,
            ending,
            table: None,
        };
        if alg.dim() <= DENSE_TABLE_LIMIT {
            let d = alg.dim();
            let mut table = vec![ZERO; d * d];
            for i in 0..d {
                for j in 0..d {
                    if let Some(k) = alg.concat_lookup(i as BasisId, j as BasisId) {
                        table[i * d + j] = k;
                    }
                }
            }
            alg.table = Some(table);
        }
        Ok(alg)
    }

    fn concat_lookup(&self, i: BasisId, j: BasisId) -> Option<BasisId> {
        let p = &self.basis[i as usize];
        let q = &self.basis[j as usize];
        if p.is_trivial() {
            return (p.target() == q.source()).then_some(j);
        }
        if q.is_trivial() {
            return (p.target() == q.source()).then_some(i);
        }
        self.index.get(&p.compose(q)?).copied()
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Path] {
        &self.relations
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn path(&self, id: BasisId) -> &Path {
        &self.basis[id as usize]
    }

    pub fn label(&self, id: BasisId) -> String {
        self.quiver.label(self.path(id))
    }

    /// Basis id of `p`, or `None` when `p ∈ I`.
    pub fn id_of(&self, p: &Path) -> Option<BasisId> {
        self.index.get(p).copied()
    }

    /// Basis id of the path with the given arrows starting at `source`.
    pub fn id_of_arrows(&self, source: VertexId, arrows: &[ArrowId]) -> Option<BasisId> {
        if arrows.is_empty() {
            return Some(self.vertex_ids[source]);
        }
        self.index.get(&self.quiver.path(arrows)?).copied()
    }

    pub fn vertex(&self, v: VertexId) -> BasisId {
        self.vertex_ids[v]
    }

    pub fn arrow(&self, a: ArrowId) -> BasisId {
        self.arrow_ids[a]
    }

    pub fn source(&self, id: BasisId) -> VertexId {
        self.basis[id as usize].source()
    }

    pub fn target(&self, id: BasisId) -> VertexId {
        self.basis[id as usize].target()
    }

    pub fn length(&self, id: BasisId) -> usize {
        self.basis[id as usize].len()
    }

    /// Basis paths from `s` to `t` (a basis of `e_s A e_t`).
    pub fn parallel(&self, s: VertexId, t: VertexId) -> &[BasisId] {
        &self.parallel[s * self.quiver.num_vertices() + t]
    }

    /// Basis paths with source `v`.
    pub fn starting_at(&self, v: VertexId) -> &[BasisId] {
        &self.starting[v]
    }

    /// Basis paths with target `v`.
    pub fn ending_at(&self, v: VertexId) -> &[BasisId] {
        &self.ending[v]
    }

    pub fn prefix(&self, id: BasisId, k: usize) -> BasisId {
        self.prefixes[id as usize][k]
    }

    /// The path obtained by dropping the first `k` arrows.
    pub fn suffix(&self, id: BasisId, k: usize) -> BasisId {
        self.suffixes[id as usize][k]
    }

    pub fn in_ideal(&self, p: &Path) -> bool {
        !self.index.contains_key(p)
    }

    /// Product of basis paths; `None` when it is zero in `A`.
    pub fn mul(&self, i: BasisId, j: BasisId) -> Option<BasisId> {
        match &self.table {
            Some(t) => {
                let k = t[i as usize * self.dim() + j as usize];
                (k != ZERO).then_some(k)
            }
            None => self.concat_lookup(i, j),
        }
    }

    pub fn mul3(&self, i: BasisId, j: BasisId, k: BasisId) -> Option<BasisId> {
        self.mul(self.mul(i, j)?, k)
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::new();
        for (&i, a) in x.iter() {
            for (&j, b) in y.iter() {
                if let Some(k) = self.mul(i, j) {
                    out.add_term(k, a * b);
                }
            }
        }
        out
    }

    /// `l · x · r` for basis paths `l`, `r`.
    pub fn sandwich(&self, l: BasisId, x: &AlgebraElement, r: BasisId) -> AlgebraElement {
        let mut out = AlgebraElement::new();
        for (&i, c) in x.iter() {
            if let Some(k) = self.mul3(l, i, r) {
                out.add_term(k, c.clone());
            }
        }
        out
    }

    pub fn unit(&self) -> AlgebraElement {
        self.vertex_ids
            .iter()
            .map(|&v| (v, Scalar::from_integer(1.into())))
            .collect()
    }

    pub fn basis_element(&self, id: BasisId) -> AlgebraElement {
        AlgebraElement::single(id, Scalar::from_integer(1.into()))
    }

    /// Relation occurrences `(start, end)` inside an arrow sequence, by start.
    /// Minimality of `R` makes the end positions increase with the starts.
    pub fn relation_occurrences(&self, arrows: &[ArrowId]) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for start in 0..arrows.len() {
            for r in &self.relations {
                if arrows[start..].starts_with(r.arrows()) {
                    out.push((start, start + r.len()));
                }
            }
        }
        out
    }

    /// Human-readable form of an element, e.g. `2*a.b - 1/2*e(1)`.
    pub fn format_element(&self, x: &AlgebraElement) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (&id, c)) in x.iter().enumerate() {
            let neg = c < &Scalar::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&format!("{}*{}", crate::field::format_scalar(&mag), self.label(id)));
        }
        out
    }
}
