//! Bardzell's minimal bimodule resolution `A ⊗ kAP_n ⊗ A` of a monomial algebra.
//!
//! An element of `AP_n` (n >= 2) is the support of a chain of `n - 1` relation
//! occurrences built greedily from the left; the support alone determines the
//! chain, so elements are stored once per support path.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{BasisId, MonomialAlgebra};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::quiver::Path;
use crate::report::Check;

/// Half-open range of positions along an ambient path.
pub type Span = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubEntry {
    /// Index of the child in `AP_{n-1}`.
    pub child: usize,
    pub offset: usize,
    pub left: Path,
    pub right: Path,
    /// Basis ids of `left`/`right`, `None` when they lie in `I`.
    pub left_id: Option<BasisId>,
    pub right_id: Option<BasisId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApElement {
    pub degree: usize,
    pub support: Path,
    /// `p_1, ..., p_{n-1}` as spans of the support.
    pub left_chain: Vec<Span>,
    /// `q^1, ..., q^{n-1}` by start, from the dual construction.
    pub op_chain: Vec<Span>,
    pub sub: Vec<SubEntry>,
}

/// Greedy left chain of `k` relations starting at position `start`, given the
/// relation occurrences of the ambient path sorted by start.
pub fn left_chain_at(occ: &[Span], start: usize, k: usize) -> Option<Vec<Span>> {
    let first = *occ.iter().find(|s| s.0 == start)?;
    let mut chain = Vec::with_capacity(k);
    chain.push(first);
    while chain.len() < k {
        let j = chain.len();
        let lo = if j == 1 { chain[0].0 + 1 } else { chain[j - 2].1 };
        let hi = chain[j - 1].1;
        let next = *occ.iter().find(|s| s.0 >= lo && s.0 < hi)?;
        chain.push(next);
    }
    Some(chain)
}

/// Dual chain of `k` relations ending at position `end`, built right to left
/// with maximal ends; returned sorted by start.
pub fn op_chain_at(occ: &[Span], end: usize, k: usize) -> Option<Vec<Span>> {
    let first = *occ.iter().find(|s| s.1 == end)?;
    let mut chain = Vec::with_capacity(k);
    chain.push(first);
    while chain.len() < k {
        let j = chain.len();
        let lo = chain[j - 1].0;
        let next = if j == 1 {
            occ.iter().rev().find(|s| s.1 > lo && s.1 < chain[0].1)
        } else {
            let hi = chain[j - 2].0;
            occ.iter().rev().find(|s| s.1 > lo && s.1 <= hi)
        };
        chain.push(*next?);
    }
    chain.reverse();
    Some(chain)
}

/// The degree `n >= 2` for which the arrow sequence is in `AP_n`, if any.
pub fn concatenation_degree(occ: &[Span], len: usize) -> Option<usize> {
    let mut chain: Vec<Span> = vec![*occ.iter().find(|s| s.0 == 0)?];
    loop {
        if chain.last().unwrap().1 == len {
            return Some(chain.len() + 1);
        }
        let j = chain.len();
        let lo = if j == 1 { chain[0].0 + 1 } else { chain[j - 2].1 };
        let hi = chain[j - 1].1;
        chain.push(*occ.iter().find(|s| s.0 >= lo && s.0 < hi)?);
    }
}

pub type BardzellChain = LinComb<BardzellTerm, i64>;

/// `L ⊗ w ⊗ R` with `L, R` basis paths and `w` an element of `AP_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BardzellTerm {
    pub left: BasisId,
    pub ap: usize,
    pub right: BasisId,
}

#[derive(Debug)]
pub struct BardzellResolution {
    algebra: Arc<MonomialAlgebra>,
    levels: Vec<Vec<ApElement>>,
    lookup: Vec<HashMap<Path, usize>>,
}

impl BardzellResolution {
    /// Builds `AP_0, ..., AP_{max_degree}`.
    pub fn new(algebra: Arc<MonomialAlgebra>, max_degree: usize) -> BardzellResolution {
        let q = algebra.quiver();
        let mut supports: Vec<Vec<Path>> = Vec::new();
        supports.push((0..q.num_vertices()).map(Path::trivial).collect());
        supports.push((0..q.num_arrows()).map(|a| q.arrow_path(a)).collect());
        let mut rels = algebra.relations().to_vec();
        rels.sort();
        supports.push(rels);
        for n in 3..=max_degree.max(2) {
            let next = extend(&algebra, &supports[n - 1], n);
            supports.push(next);
        }
        supports.truncate(max_degree + 1);

        let lookup: Vec<HashMap<Path, usize>> = supports
            .iter()
            .map(|lvl| lvl.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect())
            .collect();
        let mut levels = Vec::with_capacity(supports.len());
        for (n, lvl) in supports.into_iter().enumerate() {
            let elems = lvl
                .into_iter()
                .map(|support| {
                    let occ = algebra.relation_occurrences(support.arrows());
                    let (left_chain, op_chain) = if n >= 2 {
                        let l = left_chain_at(&occ, 0, n - 1).expect("left chain");
                        let o = op_chain_at(&occ, support.len(), n - 1).expect("op chain");
                        assert_eq!(l.last().unwrap().1, support.len());
                        assert_eq!(o[0].0, 0, "left and op supports disagree");
                        (l, o)
                    } else {
                        (Vec::new(), Vec::new())
                    };
                    let sub = if n >= 1 {
                        sub_entries(&algebra, &lookup[n - 1], &support, &occ, n)
                    } else {
                        Vec::new()
                    };
                    ApElement {
                        degree: n,
                        support,
                        left_chain,
                        op_chain,
                        sub,
                    }
                })
                .collect();
            levels.push(elems);
        }
        BardzellResolution {
            algebra,
            levels,
            lookup,
        }
    }

    pub fn algebra(&self) -> &MonomialAlgebra {
        &self.algebra
    }

    pub fn algebra_arc(&self) -> &Arc<MonomialAlgebra> {
        &self.algebra
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn check_degree(&self, n: usize) -> Result<()> {
        if n > self.max_degree() {
            return Err(Error::DegreeOverflow {
                requested: n,
                available: self.max_degree(),
            });
        }
        Ok(())
    }

    /// `AP_n`; empty beyond the computed range.
    pub fn ap(&self, n: usize) -> &[ApElement] {
        self.levels.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn element(&self, n: usize, i: usize) -> &ApElement {
        &self.levels[n][i]
    }

    pub fn index_of(&self, n: usize, support: &Path) -> Option<usize> {
        self.lookup.get(n)?.get(support).copied()
    }

    /// Looks up an element of `AP_n` by the arrows of its support.
    pub fn index_of_arrows(&self, n: usize, source: usize, arrows: &[usize]) -> Option<usize> {
        let p = if arrows.is_empty() {
            Path::trivial(source)
        } else {
            self.algebra.quiver().path(arrows)?
        };
        self.index_of(n, &p)
    }

    /// Label `AP:<support>@<left chain starts>`.
    pub fn label(&self, n: usize, i: usize) -> String {
        let w = self.element(n, i);
        let offsets: Vec<String> = w.left_chain.iter().map(|s| s.0.to_string()).collect();
        format!(
            "AP:{}@{}",
            self.algebra.quiver().label(&w.support),
            offsets.join(",")
        )
    }

    /// Parses a label produced by [`BardzellResolution::label`].
    pub fn parse_label(&self, text: &str) -> Result<(usize, usize)> {
        let bad = |m: &str| Error::Invalid(format!("{m} in `{text}`"));
        let body = text.trim().strip_prefix("AP:").ok_or_else(|| bad("missing `AP:`"))?;
        let (support, offsets) = body.split_once('@').ok_or_else(|| bad("missing `@`"))?;
        let path = self.algebra.quiver().parse_label(support)?;
        let offsets: Vec<usize> = if offsets.trim().is_empty() {
            Vec::new()
        } else {
            offsets
                .split(',')
                .map(|o| o.trim().parse().map_err(|_| bad("bad offset")))
                .collect::<Result<_>>()?
        };
        let n = match (path.len(), offsets.len()) {
            (0, 0) => 0,
            (1, 0) => 1,
            (_, k) if k > 0 => k + 1,
            _ => return Err(bad("missing chain offsets")),
        };
        self.check_degree(n)?;
        let i = self
            .index_of(n, &path)
            .ok_or_else(|| bad(&format!("not an element of AP_{n}")))?;
        let expect: Vec<usize> = self.element(n, i).left_chain.iter().map(|s| s.0).collect();
        if expect != offsets {
            return Err(bad("chain offsets do not match the support"));
        }
        Ok((n, i))
    }

    /// The differential `d_n` on `1 ⊗ w ⊗ 1`, `w = AP_n[i]`.
    pub fn differential(&self, n: usize, i: usize) -> BardzellChain {
        assert!(n >= 1);
        let w = self.element(n, i);
        let mut out = BardzellChain::new();
        let mut push = |e: &SubEntry, c: i64| {
            if let (Some(l), Some(r)) = (e.left_id, e.right_id) {
                out.add_term(
                    BardzellTerm {
                        left: l,
                        ap: e.child,
                        right: r,
                    },
                    c,
                );
            }
        };
        if n == 1 {
            // α ⊗ e_t ⊗ 1 − 1 ⊗ e_s ⊗ α
            push(&w.sub[1], 1);
            push(&w.sub[0], -1);
        } else if n.is_multiple_of(2) {
            for e in &w.sub {
                push(e, 1);
            }
        } else {
            let (psi1, psi2) = (&w.sub[0], w.sub.last().unwrap());
            push(psi2, 1);
            push(psi1, -1);
        }
        out
    }

    /// `d_n` extended to a chain of degree `n`.
    pub fn differential_chain(&self, n: usize, c: &BardzellChain) -> BardzellChain {
        let mut out = BardzellChain::new();
        for (t, &coef) in c.iter() {
            for (u, &k) in self.differential(n, t.ap).iter() {
                if let (Some(l), Some(r)) = (
                    self.algebra.mul(t.left, u.left),
                    self.algebra.mul(u.right, t.right),
                ) {
                    out.add_term(
                        BardzellTerm {
                            left: l,
                            ap: u.ap,
                            right: r,
                        },
                        coef * k,
                    );
                }
            }
        }
        out
    }

    /// Checks `d_{n-1} ∘ d_n = 0` for `2 <= n <= max_n` and `μ ∘ d_1 = 0`.
    pub fn verify_complex(&self, max_n: usize) -> Check {
        let mut check = Check::new("d∘d = 0");
        let alg = &*self.algebra;
        for n in 1..=max_n.min(self.max_degree()) {
            for i in 0..self.ap(n).len() {
                check.count();
                let d = self.differential(n, i);
                let failed = if n == 1 {
                    let mut mu = LinComb::<BasisId, i64>::new();
                    for (t, &c) in d.iter() {
                        if let Some(p) = alg.mul(t.left, t.right) {
                            mu.add_term(p, c);
                        }
                    }
                    !mu.is_zero()
                } else {
                    !self.differential_chain(n - 1, &d).is_zero()
                };
                if failed {
                    check.fail(format!("degree {n}, {}", self.label(n, i)));
                    return check;
                }
            }
        }
        check
    }

    /// Independent checks of the structure of the enumerated sets: the op
    /// chain has the same support, odd degrees have two Sub elements, and
    /// consecutive Sub elements overlap as expected.
    pub fn verify_structure(&self) -> Vec<Check> {
        let alg = &*self.algebra;
        let mut op = Check::new("AP_n = AP_n^op");
        let mut two = Check::new("|Sub(w)| = 2 in odd degree");
        let mut overlap = Check::new("Sub overlap ψ₂ⁱ = ψ₁ⁱ⁺¹");
        for n in 2..=self.max_degree() {
            for (i, w) in self.ap(n).iter().enumerate() {
                op.count();
                let occ = alg.relation_occurrences(w.support.arrows());
                let chain = op_chain_at(&occ, w.support.len(), n - 1);
                if chain.as_ref().map(|c| c[0].0) != Some(0) || chain.as_ref() != Some(&w.op_chain)
                {
                    op.fail(self.label(n, i));
                }
                if n % 2 == 1 && n >= 3 {
                    two.count();
                    let ok = w.sub.len() == 2
                        && w.sub[0].offset == 0
                        && w.sub[1].offset + self.element(n - 1, w.sub[1].child).support.len()
                            == w.support.len();
                    if !ok {
                        two.fail(self.label(n, i));
                    }
                }
                if n % 2 == 0 && n >= 4 {
                    for pair in w.sub.windows(2) {
                        overlap.count();
                        let (zi, zj) = (&pair[0], &pair[1]);
                        let si = &self.element(n - 1, zi.child).sub;
                        let sj = &self.element(n - 1, zj.child).sub;
                        let ok = si.len() == 2
                            && sj.len() == 2
                            && si[1].child == sj[0].child
                            && zi.offset + si[1].offset == zj.offset + sj[0].offset;
                        if !ok {
                            overlap.fail(self.label(n, i));
                        }
                    }
                }
            }
        }
        vec![op, two, overlap]
    }
}

/// All of `AP_n` from `AP_{n-1}` by right extension of the last window.
fn extend(alg: &MonomialAlgebra, prev: &[Path], n: usize) -> Vec<Path> {
    let mut out: Vec<Path> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for u in prev {
        let occ = alg.relation_occurrences(u.arrows());
        let chain = left_chain_at(&occ, 0, n - 2).expect("chain of a lower element");
        let k = chain.len();
        let lo = if k == 1 { chain[0].0 + 1 } else { chain[k - 2].1 };
        let hi = chain[k - 1].1;
        for s in lo..hi {
            for r in alg.relations() {
                let overlap = hi - s;
                if r.len() <= overlap || r.arrows()[..overlap] != u.arrows()[s..hi] {
                    continue;
                }
                let mut arrows = u.arrows().to_vec();
                arrows.extend_from_slice(&r.arrows()[overlap..]);
                let occ2 = alg.relation_occurrences(&arrows);
                if concatenation_degree(&occ2, arrows.len()) != Some(n) {
                    continue;
                }
                let p = alg.quiver().path(&arrows).expect("relation extends a path");
                if seen.insert(p.clone()) {
                    out.push(p);
                }
            }
        }
    }
    out.sort();
    out
}

fn sub_entries(
    alg: &MonomialAlgebra,
    lower: &HashMap<Path, usize>,
    w: &Path,
    occ: &[Span],
    n: usize,
) -> Vec<SubEntry> {
    let q = alg.quiver();
    let len = w.len();
    let spans: Vec<Span> = match n {
        1 => vec![(0, 0), (1, 1)],
        2 => (0..len).map(|o| (o, o + 1)).collect(),
        _ => (0..len)
            .filter_map(|o| left_chain_at(occ, o, n - 2).map(|c| (o, c.last().unwrap().1)))
            .filter(|&(o, e)| (o, e) != (0, len))
            .collect(),
    };
    spans
        .into_iter()
        .map(|(o, e)| {
            let child_path = q.subpath(w, o, e);
            let child = *lower
                .get(&child_path)
                .unwrap_or_else(|| panic!("divisor {} missing from AP_{}", q.label(&child_path), n - 1));
            let left = q.subpath(w, 0, o);
            let right = q.subpath(w, e, len);
            SubEntry {
                child,
                offset: o,
                left_id: alg.id_of(&left),
                right_id: alg.id_of(&right),
                left,
                right,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::parse_input;
    use crate::quiver::{ArrowId, Quiver};
    use std::collections::BTreeSet;

    fn resolution(text: &str, n: usize) -> BardzellResolution {
        let inp = parse_input(text).unwrap();
        let alg = MonomialAlgebra::new(inp.quiver, inp.relations).unwrap();
        BardzellResolution::new(Arc::new(alg), n)
    }

    const LINEAR: &str = "vertices: 4\narrow: al : 1 -> 2\narrow: be : 2 -> 3\n\
                          arrow: ga : 3 -> 4\nrelation: al be\nrelation: be ga\n";

    fn cyclic(r: usize) -> String {
        let mut s = format!("vertices: {r}\n");
        for i in 1..=r {
            s += &format!("arrow: a{i} : {i} -> {}\n", i % r + 1);
        }
        s += "relation:";
        for i in 1..=r {
            s += &format!(" a{i}");
        }
        s + " a1\n"
    }

    fn supports(res: &BardzellResolution, n: usize) -> Vec<String> {
        res.ap(n)
            .iter()
            .map(|w| res.algebra().quiver().label(&w.support))
            .collect()
    }

    /// Every arrow sequence of length 1..=max_len forming a path.
    fn all_paths(q: &Quiver, max_len: usize) -> Vec<Vec<ArrowId>> {
        let mut out = Vec::new();
        let mut frontier: Vec<Vec<ArrowId>> = (0..q.num_arrows()).map(|a| vec![a]).collect();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in frontier {
                for a in 0..q.num_arrows() {
                    if q.arrow(*p.last().unwrap()).target == q.arrow(a).source {
                        let mut e = p.clone();
                        e.push(a);
                        next.push(e);
                    }
                }
                out.push(p);
            }
            frontier = next;
        }
        out
    }

    /// Supports of n-concatenations inside every ambient path of bounded
    /// length, following the window definition literally over all relation
    /// occurrences of the ambient path.
    fn oracle_ap(alg: &MonomialAlgebra, n: usize, max_len: usize) -> BTreeSet<Vec<ArrowId>> {
        let mut out = BTreeSet::new();
        for t in all_paths(alg.quiver(), max_len) {
            let occ: Vec<Span> = alg
                .relations()
                .iter()
                .flat_map(|r| {
                    crate::quiver::occurrence_offsets(r.arrows(), &t)
                        .into_iter()
                        .map(move |o| (o, o + r.len()))
                })
                .collect();
            for &p1 in &occ {
                let mut chain = vec![p1];
                while chain.len() < n - 1 {
                    let j = chain.len();
                    let lo_ok = |s: &Span| {
                        if j == 1 {
                            s.0 > chain[0].0
                        } else {
                            s.0 >= chain[j - 2].1
                        }
                    };
                    let next = occ
                        .iter()
                        .filter(|s| lo_ok(s) && s.0 < chain[j - 1].1)
                        .min_by_key(|s| s.0);
                    match next {
                        Some(&s) => chain.push(s),
                        None => break,
                    }
                }
                if chain.len() == n - 1 {
                    out.insert(t[p1.0..chain.last().unwrap().1].to_vec());
                }
            }
        }
        out
    }

    #[test]
    fn linear_example() {
        let res = resolution(LINEAR, 5);
        assert_eq!(supports(&res, 2), vec!["al.be", "be.ga"]);
        assert_eq!(supports(&res, 3), vec!["al.be.ga"]);
        assert!(res.ap(4).is_empty());
        let w = &res.ap(3)[0];
        let subs: Vec<(String, usize)> = w
            .sub
            .iter()
            .map(|e| (res.algebra().quiver().label(&res.element(2, e.child).support), e.offset))
            .collect();
        assert_eq!(subs, vec![("al.be".to_string(), 0), ("be.ga".to_string(), 1)]);

        let alg = res.algebra();
        let id = |l: &str| alg.id_of(&alg.quiver().parse_label(l).unwrap()).unwrap();
        let d3 = res.differential(3, 0);
        let expect: BardzellChain = [
            (BardzellTerm { left: id("al"), ap: 1, right: id("e(4)") }, 1),
            (BardzellTerm { left: id("e(1)"), ap: 0, right: id("ga") }, -1),
        ]
        .into_iter()
        .collect();
        assert_eq!(d3, expect);
    }

    #[test]
    fn cyclic_concatenations() {
        for r in 1..=4 {
            let res = resolution(&cyclic(r), 7);
            for n in 2..=7 {
                let ap = res.ap(n);
                assert_eq!(ap.len(), 1);
                assert_eq!(ap[0].support.len(), (n - 1) * r + 1);
                let expect: Vec<ArrowId> = (0..(n - 1) * r + 1).map(|k| k % r).collect();
                assert_eq!(ap[0].support.arrows(), expect.as_slice());
            }
        }
    }

    #[test]
    fn d1_and_d2() {
        let res = resolution(&cyclic(3), 3);
        let alg = res.algebra();
        let d1 = res.differential(1, 0);
        let a1 = alg.arrow(0);
        let expect: BardzellChain = [
            (BardzellTerm { left: a1, ap: 1, right: alg.vertex(1) }, 1),
            (BardzellTerm { left: alg.vertex(0), ap: 0, right: a1 }, -1),
        ]
        .into_iter()
        .collect();
        assert_eq!(d1, expect);
        let w = &res.ap(2)[0];
        let offsets: Vec<usize> = w.sub.iter().map(|e| e.offset).collect();
        let children: Vec<usize> = w.sub.iter().map(|e| e.child).collect();
        assert_eq!(offsets, vec![0, 1, 2, 3]);
        assert_eq!(children, vec![0, 1, 2, 0]);
        // Terms with the full cycle on one side survive, a1·a2·a3·a1 never appears.
        assert_eq!(res.differential(2, 0).len(), 4);
    }

    const CORPUS: &[&str] = &[
        LINEAR,
        "vertices: 5\narrow: a : 1 -> 2\narrow: b : 2 -> 3\narrow: c : 3 -> 4\narrow: d : 4 -> 5\n\
         relation: a b c\nrelation: b c d\n",
        "vertices: 2\narrow: a : 1 -> 2\narrow: b : 2 -> 1\nrelation: a b a\n",
        "vertices: 1\narrow: x : 1 -> 1\narrow: y : 1 -> 1\nrelation: x x\nrelation: y y\n\
         relation: x y x\nrelation: y x y\n",
        "vertices: 1\narrow: x : 1 -> 1\nrelation: x x x\n",
        "vertices: 3\narrow: a : 1 -> 2\narrow: b : 1 -> 2\narrow: c : 2 -> 3\nrelation: a c\n",
        "vertices: 2\narrow: x : 1 -> 1\narrow: a : 1 -> 2\narrow: y : 2 -> 2\n\
         relation: x x\nrelation: x a y\nrelation: y y y\n",
    ];

    #[test]
    fn enumeration_matches_window_oracle() {
        for text in CORPUS {
            let res = resolution(text, 6);
            for n in 2..=6 {
                let got: BTreeSet<Vec<ArrowId>> =
                    res.ap(n).iter().map(|w| w.support.arrows().to_vec()).collect();
                let oracle = oracle_ap(res.algebra(), n, 12);
                let bound = got.iter().map(Vec::len).max().unwrap_or(0);
                assert!(bound <= 12, "oracle horizon too short");
                assert_eq!(got, oracle, "AP_{n} of\n{text}");
            }
        }
    }

    #[test]
    fn sub_matches_brute_force_divisors() {
        for text in CORPUS.iter().copied().chain([cyclic(3).as_str()]) {
            let res = resolution(text, 6);
            let q = res.algebra().quiver();
            for n in 2..=6 {
                for w in res.ap(n) {
                    let mut want = Vec::new();
                    for o in 0..w.support.len() {
                        for e in o + 1..=w.support.len() {
                            if (o, e) == (0, w.support.len()) {
                                continue;
                            }
                            if let Some(i) = res.index_of(n - 1, &q.subpath(&w.support, o, e)) {
                                want.push((i, o));
                            }
                        }
                    }
                    let got: Vec<(usize, usize)> = w.sub.iter().map(|e| (e.child, e.offset)).collect();
                    assert_eq!(got, want);
                }
            }
        }
    }

    #[test]
    fn complex_and_structure() {
        for text in CORPUS.iter().copied().chain([cyclic(2).as_str(), cyclic(3).as_str()]) {
            let res = resolution(text, 7);
            let c = res.verify_complex(7);
            assert!(c.passed, "{:?}", c);
            for c in res.verify_structure() {
                assert!(c.passed, "{:?}", c);
            }
        }
    }

    #[test]
    fn hereditary_has_no_higher_terms() {
        let res = resolution("vertices: 2\narrow: a : 1 -> 2\narrow: b : 1 -> 2\n", 5);
        assert_eq!(res.ap(1).len(), 2);
        for n in 2..=5 {
            assert!(res.ap(n).is_empty());
        }
    }

    #[test]
    fn labels_round_trip() {
        let res = resolution(LINEAR, 4);
        for n in 0..=3 {
            for i in 0..res.ap(n).len() {
                assert_eq!(res.parse_label(&res.label(n, i)).unwrap(), (n, i));
            }
        }
        assert_eq!(res.label(3, 0), "AP:al.be.ga@0,1");
        assert!(res.parse_label("AP:al.be.ga@0").is_err());
        assert!(res.parse_label("AP:al.be@0,1").is_err());
    }
}
