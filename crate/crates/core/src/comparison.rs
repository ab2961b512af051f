//! The comparison morphisms `F: Ap A → Bar A` and `G: Bar A → Ap A`.

use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use log::debug;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{BasisId, MonomialAlgebra};
use crate::bar::{act_basis, bar_differential, enumerate_middles, random_tensor, BarChain, BarTensor, Slots};
use crate::error::{Error, Result};
use crate::quiver::{ArrowId, Path, VertexId};
use crate::report::Check;
use crate::resolution::{left_chain_at, BardzellChain, BardzellResolution, BardzellTerm};

/// Which adjacent products of a sequence survive in `A` (1-based `j`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceClass {
    /// `j` with `v_{2j-1} v_{2j} ∉ I`.
    pub m_odd: Vec<usize>,
    /// `j` with `v_{2j} v_{2j+1} ∉ I`.
    pub m_even: Vec<usize>,
    pub good: bool,
}

/// An element of `AP_n` positioned inside `T = v_1 ⋯ v_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiEntry {
    pub ap: usize,
    pub offset: usize,
    pub left: Path,
    pub right: Path,
}

pub fn classify(alg: &MonomialAlgebra, middles: &[BasisId]) -> SequenceClass {
    let n = middles.len();
    let alive = |i: usize| alg.mul(middles[i - 1], middles[i]).is_some();
    let m_odd: Vec<usize> = (1..=n / 2).filter(|&j| alive(2 * j - 1)).collect();
    let m_even: Vec<usize> = (1..=(n.saturating_sub(1)) / 2).filter(|&j| alive(2 * j)).collect();
    let good = if n.is_multiple_of(2) { m_odd.is_empty() } else { m_even.is_empty() };
    SequenceClass { m_odd, m_even, good }
}

fn concatenate(alg: &MonomialAlgebra, middles: &[BasisId]) -> Vec<ArrowId> {
    middles
        .iter()
        .flat_map(|&v| alg.path(v).arrows().iter().copied())
        .collect()
}

pub struct Comparison {
    res: Arc<BardzellResolution>,
    f_cache: Vec<Vec<OnceLock<BarChain>>>,
    g_cache: DashMap<Slots, Arc<BardzellChain>>,
}

impl Comparison {
    pub fn new(res: Arc<BardzellResolution>) -> Comparison {
        let f_cache = (0..=res.max_degree())
            .map(|n| (0..res.ap(n).len()).map(|_| OnceLock::new()).collect())
            .collect();
        Comparison {
            res,
            f_cache,
            g_cache: DashMap::new(),
        }
    }

    pub fn resolution(&self) -> &BardzellResolution {
        &self.res
    }

    pub fn resolution_arc(&self) -> &Arc<BardzellResolution> {
        &self.res
    }

    pub fn algebra(&self) -> &MonomialAlgebra {
        self.res.algebra()
    }

    /// `F_n(1 ⊗ w ⊗ 1)` for `w = AP_n[i]`, memoized.
    pub fn f(&self, n: usize, i: usize) -> &BarChain {
        self.f_cache[n][i].get_or_init(|| self.compute_f(n, i, &|k, j| self.f(k, j).clone()))
    }

    fn compute_f(&self, n: usize, i: usize, lower: &dyn Fn(usize, usize) -> BarChain) -> BarChain {
        let alg = self.algebra();
        let w = self.res.element(n, i);
        let s = alg.vertex(w.support.source());
        let t = alg.vertex(w.support.target());
        match n {
            0 => BarChain::single(BarTensor::new(&[s, s]), 1),
            1 => BarChain::single(BarTensor::new(&[s, alg.arrow(w.support.arrows()[0]), t]), 1),
            _ => {
                let mut out = BarChain::new();
                for e in &w.sub[1..] {
                    let (Some(l), Some(r)) = (e.left_id, e.right_id) else { continue };
                    for (u, &c) in lower(n - 1, e.child).iter() {
                        let (Some(a), Some(b)) = (alg.mul(l, u.left()), alg.mul(u.right(), r)) else {
                            continue;
                        };
                        let mut slots = Slots::with_capacity(u.0.len() + 1);
                        slots.push(s);
                        slots.push(a);
                        slots.extend_from_slice(u.middles());
                        slots.push(b);
                        out.add_term(BarTensor(slots), c);
                    }
                }
                out
            }
        }
    }

    /// `F_n` on a chain of the minimal resolution.
    pub fn f_chain(&self, n: usize, c: &BardzellChain) -> BarChain {
        let mut out = BarChain::new();
        for (t, &k) in c.iter() {
            out.add_scaled(&act_basis(self.algebra(), t.left, self.f(n, t.ap), t.right), &k);
        }
        out
    }

    pub fn chi(&self, middles: &[BasisId]) -> Result<Vec<ChiEntry>> {
        let n = middles.len();
        assert!(n >= 2);
        self.res.check_degree(n)?;
        let alg = self.algebra();
        let q = alg.quiver();
        let source = alg.source(middles[0]);
        let arrows = concatenate(alg, middles);
        let occ = alg.relation_occurrences(&arrows);
        let mut out = Vec::new();
        for o in 0..arrows.len() {
            let Some(chain) = left_chain_at(&occ, o, n - 1) else { continue };
            let e = chain.last().unwrap().1;
            let ap = self
                .res
                .index_of_arrows(n, source, &arrows[o..e])
                .expect("greedy chain support is an element of AP_n");
            let vertex = |p: usize| q.vertex_at(source, &arrows, p);
            let left = q.path(&arrows[..o]).unwrap_or_else(|| Path::trivial(vertex(0)));
            let right = q
                .path(&arrows[e..])
                .unwrap_or_else(|| Path::trivial(vertex(arrows.len())));
            out.push(ChiEntry {
                ap,
                offset: o,
                left,
                right,
            });
        }
        Ok(out)
    }

    /// `G_n(1 ⊗ v_1 ⊗ ... ⊗ v_n ⊗ 1)`; `vertex` fixes the tensor when `n = 0`.
    pub fn g_inner(&self, middles: &[BasisId], vertex: VertexId) -> Result<Arc<BardzellChain>> {
        if middles.len() < 2 {
            return Ok(Arc::new(self.compute_g(middles, vertex)?));
        }
        let key = Slots::from_slice(middles);
        if let Some(hit) = self.g_cache.get(&key) {
            return Ok(hit.clone());
        }
        let value = Arc::new(self.compute_g(middles, vertex)?);
        self.g_cache.insert(key, value.clone());
        Ok(value)
    }

    fn compute_g(&self, middles: &[BasisId], vertex: VertexId) -> Result<BardzellChain> {
        let alg = self.algebra();
        let n = middles.len();
        let mut out = BardzellChain::new();
        match n {
            0 => {
                let e = alg.vertex(vertex);
                out.add_term(BardzellTerm { left: e, ap: vertex, right: e }, 1);
            }
            1 => {
                let v = middles[0];
                let arrows = alg.path(v).arrows();
                for (k, &a) in arrows.iter().enumerate() {
                    out.add_term(
                        BardzellTerm {
                            left: alg.prefix(v, k),
                            ap: a,
                            right: alg.suffix(v, k + 1),
                        },
                        1,
                    );
                }
            }
            _ => {
                if !classify(alg, middles).good {
                    return Ok(out);
                }
                let chi = self.chi(middles)?;
                let mut push = |e: &ChiEntry| {
                    if let (Some(l), Some(r)) = (alg.id_of(&e.left), alg.id_of(&e.right)) {
                        out.add_term(BardzellTerm { left: l, ap: e.ap, right: r }, 1);
                    }
                };
                if n.is_multiple_of(2) {
                    if let Some(first) = chi.first() {
                        if let Some(second) = chi.get(1).filter(|e| e.offset == first.offset) {
                            return Err(Error::AmbiguousMinimum {
                                degree: n,
                                offset: first.offset,
                                first: self.res.label(n, first.ap),
                                second: self.res.label(n, second.ap),
                            });
                        }
                        push(first);
                    }
                } else {
                    let width = alg.length(middles[0]);
                    chi.iter().filter(|e| e.offset < width).for_each(&mut push);
                }
                if !out.is_zero() && middles.iter().any(|&v| alg.length(v) == 0) {
                    debug!(
                        "G_{n} nonzero on a sequence with trivial middles: {}",
                        BarTensor::inner(alg, middles, vertex).format(alg)
                    );
                }
            }
        }
        Ok(out)
    }

    /// `G` on a tensor, with the outer slots acting afterwards.
    pub fn g(&self, t: &BarTensor) -> Result<BardzellChain> {
        let alg = self.algebra();
        let inner = self.g_inner(t.middles(), alg.target(t.left()))?;
        let mut out = BardzellChain::new();
        for (term, &c) in inner.iter() {
            if let (Some(l), Some(r)) = (alg.mul(t.left(), term.left), alg.mul(term.right, t.right())) {
                out.add_term(BardzellTerm { left: l, ap: term.ap, right: r }, c);
            }
        }
        Ok(out)
    }

    pub fn g_chain(&self, c: &BarChain) -> Result<BardzellChain> {
        let mut out = BardzellChain::new();
        for (t, &k) in c.iter() {
            out.add_scaled(&self.g(t)?, &k);
        }
        Ok(out)
    }

    /// Splits `F_n(w)` into the terms with a non-trivial right slot and the
    /// principal term built from iterated right factorizations of `w`.
    /// Panics if the principal term is missing.
    pub fn f_expansion_shape(&self, n: usize, i: usize) -> (BarChain, BarTensor) {
        self.try_expansion_shape(n, i)
            .expect("principal term missing from F")
    }

    fn try_expansion_shape(&self, n: usize, i: usize) -> Option<(BarChain, BarTensor)> {
        assert!(n >= 2);
        let alg = self.algebra();
        let w = self.res.element(n, i);
        let mut slots = Slots::new();
        slots.push(alg.vertex(w.support.source()));
        let (mut deg, mut cur) = (n, i);
        while deg >= 2 {
            let last = self.res.element(deg, cur).sub.last()?;
            slots.push(last.left_id?);
            cur = last.child;
            deg -= 1;
        }
        slots.push(alg.arrow(self.res.element(1, cur).support.arrows()[0]));
        slots.push(alg.vertex(w.support.target()));
        let principal = BarTensor(slots);
        let full = self.f(n, i);
        if full.coeff(&principal) != 1 {
            return None;
        }
        let rest: BarChain = full
            .iter()
            .filter(|(t, _)| **t != principal)
            .map(|(t, &c)| (t.clone(), c))
            .collect();
        Some((rest, principal))
    }

    /// `b_n F_n = F_{n-1} d_n` on every element of `AP_n`, `1 <= n <= max_n`.
    pub fn verify_f_chain_map(&self, max_n: usize) -> Check {
        let mut check = Check::new("F chain map");
        let alg = self.algebra();
        for n in 1..=max_n.min(self.res.max_degree()) {
            let failures: Vec<String> = (0..self.res.ap(n).len())
                .into_par_iter()
                .filter(|&i| {
                    let lhs = bar_differential(alg, self.f(n, i));
                    let rhs = self.f_chain(n - 1, &self.res.differential(n, i));
                    lhs != rhs
                })
                .map(|i| self.res.label(n, i))
                .collect();
            check.checked += self.res.ap(n).len();
            if let Some(f) = failures.into_iter().next() {
                check.fail(f);
            }
        }
        check
    }

    /// `G_n F_n = Id` on every element of `AP_n`, `n <= max_n`.
    pub fn verify_gf_identity(&self, max_n: usize) -> Check {
        let mut check = Check::new("G∘F = Id");
        for n in 0..=max_n.min(self.res.max_degree()) {
            for i in 0..self.res.ap(n).len() {
                check.count();
                let w = self.res.element(n, i);
                let alg = self.algebra();
                let id = BardzellChain::single(
                    BardzellTerm {
                        left: alg.vertex(w.support.source()),
                        ap: i,
                        right: alg.vertex(w.support.target()),
                    },
                    1,
                );
                match self.g_chain(self.f(n, i)) {
                    Ok(c) if c == id => {}
                    Ok(_) => check.fail(self.res.label(n, i)),
                    Err(e) => check.fail(format!("{}: {e}", self.res.label(n, i))),
                }
            }
        }
        check
    }

    /// Checks the shape of every `F_n(w)`: the principal term has coefficient
    /// one and every other term has a non-trivial right slot. Also recomputes
    /// `F` without memoization from a shuffled-then-restored Sub order.
    pub fn verify_f_shape(&self, max_n: usize) -> Vec<Check> {
        let alg = self.algebra();
        let mut shape = Check::new("F expansion shape");
        let mut determinism = Check::new("F recursion determinism");
        for n in 2..=max_n.min(self.res.max_degree()) {
            for i in 0..self.res.ap(n).len() {
                shape.count();
                let ok = match self.try_expansion_shape(n, i) {
                    Some((rest, _)) => rest.keys().all(|t| alg.length(t.right()) > 0),
                    None => false,
                };
                if !ok {
                    shape.fail(self.res.label(n, i));
                }
                determinism.count();
                if self.reference_f(n, i) != *self.f(n, i) {
                    determinism.fail(self.res.label(n, i));
                }
            }
        }
        vec![shape, determinism]
    }

    fn reference_f(&self, n: usize, i: usize) -> BarChain {
        if n < 2 {
            return self.compute_f(n, i, &|_, _| unreachable!());
        }
        let w = self.res.element(n, i);
        let mut sub = w.sub.clone();
        sub.reverse();
        sub.rotate_left(1);
        sub.sort_by_key(|e| e.offset);
        assert_eq!(sub, w.sub);
        self.compute_f(n, i, &|k, j| self.reference_f(k, j))
    }

    /// `d_n G_n = G_{n-1} b_n` on every tensor `1 ⊗ v ⊗ 1` of total length at
    /// most `length_bound` (`1 <= n <= max_n`), then on `samples` random
    /// tensors with random outer slots. The kernel characterization of `G` is
    /// checked on the same tensors.
    pub fn verify_g_chain_map<R: Rng>(
        &self,
        max_n: usize,
        length_bound: usize,
        samples: usize,
        rng: &mut R,
    ) -> Vec<Check> {
        let alg = self.algebra();
        let max_n = max_n.min(self.res.max_degree());
        let mut tensors: Vec<BarTensor> = Vec::new();
        for n in 1..=max_n {
            for m in enumerate_middles(alg, n, length_bound) {
                tensors.push(BarTensor::inner(alg, &m, 0));
            }
        }
        let exhaustive = tensors.len();
        if max_n >= 1 {
            for _ in 0..samples {
                let n = rng.gen_range(1..=max_n);
                tensors.push(random_tensor(alg, rng, n, true));
            }
        }
        let mut square = Check::new("G chain map");
        let mut kernel = Check::new("G kernel characterization");
        let results: Vec<(bool, Option<bool>)> = tensors
            .par_iter()
            .map(|t| {
                let n = t.degree();
                let ok = match (self.g(t), self.g_chain(&bar_differential(alg, &BarChain::single(t.clone(), 1)))) {
                    (Ok(g), Ok(gb)) => self.res.differential_chain(n, &g) == gb,
                    _ => false,
                };
                let k = (n >= 2).then(|| self.kernel_characterization_holds(t.middles()));
                (ok, k)
            })
            .collect();
        for (idx, (ok, k)) in results.into_iter().enumerate() {
            square.count();
            let what = || {
                let kind = if idx < exhaustive { "enumerated" } else { "sampled" };
                format!("{kind} tensor {}", tensors[idx].format(alg))
            };
            if !ok {
                square.fail(what());
            }
            if let Some(k) = k {
                kernel.count();
                if !k {
                    kernel.fail(what());
                }
            }
        }
        vec![square, kernel]
    }

    /// `G_n(t) = 0` iff exactly one of: the sequence is bad; it is good with
    /// empty χ; it is good with non-empty χ and the relevant complements lie in `I`.
    fn kernel_characterization_holds(&self, middles: &[BasisId]) -> bool {
        let alg = self.algebra();
        let n = middles.len();
        let Ok(g) = self.g_inner(middles, 0) else { return false };
        let class = classify(alg, middles);
        let chi = if class.good { self.chi(middles).unwrap_or_default() } else { Vec::new() };
        let killed = |e: &ChiEntry| alg.in_ideal(&e.left) || alg.in_ideal(&e.right);
        let c1 = !class.good;
        let c2 = class.good && chi.is_empty();
        let c3 = class.good
            && !chi.is_empty()
            && if n.is_multiple_of(2) {
                killed(&chi[0])
            } else {
                let width = alg.length(middles[0]);
                chi.iter().filter(|e| e.offset < width).all(killed)
            };
        let count = [c1, c2, c3].iter().filter(|&&c| c).count();
        count <= 1 && (g.is_zero() == (count == 1))
    }
}
