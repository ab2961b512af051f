//! Chains of the bar resolution over `E = kQ_0`.
//!
//! A tensor `a ⊗ v_1 ⊗ ... ⊗ v_n ⊗ b` is stored as the slot list
//! `[a, v_1, ..., v_n, b]` of basis ids. Only endpoint-matching slot lists are
//! ever built, so balancing over `E` needs no bookkeeping.

use rand::Rng;
use smallvec::SmallVec;

use crate::algebra::{AlgebraElement, BasisId, MonomialAlgebra};
use crate::field::Scalar;
use crate::lincomb::{Coeff, LinComb};
use crate::quiver::VertexId;

pub type Slots = SmallVec<[BasisId; 8]>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BarTensor(pub Slots);

impl BarTensor {
    pub fn new(slots: &[BasisId]) -> BarTensor {
        assert!(slots.len() >= 2);
        BarTensor(Slots::from_slice(slots))
    }

    /// `1 ⊗ v_1 ⊗ ... ⊗ v_n ⊗ 1` (`vertex` gives the slots when `n = 0`).
    pub fn inner(alg: &MonomialAlgebra, middles: &[BasisId], vertex: VertexId) -> BarTensor {
        let (s, t) = match (middles.first(), middles.last()) {
            (Some(&f), Some(&l)) => (alg.source(f), alg.target(l)),
            _ => (vertex, vertex),
        };
        let mut slots = Slots::with_capacity(middles.len() + 2);
        slots.push(alg.vertex(s));
        slots.extend_from_slice(middles);
        slots.push(alg.vertex(t));
        BarTensor(slots)
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 2
    }

    pub fn left(&self) -> BasisId {
        self.0[0]
    }

    pub fn right(&self) -> BasisId {
        *self.0.last().unwrap()
    }

    pub fn middles(&self) -> &[BasisId] {
        &self.0[1..self.0.len() - 1]
    }

    pub fn is_well_formed(&self, alg: &MonomialAlgebra) -> bool {
        self.0.windows(2).all(|w| alg.target(w[0]) == alg.source(w[1]))
    }

    pub fn format(&self, alg: &MonomialAlgebra) -> String {
        self.0
            .iter()
            .map(|&i| alg.label(i))
            .collect::<Vec<_>>()
            .join(" ⊗ ")
    }
}

pub type BarChain<C = i64> = LinComb<BarTensor, C>;

/// The bar differential `b_n` (a chain of degree `n >= 1`).
pub fn bar_differential<C: Coeff>(alg: &MonomialAlgebra, chain: &BarChain<C>) -> BarChain<C> {
    let mut out = BarChain::new();
    for (t, c) in chain.iter() {
        let s = &t.0;
        assert!(s.len() >= 3, "b is defined from degree 1");
        for i in 0..s.len() - 1 {
            let Some(p) = alg.mul(s[i], s[i + 1]) else { continue };
            let mut slots = Slots::with_capacity(s.len() - 1);
            slots.extend_from_slice(&s[..i]);
            slots.push(p);
            slots.extend_from_slice(&s[i + 2..]);
            let sign = if i % 2 == 0 { c.clone() } else { -c.clone() };
            out.add_term(BarTensor(slots), sign);
        }
    }
    out
}

/// `l · c · r` for basis paths `l`, `r`.
pub fn act_basis<C: Coeff>(alg: &MonomialAlgebra, l: BasisId, chain: &BarChain<C>, r: BasisId) -> BarChain<C> {
    let mut out = BarChain::new();
    for (t, c) in chain.iter() {
        let (Some(a), Some(b)) = (alg.mul(l, t.left()), alg.mul(t.right(), r)) else {
            continue;
        };
        let mut slots = t.0.clone();
        slots[0] = a;
        let last = slots.len() - 1;
        slots[last] = b;
        out.add_term(BarTensor(slots), c.clone());
    }
    out
}

/// The bimodule action on the outer slots.
pub fn act<C: Coeff>(
    alg: &MonomialAlgebra,
    a: &AlgebraElement,
    chain: &BarChain<C>,
    b: &AlgebraElement,
) -> BarChain<Scalar> {
    let mut out = BarChain::new();
    for (&l, x) in a.iter() {
        for (&r, y) in b.iter() {
            let part = act_basis(alg, l, chain, r).to_scalars();
            out.add_scaled(&part, &(x * y));
        }
    }
    out
}

/// All middle tuples `(v_1, ..., v_n)` of basis paths that concatenate, with
/// total length at most `max_len`, in a deterministic order.
pub fn enumerate_middles(alg: &MonomialAlgebra, n: usize, max_len: usize) -> Vec<Vec<BasisId>> {
    fn rec(
        alg: &MonomialAlgebra,
        n: usize,
        budget: usize,
        at: VertexId,
        cur: &mut Vec<BasisId>,
        out: &mut Vec<Vec<BasisId>>,
    ) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for &p in alg.starting_at(at) {
            let l = alg.length(p);
            if l <= budget {
                cur.push(p);
                rec(alg, n, budget - l, alg.target(p), cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    for v in 0..alg.quiver().num_vertices() {
        rec(alg, n, max_len, v, &mut Vec::new(), &mut out);
    }
    out
}

/// A random tensor of degree `n`; outer slots are random when `outer` is set.
/// Non-trivial middles are favoured so that samples tend to be long.
pub fn random_tensor<R: Rng>(alg: &MonomialAlgebra, rng: &mut R, n: usize, outer: bool) -> BarTensor {
    let nv = alg.quiver().num_vertices();
    let start = rng.gen_range(0..nv);
    let left = if outer {
        let cands = alg.ending_at(start);
        cands[rng.gen_range(0..cands.len())]
    } else {
        alg.vertex(start)
    };
    let mut slots = Slots::new();
    slots.push(left);
    let mut at = start;
    for _ in 0..n {
        let cands = alg.starting_at(at);
        let long: Vec<BasisId> = cands.iter().copied().filter(|&p| alg.length(p) > 0).collect();
        let p = if !long.is_empty() && rng.gen_bool(0.85) {
            long[rng.gen_range(0..long.len())]
        } else {
            cands[rng.gen_range(0..cands.len())]
        };
        slots.push(p);
        at = alg.target(p);
    }
    let right = if outer {
        let cands = alg.starting_at(at);
        cands[rng.gen_range(0..cands.len())]
    } else {
        alg.vertex(at)
    };
    slots.push(right);
    BarTensor(slots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::parse_input;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn algebra(text: &str) -> MonomialAlgebra {
        let inp = parse_input(text).unwrap();
        MonomialAlgebra::new(inp.quiver, inp.relations).unwrap()
    }

    const AB_REL: &str = "vertices: 3\narrow: a : 1 -> 2\narrow: b : 2 -> 3\nrelation: a b\n";
    const AB_FREE: &str = "vertices: 3\narrow: a : 1 -> 2\narrow: b : 2 -> 3\n";

    fn ids(alg: &MonomialAlgebra, labels: &[&str]) -> Vec<BasisId> {
        labels
            .iter()
            .map(|l| alg.id_of(&alg.quiver().parse_label(l).unwrap()).unwrap())
            .collect()
    }

    #[test]
    fn b1_on_an_arrow() {
        let alg = algebra(AB_REL);
        let t = BarTensor::new(&ids(&alg, &["e(1)", "a", "e(2)"]));
        let b = bar_differential(&alg, &BarChain::single(t, 1));
        let expect: BarChain = [
            (BarTensor::new(&ids(&alg, &["a", "e(2)"])), 1),
            (BarTensor::new(&ids(&alg, &["e(1)", "a"])), -1),
        ]
        .into_iter()
        .collect();
        assert_eq!(b, expect);
    }

    #[test]
    fn b2_with_and_without_relation() {
        for (text, killed) in [(AB_REL, true), (AB_FREE, false)] {
            let alg = algebra(text);
            let t = BarTensor::new(&ids(&alg, &["e(1)", "a", "b", "e(3)"]));
            let b = bar_differential(&alg, &BarChain::single(t, 1));
            let mut expect: BarChain = [
                (BarTensor::new(&ids(&alg, &["a", "b", "e(3)"])), 1),
                (BarTensor::new(&ids(&alg, &["e(1)", "a", "b"])), 1),
            ]
            .into_iter()
            .collect();
            if !killed {
                expect.add_term(BarTensor::new(&ids(&alg, &["e(1)", "a.b", "e(3)"])), -1);
            }
            assert_eq!(b, expect);
        }
    }

    #[test]
    fn action_kills_and_preserves() {
        let alg = algebra(AB_REL);
        let t = BarTensor::new(&ids(&alg, &["e(2)", "b", "e(3)"]));
        let c = BarChain::single(t.clone(), 1);
        let e2 = alg.basis_element(alg.vertex(1));
        let e3 = alg.basis_element(alg.vertex(2));
        assert_eq!(act(&alg, &e2, &c, &e3), c.to_scalars());
        let a = alg.basis_element(ids(&alg, &["a"])[0]);
        let out = act(&alg, &a, &c, &e3);
        let expect = BarTensor::new(&ids(&alg, &["a", "b", "e(3)"]));
        assert_eq!(out, BarChain::single(expect, Scalar::from_integer(1.into())));
        let ab = BarTensor::new(&ids(&alg, &["e(1)", "a", "e(2)"]));
        let killed = act_basis(&alg, alg.vertex(0), &BarChain::<i64>::single(ab, 1), ids(&alg, &["b"])[0]);
        assert!(!killed.is_zero());
        let a_id = ids(&alg, &["a"])[0];
        let t2 = BarTensor::new(&ids(&alg, &["b", "e(3)"]));
        assert!(act_basis(&alg, a_id, &BarChain::<i64>::single(t2, 1), alg.vertex(2)).is_zero());
    }

    #[test]
    fn b_squared_vanishes_on_random_tensors() {
        let alg = algebra(
            "vertices: 3\narrow: a1 : 1 -> 2\narrow: a2 : 2 -> 3\narrow: a3 : 3 -> 1\n\
             relation: a1 a2 a3 a1\n",
        );
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(2..=6);
            let t = random_tensor(&alg, &mut rng, n, true);
            assert!(t.is_well_formed(&alg));
            let c = BarChain::single(t, 1);
            let b = bar_differential(&alg, &c);
            assert!(b.keys().all(|t| t.is_well_formed(&alg)));
            assert!(bar_differential(&alg, &b).is_zero());
        }
    }

    #[test]
    fn enumeration_respects_length() {
        let alg = algebra(AB_FREE);
        let all = enumerate_middles(&alg, 2, 2);
        assert!(all.iter().all(|m| m.iter().map(|&p| alg.length(p)).sum::<usize>() <= 2));
        assert!(all.contains(&ids(&alg, &["a", "b"])));
        assert!(all.contains(&ids(&alg, &["e(1)", "a.b"])));
        assert!(all.contains(&ids(&alg, &["a.b", "e(3)"])));
        let vertices = enumerate_middles(&alg, 1, 0);
        assert_eq!(vertices, vec![vec![0], vec![1], vec![2]]);
    }
}
