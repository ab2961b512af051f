//! Hochschild cohomology from the minimal resolution, by exact elimination.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraElement, BasisId, MonomialAlgebra};
use crate::bar::{bar_differential, enumerate_middles, BarChain, BarTensor, Slots};
use crate::cochain::Cochain;
use crate::error::Result;
use crate::field::{scalar, Field, Scalar};
use crate::linalg::{from_field, kernel, rank, to_field, Echelon, ExactMatrix, LinearField, PrimeField, Rationals, SparseVec};
use crate::resolution::BardzellResolution;

/// The cochain `1 ⊗ w ⊗ 1 ↦ γ` for a path `γ` parallel to `w ∈ AP_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HomBasisElement {
    pub ap: usize,
    pub target: BasisId,
}

pub fn hom_basis(res: &BardzellResolution, n: usize) -> Vec<HomBasisElement> {
    let alg = res.algebra();
    res.ap(n)
        .iter()
        .enumerate()
        .flat_map(|(i, w)| {
            alg.parallel(w.support.source(), w.support.target())
                .iter()
                .map(move |&g| HomBasisElement { ap: i, target: g })
        })
        .collect()
}

fn hom_index(basis: &[HomBasisElement]) -> HashMap<HomBasisElement, usize> {
    basis.iter().enumerate().map(|(i, h)| (*h, i)).collect()
}

/// The matrix of `f ↦ f ∘ d_n` from `Hom_{n-1}` to `Hom_n` in hom-basis coordinates.
pub fn coboundary_matrix(res: &BardzellResolution, n: usize) -> ExactMatrix {
    assert!(n >= 1);
    let alg = res.algebra();
    let rows = hom_basis(res, n);
    let cols = hom_basis(res, n - 1);
    let row_index = hom_index(&rows);
    let col_index = hom_index(&cols);
    let entries: Vec<(usize, usize, i64)> = (0..res.ap(n).len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut local = Vec::new();
            for (t, &c) in res.differential(n, i).iter() {
                let psi = &res.element(n - 1, t.ap).support;
                for &g in alg.parallel(psi.source(), psi.target()) {
                    if let Some(img) = alg.mul3(t.left, g, t.right) {
                        let r = row_index[&HomBasisElement { ap: i, target: img }];
                        let col = col_index[&HomBasisElement { ap: t.ap, target: g }];
                        local.push((r, col, c));
                    }
                }
            }
            local
        })
        .collect();
    let mut acc: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); cols.len()];
    for (r, c, v) in entries {
        *acc[c].entry(r).or_insert(0) += v;
    }
    ExactMatrix {
        rows: rows.len(),
        cols: cols.len(),
        columns: acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| *v != 0).map(|(r, v)| (r, scalar(v))).collect())
            .collect(),
    }
}

/// `f ∘ d_{n+1}` computed directly on a cochain of degree `n`.
pub fn coboundary(res: &BardzellResolution, f: &Cochain) -> Cochain {
    let n = f.degree + 1;
    let mut out = Cochain::zero(n);
    for i in 0..res.ap(n).len() {
        out.set(i, f.apply(res.algebra(), &res.differential(n, i)));
    }
    out
}

fn to_coords(index: &HashMap<HomBasisElement, usize>, f: &Cochain) -> SparseVec<Scalar> {
    let mut v: SparseVec<Scalar> = f
        .values()
        .flat_map(|(&ap, val)| {
            val.iter()
                .map(move |(&g, c)| (index[&HomBasisElement { ap, target: g }], c.clone()))
        })
        .collect();
    v.sort_by_key(|e| e.0);
    v
}

fn from_coords(degree: usize, basis: &[HomBasisElement], v: &SparseVec<Scalar>) -> Cochain {
    let mut f = Cochain::zero(degree);
    for (i, c) in v {
        let h = basis[*i];
        f.add_to(h.ap, &AlgebraElement::single(h.target, c.clone()));
    }
    f
}

/// Cohomology data of one degree.
#[derive(Clone, Debug)]
pub struct DegreeData {
    pub degree: usize,
    pub hom: Vec<HomBasisElement>,
    /// rank of `d^n: Hom_{n-1} → Hom_n` (zero for `n = 0`).
    pub rank_in: usize,
    /// rank of `d^{n+1}: Hom_n → Hom_{n+1}`.
    pub rank_out: usize,
    pub dimension: usize,
    pub representatives: Vec<Cochain>,
    rep_pivots: Vec<usize>,
    image: Vec<SparseVec<Scalar>>,
    index: HashMap<HomBasisElement, usize>,
}

/// `HH^0, ..., HH^{max}` with canonical representatives.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub field: Field,
    res: Arc<BardzellResolution>,
    degrees: Vec<DegreeData>,
}

impl Cohomology {
    /// Needs the resolution through degree `max_degree + 1`.
    pub fn compute(res: Arc<BardzellResolution>, field: Field, max_degree: usize) -> Result<Cohomology> {
        res.check_degree(max_degree + 1)?;
        let degrees = match field {
            Field::Rational => compute_degrees(&Rationals, &res, max_degree)?,
            Field::Prime(p) => compute_degrees(&PrimeField::new(p), &res, max_degree)?,
        };
        Ok(Cohomology { field, res, degrees })
    }

    pub fn resolution(&self) -> &BardzellResolution {
        &self.res
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn degree(&self, n: usize) -> &DegreeData {
        &self.degrees[n]
    }

    pub fn dimension(&self, n: usize) -> usize {
        self.degrees[n].dimension
    }

    pub fn representatives(&self, n: usize) -> &[Cochain] {
        &self.degrees[n].representatives
    }

    pub fn is_cocycle(&self, f: &Cochain) -> Result<bool> {
        coboundary(&self.res, f).reduce(self.field).map(|c| c.is_zero())
    }

    /// Coordinates of the class of `f` in the representative basis, or
    /// `None` if `f` is not a cocycle.
    pub fn class_of(&self, f: &Cochain) -> Result<Option<Vec<Scalar>>> {
        match self.field {
            Field::Rational => self.class_with(&Rationals, f),
            Field::Prime(p) => self.class_with(&PrimeField::new(p), f),
        }
    }

    fn class_with<F: LinearField>(&self, fld: &F, f: &Cochain) -> Result<Option<Vec<Scalar>>> {
        let d = &self.degrees[f.degree];
        let mut image = Echelon::new(fld);
        for v in &d.image {
            image.insert(&to_field(fld, v)?, 0);
        }
        let z = image.reduce(&to_field(fld, &to_coords(&d.index, f))?);
        let mut rest: BTreeMap<usize, F::Elem> = z.iter().cloned().collect();
        let mut coords = Vec::with_capacity(d.dimension);
        for (rep, &p) in d.representatives.iter().zip(&d.rep_pivots) {
            let c = rest.get(&p).cloned().unwrap_or_else(|| fld.zero());
            for (i, x) in to_field(fld, &to_coords(&d.index, rep))? {
                let y = fld.mul(&fld.neg(&c), &x);
                let s = fld.add(rest.get(&i).unwrap_or(&fld.zero()), &y);
                if fld.is_zero(&s) {
                    rest.remove(&i);
                } else {
                    rest.insert(i, s);
                }
            }
            coords.push(fld.to_scalar(&c));
        }
        Ok(rest.is_empty().then_some(coords))
    }

    /// Whether `f` lies in the image of `d^{f.degree}`.
    pub fn is_coboundary(&self, f: &Cochain) -> Result<bool> {
        Ok(self.class_of(f)?.is_some_and(|c| c.iter().all(Zero::is_zero)))
    }

    pub fn generator_label(n: usize, k: usize) -> String {
        format!("HH{n}[{k}]")
    }
}

fn compute_degrees<F: LinearField>(fld: &F, res: &BardzellResolution, max: usize) -> Result<Vec<DegreeData>> {
    let mats: Vec<ExactMatrix> = (1..=max + 1)
        .into_par_iter()
        .map(|n| coboundary_matrix(res, n))
        .collect();
    let mut out = Vec::with_capacity(max + 1);
    for n in 0..=max {
        let hom = hom_basis(res, n);
        let index = hom_index(&hom);
        let out_mat = &mats[n];
        let kern = kernel(fld, out_mat)?;
        let mut image_ech = Echelon::new(fld);
        if n >= 1 {
            for c in &mats[n - 1].columns {
                image_ech.insert(&to_field(fld, c)?, 0);
            }
        }
        let rank_in = image_ech.rank();
        let rank_out = hom.len() - kern.len();
        let mut comp = Echelon::new(fld);
        for k in &kern {
            comp.insert(&image_ech.reduce(k), 0);
        }
        let reps = comp.rref();
        assert_eq!(reps.len(), kern.len() - rank_in, "image not inside kernel");
        let rep_pivots = reps.iter().map(|r| r[0].0).collect();
        let representatives = reps
            .iter()
            .map(|r| from_coords(n, &hom, &from_field(fld, r)))
            .collect();
        let image = image_ech.rref().iter().map(|r| from_field(fld, r)).collect();
        out.push(DegreeData {
            degree: n,
            dimension: reps.len(),
            hom,
            rank_in,
            rank_out,
            representatives,
            rep_pivots,
            image,
            index,
        });
    }
    Ok(out)
}

fn field_rank(field: Field, m: &ExactMatrix) -> Result<usize> {
    match field {
        Field::Rational => rank(&Rationals, m),
        Field::Prime(p) => rank(&PrimeField::new(p), m),
    }
}

/// `dim HH^0` as the dimension of the center, solving `za = az` over the basis.
pub fn hh_center_oracle(alg: &MonomialAlgebra, field: Field) -> Result<usize> {
    let d = alg.dim();
    let mut m = ExactMatrix::zero(d * d, d);
    for p in 0..d {
        let mut col: BTreeMap<usize, i64> = BTreeMap::new();
        for a in 0..d {
            if let Some(q) = alg.mul(p as BasisId, a as BasisId) {
                *col.entry(a * d + q as usize).or_insert(0) += 1;
            }
            if let Some(q) = alg.mul(a as BasisId, p as BasisId) {
                *col.entry(a * d + q as usize).or_insert(0) -= 1;
            }
        }
        m.columns[p] = col.into_iter().filter(|e| e.1 != 0).map(|(r, v)| (r, scalar(v))).collect();
    }
    Ok(d - field_rank(field, &m)?)
}

/// `dim HH^n` for `n <= max_n` from the full bar complex over `E`: cochains are
/// E-bimodule maps on sequences of `n` basis paths.
pub fn bar_complex_dims(alg: &MonomialAlgebra, max_n: usize, field: Field) -> Result<Vec<usize>> {
    let nv = alg.quiver().num_vertices();
    let seqs: Vec<Vec<Vec<BasisId>>> = (0..=max_n + 1)
        .map(|n| {
            if n == 0 {
                (0..nv).map(|_| Vec::new()).collect()
            } else {
                enumerate_middles(alg, n, usize::MAX)
            }
        })
        .collect();
    let endpoints = |n: usize, k: usize| -> (usize, usize) {
        let s = &seqs[n][k];
        if n == 0 {
            (k, k)
        } else {
            (alg.source(s[0]), alg.target(*s.last().unwrap()))
        }
    };
    // offsets[n][k]: first coordinate of sequence k in C^n.
    let mut offsets: Vec<Vec<usize>> = Vec::new();
    let mut dims = Vec::new();
    for n in 0..=max_n + 1 {
        let mut off = Vec::with_capacity(seqs[n].len());
        let mut total = 0;
        for k in 0..seqs[n].len() {
            off.push(total);
            let (s, t) = endpoints(n, k);
            total += alg.parallel(s, t).len();
        }
        offsets.push(off);
        dims.push(total);
    }
    let seq_index: Vec<HashMap<Slots, usize>> = seqs
        .iter()
        .map(|l| l.iter().enumerate().map(|(i, s)| (Slots::from_slice(s), i)).collect())
        .collect();

    let mut ranks = vec![0usize; max_n + 2];
    for n in 1..=max_n + 1 {
        // δ^n: C^{n-1} → C^n
        let mut cols: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); dims[n - 1]];
        for (k, v) in seqs[n].iter().enumerate() {
            let (s, t) = endpoints(n, k);
            let targets = alg.parallel(s, t);
            let t0 = BarTensor::inner(alg, v, 0);
            for (term, &c) in bar_differential(alg, &BarChain::single(t0, 1)).iter() {
                let u = term.middles();
                let j = if n == 1 {
                    alg.target(term.left())
                } else {
                    seq_index[n - 1][&Slots::from_slice(u)]
                };
                let (us, ut) = endpoints(n - 1, j);
                for (gi, &g) in alg.parallel(us, ut).iter().enumerate() {
                    if let Some(img) = alg.mul3(term.left(), g, term.right()) {
                        let pos = targets.iter().position(|&x| x == img).unwrap();
                        *cols[offsets[n - 1][j] + gi]
                            .entry(offsets[n][k] + pos)
                            .or_insert(0) += c;
                    }
                }
            }
        }
        let m = ExactMatrix {
            rows: dims[n],
            cols: dims[n - 1],
            columns: cols
                .into_iter()
                .map(|c| c.into_iter().filter(|e| e.1 != 0).map(|(r, v)| (r, scalar(v))).collect())
                .collect(),
        };
        ranks[n] = field_rank(field, &m)?;
    }
    Ok((0..=max_n)
        .map(|n| dims[n] - ranks[n + 1] - if n == 0 { 0 } else { ranks[n] })
        .collect())
}

/// Convenience: `(dim HH^n, representatives)`.
pub fn hh(res: Arc<BardzellResolution>, n: usize, field: Field) -> Result<(usize, Vec<Cochain>)> {
    let c = Cohomology::compute(res, field, n)?;
    Ok((c.dimension(n), c.representatives(n).to_vec()))
}
