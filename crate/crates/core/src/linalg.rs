//! Exact sparse elimination over the rationals or a prime field.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::field::{inv_mod, mul_mod, scalar, Field, Scalar};

/// Field arithmetic on a concrete element type.
pub trait LinearField: Sync + Send {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Self::Elem;
    fn from_scalar(&self, x: &Scalar) -> Result<Self::Elem>;
    fn to_scalar(&self, x: &Self::Elem) -> Scalar;
}

pub struct Rationals;

impl LinearField for Rationals {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        Scalar::zero()
    }
    fn one(&self) -> Scalar {
        Scalar::one()
    }
    fn is_zero(&self, x: &Scalar) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &Scalar, y: &Scalar) -> Scalar {
        x + y
    }
    fn mul(&self, x: &Scalar, y: &Scalar) -> Scalar {
        x * y
    }
    fn neg(&self, x: &Scalar) -> Scalar {
        -x
    }
    fn inv(&self, x: &Scalar) -> Scalar {
        x.recip()
    }
    fn from_scalar(&self, x: &Scalar) -> Result<Scalar> {
        Ok(x.clone())
    }
    fn to_scalar(&self, x: &Scalar) -> Scalar {
        x.clone()
    }
}

pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> PrimeField {
        PrimeField { p }
    }
}

impl LinearField for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn add(&self, x: &u64, y: &u64) -> u64 {
        (x + y) % self.p
    }
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        mul_mod(*x, *y, self.p)
    }
    fn neg(&self, x: &u64) -> u64 {
        (self.p - x) % self.p
    }
    fn inv(&self, x: &u64) -> u64 {
        inv_mod(*x, self.p)
    }
    fn from_scalar(&self, x: &Scalar) -> Result<u64> {
        Field::Prime(self.p).residue(x)
    }
    fn to_scalar(&self, x: &u64) -> Scalar {
        scalar(*x as i64)
    }
}

/// Sparse vector: `(index, value)` pairs sorted by index, no zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// A sparse matrix stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<SparseVec<Scalar>>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn nonzeros(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    /// `self · v` for a sparse vector over the columns.
    pub fn apply(&self, v: &SparseVec<Scalar>) -> SparseVec<Scalar> {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (j, x) in v {
            for (i, a) in &self.columns[*j] {
                *acc.entry(*i).or_insert_with(Scalar::zero) += a * x;
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// `self · other`.
    pub fn compose(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows);
        ExactMatrix {
            rows: self.rows,
            cols: other.cols,
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }
}

struct Row<E> {
    entries: SparseVec<E>,
    combo: SparseVec<E>,
}

/// Incrementally built echelon basis of a subspace; pivots are the smallest
/// indices of the rows, normalized to one.
pub struct Echelon<'f, F: LinearField> {
    field: &'f F,
    rows: Vec<Row<F::Elem>>,
    pivots: HashMap<usize, usize>,
    track: bool,
}

impl<'f, F: LinearField> Echelon<'f, F> {
    pub fn new(field: &'f F) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            pivots: HashMap::new(),
            track: false,
        }
    }

    /// An echelon basis that records each row as a combination of the inserted vectors.
    pub fn tracking(field: &'f F) -> Self {
        Echelon {
            track: true,
            ..Self::new(field)
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = &usize> {
        self.pivots.keys()
    }

    fn axpy(&self, acc: &mut BTreeMap<usize, F::Elem>, c: &F::Elem, v: &SparseVec<F::Elem>) {
        let f = self.field;
        for (i, x) in v {
            let add = f.mul(c, x);
            match acc.get_mut(i) {
                Some(y) => {
                    let s = f.add(y, &add);
                    if f.is_zero(&s) {
                        acc.remove(i);
                    } else {
                        *y = s;
                    }
                }
                None => {
                    acc.insert(*i, add);
                }
            }
        }
    }

    /// Eliminates every pivot column from `v`. With `full == false` stops at
    /// the first non-pivot entry. Returns the remainder and, when tracking,
    /// the combination of inserted vectors subtracted.
    fn reduce_inner(
        &self,
        v: &SparseVec<F::Elem>,
        combo: SparseVec<F::Elem>,
        full: bool,
    ) -> (BTreeMap<usize, F::Elem>, BTreeMap<usize, F::Elem>) {
        let f = self.field;
        let mut acc: BTreeMap<usize, F::Elem> = v.iter().cloned().collect();
        let mut comb: BTreeMap<usize, F::Elem> = combo.into_iter().collect();
        let mut cursor = 0;
        loop {
            let next = acc.range(cursor..).find(|(c, _)| self.pivots.contains_key(c) || !full);
            let Some((&col, x)) = next else { break };
            let Some(&r) = self.pivots.get(&col) else { break };
            let factor = f.neg(x);
            let row = &self.rows[r];
            self.axpy(&mut acc, &factor, &row.entries);
            if self.track {
                self.axpy(&mut comb, &factor, &row.combo);
            }
            cursor = col + 1;
        }
        (acc, comb)
    }

    /// Fully reduces `v` modulo the span.
    pub fn reduce(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        self.reduce_inner(v, Vec::new(), true).0.into_iter().collect()
    }

    pub fn contains(&self, v: &SparseVec<F::Elem>) -> bool {
        self.reduce_inner(v, Vec::new(), false).0.is_empty()
    }

    /// Inserts `v` (the `index`-th inserted vector when tracking). Returns the
    /// combination of inserted vectors that vanishes if `v` was dependent.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>, index: usize) -> Option<SparseVec<F::Elem>> {
        let f = self.field;
        let start = if self.track { vec![(index, f.one())] } else { Vec::new() };
        let (acc, comb) = self.reduce_inner(v, start, false);
        let Some((&lead, x)) = acc.iter().next() else {
            return Some(comb.into_iter().collect());
        };
        let s = f.inv(x);
        let scale = |m: BTreeMap<usize, F::Elem>| -> SparseVec<F::Elem> {
            m.into_iter().map(|(i, y)| (i, f.mul(&s, &y))).collect()
        };
        let entries = scale(acc);
        let combo = if self.track { scale(comb) } else { Vec::new() };
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(Row { entries, combo });
        None
    }

    /// The reduced row echelon basis, sorted by pivot.
    pub fn rref(&self) -> Vec<SparseVec<F::Elem>> {
        let mut order: Vec<(usize, usize)> = self.pivots.iter().map(|(&c, &r)| (c, r)).collect();
        order.sort();
        order
            .into_iter()
            .map(|(c, r)| {
                let row = &self.rows[r];
                let mut acc: BTreeMap<usize, F::Elem> = row.entries.iter().cloned().collect();
                let mut cursor = c + 1;
                loop {
                    let next = acc
                        .range(cursor..)
                        .find(|(k, _)| self.pivots.contains_key(k))
                        .map(|(k, x)| (*k, x.clone()));
                    let Some((col, x)) = next else { break };
                    let factor = self.field.neg(&x);
                    self.axpy(&mut acc, &factor, &self.rows[self.pivots[&col]].entries);
                    cursor = col + 1;
                }
                acc.into_iter().collect()
            })
            .collect()
    }
}

pub fn to_field<F: LinearField>(field: &F, v: &SparseVec<Scalar>) -> Result<SparseVec<F::Elem>> {
    let mut out = Vec::with_capacity(v.len());
    for (i, x) in v {
        let y = field.from_scalar(x)?;
        if !field.is_zero(&y) {
            out.push((*i, y));
        }
    }
    Ok(out)
}

pub fn from_field<F: LinearField>(field: &F, v: &SparseVec<F::Elem>) -> SparseVec<Scalar> {
    v.iter().map(|(i, x)| (*i, field.to_scalar(x))).collect()
}

/// Rank of a matrix over `field`.
pub fn rank<F: LinearField>(field: &F, m: &ExactMatrix) -> Result<usize> {
    let mut ech = Echelon::new(field);
    for c in &m.columns {
        ech.insert(&to_field(field, c)?, 0);
    }
    Ok(ech.rank())
}

/// A basis of the null space (vectors over the columns), in the order the
/// dependencies are discovered.
pub fn kernel<F: LinearField>(field: &F, m: &ExactMatrix) -> Result<Vec<SparseVec<F::Elem>>> {
    let mut ech = Echelon::tracking(field);
    let mut out = Vec::new();
    for (j, c) in m.columns.iter().enumerate() {
        if let Some(dep) = ech.insert(&to_field(field, c)?, j) {
            out.push(dep);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense_rank_mod(rows: &[Vec<i64>], p: i64) -> usize {
        let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
        let (h, w) = (m.len(), m.first().map_or(0, Vec::len));
        let mut rank = 0;
        for c in 0..w {
            let Some(piv) = (rank..h).find(|&r| m[r][c] != 0) else { continue };
            m.swap(rank, piv);
            let inv = inv_mod(m[rank][c] as u64, p as u64) as i64;
            for r in 0..h {
                if r != rank && m[r][c] != 0 {
                    let f = m[r][c] * inv % p;
                    for k in 0..w {
                        m[r][k] = (m[r][k] - f * m[rank][k]).rem_euclid(p);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn matrix(rows: &[Vec<i64>]) -> ExactMatrix {
        let h = rows.len();
        let w = rows.first().map_or(0, Vec::len);
        let mut m = ExactMatrix::zero(h, w);
        for j in 0..w {
            for i in 0..h {
                if rows[i][j] != 0 {
                    m.columns[j].push((i, scalar(rows[i][j])));
                }
            }
        }
        m
    }

    #[test]
    fn small_kernel() {
        let m = matrix(&[vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(rank(&Rationals, &m).unwrap(), 2);
        let k = kernel(&Rationals, &m).unwrap();
        assert_eq!(k.len(), 1);
        let v = from_field(&Rationals, &k[0]);
        assert!(m.apply(&v).is_empty());
    }

    #[test]
    fn characteristic_matters() {
        let m = matrix(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(rank(&Rationals, &m).unwrap(), 2);
        assert_eq!(rank(&PrimeField::new(2), &m).unwrap(), 1);
    }

    #[test]
    fn rref_is_canonical() {
        let f = Rationals;
        let a: Vec<SparseVec<Scalar>> = vec![
            vec![(0, scalar(2)), (2, scalar(4))],
            vec![(1, scalar(1)), (2, scalar(1))],
        ];
        let b: Vec<SparseVec<Scalar>> = vec![
            vec![(0, scalar(1)), (1, scalar(1)), (2, scalar(3))],
            vec![(0, scalar(-1)), (2, scalar(-2))],
        ];
        let mut ea = Echelon::new(&f);
        let mut eb = Echelon::new(&f);
        a.iter().for_each(|v| assert!(ea.insert(v, 0).is_none()));
        b.iter().for_each(|v| assert!(eb.insert(v, 0).is_none()));
        assert_eq!(ea.rref(), eb.rref());
        assert!(ea.contains(&vec![(0, scalar(1)), (1, scalar(1)), (2, scalar(3))]));
        assert!(!ea.contains(&vec![(2, scalar(1))]));
    }

    proptest! {
        #[test]
        fn rank_matches_dense_mod_p(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 6), 1..7)) {
            let m = matrix(&rows);
            let p = 10007;
            let r = rank(&PrimeField::new(p as u64), &m).unwrap();
            prop_assert_eq!(r, dense_rank_mod(&rows, p));
            let rq = rank(&Rationals, &m).unwrap();
            prop_assert!(rq >= r);
            let k = kernel(&Rationals, &m).unwrap();
            prop_assert_eq!(k.len() + rq, m.cols);
            for v in &k {
                prop_assert!(m.apply(&from_field(&Rationals, v)).is_empty());
            }
        }
    }
}
