use std::collections::btree_map::{self, BTreeMap};
use std::fmt::Debug;
use std::ops::{Mul, Neg};

use num_traits::{One, Zero};

use crate::field::{scalar, Scalar};

/// Coefficients usable in formal sums. Chains of the comparison maps only
/// ever carry small integers; cochain values carry exact rationals.
pub trait Coeff:
    Clone + Debug + PartialEq + Zero + One + Neg<Output = Self> + Mul<Output = Self> + Send + Sync
{
    fn to_scalar(&self) -> Scalar;
}

impl Coeff for i64 {
    fn to_scalar(&self) -> Scalar {
        scalar(*self)
    }
}

impl Coeff for Scalar {
    fn to_scalar(&self) -> Scalar {
        self.clone()
    }
}

/// A finite formal linear combination with no zero coefficients stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord, C> {
    terms: BTreeMap<K, C>,
}

impl<K: Ord, C> Default for LinComb<K, C> {
    fn default() -> Self {
        LinComb {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone, C: Coeff> LinComb<K, C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(key: K, c: C) -> Self {
        let mut out = Self::new();
        out.add_term(key, c);
        out
    }

    pub fn add_term(&mut self, key: K, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        for (k, v) in other.iter() {
            self.add_term(k.clone(), v.clone() * c.clone());
        }
    }

    pub fn add(&mut self, other: &Self) {
        self.add_scaled(other, &C::one());
    }

    pub fn scaled(&self, c: &C) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, c);
        out
    }

    pub fn negated(&self) -> Self {
        self.scaled(&-C::one())
    }

    pub fn coeff(&self, key: &K) -> C {
        self.terms.get(key).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &C)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn to_scalars(&self) -> LinComb<K, Scalar> {
        LinComb {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v.to_scalar()))
                .collect(),
        }
    }

    /// Filters coefficients through `f`, dropping zeros.
    pub fn map_coeffs(&self, mut f: impl FnMut(&C) -> C) -> Self {
        let mut out = Self::new();
        for (k, v) in self.iter() {
            out.add_term(k.clone(), f(v));
        }
        out
    }
}

impl<K: Ord + Clone, C: Coeff> FromIterator<(K, C)> for LinComb<K, C> {
    fn from_iter<I: IntoIterator<Item = (K, C)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<K: Ord, C> IntoIterator for LinComb<K, C> {
    type Item = (K, C);
    type IntoIter = btree_map::IntoIter<K, C>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}
