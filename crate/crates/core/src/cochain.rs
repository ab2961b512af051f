//! Cochains on the minimal resolution: `A^e`-linear maps determined by their
//! values `f(1 ⊗ w ⊗ 1) ∈ e_{s(w)} A e_{t(w)}` on `w ∈ AP_n`.

use std::collections::BTreeMap;
use std::fmt::Write;

use num_traits::{One, Zero};

use crate::algebra::{AlgebraElement, MonomialAlgebra};
use crate::error::{Error, Result};
use crate::field::{format_scalar, parse_scalar, Field, Scalar};
use crate::resolution::{BardzellChain, BardzellResolution};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    values: BTreeMap<usize, AlgebraElement>,
}

impl Cochain {
    pub fn zero(degree: usize) -> Cochain {
        Cochain {
            degree,
            values: BTreeMap::new(),
        }
    }

    /// Sets `f(AP_n[ap])`; the value must be parallel to the support.
    pub fn set(&mut self, ap: usize, value: AlgebraElement) {
        if value.is_zero() {
            self.values.remove(&ap);
        } else {
            self.values.insert(ap, value);
        }
    }

    pub fn add_to(&mut self, ap: usize, value: &AlgebraElement) {
        let mut v = self.value(ap);
        v.add(value);
        self.set(ap, v);
    }

    pub fn value(&self, ap: usize) -> AlgebraElement {
        self.values.get(&ap).cloned().unwrap_or_default()
    }

    pub fn values(&self) -> impl Iterator<Item = (&usize, &AlgebraElement)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scaled(&self, c: &Scalar) -> Cochain {
        let mut out = Cochain::zero(self.degree);
        for (&w, v) in &self.values {
            out.set(w, v.scaled(c));
        }
        out
    }

    pub fn add(&mut self, other: &Cochain) {
        assert_eq!(self.degree, other.degree);
        for (&w, v) in &other.values {
            self.add_to(w, v);
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        let mut out = self.clone();
        out.add(&other.scaled(&-Scalar::one()));
        out
    }

    /// Coefficients mapped into `field` (residues for prime fields).
    pub fn reduce(&self, field: Field) -> Result<Cochain> {
        let mut out = Cochain::zero(self.degree);
        for (&w, v) in &self.values {
            let mut r = AlgebraElement::new();
            for (&k, c) in v.iter() {
                r.add_term(k, field.normalize(c)?);
            }
            out.set(w, r);
        }
        Ok(out)
    }

    /// Equality after reduction into `field`.
    pub fn eq_in(&self, other: &Cochain, field: Field) -> Result<bool> {
        Ok(self.degree == other.degree && self.sub(other).reduce(field)?.is_zero())
    }

    /// `f` on a chain of the minimal resolution: `Σ c · L f(w) R`.
    pub fn apply(&self, alg: &MonomialAlgebra, chain: &BardzellChain) -> AlgebraElement {
        let mut out = AlgebraElement::new();
        for (t, &c) in chain.iter() {
            if let Some(v) = self.values.get(&t.ap) {
                let part = alg.sandwich(t.left, v, t.right);
                out.add_scaled(&part, &Scalar::from_integer(c.into()));
            }
        }
        out
    }

    /// Checks that every value is parallel to its support.
    pub fn validate(&self, res: &BardzellResolution) -> Result<()> {
        res.check_degree(self.degree)?;
        let alg = res.algebra();
        for (&w, v) in &self.values {
            let e = res.ap(self.degree).get(w).ok_or_else(|| {
                Error::Invalid(format!("no element {w} in AP_{}", self.degree))
            })?;
            for &k in v.keys() {
                if !alg.path(k).parallel_to(&e.support) {
                    return Err(Error::Invalid(format!(
                        "value {} is not parallel to {}",
                        alg.label(k),
                        res.label(self.degree, w)
                    )));
                }
            }
        }
        Ok(())
    }

    /// One line per term: `AP:<support>@<offsets> -> <coeff> * <path>`.
    pub fn to_text(&self, res: &BardzellResolution) -> String {
        let alg = res.algebra();
        let mut out = format!("degree: {}\n", self.degree);
        for (&w, v) in &self.values {
            for (&k, c) in v.iter() {
                writeln!(
                    out,
                    "{} -> {} * {}",
                    res.label(self.degree, w),
                    format_scalar(c),
                    alg.label(k)
                )
                .unwrap();
            }
        }
        out
    }

    pub fn from_text(res: &BardzellResolution, text: &str) -> Result<Cochain> {
        let alg = res.algebra();
        let mut degree: Option<usize> = None;
        let mut out: Option<Cochain> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let syntax = |m: String| Error::Syntax { line, message: m };
            if let Some(d) = content.strip_prefix("degree:") {
                let d: usize = d
                    .trim()
                    .parse()
                    .map_err(|_| syntax("bad degree".to_string()))?;
                degree = Some(d);
                continue;
            }
            let (lhs, rhs) = content
                .split_once("->")
                .ok_or_else(|| syntax("expected `AP:... -> <coeff> * <path>`".to_string()))?;
            let (n, w) = res.parse_label(lhs).map_err(|e| syntax(e.to_string()))?;
            if degree.is_some_and(|d| d != n) {
                return Err(syntax(format!("element of AP_{n} in a degree-{} cochain", degree.unwrap())));
            }
            degree = Some(n);
            let (coeff, path) = rhs
                .split_once('*')
                .ok_or_else(|| syntax("expected `<coeff> * <path>`".to_string()))?;
            let c = parse_scalar(coeff.trim()).map_err(|e| syntax(e.to_string()))?;
            let p = alg.quiver().parse_label(path).map_err(|e| syntax(e.to_string()))?;
            if !p.parallel_to(&res.element(n, w).support) {
                return Err(syntax(format!("`{}` is not parallel to the support", path.trim())));
            }
            let cochain = out.get_or_insert_with(|| Cochain::zero(n));
            if let Some(k) = alg.id_of(&p) {
                if !c.is_zero() {
                    cochain.add_to(w, &AlgebraElement::single(k, c));
                }
            }
        }
        match (out, degree) {
            (Some(c), _) => Ok(c),
            (None, Some(d)) => {
                res.check_degree(d)?;
                Ok(Cochain::zero(d))
            }
            (None, None) => Err(Error::Syntax {
                line: text.lines().count().max(1),
                message: "empty cochain file without a `degree:` line".to_string(),
            }),
        }
    }

    pub fn format(&self, res: &BardzellResolution) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.values
            .iter()
            .map(|(&w, v)| format!("{} ↦ {}", res.label(self.degree, w), res.algebra().format_element(v)))
            .collect::<Vec<_>>()
            .join("; ")
    }
}
