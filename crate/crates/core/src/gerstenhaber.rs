//! Cup product, `∘ᵢ`, bracket and the HH¹ action on cochains of the minimal
//! resolution, transported through the comparison morphisms.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraElement, BasisId, MonomialAlgebra};
use crate::bar::BarTensor;
use crate::cochain::Cochain;
use crate::cohomology::Cohomology;
use crate::comparison::Comparison;
use crate::error::{Error, Result};
use crate::field::{format_scalar, scalar, Scalar};
use crate::quiver::ArrowId;

/// A bar cochain `G^n(f)` evaluated on the window `slots[start+1 ..= start+len]`
/// of a tensor, with the outer slots left out.
fn eval_window(cmp: &Comparison, f: &Cochain, slots: &[BasisId], start: usize, len: usize) -> Result<AlgebraElement> {
    let alg = cmp.algebra();
    let middles = &slots[start + 1..start + 1 + len];
    let g = cmp.g_inner(middles, alg.target(slots[start]))?;
    Ok(f.apply(alg, &g))
}

fn transport<F>(cmp: &Comparison, degree: usize, value: F) -> Result<Cochain>
where
    F: Fn(&BarTensor) -> Result<AlgebraElement> + Sync,
{
    let res = cmp.resolution();
    res.check_degree(degree)?;
    let alg = cmp.algebra();
    let values: Vec<AlgebraElement> = (0..res.ap(degree).len())
        .into_par_iter()
        .map(|i| {
            let mut acc = AlgebraElement::new();
            for (t, &c) in cmp.f(degree, i).iter() {
                let inner = value(t)?;
                acc.add_scaled(&alg.sandwich(t.left(), &inner, t.right()), &scalar(c));
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut out = Cochain::zero(degree);
    for (i, v) in values.into_iter().enumerate() {
        out.set(i, v);
    }
    Ok(out)
}

/// `f ∪ g = F^{n+m}(G^n f ∪ G^m g)`.
pub fn cup(cmp: &Comparison, f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let (n, m) = (f.degree, g.degree);
    let alg = cmp.algebra();
    transport(cmp, n + m, |t| {
        let a = eval_window(cmp, f, &t.0, 0, n)?;
        if a.is_zero() {
            return Ok(a);
        }
        let b = eval_window(cmp, g, &t.0, n, m)?;
        Ok(alg.multiply(&a, &b))
    })
}

/// `f ∘ᵢ g = F^{n+m-1}(G^n f ∘ᵢ G^m g)` for `1 <= i <= n`.
pub fn circ_i(cmp: &Comparison, f: &Cochain, g: &Cochain, i: usize) -> Result<Cochain> {
    let (n, m) = (f.degree, g.degree);
    if i == 0 || i > n || m == 0 {
        return Err(Error::Invalid(format!("∘_{i} undefined for degrees ({n}, {m})")));
    }
    let alg = cmp.algebra();
    transport(cmp, n + m - 1, |t| {
        let slots = &t.0;
        let inner = eval_window(cmp, g, slots, i - 1, m)?;
        let mut acc = AlgebraElement::new();
        for (&u, c) in inner.iter() {
            let mut middles: Vec<BasisId> = Vec::with_capacity(n);
            middles.extend_from_slice(&slots[1..i]);
            middles.push(u);
            middles.extend_from_slice(&slots[i + m..slots.len() - 1]);
            let chain = cmp.g_inner(&middles, alg.target(slots[0]))?;
            acc.add_scaled(&f.apply(alg, &chain), c);
        }
        Ok(acc)
    })
}

fn sign(e: usize) -> Scalar {
    scalar(if e.is_multiple_of(2) { 1 } else { -1 })
}

/// `f ∘ g = Σ_i (-1)^{(i-1)(m-1)} f ∘ᵢ g`.
pub fn circ(cmp: &Comparison, f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let (n, m) = (f.degree, g.degree);
    let mut out = Cochain::zero(n + m - 1);
    for i in 1..=n {
        out.add(&circ_i(cmp, f, g, i)?.scaled(&sign((i - 1) * (m - 1))));
    }
    Ok(out)
}

/// `[f, g] = f ∘ g - (-1)^{(n-1)(m-1)} g ∘ f`, for `n, m >= 1`.
pub fn bracket(cmp: &Comparison, f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let (n, m) = (f.degree, g.degree);
    if n == 0 || m == 0 {
        return Err(Error::Invalid(format!("bracket needs degrees >= 1, got ({n}, {m})")));
    }
    let fg = circ(cmp, f, g)?;
    let gf = circ(cmp, g, f)?;
    Ok(fg.sub(&gf.scaled(&sign((n - 1) * (m - 1)))))
}

/// Cup product of two even-degree cochains by splitting each `w ∈ AP_{2n+2m}`
/// into its left `2n`-prefix, a middle path and its right `2m`-suffix.
pub fn cup_even_fast(cmp: &Comparison, f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let (n2, m2) = (f.degree, g.degree);
    if n2 % 2 != 0 || m2 % 2 != 0 || n2 == 0 || m2 == 0 {
        return Err(Error::Invalid(format!("fast cup needs positive even degrees, got ({n2}, {m2})")));
    }
    let res = cmp.resolution();
    let total = n2 + m2;
    res.check_degree(total)?;
    let alg = cmp.algebra();
    let mut out = Cochain::zero(total);
    for (i, w) in res.ap(total).iter().enumerate() {
        let arrows = w.support.arrows();
        let cut_left = w.left_chain[n2 - 2].1;
        let cut_right = w.op_chain[n2].0;
        let failure = || Error::Invalid(format!("cannot split {} for the fast cup", res.label(total, i)));
        if cut_left > cut_right {
            return Err(failure());
        }
        let quiver = alg.quiver();
        let src = w.support.source();
        let mid_src = quiver.vertex_at(src, arrows, cut_left);
        let right_src = quiver.vertex_at(src, arrows, cut_right);
        let p = res.index_of_arrows(n2, src, &arrows[..cut_left]).ok_or_else(failure)?;
        let q = res.index_of_arrows(m2, right_src, &arrows[cut_right..]).ok_or_else(failure)?;
        let a = alg.id_of_arrows(mid_src, &arrows[cut_left..cut_right]).ok_or_else(failure)?;
        let left = alg.multiply(&f.value(p), &alg.basis_element(a));
        out.set(i, alg.multiply(&left, &g.value(q)));
    }
    Ok(out)
}

/// The degree-one cochain `β ↦ α` if `β = α`, else `0`.
pub fn delta(cmp: &Comparison, alpha: ArrowId) -> Cochain {
    let alg = cmp.algebra();
    let res = cmp.resolution();
    let src = alg.quiver().arrow(alpha).source;
    let i = res.index_of_arrows(1, src, &[alpha]).expect("arrows form AP_1");
    let mut out = Cochain::zero(1);
    out.set(i, alg.basis_element(alg.arrow(alpha)));
    out
}

/// Fails unless `dim e_i A e_j = 1` for every arrow `i → j`.
pub fn check_arrow_spaces(alg: &MonomialAlgebra) -> Result<()> {
    for a in alg.quiver().arrows() {
        let dim = alg.parallel(a.source, a.target).len();
        if dim != 1 {
            return Err(Error::ArrowSpace { from: a.source + 1, to: a.target + 1, dim });
        }
    }
    Ok(())
}

/// `[δ_α, f]` by arrow counting: `w ↦ Σ_u c_u (C(α, u) - C(α, w)) u` where
/// `f(w) = Σ_u c_u u`.
pub fn delta_action(cmp: &Comparison, alpha: ArrowId, f: &Cochain) -> Result<Cochain> {
    let alg = cmp.algebra();
    check_arrow_spaces(alg)?;
    if f.degree == 0 {
        return Err(Error::Invalid("the HH¹ action is evaluated in degrees >= 1".into()));
    }
    let res = cmp.resolution();
    res.check_degree(f.degree)?;
    let mut out = Cochain::zero(f.degree);
    for (&i, v) in f.values() {
        let cw = res.element(f.degree, i).support.count_arrow(alpha) as i64;
        let value = v
            .iter()
            .map(|(&u, c)| (u, c * scalar(alg.path(u).count_arrow(alpha) as i64 - cw)))
            .filter(|(_, c)| !num_traits::Zero::is_zero(c))
            .collect();
        out.set(i, value);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Product {
    Cup,
    Bracket,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub left: String,
    pub right: String,
    /// Coordinates of the product class in the representatives of the target degree.
    pub coordinates: Vec<String>,
}

/// Products of all representative pairs in degrees `(n, m)`, as classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductTable {
    pub product: Product,
    pub degrees: (usize, usize),
    pub target_degree: usize,
    pub target_generators: Vec<String>,
    pub entries: Vec<TableEntry>,
}

pub fn product_table(cmp: &Comparison, hh: &Cohomology, product: Product, n: usize, m: usize) -> Result<ProductTable> {
    let target = match product {
        Product::Cup => n + m,
        Product::Bracket => (n + m).checked_sub(1).filter(|_| n > 0 && m > 0).ok_or_else(|| {
            Error::Invalid(format!("bracket needs degrees >= 1, got ({n}, {m})"))
        })?,
    };
    if target > hh.max_degree() {
        return Err(Error::DegreeOverflow { requested: target, available: hh.max_degree() });
    }
    let mut entries = Vec::new();
    for (k, f) in hh.representatives(n).iter().enumerate() {
        for (l, g) in hh.representatives(m).iter().enumerate() {
            let p = match product {
                Product::Cup => cup(cmp, f, g)?,
                Product::Bracket => bracket(cmp, f, g)?,
            };
            let coords = hh.class_of(&p)?.ok_or_else(|| {
                Error::Verification(format!(
                    "{product:?} of {} and {} is not a cocycle",
                    Cohomology::generator_label(n, k),
                    Cohomology::generator_label(m, l)
                ))
            })?;
            entries.push(TableEntry {
                left: Cohomology::generator_label(n, k),
                right: Cohomology::generator_label(m, l),
                coordinates: coords.iter().map(format_scalar).collect(),
            });
        }
    }
    Ok(ProductTable {
        product,
        degrees: (n, m),
        target_degree: target,
        target_generators: (0..hh.dimension(target)).map(|k| Cohomology::generator_label(target, k)).collect(),
        entries,
    })
}

/// Cup tables for `n + m <= max` and bracket tables for `n, m >= 1`,
/// `n + m - 1 <= max`.
pub fn product_tables(cmp: &Comparison, hh: &Cohomology, max: usize) -> Result<Vec<ProductTable>> {
    let mut out = Vec::new();
    for total in 0..=max {
        for n in 0..=total {
            out.push(product_table(cmp, hh, Product::Cup, n, total - n)?);
        }
    }
    for total in 2..=max + 1 {
        for n in 1..total {
            out.push(product_table(cmp, hh, Product::Bracket, n, total - n)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::corpus::{cyclic_text, CORPUS};
    use crate::field::Field;
    use crate::resolution::BardzellResolution;

    fn comparison(text: &str, n: usize) -> Comparison {
        let alg = Arc::new(crate::algebra_from_text(text).unwrap());
        Comparison::new(Arc::new(BardzellResolution::new(alg, n)))
    }

    /// `f_n`: the first arrow on the `AP_n` element starting with it.
    fn cyclic_generator(cmp: &Comparison, n: usize) -> Cochain {
        let alg = cmp.algebra();
        let res = cmp.resolution();
        let a1 = alg.quiver().arrow_id("a1").unwrap();
        let i = (0..res.ap(n).len())
            .find(|&i| res.element(n, i).support.arrows().first() == Some(&a1))
            .unwrap();
        let mut f = Cochain::zero(n);
        f.set(i, alg.basis_element(alg.arrow(a1)));
        f
    }

    fn table(n: usize, m: usize) -> i64 {
        let (n, m) = (n as i64, m as i64);
        match (n % 2, m % 2) {
            (1, 1) => n - m,
            (0, 1) => n - 1,
            (1, 0) => 1 - m,
            _ => 0,
        }
    }

    #[test]
    fn cyclic_bracket_and_cup() {
        for r in 2..=3 {
            let cmp = comparison(&cyclic_text(r), 8);
            for n in 1..=4 {
                for m in 1..=4 {
                    let (f, g) = (cyclic_generator(&cmp, n), cyclic_generator(&cmp, m));
                    let expected = cyclic_generator(&cmp, n + m - 1).scaled(&scalar(table(n, m)));
                    assert_eq!(bracket(&cmp, &f, &g).unwrap(), expected, "r={r} [{n},{m}]");
                    for i in 1..=n {
                        assert_eq!(circ_i(&cmp, &f, &g, i).unwrap(), cyclic_generator(&cmp, n + m - 1));
                    }
                    assert!(cup(&cmp, &f, &g).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn unit_cochain_is_cup_identity() {
        for e in CORPUS {
            let cmp = comparison(e.text, 4);
            let alg = cmp.algebra();
            let mut one = Cochain::zero(0);
            for v in 0..alg.quiver().num_vertices() {
                one.set(v, alg.basis_element(alg.vertex(v)));
            }
            let hh = Cohomology::compute(cmp.resolution_arc().clone(), Field::Rational, 3).unwrap();
            for n in 0..=3 {
                for f in hh.representatives(n) {
                    assert_eq!(cup(&cmp, &one, f).unwrap(), *f, "{}", e.name);
                    assert_eq!(cup(&cmp, f, &one).unwrap(), *f, "{}", e.name);
                }
            }
        }
    }

    #[test]
    fn delta_action_is_bracket_with_delta() {
        let mut qualifying = 0;
        for e in CORPUS {
            let cmp = comparison(e.text, 5);
            if check_arrow_spaces(cmp.algebra()).is_err() {
                continue;
            }
            qualifying += 1;
            let hh = Cohomology::compute(cmp.resolution_arc().clone(), Field::Rational, 4).unwrap();
            for alpha in 0..cmp.algebra().quiver().num_arrows() {
                let d = delta(&cmp, alpha);
                assert!(hh.is_cocycle(&d).unwrap());
                for n in 1..=4 {
                    for f in hh.representatives(n) {
                        let fast = delta_action(&cmp, alpha, f).unwrap();
                        assert_eq!(fast, bracket(&cmp, &d, f).unwrap(), "{}", e.name);
                        assert_eq!(fast.scaled(&scalar(-1)), bracket(&cmp, f, &d).unwrap(), "{}", e.name);
                    }
                }
            }
        }
        assert!(qualifying >= 3);
    }

    #[test]
    fn delta_action_precondition() {
        let cmp = comparison(&cyclic_text(3), 2);
        let f = cyclic_generator(&cmp, 1);
        assert!(matches!(delta_action(&cmp, 0, &f), Err(Error::ArrowSpace { dim: 2, .. })));
    }

    #[test]
    fn fast_even_cup_and_closure() {
        for e in CORPUS {
            let cmp = comparison(e.text, 7);
            let hh = Cohomology::compute(cmp.resolution_arc().clone(), Field::Rational, 6).unwrap();
            for n in [2, 4] {
                for m in [2, 4] {
                    if n + m > 6 {
                        continue;
                    }
                    for f in hh.representatives(n) {
                        for g in hh.representatives(m) {
                            let slow = cup(&cmp, f, g).unwrap();
                            assert_eq!(cup_even_fast(&cmp, f, g).unwrap(), slow, "{} ({n},{m})", e.name);
                            assert!(hh.is_cocycle(&slow).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn products_of_cocycles_are_cocycles() {
        for e in CORPUS {
            let cmp = comparison(e.text, 5);
            let hh = Cohomology::compute(cmp.resolution_arc().clone(), Field::Rational, 4).unwrap();
            let tables = product_tables(&cmp, &hh, 3).unwrap();
            assert!(!tables.is_empty(), "{}", e.name);
        }
    }

    #[test]
    fn cyclic_tables() {
        let cmp = comparison(&cyclic_text(3), 6);
        let hh = Cohomology::compute(cmp.resolution_arc().clone(), Field::Rational, 5).unwrap();
        for t in product_tables(&cmp, &hh, 5).unwrap() {
            let (n, m) = t.degrees;
            if t.product == Product::Cup && n > 0 && m > 0 {
                assert!(t.entries.iter().all(|e| e.coordinates.iter().all(|c| c == "0")));
            }
            if t.product == Product::Bracket && n >= 2 && m >= 2 {
                // representatives are ± f_k in degrees >= 2
                assert_eq!(t.entries.len(), 1);
                let c: i64 = t.entries[0].coordinates[0].parse().unwrap();
                assert_eq!(c.abs(), table(n, m).abs(), "({n},{m})");
            }
        }
    }
}
